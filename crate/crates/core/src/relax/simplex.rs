//! Dense bounded-variable primal simplex.
//!
//! Solves `max c·x  s.t.  A x ≤ b, 0 ≤ x ≤ upper` with `b ≥ 0`, so the origin
//! (all structurals at their lower bound, slacks basic) is a feasible start and
//! no phase one is needed. Entering and leaving variables follow Bland's rule.
//! An optional secondary objective is then maximized over the optimal face,
//! which is how ties between optimal vertices are broken.

use crate::error::{Error, Result};

const EPS_PIVOT: f64 = 1e-11;
const EPS_COST: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BoxLp {
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows × cols`, current `B⁻¹ [A I]`.
    t: Vec<f64>,
    basis: Vec<usize>,
    at_upper: Vec<bool>,
    upper: Vec<f64>,
    /// values of the basic variables
    xb: Vec<f64>,
    pivots: usize,
}

impl Tableau {
    fn new(lp: &BoxLp) -> Self {
        let rows = lp.a.len();
        let n = lp.c.len();
        let cols = n + rows;
        let mut t = vec![0.0; rows * cols];
        for (r, row) in lp.a.iter().enumerate() {
            t[r * cols..r * cols + n].copy_from_slice(row);
            t[r * cols + n + r] = 1.0;
        }
        let mut upper = lp.upper.clone();
        upper.extend(std::iter::repeat_n(f64::INFINITY, rows));
        Self {
            rows,
            cols,
            t,
            basis: (n..cols).collect(),
            at_upper: vec![false; cols],
            upper,
            xb: lp.b.clone(),
            pivots: 0,
        }
    }

    fn reduced_costs(&self, c: &[f64]) -> Vec<f64> {
        let cost = |j: usize| c.get(j).copied().unwrap_or(0.0);
        let mut d: Vec<f64> = (0..self.cols).map(cost).collect();
        for r in 0..self.rows {
            let cb = cost(self.basis[r]);
            if cb != 0.0 {
                let row = &self.t[r * self.cols..(r + 1) * self.cols];
                for (dj, tj) in d.iter_mut().zip(row) {
                    *dj -= cb * tj;
                }
            }
        }
        d
    }

    /// Runs simplex iterations on `c`, only letting in columns accepted by `allowed`.
    fn optimize(&mut self, c: &[f64], allowed: &dyn Fn(usize) -> bool, cap: usize) -> Result<()> {
        let mut is_basic = vec![false; self.cols];
        for &j in &self.basis {
            is_basic[j] = true;
        }
        loop {
            if self.pivots > cap {
                return Err(Error::NumericalFailure(format!(
                    "simplex exceeded {cap} iterations"
                )));
            }
            let d = self.reduced_costs(c);
            let entering = (0..self.cols).find(|&j| {
                !is_basic[j]
                    && allowed(j)
                    && if self.at_upper[j] {
                        d[j] < -EPS_COST
                    } else {
                        d[j] > EPS_COST && self.upper[j] > 0.0
                    }
            });
            let Some(e) = entering else {
                return Ok(());
            };
            // moving e by +step (from lower) or -step (from upper)
            let dir = if self.at_upper[e] { -1.0 } else { 1.0 };
            let mut best: Option<(usize, bool, f64)> = None;
            for r in 0..self.rows {
                let alpha = dir * self.t[r * self.cols + e];
                let bv = self.basis[r];
                let limit = if alpha > EPS_PIVOT {
                    Some((self.xb[r].max(0.0) / alpha, false))
                } else if alpha < -EPS_PIVOT && self.upper[bv].is_finite() {
                    Some(((self.upper[bv] - self.xb[r]).max(0.0) / -alpha, true))
                } else {
                    None
                };
                if let Some((lim, to_upper)) = limit {
                    let replace = match best {
                        None => true,
                        Some((br, _, bl)) => {
                            lim < bl - 1e-12 || (lim <= bl + 1e-12 && bv < self.basis[br])
                        }
                    };
                    if replace {
                        best = Some((r, to_upper, lim));
                    }
                }
            }
            let (step, leave) = match best {
                Some((r, to_upper, lim)) if lim <= self.upper[e] => (lim, Some((r, to_upper))),
                _ => (self.upper[e], None),
            };
            if !step.is_finite() {
                return Err(Error::NumericalFailure("unbounded direction".into()));
            }
            for r in 0..self.rows {
                self.xb[r] -= dir * step * self.t[r * self.cols + e];
            }
            self.pivots += 1;
            match leave {
                None => {
                    // bound flip, basis unchanged
                    self.at_upper[e] = !self.at_upper[e];
                }
                Some((r, to_upper)) => {
                    let entering_value = if self.at_upper[e] {
                        self.upper[e] - step
                    } else {
                        step
                    };
                    let old = self.basis[r];
                    self.pivot(r, e);
                    is_basic[old] = false;
                    is_basic[e] = true;
                    self.at_upper[old] = to_upper;
                    self.at_upper[e] = false;
                    self.xb[r] = entering_value;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let cols = self.cols;
        let p = self.t[r * cols + e];
        for v in &mut self.t[r * cols..(r + 1) * cols] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.t[r * cols..(r + 1) * cols].to_vec();
        for q in 0..self.rows {
            if q == r {
                continue;
            }
            let f = self.t[q * cols + e];
            if f != 0.0 {
                for (v, pr) in self.t[q * cols..(q + 1) * cols].iter_mut().zip(&pivot_row) {
                    *v -= f * pr;
                }
            }
        }
        self.basis[r] = e;
    }

    fn values(&self, n: usize) -> Vec<f64> {
        let mut x: Vec<f64> = (0..n)
            .map(|j| if self.at_upper[j] { self.upper[j] } else { 0.0 })
            .collect();
        for (r, &bv) in self.basis.iter().enumerate() {
            if bv < n {
                x[bv] = self.xb[r];
            }
        }
        x
    }
}

/// Maximizes `lp.c`, then `secondary` (if given) among the optimal vertices.
pub fn maximize(lp: &BoxLp, secondary: Option<&[f64]>) -> Result<LpSolution> {
    let n = lp.c.len();
    if lp.upper.len() != n || lp.b.len() != lp.a.len() || lp.a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("inconsistent LP dimensions".into()));
    }
    if lp.b.iter().any(|&b| b < 0.0) || lp.upper.iter().any(|&u| u < 0.0) {
        return Err(Error::InvalidArgument(
            "right-hand sides and upper bounds must be non-negative".into(),
        ));
    }
    let cap = 50 * (n + lp.a.len()).pow(2) + 1000;
    let mut tab = Tableau::new(lp);
    tab.optimize(&lp.c, &|_| true, cap)?;
    if let Some(c2) = secondary {
        let d = tab.reduced_costs(&lp.c);
        let face = move |j: usize| d[j].abs() <= EPS_COST;
        tab.optimize(c2, &face, cap)?;
    }
    let x = tab.values(n);
    let objective = x.iter().zip(&lp.c).map(|(x, c)| x * c).sum();
    Ok(LpSolution {
        x,
        objective,
        pivots: tab.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounded_problem() {
        // max 3x + 2y, x + y ≤ 1.5, x ≤ 1, y ≤ 1
        let lp = BoxLp {
            c: vec![3.0, 2.0],
            a: vec![vec![1.0, 1.0]],
            b: vec![1.5],
            upper: vec![1.0, 1.0],
        };
        let sol = maximize(&lp, None).unwrap();
        assert!((sol.objective - 4.0).abs() < 1e-12);
        assert!((sol.x[0] - 1.0).abs() < 1e-12 && (sol.x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn secondary_objective_breaks_ties() {
        // max x - y with x ≤ y: optimum 0 on the whole diagonal
        let lp = BoxLp {
            c: vec![1.0, -1.0],
            a: vec![vec![1.0, -1.0]],
            b: vec![0.0],
            upper: vec![1.0, 1.0],
        };
        let low = maximize(&lp, None).unwrap();
        assert_eq!(low.x, vec![0.0, 0.0]);
        let high = maximize(&lp, Some(&[0.0, 1.0])).unwrap();
        assert!((high.x[0] - 1.0).abs() < 1e-12 && (high.x[1] - 1.0).abs() < 1e-12);
        assert!(high.objective.abs() < 1e-12);
    }

    #[test]
    fn matches_vertex_enumeration() {
        // max over a 3-variable box with two cuts; brute force over a fine grid of vertices
        let lp = BoxLp {
            c: vec![1.0, 2.0, -0.5],
            a: vec![vec![1.0, 1.0, -1.0], vec![0.0, 1.0, 1.0]],
            b: vec![1.0, 1.2],
            upper: vec![1.0, 1.0, 1.0],
        };
        let sol = maximize(&lp, None).unwrap();
        let mut best = f64::NEG_INFINITY;
        let steps = 100;
        for i in 0..=steps {
            for j in 0..=steps {
                for k in 0..=steps {
                    let x = [i as f64 / steps as f64, j as f64 / steps as f64, k as f64 / steps as f64];
                    if x[0] + x[1] - x[2] <= 1.0 + 1e-12 && x[1] + x[2] <= 1.2 + 1e-12 {
                        best = best.max(x[0] + 2.0 * x[1] - 0.5 * x[2]);
                    }
                }
            }
        }
        assert!((sol.objective - best).abs() < 1e-9, "{} vs {best}", sol.objective);
    }
}
