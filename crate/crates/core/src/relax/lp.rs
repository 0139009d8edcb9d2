//! The λ-regularized binary program and its linear relaxation.

use super::simplex::{maximize, BoxLp};
use crate::error::{Error, Result};
use crate::exact::{Selection, WeightVector};
use crate::par::{reduce_range, Exec};
use crate::structure::{tu_certificate, GroupStructure, BRUTE_FORCE_GROUP_CAP};
use crate::tree::TreeModel;

/// Integrality tolerance for LP vertices.
pub const INTEGRALITY_TOL: f64 = 1e-9;

/// `max wᵀu  s.t.  C u ≤ 0, u ∈ {0,1}`, with `u = (y, ω)` or `u = (y, ω, y)`.
///
/// `objective` is `(w_1..w_N, -λ_G·1_M)` followed by `-λ_K·1_N` when an element
/// penalty is present; `constraints` is the N-row table `[I_N, -A, (0_N)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryLP {
    pub ground_size: usize,
    pub num_groups: usize,
    pub objective: Vec<f64>,
    pub constraints: Vec<Vec<f64>>,
    pub lambda_g: f64,
    pub lambda_k: Option<f64>,
}

impl BinaryLP {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

pub fn standard_form(
    s: &GroupStructure,
    w: &WeightVector,
    lambda_g: f64,
    lambda_k: Option<f64>,
) -> Result<BinaryLP> {
    w.check_len(s.ground_size())?;
    if !(lambda_g > 0.0 && lambda_g.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "group penalty must be positive, got {lambda_g}"
        )));
    }
    if let Some(lk) = lambda_k {
        if !(lk >= 0.0 && lk.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "element penalty must be non-negative, got {lk}"
            )));
        }
    }
    let (n, m) = (s.ground_size(), s.num_groups());
    let mut objective: Vec<f64> = w.as_slice().to_vec();
    objective.extend(std::iter::repeat_n(-lambda_g, m));
    if let Some(lk) = lambda_k {
        objective.extend(std::iter::repeat_n(-lk, n));
    }
    let width = objective.len();
    let a = s.bi_adjacency();
    let constraints = (0..n)
        .map(|i| {
            let mut row = vec![0.0; width];
            row[i] = 1.0;
            for j in 0..m {
                if a.get(i, j) {
                    row[n + j] = -1.0;
                }
            }
            row
        })
        .collect();
    Ok(BinaryLP {
        ground_size: n,
        num_groups: m,
        objective,
        constraints,
        lambda_g,
        lambda_k,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    /// A vertex of the relaxation, laid out like [`BinaryLP::objective`].
    pub u: Vec<f64>,
    pub objective: f64,
    /// Every coordinate within [`INTEGRALITY_TOL`] of 0 or 1.
    pub integral: bool,
    pub max_deviation: f64,
}

/// Solves the box relaxation of a [`BinaryLP`] at a vertex.
///
/// The repeated `y` block of the element-penalized form is folded into the
/// first block (`w_i - λ_K`). Among optimal vertices, one with the most
/// groups is returned.
pub fn solve_tu_lp(lp: &BinaryLP) -> Result<LpOutcome> {
    let (n, m) = (lp.ground_size, lp.num_groups);
    let mut c: Vec<f64> = lp.objective[..n + m].to_vec();
    if lp.objective.len() == 2 * n + m {
        for (ci, extra) in c.iter_mut().zip(&lp.objective[n + m..]) {
            *ci += extra;
        }
    }
    let a: Vec<Vec<f64>> = lp.constraints.iter().map(|r| r[..n + m].to_vec()).collect();
    let mut secondary = vec![0.0; n + m];
    secondary[n..].iter_mut().for_each(|v| *v = 1.0);
    let sol = maximize(
        &BoxLp {
            c,
            a,
            b: vec![0.0; n],
            upper: vec![1.0; n + m],
        },
        Some(&secondary),
    )?;
    let mut u = sol.x;
    if lp.objective.len() == 2 * n + m {
        let y: Vec<f64> = u[..n].to_vec();
        u.extend(y);
    }
    let max_deviation = u
        .iter()
        .map(|v| (v - v.round()).abs())
        .fold(0.0, f64::max);
    Ok(LpOutcome {
        objective: u.iter().zip(&lp.objective).map(|(u, w)| u * w).sum(),
        u,
        integral: max_deviation <= INTEGRALITY_TOL,
        max_deviation,
    })
}

/// Maximizes `Σ y_i w_i − λ Σ ω_j` over binary selections.
///
/// With a total-unimodularity certificate the linear relaxation is solved and
/// its (integral) vertex rounded; otherwise all group subsets are enumerated
/// (at most [`BRUTE_FORCE_GROUP_CAP`] groups). Ties go to more groups. The
/// returned elements are the union of the chosen groups.
pub fn solve_regularized(s: &GroupStructure, w: &WeightVector, lambda: f64) -> Result<Selection> {
    let lp = standard_form(s, w, lambda, None)?;
    if tu_certificate(s).is_certified() {
        let out = solve_tu_lp(&lp)?;
        if !out.integral {
            return Err(Error::FractionalSolution(out.max_deviation));
        }
        let groups: Vec<usize> = (0..s.num_groups())
            .filter(|&j| out.u[s.ground_size() + j] > 0.5)
            .collect();
        Ok(selection_from_groups(s, w, &groups))
    } else {
        brute_force_regularized(s, w, lambda)
    }
}

/// Exhaustive maximization of the regularized objective; ties go to more
/// groups, then to the lexicographically smallest group set.
pub fn brute_force_regularized(s: &GroupStructure, w: &WeightVector, lambda: f64) -> Result<Selection> {
    w.check_len(s.ground_size())?;
    let m = s.num_groups();
    if m > BRUTE_FORCE_GROUP_CAP {
        return Err(Error::InstanceTooLarge {
            size: m,
            cap: BRUTE_FORCE_GROUP_CAP,
        });
    }
    let evaluate = |mask: u64| {
        let mut union = vec![false; s.ground_size()];
        for j in (0..m).filter(|j| mask >> j & 1 == 1) {
            for &i in s.group(j) {
                union[i] = true;
            }
        }
        let gain = (0..s.ground_size()).filter(|&i| union[i]).fold(0.0, |acc, i| acc + w[i]);
        Some((gain - lambda * mask.count_ones() as f64, mask))
    };
    let better = |a: &(f64, u64), b: &(f64, u64)| {
        if (a.0 - b.0).abs() > 1e-12 {
            return a.0 > b.0;
        }
        if a.1.count_ones() != b.1.count_ones() {
            return a.1.count_ones() > b.1.count_ones();
        }
        a.1 != b.1 && a.1 >> (a.1 ^ b.1).trailing_zeros() & 1 == 1
    };
    let (_, mask) = reduce_range(Exec::default(), 1u64 << m, evaluate, better)
        .expect("the empty selection is always a candidate");
    let groups: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
    Ok(selection_from_groups(s, w, &groups))
}

pub(crate) fn selection_from_groups(s: &GroupStructure, w: &WeightVector, groups: &[usize]) -> Selection {
    let mut union = vec![false; s.ground_size()];
    for &j in groups {
        for &i in s.group(j) {
            union[i] = true;
        }
    }
    let elements: Vec<usize> = (0..s.ground_size()).filter(|&i| union[i]).collect();
    Selection::from_parts(s.num_groups(), groups, &elements, w)
}

/// Maximizes `Σ_v (weight_v − λ) y_v` over rooted-connected node sets through
/// the relaxation `y_child ≤ y_parent`, `0 ≤ y ≤ 1`, whose constraint table is
/// a network matrix. Ties go to larger sets. Returns the sorted node list.
pub fn solve_tree_regularized(t: &TreeModel, lambda: f64) -> Result<Vec<usize>> {
    let n = t.len();
    let c: Vec<f64> = t.weights().iter().map(|w| w - lambda).collect();
    let a: Vec<Vec<f64>> = (0..n)
        .filter_map(|v| t.tree().parent(v).map(|p| (v, p)))
        .map(|(v, p)| {
            let mut row = vec![0.0; n];
            row[v] = 1.0;
            row[p] = -1.0;
            row
        })
        .collect();
    let rows = a.len();
    let sol = maximize(
        &BoxLp {
            c,
            a,
            b: vec![0.0; rows],
            upper: vec![1.0; n],
        },
        Some(&vec![1.0; n]),
    )?;
    let dev = sol.x.iter().map(|v| (v - v.round()).abs()).fold(0.0, f64::max);
    if dev > INTEGRALITY_TOL {
        return Err(Error::FractionalSolution(dev));
    }
    Ok((0..n).filter(|&v| sol.x[v] > 0.5).collect())
}
