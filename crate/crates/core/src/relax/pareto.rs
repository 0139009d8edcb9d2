//! Pareto frontier of covered weight against the group budget, its upper
//! convex hull, and which frontier points the λ-regularized problem reaches.

use std::io::Write;

use super::lp::{solve_regularized, solve_tree_regularized};
use crate::error::{Error, Result};
use crate::exact::{brute_force_wmc, solve_hierarchical_dp, solve_wmc_dp, Selection, WeightVector};
use crate::par::{map_range, map_slice, Exec};
use crate::structure::{classify, GroupStructure, StructureTag};
use crate::tree::TreeModel;

/// Cross-product tolerance for hull membership.
pub const HULL_TOL: f64 = 1e-9;

/// How the frontier values `f(G)` are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontierSolver {
    /// Coverage DP; needs a loopless pairwise structure.
    Dp,
    /// Exhaustive search over group subsets.
    Oracle,
    /// DP when the structure allows it, otherwise the oracle.
    Auto,
}

/// Points `(G, f(G))` for `G = 1..=M` (or `K = 1..=N` for tree frontiers).
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFrontier {
    pub points: Vec<(usize, f64)>,
    pub hull_flags: Vec<bool>,
    pub selections: Vec<Selection>,
    /// λ values from a sweep whose solution lands on each point.
    pub lambda_attaining: Vec<Vec<f64>>,
}

pub fn pareto_frontier(s: &GroupStructure, w: &WeightVector, solver: FrontierSolver) -> Result<ParetoFrontier> {
    pareto_frontier_with(Exec::default(), s, w, solver)
}

pub fn pareto_frontier_with(
    exec: Exec,
    s: &GroupStructure,
    w: &WeightVector,
    solver: FrontierSolver,
) -> Result<ParetoFrontier> {
    w.check_len(s.ground_size())?;
    let use_dp = match solver {
        FrontierSolver::Dp => true,
        FrontierSolver::Oracle => false,
        FrontierSolver::Auto => classify(s).tag == StructureTag::LooplessPairwise,
    };
    let solved: Vec<Result<Selection>> = map_range(exec, s.num_groups(), |idx| {
        let g = idx + 1;
        if use_dp {
            solve_wmc_dp(s, w, g)
        } else {
            brute_force_wmc(s, w, g, None)
        }
    });
    let selections = solved.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ParetoFrontier::from_selections(selections))
}

/// Frontier over the node budget `K = 1..=N` of rooted-connected subtrees.
///
/// Selections are expressed over the ancestor-path groups of the tree (group
/// `v` is node `v` plus its ancestors), so selecting `K` nodes selects `K` groups.
pub fn hierarchical_frontier(t: &TreeModel) -> Result<ParetoFrontier> {
    hierarchical_frontier_with(Exec::default(), t)
}

pub fn hierarchical_frontier_with(exec: Exec, t: &TreeModel) -> Result<ParetoFrontier> {
    let n = t.len();
    let solved: Vec<Result<_>> = map_range(exec, n, |idx| solve_hierarchical_dp(t, idx + 1));
    let w = WeightVector::new(t.weights().to_vec())?;
    let selections = solved
        .into_iter()
        .map(|r| r.map(|h| Selection::from_parts(n, &h.nodes, &h.nodes, &w)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ParetoFrontier::from_selections(selections))
}

impl ParetoFrontier {
    fn from_selections(selections: Vec<Selection>) -> Self {
        let points: Vec<(usize, f64)> = selections
            .iter()
            .enumerate()
            .map(|(idx, sel)| (idx + 1, sel.objective))
            .collect();
        let hull_flags = hull_flags(&points);
        let lambda_attaining = vec![Vec::new(); points.len()];
        Self {
            points,
            hull_flags,
            selections,
            lambda_attaining,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn value(&self, budget: usize) -> Option<f64> {
        budget
            .checked_sub(1)
            .and_then(|idx| self.points.get(idx))
            .map(|p| p.1)
    }

    /// Budgets of the hull vertices (origin excluded), increasing.
    pub fn hull_vertices(&self) -> Vec<usize> {
        let mut pts = vec![(0usize, 0.0)];
        pts.extend_from_slice(&self.points);
        upper_hull(&pts).into_iter().filter(|&i| i > 0).map(|i| pts[i].0).collect()
    }

    /// Points that the regularized problem can single out: hull vertices whose
    /// left slope exceeds both the right slope and zero.
    pub fn strictly_supported(&self) -> Vec<usize> {
        let verts = self.hull_vertices();
        let mut chain = vec![(0usize, 0.0f64)];
        chain.extend(verts.iter().map(|&g| (g, self.points[g - 1].1)));
        let slope = |a: (usize, f64), b: (usize, f64)| (b.1 - a.1) / (b.0 - a.0) as f64;
        (1..chain.len())
            .filter(|&i| {
                let left = slope(chain[i - 1], chain[i]);
                let right = if i + 1 < chain.len() {
                    slope(chain[i], chain[i + 1]).max(0.0)
                } else {
                    0.0
                };
                left > right + HULL_TOL
            })
            .map(|i| chain[i].0)
            .collect()
    }

    /// Grid of penalties that reaches every strictly supported hull vertex:
    /// each hull slope perturbed by ±1e-6, midpoints of consecutive slopes, one
    /// value above the steepest slope and one below the flattest. Only positive
    /// values are kept; the result is sorted and deduplicated.
    pub fn lambda_grid(&self) -> Vec<f64> {
        let verts = self.hull_vertices();
        let mut chain = vec![(0usize, 0.0f64)];
        chain.extend(verts.iter().map(|&g| (g, self.points[g - 1].1)));
        let slopes: Vec<f64> = chain
            .windows(2)
            .map(|p| (p[1].1 - p[0].1) / (p[1].0 - p[0].0) as f64)
            .collect();
        let mut grid = Vec::new();
        for (i, &sl) in slopes.iter().enumerate() {
            grid.push(sl - 1e-6);
            grid.push(sl + 1e-6);
            if let Some(&next) = slopes.get(i + 1) {
                grid.push(0.5 * (sl + next));
            }
        }
        if let Some(&first) = slopes.first() {
            grid.push(first + 1.0);
        }
        if let Some(&last) = slopes.last() {
            grid.push(0.5 * last);
        }
        grid.retain(|l| *l > 0.0 && l.is_finite());
        grid.sort_by(f64::total_cmp);
        grid.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        grid
    }

    /// Records which sweep results land on which frontier point.
    pub fn attach_sweep(&mut self, sweep: &[SweepPoint]) {
        for list in &mut self.lambda_attaining {
            list.clear();
        }
        for p in sweep {
            if let Some(list) = p
                .num_groups
                .checked_sub(1)
                .and_then(|idx| self.lambda_attaining.get_mut(idx))
            {
                list.push(p.lambda);
            }
        }
    }

    /// Budgets reached by at least one attached λ.
    pub fn attained(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&idx| !self.lambda_attaining[idx].is_empty())
            .map(|idx| idx + 1)
            .collect()
    }

    /// Writes `G,f_of_G,on_hull,lambda_attaining,group_indices`. The λ column
    /// holds the smallest attaining value (empty when none); group indices are
    /// 1-based and separated by semicolons.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Parse(e.to_string());
        wtr.write_record(["G", "f_of_G", "on_hull", "lambda_attaining", "group_indices"])
            .map_err(io)?;
        for rec in self.records() {
            wtr.write_record([
                rec.g.to_string(),
                rec.f_of_g.to_string(),
                rec.on_hull.to_string(),
                rec.lambda_attaining.map(|l| l.to_string()).unwrap_or_default(),
                rec.group_indices
                    .iter()
                    .map(|j| j.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            ])
            .map_err(io)?;
        }
        wtr.flush().map_err(|e| Error::Parse(e.to_string()))
    }

    /// One flat record per point, with 1-based group indices.
    pub fn records(&self) -> Vec<FrontierRecord> {
        (0..self.len())
            .map(|idx| FrontierRecord {
                g: self.points[idx].0,
                f_of_g: self.points[idx].1,
                on_hull: self.hull_flags[idx],
                lambda_attaining: self.lambda_attaining[idx]
                    .iter()
                    .copied()
                    .min_by(f64::total_cmp),
                group_indices: self.selections[idx].groups().iter().map(|j| j + 1).collect(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FrontierRecord {
    #[serde(rename = "G")]
    pub g: usize,
    pub f_of_g: f64,
    pub on_hull: bool,
    pub lambda_attaining: Option<f64>,
    pub group_indices: Vec<usize>,
}

/// Indices of the upper hull of points sorted by x (monotone chain), keeping
/// only strict turns.
fn upper_hull(pts: &[(usize, f64)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while hull.len() >= 2 {
            let (a, b) = (pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]]);
            if cross(a, b, pts[i]) >= -HULL_TOL {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    hull
}

fn cross(o: (usize, f64), a: (usize, f64), b: (usize, f64)) -> f64 {
    let (ax, ay) = (a.0 as f64 - o.0 as f64, a.1 - o.1);
    let (bx, by) = (b.0 as f64 - o.0 as f64, b.1 - o.1);
    ax * by - ay * bx
}

/// Marks points lying on the upper concave envelope of the points together
/// with the origin.
pub fn hull_flags(points: &[(usize, f64)]) -> Vec<bool> {
    let mut pts = vec![(0usize, 0.0)];
    pts.extend_from_slice(points);
    let hull = upper_hull(&pts);
    (1..pts.len())
        .map(|i| {
            hull.windows(2).any(|e| {
                let (a, b) = (pts[e[0]], pts[e[1]]);
                a.0 <= pts[i].0 && pts[i].0 <= b.0 && cross(a, b, pts[i]).abs() <= HULL_TOL
            })
        })
        .collect()
}

/// One regularized solve of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub lambda: f64,
    pub num_groups: usize,
    pub selection: Selection,
}

/// Solves the regularized problem for every λ in `grid`.
pub fn lambda_sweep(s: &GroupStructure, w: &WeightVector, grid: &[f64]) -> Result<Vec<SweepPoint>> {
    lambda_sweep_with(Exec::default(), s, w, grid)
}

pub fn lambda_sweep_with(exec: Exec, s: &GroupStructure, w: &WeightVector, grid: &[f64]) -> Result<Vec<SweepPoint>> {
    check_grid(grid)?;
    map_slice(exec, grid, |&lambda| {
        solve_regularized(s, w, lambda).map(|selection| SweepPoint {
            lambda,
            num_groups: selection.num_groups(),
            selection,
        })
    })
    .into_iter()
    .collect()
}

/// Node-penalized sweep over rooted-connected subtrees; `num_groups` is the
/// number of selected nodes.
pub fn hierarchical_lambda_sweep(t: &TreeModel, grid: &[f64]) -> Result<Vec<SweepPoint>> {
    check_grid(grid)?;
    let w = WeightVector::new(t.weights().to_vec())?;
    let n = t.len();
    map_slice(Exec::default(), grid, |&lambda| {
        solve_tree_regularized(t, lambda).map(|nodes| SweepPoint {
            lambda,
            num_groups: nodes.len(),
            selection: Selection::from_parts(n, &nodes, &nodes, &w),
        })
    })
    .into_iter()
    .collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(Error::InvalidArgument(
            "λ grid must be non-empty with positive finite values".into(),
        ));
    }
    Ok(())
}
