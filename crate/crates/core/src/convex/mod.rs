//! Convex group-norm baselines: latent group lasso by block coordinate
//! descent, and the tree-structured group lasso proximal operator.

use crate::error::{Error, Result};
use crate::structure::GroupStructure;
use crate::tree::TreeModel;

/// Threshold on a component norm for a group to count as active.
pub const SUPPORT_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexOptions {
    /// Stop once the largest block change of a sweep falls below this.
    pub tol: f64,
    pub max_sweeps: usize,
    pub support_eps: f64,
}

impl Default for ConvexOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_sweeps: 100_000,
            support_eps: SUPPORT_EPS,
        }
    }
}

/// Per-group components `v^j` (each of length N, zero outside `G_j`).
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub components: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexResult {
    pub approximation: Vec<f64>,
    /// Present for the latent formulation only.
    pub decomposition: Option<Decomposition>,
    /// Active groups, increasing.
    pub strong_support: Vec<usize>,
    pub iterations: usize,
    pub final_objective: f64,
    /// Objective after each sweep.
    pub objective_trace: Vec<f64>,
}

/// `min ½‖x − Σ_j v^j‖² + λ Σ_j d_j ‖v^j‖₂` over components supported on the groups.
pub fn latent_group_lasso(s: &GroupStructure, x: &[f64], lambda: f64, d: &[f64]) -> Result<ConvexResult> {
    latent_group_lasso_with(s, x, lambda, d, ConvexOptions::default())
}

pub fn latent_group_lasso_with(
    s: &GroupStructure,
    x: &[f64],
    lambda: f64,
    d: &[f64],
    opts: ConvexOptions,
) -> Result<ConvexResult> {
    let (n, m) = (s.ground_size(), s.num_groups());
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    if d.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: d.len(),
        });
    }
    if !(lambda > 0.0 && lambda.is_finite()) || d.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(
            "penalty and group weights must be positive".into(),
        ));
    }

    let mut comps: Vec<Vec<f64>> = (0..m).map(|j| vec![0.0; s.group(j).len()]).collect();
    let mut sum = vec![0.0; n];
    let objective = |comps: &[Vec<f64>], sum: &[f64]| {
        let fit: f64 = x.iter().zip(sum).map(|(a, b)| (a - b) * (a - b)).sum();
        let pen: f64 = comps.iter().zip(d).map(|(v, dj)| dj * norm(v)).sum();
        0.5 * fit + lambda * pen
    };
    let mut trace = Vec::new();
    let mut sweeps = 0;
    loop {
        let mut change: f64 = 0.0;
        for j in 0..m {
            let g = s.group(j);
            let r: Vec<f64> = g
                .iter()
                .zip(&comps[j])
                .map(|(&i, &vi)| x[i] - sum[i] + vi)
                .collect();
            let new = soft_threshold(&r, lambda * d[j]);
            let mut delta = 0.0;
            for (k, &i) in g.iter().enumerate() {
                let diff = new[k] - comps[j][k];
                sum[i] += diff;
                delta += diff * diff;
            }
            comps[j] = new;
            change = change.max(delta.sqrt());
        }
        sweeps += 1;
        trace.push(objective(&comps, &sum));
        if change < opts.tol {
            break;
        }
        if sweeps >= opts.max_sweeps {
            return Err(Error::NonConvergence {
                iterations: sweeps,
                change,
            });
        }
    }

    // recompute the sum from the components so the two agree exactly
    let mut approximation = vec![0.0; n];
    let mut components = Vec::with_capacity(m);
    for (j, v) in comps.iter().enumerate() {
        let mut full = vec![0.0; n];
        for (k, &i) in s.group(j).iter().enumerate() {
            full[i] = v[k];
            approximation[i] += v[k];
        }
        components.push(full);
    }
    let strong_support = (0..m).filter(|&j| norm(&comps[j]) > opts.support_eps).collect();
    Ok(ConvexResult {
        approximation,
        decomposition: Some(Decomposition {
            components,
            weights: d.to_vec(),
            lambda,
        }),
        strong_support,
        iterations: sweeps,
        final_objective: *trace.last().expect("at least one sweep"),
        objective_trace: trace,
    })
}

/// Proximal operator of `λ Σ_j ‖z_{G_j}‖₂` where `G_j` is node `j` together
/// with all its descendants, evaluated by group soft-thresholding the subtrees
/// once each, children before parents.
///
/// The support is reported at group level: node `j` is active when its subtree
/// carries norm above [`SUPPORT_EPS`]. That set is always rooted-connected.
pub fn hierarchical_group_lasso(t: &TreeModel, x: &[f64], lambda: f64) -> Result<ConvexResult> {
    let n = t.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "penalty must be non-negative, got {lambda}"
        )));
    }
    let tree = t.tree();
    let subtrees: Vec<Vec<usize>> = (0..n).map(|v| tree.subtree(v)).collect();
    let mut z = x.to_vec();
    for v in tree.post_order() {
        let nrm = subtrees[v].iter().map(|&i| z[i] * z[i]).sum::<f64>().sqrt();
        let scale = if nrm > lambda { 1.0 - lambda / nrm } else { 0.0 };
        for &i in &subtrees[v] {
            z[i] *= scale;
        }
    }
    let final_objective = tree_group_objective(&subtrees, x, &z, lambda);
    let strong_support = (0..n)
        .filter(|&v| subtrees[v].iter().map(|&i| z[i] * z[i]).sum::<f64>().sqrt() > SUPPORT_EPS)
        .collect();
    Ok(ConvexResult {
        approximation: z,
        decomposition: None,
        strong_support,
        iterations: 1,
        final_objective,
        objective_trace: vec![final_objective],
    })
}

/// `½‖x − z‖² + λ Σ_v ‖z_{subtree(v)}‖₂`.
pub fn tree_group_lasso_objective(t: &TreeModel, x: &[f64], z: &[f64], lambda: f64) -> f64 {
    let subtrees: Vec<Vec<usize>> = (0..t.len()).map(|v| t.tree().subtree(v)).collect();
    tree_group_objective(&subtrees, x, z, lambda)
}

fn tree_group_objective(subtrees: &[Vec<usize>], x: &[f64], z: &[f64], lambda: f64) -> f64 {
    let fit: f64 = x.iter().zip(z).map(|(a, b)| (a - b) * (a - b)).sum();
    let pen: f64 = subtrees
        .iter()
        .map(|g| g.iter().map(|&i| z[i] * z[i]).sum::<f64>().sqrt())
        .sum();
    0.5 * fit + lambda * pen
}

/// Keeps `x` on `support` and zeroes everything else.
pub fn refit_support(x: &[f64], support: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for &i in support {
        out[i] = x[i];
    }
    out
}

/// Nodes in `support` whose parent is not in `support` (the root never counts).
pub fn count_hierarchy_violations(t: &TreeModel, support: &[usize]) -> usize {
    let mut inside = vec![false; t.len()];
    for &v in support {
        inside[v] = true;
    }
    support
        .iter()
        .filter(|&&v| t.tree().parent(v).is_some_and(|p| !inside[p]))
        .count()
}

/// Indices whose magnitude exceeds `eps`.
pub fn support_of(x: &[f64], eps: f64) -> Vec<usize> {
    (0..x.len()).filter(|&i| x[i].abs() > eps).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn soft_threshold(r: &[f64], tau: f64) -> Vec<f64> {
    let nrm = norm(r);
    if nrm <= tau {
        vec![0.0; r.len()]
    } else {
        let scale = 1.0 - tau / nrm;
        r.iter().map(|v| v * scale).collect()
    }
}
