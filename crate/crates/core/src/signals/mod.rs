//! Signal utilities: supports, cover-based approximation, the orthonormal Haar
//! transform, a seeded piecewise-constant generator, and group structures
//! derived from trees.

mod haar;
mod io;

pub use haar::{haar_forward, haar_inverse, haar_parent, haar_tree, HaarCoefficients};
pub use io::{parse_signal, read_signal, signal_to_csv, write_haar_csv, write_signal};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Selection;
use crate::structure::GroupStructure;
use crate::tree::TreeModel;

/// `true` exactly where `x` is nonzero. No tolerance is applied.
pub fn indicator(x: &[f64]) -> Vec<bool> {
    x.iter().map(|v| *v != 0.0).collect()
}

/// Zeroes every entry with magnitude below `threshold`.
pub fn threshold(x: &[f64], threshold: f64) -> Vec<f64> {
    x.iter().map(|&v| if v.abs() < threshold { 0.0 } else { v }).collect()
}

/// Keeps `x` on the selected elements and zeroes the rest.
///
/// For selections whose elements are the union of their groups this is the
/// restriction of `x` to that union; in general it satisfies
/// `‖x − x̂‖² = ‖x‖² − objective` when the weights are `x_i²`.
pub fn approximate_from_cover(x: &[f64], sel: &Selection) -> Result<Vec<f64>> {
    if x.len() != sel.active_elements.len() {
        return Err(Error::DimensionMismatch {
            expected: sel.active_elements.len(),
            actual: x.len(),
        });
    }
    Ok(x.iter()
        .zip(&sel.active_elements)
        .map(|(&v, &y)| if y { v } else { 0.0 })
        .collect())
}

pub fn squared_error(x: &[f64], xhat: &[f64]) -> f64 {
    x.iter().zip(xhat).fold(0.0, |acc, (a, b)| acc + (a - b) * (a - b))
}

pub fn energy(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc, v| acc + v * v)
}

/// Piecewise-constant signal of length `n` with exactly `pieces` segments.
///
/// Generator (ChaCha8, `seed_from_u64(seed)`), in draw order:
/// 1. breakpoints: repeat `b = 1 + next_u64() % (n − 1)`, discarding repeats,
///    until `pieces − 1` distinct values are collected; a segment starts at each;
/// 2. levels, one per segment from left to right: `m = 1 + next_u64() % pieces`,
///    then `sign = next_u64() % 2` (1 means negative); a level equal to its left
///    neighbour is redrawn.
pub fn gen_piecewise_constant(n: usize, pieces: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if pieces == 0 || pieces > n {
        return Err(Error::InvalidArgument(format!(
            "pieces must lie in 1..={n}, got {pieces}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut breaks: Vec<usize> = Vec::with_capacity(pieces - 1);
    while breaks.len() + 1 < pieces {
        let b = 1 + (rng.next_u64() % (n as u64 - 1)) as usize;
        if !breaks.contains(&b) {
            breaks.push(b);
        }
    }
    breaks.sort_unstable();
    let span = pieces.max(2) as u64;
    let mut levels: Vec<f64> = Vec::with_capacity(pieces);
    while levels.len() < pieces {
        let mag = 1 + rng.next_u64() % span;
        let neg = rng.next_u64() % 2 == 1;
        let level = if neg { -(mag as f64) } else { mag as f64 };
        if levels.last() != Some(&level) {
            levels.push(level);
        }
    }
    let mut x = vec![0.0; n];
    let mut seg = 0;
    for (i, v) in x.iter_mut().enumerate() {
        while seg < breaks.len() && breaks[seg] <= i {
            seg += 1;
        }
        *v = levels[seg];
    }
    Ok(x)
}

/// A generated signal whose Haar support has a prescribed size and is
/// rooted-connected, with the generator inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct StandIn {
    pub seed: u64,
    pub pieces: usize,
    pub signal: Vec<f64>,
    pub coefficients: HaarCoefficients,
}

/// Magnitude below which a Haar coefficient counts as zero.
pub const HAAR_ZERO_TOL: f64 = 1e-9;

/// First `(seed, pieces)` pair, scanning seeds from `first_seed` and, for
/// each, pieces from 2 upwards, whose Haar support has exactly `sparsity`
/// entries and is rooted-connected. Coefficients under [`HAAR_ZERO_TOL`] are
/// set to zero.
pub fn find_stand_in(n: usize, sparsity: usize, first_seed: u64, max_seeds: u64) -> Result<StandIn> {
    for seed in first_seed..first_seed.saturating_add(max_seeds) {
        for pieces in 2..=n.min(sparsity + 1) {
            let x = gen_piecewise_constant(n, pieces, seed)?;
            let mut c = haar_forward(&x)?;
            c.values = threshold(&c.values, HAAR_ZERO_TOL);
            let support: Vec<usize> = (0..n).filter(|&i| c.values[i] != 0.0).collect();
            if support.len() == sparsity
                && support.contains(&0)
                && support.iter().all(|&i| haar_parent(i).is_none_or(|p| c.values[p] != 0.0))
            {
                let signal = haar_inverse(&c)?;
                let coefficients = HaarCoefficients::new(c.values)?;
                return Ok(StandIn {
                    seed,
                    pieces,
                    signal,
                    coefficients,
                });
            }
        }
    }
    Err(Error::InvalidArgument(format!(
        "no signal with a {sparsity}-sparse rooted Haar support among {max_seeds} seeds"
    )))
}

/// One group per node: the node and all its ancestors.
pub fn hierarchy_groups(t: &TreeModel) -> GroupStructure {
    let groups = (0..t.len()).map(|v| t.tree().path_to_root(v)).collect();
    GroupStructure::new(t.len(), groups).expect("root paths form a valid structure")
}

/// `{root}` followed by `{parent, child}` for every non-root node in index order.
pub fn parent_child_groups(t: &TreeModel) -> GroupStructure {
    let mut groups = vec![vec![t.root()]];
    for v in 0..t.len() {
        if let Some(p) = t.tree().parent(v) {
            groups.push(vec![p, v]);
        }
    }
    GroupStructure::new(t.len(), groups).expect("tree edges form a valid structure")
}
