//! Exhaustive oracles. Only meant for small instances and cross-checks.

use std::cmp::Ordering;

use super::hier::HierSelection;
use super::selection::{top_k_weight, Selection, WeightVector};
use crate::error::{Error, Result};
use crate::par::{reduce_range, Exec};
use crate::structure::{GroupStructure, BRUTE_FORCE_GROUP_CAP};
use crate::tree::TreeModel;

/// Largest tree handled by [`brute_force_hier`].
pub const BRUTE_FORCE_TREE_CAP: usize = 18;

/// Best selection over every subset of at most `g` groups, keeping the `k`
/// heaviest covered elements (all of them when `k` is `None`).
///
/// Ties go to fewer groups, then to the lexicographically smallest group set.
pub fn brute_force_wmc(
    s: &GroupStructure,
    w: &WeightVector,
    g: usize,
    k: Option<usize>,
) -> Result<Selection> {
    brute_force_wmc_with(Exec::default(), s, w, g, k)
}

pub fn brute_force_wmc_with(
    exec: Exec,
    s: &GroupStructure,
    w: &WeightVector,
    g: usize,
    k: Option<usize>,
) -> Result<Selection> {
    w.check_len(s.ground_size())?;
    let m = s.num_groups();
    if m > BRUTE_FORCE_GROUP_CAP {
        return Err(Error::InstanceTooLarge {
            size: m,
            cap: BRUTE_FORCE_GROUP_CAP,
        });
    }
    let k = k.unwrap_or(s.ground_size());
    let evaluate = |mask: u64| {
        if mask.count_ones() as usize > g {
            return None;
        }
        let mut union = vec![false; s.ground_size()];
        for j in (0..m).filter(|j| mask >> j & 1 == 1) {
            for &i in s.group(j) {
                union[i] = true;
            }
        }
        let covered: Vec<usize> = (0..s.ground_size()).filter(|&i| union[i]).collect();
        let (value, elements) = top_k_weight(&covered, w, k);
        Some((value, mask, elements))
    };
    let (_, mask, elements) = reduce_range(exec, 1u64 << m, evaluate, |a, b| {
        better_masked(a.0, a.1, b.0, b.1) == Ordering::Greater
    })
    .expect("the empty selection is always a candidate");
    let groups: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
    Ok(Selection::from_parts(m, &groups, &elements, w))
}

/// Total order on (value, subset mask): higher value, then fewer members, then
/// the lexicographically smaller sorted member list.
fn better_masked(va: f64, ma: u64, vb: f64, mb: u64) -> Ordering {
    va.total_cmp(&vb)
        .then(mb.count_ones().cmp(&ma.count_ones()))
        .then_with(|| lex_smaller(ma, mb))
}

/// `Greater` when the member list of `a` is lexicographically smaller.
fn lex_smaller(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    // first differing member decides; the set holding it is smaller
    let lowest = (a ^ b).trailing_zeros();
    if a >> lowest & 1 == 1 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Heaviest rooted-connected subtree with at most `k` nodes, by enumeration.
/// Ties go to fewer nodes, then to the lexicographically smallest node set.
pub fn brute_force_hier(t: &TreeModel, k: usize) -> Result<HierSelection> {
    let n = t.len();
    if n > BRUTE_FORCE_TREE_CAP {
        return Err(Error::InstanceTooLarge {
            size: n,
            cap: BRUTE_FORCE_TREE_CAP,
        });
    }
    let root = t.root();
    let parents = t.tree().parents();
    let evaluate = |mask: u64| {
        if mask.count_ones() as usize > k || mask >> root & 1 == 0 {
            return None;
        }
        let closed = (0..n)
            .filter(|v| mask >> v & 1 == 1)
            .all(|v| parents[v].is_none_or(|p| mask >> p & 1 == 1));
        if !closed {
            return None;
        }
        let value = (0..n).filter(|v| mask >> v & 1 == 1).fold(0.0, |acc, v| acc + t.weight(v));
        Some((value, mask))
    };
    let (objective, mask) = reduce_range(Exec::default(), 1u64 << n, evaluate, |a, b| {
        better_masked(a.0, a.1, b.0, b.1) == Ordering::Greater
    })
    .expect("the root alone is always a candidate");
    let nodes = (0..n).filter(|v| mask >> v & 1 == 1).collect();
    Ok(HierSelection { nodes, objective })
}
