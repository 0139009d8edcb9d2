use super::classify::{classify, StructureTag, Witness};
use super::GroupStructure;
use crate::error::{Error, Result};
use crate::exact::dp::{solve_groups, DpOptions};

/// Largest number of groups handled by exhaustive search on general structures.
pub const BRUTE_FORCE_GROUP_CAP: usize = 20;

/// A minimum-size set of groups covering a signal's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCover {
    /// Number of groups, the group ℓ0 "norm" of the signal.
    pub norm: usize,
    /// Group indices in increasing order.
    pub groups: Vec<usize>,
}

/// True when every nonzero entry of `x` lies in one of the `active` groups.
pub fn is_group_cover(s: &GroupStructure, active: &[usize], x: &[f64]) -> Result<bool> {
    if x.len() != s.ground_size() {
        return Err(Error::DimensionMismatch {
            expected: s.ground_size(),
            actual: x.len(),
        });
    }
    let mut covered = vec![false; s.ground_size()];
    for &j in active {
        if j >= s.num_groups() {
            return Err(Error::InvalidArgument(format!("no group {}", j + 1)));
        }
        for &i in s.group(j) {
            covered[i] = true;
        }
    }
    Ok(x.iter().zip(&covered).all(|(v, c)| *v == 0.0 || *c))
}

/// Minimum number of groups covering `supp(x)`, with the lexicographically
/// smallest such cover.
///
/// Loopless pairwise structures use the coverage DP, hierarchical ones a direct
/// tree argument, and anything else exhaustive search over at most
/// [`BRUTE_FORCE_GROUP_CAP`] groups.
pub fn group_l0_norm(s: &GroupStructure, x: &[f64]) -> Result<GroupCover> {
    if x.len() != s.ground_size() {
        return Err(Error::DimensionMismatch {
            expected: s.ground_size(),
            actual: x.len(),
        });
    }
    let support: Vec<bool> = x.iter().map(|v| *v != 0.0).collect();
    if !support.contains(&true) {
        return Ok(GroupCover {
            norm: 0,
            groups: Vec::new(),
        });
    }
    let class = classify(s);
    let groups = match (&class.tag, &class.witness) {
        (StructureTag::LooplessPairwise, _) => dp_cover(s, &support),
        (StructureTag::Hierarchical, Witness::Hierarchy { tree, group_of_node }) => {
            hierarchy_cover(tree, group_of_node, &support)
        }
        _ => brute_cover(s, &support)?,
    };
    Ok(GroupCover {
        norm: groups.len(),
        groups,
    })
}

/// Can `support \ covered` be covered by at most `budget` groups drawn from
/// `candidates`?
fn dp_can_cover(
    s: &GroupStructure,
    candidates: &[usize],
    uncovered: &[bool],
    budget: usize,
) -> bool {
    let need = uncovered.iter().filter(|b| **b).count();
    if need == 0 {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let groups: Vec<Vec<usize>> = candidates.iter().map(|&j| s.group(j).to_vec()).collect();
    let w: Vec<f64> = uncovered.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    let (sel, _) = solve_groups(
        s.ground_size(),
        &groups,
        &w,
        budget.min(groups.len()),
        s.ground_size(),
        DpOptions::default(),
    );
    sel.objective >= need as f64 - 0.5
}

fn dp_cover(s: &GroupStructure, support: &[bool]) -> Vec<usize> {
    let m = s.num_groups();
    let all: Vec<usize> = (0..m).collect();
    let norm = (1..=m)
        .find(|&g| dp_can_cover(s, &all, support, g))
        .expect("all groups cover everything");

    // build the lexicographically smallest cover one group at a time
    let mut chosen = Vec::with_capacity(norm);
    let mut uncovered = support.to_vec();
    let mut j = 0;
    while chosen.len() < norm {
        let mut after = uncovered.clone();
        for &i in s.group(j) {
            after[i] = false;
        }
        let rest: Vec<usize> = (j + 1..m).collect();
        if dp_can_cover(s, &rest, &after, norm - chosen.len() - 1) {
            chosen.push(j);
            uncovered = after;
        }
        j += 1;
    }
    chosen
}

/// In a hierarchy every group is a root path. Each supported node with no
/// supported descendant needs its own group, any group below it will do, and
/// the smallest such group index gives the lexicographically smallest cover.
fn hierarchy_cover(tree: &crate::tree::Forest, group_of_node: &[usize], support: &[bool]) -> Vec<usize> {
    let n = tree.len();
    let mut has_support_below = vec![false; n];
    let mut min_group_below = group_of_node.to_vec();
    for v in tree.post_order() {
        if let Some(p) = tree.parent(v) {
            has_support_below[p] |= support[v] || has_support_below[v];
            min_group_below[p] = min_group_below[p].min(min_group_below[v]);
        }
    }
    let mut groups: Vec<usize> = (0..n)
        .filter(|&v| support[v] && !has_support_below[v])
        .map(|v| min_group_below[v])
        .collect();
    groups.sort_unstable();
    groups
}

fn brute_cover(s: &GroupStructure, support: &[bool]) -> Result<Vec<usize>> {
    let m = s.num_groups();
    if m > BRUTE_FORCE_GROUP_CAP {
        return Err(Error::InstanceTooLarge {
            size: m,
            cap: BRUTE_FORCE_GROUP_CAP,
        });
    }
    let target: Vec<usize> = (0..s.ground_size()).filter(|&i| support[i]).collect();
    for size in 1..=m {
        // combinations of `size` groups in lexicographic order
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut covered = vec![false; s.ground_size()];
            for &j in &combo {
                for &i in s.group(j) {
                    covered[i] = true;
                }
            }
            if target.iter().all(|&i| covered[i]) {
                return Ok(combo);
            }
            let Some(pos) = (0..size).rev().find(|&p| combo[p] < m - size + p) else {
                break;
            };
            combo[pos] += 1;
            for q in pos + 1..size {
                combo[q] = combo[q - 1] + 1;
            }
        }
    }
    unreachable!("the full collection covers every element")
}
