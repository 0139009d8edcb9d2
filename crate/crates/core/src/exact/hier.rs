//! Rooted-connected subtree selection with a node budget.

use crate::error::{Error, Result};
use crate::tree::TreeModel;

/// Nodes of a rooted-connected subtree (sorted) and their total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct HierSelection {
    pub nodes: Vec<usize>,
    pub objective: f64,
}

/// Heaviest rooted-connected subtree with at most `k` nodes.
///
/// Bottom-up knapsack over children: `F(v, b)` is the best weight of a subtree
/// rooted at `v` using at most `b` nodes, with `F(v, 0) = 0`. Children are
/// merged one at a time; ties keep the smaller allocation, so among optimal
/// subtrees the one with fewer nodes is returned. Budgets above the node count
/// are clamped.
pub fn solve_hierarchical_dp(t: &TreeModel, k: usize) -> Result<HierSelection> {
    if k == 0 {
        return Err(Error::BudgetOutOfRange {
            name: "K",
            value: k,
            max: t.len(),
        });
    }
    let k = k.min(t.len());
    let tree = t.tree();
    let mut best: Vec<Vec<f64>> = vec![Vec::new(); t.len()];
    // alloc[c][b]: nodes given to child c when its parent's running budget is b
    let mut alloc: Vec<Vec<usize>> = vec![Vec::new(); t.len()];
    for v in tree.post_order() {
        let mut cur = vec![t.weight(v); k + 1];
        cur[0] = 0.0;
        for &c in tree.children(v) {
            let fc = &best[c];
            let mut next = cur.clone();
            let mut choice = vec![0usize; k + 1];
            for b in 2..=k {
                for a in 1..b {
                    let val = cur[b - a] + fc[a];
                    if val > next[b] {
                        next[b] = val;
                        choice[b] = a;
                    }
                }
            }
            cur = next;
            alloc[c] = choice;
        }
        best[v] = cur;
    }

    let root = t.root();
    let mut nodes = Vec::new();
    let mut stack = vec![(root, k)];
    while let Some((v, mut b)) = stack.pop() {
        if b == 0 {
            continue;
        }
        nodes.push(v);
        for &c in tree.children(v).iter().rev() {
            let a = alloc[c][b];
            stack.push((c, a));
            b -= a;
        }
    }
    nodes.sort_unstable();
    let objective = nodes.iter().fold(0.0, |acc, &v| acc + t.weight(v));
    Ok(HierSelection { nodes, objective })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_one_is_the_root() {
        let t = TreeModel::from_parents(vec![None, Some(0), Some(0)], vec![2.0, 5.0, 1.0]).unwrap();
        let sel = solve_hierarchical_dp(&t, 1).unwrap();
        assert_eq!(sel.nodes, vec![0]);
        assert_eq!(sel.objective, 2.0);
    }

    #[test]
    fn path_needs_the_middle_node() {
        let t = TreeModel::from_parents(vec![None, Some(0), Some(1)], vec![1.0, 0.0, 9.0]).unwrap();
        let sel = solve_hierarchical_dp(&t, 2).unwrap();
        assert_eq!(sel.objective, 1.0);
        assert_eq!(sel.nodes, vec![0]);
        let sel = solve_hierarchical_dp(&t, 3).unwrap();
        assert_eq!(sel.nodes, vec![0, 1, 2]);
        assert_eq!(sel.objective, 10.0);
    }

    #[test]
    fn star_picks_heaviest_leaves() {
        let t = TreeModel::from_parents(
            vec![None, Some(0), Some(0), Some(0)],
            vec![0.0, 3.0, 2.0, 1.0],
        )
        .unwrap();
        let sel = solve_hierarchical_dp(&t, 3).unwrap();
        assert_eq!(sel.nodes, vec![0, 1, 2]);
        assert_eq!(sel.objective, 5.0);
        let all = solve_hierarchical_dp(&t, 10).unwrap();
        assert_eq!(all.objective, 6.0);
    }

    #[test]
    fn zero_budget_is_rejected() {
        let t = TreeModel::from_parents(vec![None], vec![1.0]).unwrap();
        assert!(solve_hierarchical_dp(&t, 0).is_err());
    }
}
