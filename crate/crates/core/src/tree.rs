//! Rooted trees and forests, D-values and the boundary-minimising visit order.

use crate::error::{Error, Result};
use crate::structure::GroupGraph;

/// A rooted forest over nodes `0..len`. Children lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
}

impl Forest {
    /// Builds a forest from parent links, rejecting out-of-range parents and cycles.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None => roots.push(v),
                Some(p) if p >= n => {
                    return Err(Error::InvalidTree(format!(
                        "parent {p} of node {v} out of range"
                    )))
                }
                Some(p) if p == v => {
                    return Err(Error::InvalidTree(format!("node {v} is its own parent")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let forest = Self {
            parent,
            children,
            roots,
        };
        let reached = forest.pre_order().len();
        if reached != n {
            return Err(Error::InvalidTree(format!(
                "{} nodes are not reachable from a root",
                n - reached
            )));
        }
        Ok(forest)
    }

    /// BFS spanning forest of a graph, each component rooted at its smallest node.
    pub fn from_graph(graph: &GroupGraph) -> Self {
        let n = graph.num_nodes();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in graph.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = Some(v);
                        queue.push_back(u);
                    }
                }
            }
        }
        Self::from_parents(parent).expect("BFS parents form a forest")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Largest number of children of any node.
    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Nodes in depth-first pre-order (roots in increasing order, children in order).
    pub fn pre_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<usize> = self.roots.iter().rev().copied().collect();
        let mut guard = vec![false; self.len()];
        while let Some(v) = stack.pop() {
            if guard[v] {
                continue;
            }
            guard[v] = true;
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Nodes ordered so that every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = self.pre_order();
        order.reverse();
        order
    }

    pub fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    /// `v` followed by its ancestors up to the root.
    pub fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path
    }

    /// `v` and all of its descendants, in pre-order.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }

    /// D-value of every node's subtree.
    ///
    /// A leaf has D = 1; otherwise, with child values sorted as D1 ≥ D2 ≥ ...,
    /// D = max(D1, D2 + 1) where a missing D2 counts as 0.
    pub fn dvalues(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.len()];
        for v in self.post_order() {
            let (mut first, mut second) = (0usize, 0usize);
            for &c in &self.children[v] {
                if d[c] > first {
                    second = first;
                    first = d[c];
                } else if d[c] > second {
                    second = d[c];
                }
            }
            d[v] = if first == 0 { 1 } else { first.max(second + 1) };
        }
        d
    }

    /// Smallest node index in each node's subtree.
    fn subtree_min(&self) -> Vec<usize> {
        let mut m: Vec<usize> = (0..self.len()).collect();
        for v in self.post_order() {
            if let Some(p) = self.parent[v] {
                m[p] = m[p].min(m[v]);
            }
        }
        m
    }

    /// Visit order that keeps few explored nodes adjacent to unexplored ones.
    ///
    /// For a node with child subtrees sorted by non-increasing D-value (ties by
    /// smallest contained index) T1, T2, ..., TR, the order is: T1 (recursively),
    /// the node itself, then T2..TR (recursively). Trees of a forest follow one
    /// another in root order.
    pub fn node_order(&self) -> Vec<usize> {
        let d = self.dvalues();
        let min_idx = self.subtree_min();
        enum Step {
            Visit(usize),
            Emit(usize),
        }
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<Step> = self.roots.iter().rev().map(|&r| Step::Visit(r)).collect();
        while let Some(step) = stack.pop() {
            match step {
                Step::Emit(v) => out.push(v),
                Step::Visit(v) => {
                    let mut kids = self.children[v].clone();
                    kids.sort_by(|&a, &b| d[b].cmp(&d[a]).then(min_idx[a].cmp(&min_idx[b])));
                    let Some((&first, rest)) = kids.split_first() else {
                        out.push(v);
                        continue;
                    };
                    for &c in rest.iter().rev() {
                        stack.push(Step::Visit(c));
                    }
                    stack.push(Step::Emit(v));
                    stack.push(Step::Visit(first));
                }
            }
        }
        out
    }
}

/// D-value of a forest: the largest D-value among its trees.
pub fn dvalue(forest: &Forest) -> usize {
    let d = forest.dvalues();
    forest.roots().iter().map(|&r| d[r]).max().unwrap_or(0)
}

/// See [`Forest::node_order`].
pub fn node_order(forest: &Forest) -> Vec<usize> {
    forest.node_order()
}

/// A rooted tree with a non-negative weight on every node.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeModel {
    tree: Forest,
    weights: Vec<f64>,
}

impl TreeModel {
    pub fn new(tree: Forest, weights: Vec<f64>) -> Result<Self> {
        if tree.roots().len() != 1 {
            return Err(Error::InvalidTree(format!(
                "expected a single root, found {}",
                tree.roots().len()
            )));
        }
        if weights.len() != tree.len() {
            return Err(Error::DimensionMismatch {
                expected: tree.len(),
                actual: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "node weights must be finite and non-negative, got {w}"
            )));
        }
        Ok(Self { tree, weights })
    }

    pub fn from_parents(parent: Vec<Option<usize>>, weights: Vec<f64>) -> Result<Self> {
        Self::new(Forest::from_parents(parent)?, weights)
    }

    pub fn tree(&self) -> &Forest {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.tree.roots()[0]
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn max_children(&self) -> usize {
        self.tree.max_children()
    }

    /// Same tree, new weights.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        Self::new(self.tree.clone(), weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_binary(levels: u32) -> Forest {
        let n = (1usize << levels) - 1;
        let parent = (0..n)
            .map(|v| if v == 0 { None } else { Some((v - 1) / 2) })
            .collect();
        Forest::from_parents(parent).unwrap()
    }

    #[test]
    fn dvalue_single_node_and_paths() {
        let single = Forest::from_parents(vec![None]).unwrap();
        assert_eq!(dvalue(&single), 1);
        for len in 2usize..10 {
            let parent = (0..len).map(|v| v.checked_sub(1)).collect();
            assert_eq!(dvalue(&Forest::from_parents(parent).unwrap()), 1);
        }
    }

    #[test]
    fn dvalue_complete_binary_equals_height() {
        for h in 1..8 {
            assert_eq!(dvalue(&complete_binary(h)), h as usize);
        }
    }

    #[test]
    fn node_order_examples() {
        let single = Forest::from_parents(vec![None]).unwrap();
        assert_eq!(node_order(&single), vec![0]);

        // root 0 with leaves 1, 2, 3
        let star = Forest::from_parents(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(node_order(&star), vec![1, 0, 2, 3]);

        // r(0) - u(1) - v(2)
        let path = Forest::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(node_order(&path), vec![2, 1, 0]);
    }

    #[test]
    fn node_order_puts_heavier_subtree_first() {
        // 0 has a leaf child 1 and a child 2 with two leaves (D=2)
        let t = Forest::from_parents(vec![None, Some(0), Some(0), Some(2), Some(2)]).unwrap();
        assert_eq!(node_order(&t), vec![3, 2, 4, 0, 1]);
    }

    #[test]
    fn rejects_cycles_and_bad_parents() {
        assert!(Forest::from_parents(vec![Some(1), Some(0)]).is_err());
        assert!(Forest::from_parents(vec![None, Some(5)]).is_err());
        assert!(TreeModel::from_parents(vec![None, None], vec![1.0, 1.0]).is_err());
        assert!(TreeModel::from_parents(vec![None], vec![-1.0]).is_err());
    }

    #[test]
    fn traversal_helpers() {
        let t = complete_binary(3);
        assert_eq!(t.pre_order(), vec![0, 1, 3, 4, 2, 5, 6]);
        assert_eq!(t.path_to_root(5), vec![5, 2, 0]);
        assert_eq!(t.subtree(1), vec![1, 3, 4]);
        assert_eq!(t.depth(6), 2);
        assert_eq!(t.max_children(), 2);
    }
}
