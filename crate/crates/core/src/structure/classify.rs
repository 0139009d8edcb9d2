use std::fmt;

use super::{GroupGraph, GroupStructure};
use crate::tree::Forest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureTag {
    LooplessPairwise,
    Hierarchical,
    General,
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureTag::LooplessPairwise => "LooplessPairwise",
            StructureTag::Hierarchical => "Hierarchical",
            StructureTag::General => "General",
        })
    }
}

/// Evidence backing a [`StructureTag`].
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// The group graph itself, rooted at the lowest group index of each component.
    SpanningForest(Forest),
    /// The element tree whose root paths are exactly the groups.
    /// `group_of_node[i]` is the group equal to `{i} ∪ ancestors(i)`.
    Hierarchy {
        tree: Forest,
        group_of_node: Vec<usize>,
    },
    /// An element lying in more than two groups.
    Element { element: usize, groups: Vec<usize> },
    /// A loop in the group graph, starting at its smallest group.
    Cycle(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureClass {
    pub tag: StructureTag,
    pub witness: Witness,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Witness::Cycle(cycle) => {
                let names: Vec<String> = cycle.iter().map(|j| format!("G{}", j + 1)).collect();
                write!(f, "{} (loop {})", self.tag, names.join("-"))
            }
            Witness::Element { element, groups } => write!(
                f,
                "{} (element {} in {} groups)",
                self.tag,
                element + 1,
                groups.len()
            ),
            _ => write!(f, "{}", self.tag),
        }
    }
}

/// Classifies a structure as loopless pairwise overlapping, hierarchical, or general.
///
/// Loopless pairwise takes precedence: a structure satisfying both tests
/// (only possible with at most two groups per element, e.g. `{1},{1,2}`) is
/// reported as `LooplessPairwise`.
pub fn classify(s: &GroupStructure) -> StructureClass {
    let graph = s.group_graph();
    let crowded = (0..s.ground_size()).find(|&i| s.memberships(i).len() > 2);
    let cycle = find_cycle(&graph);

    if crowded.is_none() && cycle.is_none() {
        return StructureClass {
            tag: StructureTag::LooplessPairwise,
            witness: Witness::SpanningForest(Forest::from_graph(&graph)),
        };
    }
    if let Some((tree, group_of_node)) = reconstruct_hierarchy(s) {
        return StructureClass {
            tag: StructureTag::Hierarchical,
            witness: Witness::Hierarchy {
                tree,
                group_of_node,
            },
        };
    }
    let witness = match crowded {
        Some(element) => Witness::Element {
            element,
            groups: s.memberships(element).to_vec(),
        },
        None => Witness::Cycle(cycle.expect("acyclic case handled above")),
    };
    StructureClass {
        tag: StructureTag::General,
        witness,
    }
}

/// First cycle closed by an edge when edges are scanned in lexicographic order.
fn find_cycle(graph: &GroupGraph) -> Option<Vec<usize>> {
    let n = graph.num_nodes();
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut [usize], mut v: usize) -> usize {
        while dsu[v] != v {
            dsu[v] = dsu[dsu[v]];
            v = dsu[v];
        }
        v
    }
    for e in graph.edges() {
        let (ra, rb) = (find(&mut dsu, e.a), find(&mut dsu, e.b));
        if ra == rb {
            let path = tree_path(&tree_adj, e.a, e.b);
            return Some(canonical_cycle(path));
        }
        dsu[ra] = rb;
        tree_adj[e.a].push(e.b);
        tree_adj[e.b].push(e.a);
    }
    None
}

fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &u in &adj[v] {
            if prev[u] == usize::MAX {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    path
}

fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let start = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Tries to read the groups as `{node} ∪ ancestors(node)` sets of an element tree.
///
/// Groups are visited by increasing size; each group of size k must strictly
/// extend exactly one group of size k-1 by a single new element, which becomes
/// the node the group stands for.
fn reconstruct_hierarchy(s: &GroupStructure) -> Option<(Forest, Vec<usize>)> {
    let n = s.ground_size();
    if s.num_groups() != n {
        return None;
    }
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (j, g) in s.groups().iter().enumerate() {
        if g.len() > n {
            return None;
        }
        by_size[g.len()].push(j);
    }
    if by_size[1].len() != 1 {
        return None;
    }

    let mut node_of_group = vec![usize::MAX; s.num_groups()];
    let mut group_of_node = vec![usize::MAX; n];
    let mut parent = vec![None; n];

    let root_group = by_size[1][0];
    let root = s.group(root_group)[0];
    node_of_group[root_group] = root;
    group_of_node[root] = root_group;

    for size in 2..=n {
        for &j in &by_size[size] {
            let g = s.group(j);
            let mut extended = None;
            for &p in &by_size[size - 1] {
                if is_subset(s.group(p), g) {
                    if extended.is_some() {
                        return None;
                    }
                    extended = Some(p);
                }
            }
            let p = extended?;
            let new_elem = g.iter().copied().find(|i| s.group(p).binary_search(i).is_err())?;
            if group_of_node[new_elem] != usize::MAX {
                return None;
            }
            node_of_group[j] = new_elem;
            group_of_node[new_elem] = j;
            parent[new_elem] = Some(node_of_group[p]);
        }
    }
    if group_of_node.contains(&usize::MAX) {
        return None;
    }
    let tree = Forest::from_parents(parent).ok()?;
    Some((tree, group_of_node))
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.binary_search(i).is_ok())
}
