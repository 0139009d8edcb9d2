//! Group structures over a ground set and their graph views.
//!
//! Indices are 0-based throughout the library API. The JSON file format in
//! [`file`] is 1-based.

mod classify;
mod cover;
pub mod file;
mod tu;

pub use classify::{classify, StructureClass, StructureTag, Witness};
pub use cover::{group_l0_norm, is_group_cover, GroupCover, BRUTE_FORCE_GROUP_CAP};
pub use tu::{tu_certificate, TuCertificate};

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// A collection of non-empty index sets ("groups") whose union is `0..ground_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    ground_size: usize,
    groups: Vec<Vec<usize>>,
    memberships: Vec<Vec<usize>>,
}

impl GroupStructure {
    /// Validates and builds a structure. Each group is stored sorted.
    ///
    /// Rejects empty groups, out-of-range indices, repeated indices inside a
    /// group, verbatim duplicate groups, and ground elements outside every group.
    pub fn new(ground_size: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        if ground_size == 0 || groups.is_empty() {
            return Err(Error::EmptyStructure);
        }
        let mut sorted_groups = Vec::with_capacity(groups.len());
        for (j, mut group) in groups.into_iter().enumerate() {
            if group.is_empty() {
                return Err(Error::EmptyGroup { group: j + 1 });
            }
            if let Some(&index) = group.iter().find(|&&i| i >= ground_size) {
                return Err(Error::IndexOutOfRange {
                    group: j + 1,
                    index: index + 1,
                    ground_size,
                });
            }
            group.sort_unstable();
            if let Some(w) = group.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateIndex {
                    group: j + 1,
                    index: w[0] + 1,
                });
            }
            sorted_groups.push(group);
        }

        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for (j, group) in sorted_groups.iter().enumerate() {
            if let Some(&first) = seen.get(group.as_slice()) {
                return Err(Error::DuplicateGroup {
                    first: first + 1,
                    second: j + 1,
                });
            }
            seen.insert(group.as_slice(), j);
        }

        let mut memberships = vec![Vec::new(); ground_size];
        for (j, group) in sorted_groups.iter().enumerate() {
            for &i in group {
                memberships[i].push(j);
            }
        }
        if let Some(i) = memberships.iter().position(Vec::is_empty) {
            return Err(Error::UncoveredElement(i + 1));
        }

        Ok(Self {
            ground_size,
            groups: sorted_groups,
            memberships,
        })
    }

    /// Builds a structure from 1-based index lists.
    pub fn from_one_based(ground_size: usize, groups: &[Vec<usize>]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(groups.len());
        for (j, group) in groups.iter().enumerate() {
            let mut g = Vec::with_capacity(group.len());
            for &i in group {
                if i == 0 || i > ground_size {
                    return Err(Error::IndexOutOfRange {
                        group: j + 1,
                        index: i,
                        ground_size,
                    });
                }
                g.push(i - 1);
            }
            zero_based.push(g);
        }
        Self::new(ground_size, zero_based)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group(&self, j: usize) -> &[usize] {
        &self.groups[j]
    }

    /// Groups containing element `i`, in increasing order.
    pub fn memberships(&self, i: usize) -> &[usize] {
        &self.memberships[i]
    }

    /// Groups as 1-based index lists, for export.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.groups
            .iter()
            .map(|g| g.iter().map(|&i| i + 1).collect())
            .collect()
    }

    pub fn bi_adjacency(&self) -> BiAdjacency {
        let m = self.num_groups();
        let mut entries = vec![vec![false; m]; self.ground_size];
        for (j, group) in self.groups.iter().enumerate() {
            for &i in group {
                entries[i][j] = true;
            }
        }
        BiAdjacency { entries }
    }

    /// The overlap graph: one node per group, an edge wherever two groups intersect.
    pub fn group_graph(&self) -> GroupGraph {
        let mut labels: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, owners) in self.memberships.iter().enumerate() {
            for (a, &j) in owners.iter().enumerate() {
                for &l in &owners[a + 1..] {
                    labels.entry((j, l)).or_default().push(i);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); self.num_groups()];
        for &(j, l) in labels.keys() {
            adjacency[j].push(l);
            adjacency[l].push(j);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let edges = labels
            .into_iter()
            .map(|((a, b), overlap)| GroupEdge { a, b, overlap })
            .collect();
        GroupGraph {
            num_nodes: self.num_groups(),
            edges,
            adjacency,
        }
    }
}

/// The N×M membership table: entry (i, j) is set iff element i belongs to group j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiAdjacency {
    entries: Vec<Vec<bool>>,
}

impl BiAdjacency {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.entries[i]
    }

    /// Dense 0/1 copy, mostly for determinant checks and the LP builder.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
            .collect()
    }
}

/// An edge of the group graph together with the shared elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupEdge {
    pub a: usize,
    pub b: usize,
    pub overlap: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupGraph {
    num_nodes: usize,
    edges: Vec<GroupEdge>,
    adjacency: Vec<Vec<usize>>,
}

impl GroupGraph {
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Edges with `a < b`, sorted lexicographically.
    pub fn edges(&self) -> &[GroupEdge] {
        &self.edges
    }

    pub fn neighbors(&self, j: usize) -> &[usize] {
        &self.adjacency[j]
    }

    pub fn overlap(&self, j: usize, l: usize) -> Option<&[usize]> {
        let key = (j.min(l), j.max(l));
        self.edges
            .binary_search_by(|e| (e.a, e.b).cmp(&key))
            .ok()
            .map(|idx| self.edges[idx].overlap.as_slice())
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_nodes];
        let mut out = Vec::new();
        for start in 0..self.num_nodes {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn g1() -> GroupStructure {
        GroupStructure::from_one_based(
            8,
            &[
                vec![1],
                vec![2],
                vec![1, 2, 3, 4, 5],
                vec![4, 6],
                vec![3, 5, 7],
                vec![6, 7, 8],
            ],
        )
        .unwrap()
    }

    #[test]
    fn builds_example_structure() {
        let s = g1();
        assert_eq!(s.num_groups(), 6);
        assert_eq!(s.ground_size(), 8);
    }

    #[test]
    fn minimal_structure() {
        let s = GroupStructure::from_one_based(1, &[vec![1]]).unwrap();
        assert_eq!(s.num_groups(), 1);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert_eq!(
            GroupStructure::from_one_based(3, &[vec![1, 2]]),
            Err(Error::UncoveredElement(3))
        );
        assert_eq!(
            GroupStructure::new(2, vec![vec![0, 1], vec![]]),
            Err(Error::EmptyGroup { group: 2 })
        );
        assert!(matches!(
            GroupStructure::from_one_based(2, &[vec![1, 3]]),
            Err(Error::IndexOutOfRange { index: 3, .. })
        ));
        assert_eq!(
            GroupStructure::from_one_based(2, &[vec![1, 2, 1]]),
            Err(Error::DuplicateIndex { group: 1, index: 1 })
        );
        assert_eq!(
            GroupStructure::from_one_based(2, &[vec![1, 2], vec![2, 1]]),
            Err(Error::DuplicateGroup {
                first: 1,
                second: 2
            })
        );
        assert_eq!(GroupStructure::new(0, vec![]), Err(Error::EmptyStructure));
    }

    #[test]
    fn bi_adjacency_counts() {
        let s = g1();
        let a = s.bi_adjacency();
        for j in 0..s.num_groups() {
            let ones = (0..a.rows()).filter(|&i| a.get(i, j)).count();
            assert_eq!(ones, s.group(j).len());
        }
        for i in 0..a.rows() {
            assert!(a.row(i).iter().any(|&b| b));
        }
    }

    #[test]
    fn example_group_graph_edges() {
        let graph = g1().group_graph();
        let got: Vec<_> = graph
            .edges()
            .iter()
            .map(|e| {
                (
                    e.a + 1,
                    e.b + 1,
                    e.overlap.iter().map(|i| i + 1).collect::<Vec<_>>(),
                )
            })
            .collect();
        assert_eq!(
            got,
            vec![
                (1, 3, vec![1]),
                (2, 3, vec![2]),
                (3, 4, vec![4]),
                (3, 5, vec![3, 5]),
                (4, 6, vec![6]),
                (5, 6, vec![7]),
            ]
        );
    }

    #[test]
    fn disjoint_and_path_graphs() {
        let disjoint = GroupStructure::from_one_based(2, &[vec![1], vec![2]]).unwrap();
        assert!(disjoint.group_graph().edges().is_empty());

        let path =
            GroupStructure::from_one_based(7, &[vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]])
                .unwrap();
        let graph = path.group_graph();
        assert_eq!(graph.edges().len(), 2);
        assert_eq!(graph.overlap(0, 1), Some(&[2][..]));
        assert_eq!(graph.overlap(2, 1), Some(&[4][..]));
        assert_eq!(graph.overlap(0, 2), None);
    }
}
