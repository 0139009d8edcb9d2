use super::classify::{classify, StructureTag, Witness};
use super::GroupStructure;

/// Which sufficient condition for total unimodularity of the membership table
/// holds. `Unknown` only means neither condition could be established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TuCertificate {
    LooplessPairwiseTU,
    /// Columns (groups) in `column_order` give every row consecutive ones.
    ConsecutiveOnesTU {
        column_order: Vec<usize>,
    },
    Unknown,
}

impl TuCertificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, TuCertificate::Unknown)
    }

    pub fn name(&self) -> &'static str {
        match self {
            TuCertificate::LooplessPairwiseTU => "LooplessPairwiseTU",
            TuCertificate::ConsecutiveOnesTU { .. } => "ConsecutiveOnesTU",
            TuCertificate::Unknown => "Unknown",
        }
    }
}

/// Exhaustive permutation search is only attempted up to this many groups.
const PERMUTATION_SEARCH_CAP: usize = 8;

pub fn tu_certificate(s: &GroupStructure) -> TuCertificate {
    let class = classify(s);
    match (&class.tag, &class.witness) {
        (StructureTag::LooplessPairwise, _) => TuCertificate::LooplessPairwiseTU,
        (
            StructureTag::Hierarchical,
            Witness::Hierarchy {
                tree,
                group_of_node,
            },
        ) => {
            let order: Vec<usize> = tree.pre_order().iter().map(|&v| group_of_node[v]).collect();
            if has_consecutive_ones(s, &order) {
                TuCertificate::ConsecutiveOnesTU {
                    column_order: order,
                }
            } else {
                TuCertificate::Unknown
            }
        }
        _ => interval_order(s)
            .map(|column_order| TuCertificate::ConsecutiveOnesTU { column_order })
            .unwrap_or(TuCertificate::Unknown),
    }
}

/// True when, with columns arranged as `order`, every row's ones are contiguous.
pub(crate) fn has_consecutive_ones(s: &GroupStructure, order: &[usize]) -> bool {
    let mut pos = vec![0usize; s.num_groups()];
    for (p, &j) in order.iter().enumerate() {
        pos[j] = p;
    }
    (0..s.ground_size()).all(|i| {
        let owners = s.memberships(i);
        let lo = owners.iter().map(|&j| pos[j]).min().unwrap_or(0);
        let hi = owners.iter().map(|&j| pos[j]).max().unwrap_or(0);
        hi - lo + 1 == owners.len()
    })
}

/// Interval test for general structures: natural orderings first, then an
/// exhaustive permutation search for small M.
fn interval_order(s: &GroupStructure) -> Option<Vec<usize>> {
    let m = s.num_groups();
    let identity: Vec<usize> = (0..m).collect();
    let mut by_span = identity.clone();
    by_span.sort_by_key(|&j| (s.group(j)[0], *s.group(j).last().unwrap(), j));
    let mut by_end = identity.clone();
    by_end.sort_by_key(|&j| (*s.group(j).last().unwrap(), s.group(j)[0], j));
    for order in [identity.clone(), by_span, by_end] {
        if has_consecutive_ones(s, &order) {
            return Some(order);
        }
    }
    if m > PERMUTATION_SEARCH_CAP {
        return None;
    }
    let mut perm = identity;
    loop {
        if has_consecutive_ones(s, &perm) {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(n: usize, groups: &[&[usize]]) -> GroupStructure {
        let g: Vec<Vec<usize>> = groups.iter().map(|g| g.to_vec()).collect();
        GroupStructure::from_one_based(n, &g).unwrap()
    }

    #[test]
    fn loopless_pairwise_certificate() {
        let s = one_based(7, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]);
        assert_eq!(tu_certificate(&s), TuCertificate::LooplessPairwiseTU);
    }

    #[test]
    fn hierarchy_gets_consecutive_ones() {
        let s = one_based(3, &[&[1], &[1, 2], &[1, 3]]);
        match tu_certificate(&s) {
            TuCertificate::ConsecutiveOnesTU { column_order } => {
                assert!(has_consecutive_ones(&s, &column_order));
                // the ordering (2,1,3) of groups is also valid
                assert!(has_consecutive_ones(&s, &[1, 0, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn example_structure_is_unknown() {
        let s = one_based(
            8,
            &[&[1], &[2], &[1, 2, 3, 4, 5], &[4, 6], &[3, 5, 7], &[6, 7, 8]],
        );
        assert_eq!(tu_certificate(&s), TuCertificate::Unknown);
    }

    #[test]
    fn interval_structure_with_triple_overlap() {
        // element 3 in three groups, groups are intervals
        let s = one_based(5, &[&[1, 2, 3], &[3], &[3, 4, 5]]);
        assert!(matches!(
            tu_certificate(&s),
            TuCertificate::ConsecutiveOnesTU { .. }
        ));
    }

    #[test]
    fn permutations_enumerate_all() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
