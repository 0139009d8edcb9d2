//! Small named instances and random instance generators shared by the unit
//! tests, the integration tests, the benches and the command-line tool.

use rand::Rng;

use crate::structure::GroupStructure;
use crate::tree::{Forest, TreeModel};

/// Three overlapping blocks over eleven elements:
/// `{1..5}`, `{4..8}`, `{7..11}` (0-based: `0..=4`, `3..=7`, `6..=10`).
pub fn case_study() -> GroupStructure {
    GroupStructure::new(11, vec![(0..5).collect(), (3..8).collect(), (6..11).collect()])
        .expect("valid structure")
}

/// A signal covered exactly by the first and last block of [`case_study`].
pub fn case_study_signal() -> Vec<f64> {
    vec![0., 0., 1., 1., 1., 0., 1., 1., 1., 0., 0.]
}

/// Six groups over eight elements whose group graph has a four-cycle.
pub fn g1() -> GroupStructure {
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
    .expect("valid structure")
}

/// Loopless pairwise structure with `m` groups.
///
/// A random forest is drawn over the groups (each group attaches to an earlier
/// one, or starts a new tree with probability `1/(m+1)`); each edge gets one or
/// two shared elements, and each group gets up to `max_private` elements of its
/// own (at least one when it would otherwise be a subset of a neighbour).
/// Element labels are shuffled.
pub fn random_loopless_pairwise<R: Rng>(rng: &mut R, m: usize, max_private: usize) -> GroupStructure {
    assert!(m >= 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut degree = vec![0usize; m];
    let mut next = 0usize;
    for j in 1..m {
        if rng.random_range(0..=m) == 0 {
            continue;
        }
        let p = rng.random_range(0..j);
        degree[p] += 1;
        degree[j] += 1;
        for _ in 0..rng.random_range(1..=2) {
            groups[p].push(next);
            groups[j].push(next);
            next += 1;
        }
    }
    for (j, group) in groups.iter_mut().enumerate() {
        let lo = usize::from(degree[j] <= 1);
        for _ in 0..rng.random_range(lo..=max_private.max(lo)) {
            group.push(next);
            next += 1;
        }
    }
    let mut labels: Vec<usize> = (0..next).collect();
    for i in (1..next).rev() {
        labels.swap(i, rng.random_range(0..=i));
    }
    let groups = groups
        .into_iter()
        .map(|g| g.into_iter().map(|i| labels[i]).collect())
        .collect();
    GroupStructure::new(next, groups).expect("generator builds valid structures")
}

/// Path of `m` groups where consecutive groups share one element.
pub fn path_groups(m: usize, width: usize) -> GroupStructure {
    let step = width.max(2) - 1;
    let groups: Vec<Vec<usize>> = (0..m).map(|j| (j * step..j * step + width.max(2)).collect()).collect();
    GroupStructure::new(m * step + 1, groups).expect("valid structure")
}

/// Loopless pairwise structure whose group graph is the complete binary tree
/// on `m` nodes (heap layout), with one private element per group.
pub fn complete_binary_groups(m: usize) -> GroupStructure {
    let mut groups: Vec<Vec<usize>> = (0..m).map(|j| vec![j]).collect();
    let mut next = m;
    for j in 1..m {
        groups[(j - 1) / 2].push(next);
        groups[j].push(next);
        next += 1;
    }
    GroupStructure::new(next, groups).expect("valid structure")
}

/// Uniform random recursive tree on `n` nodes (node 0 is the root) with
/// weights drawn from `0..10` as floats.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> TreeModel {
    let parents = (0..n).map(|v| (v > 0).then(|| rng.random_range(0..v))).collect();
    let weights = (0..n).map(|_| rng.random_range(0..10) as f64).collect();
    TreeModel::from_parents(parents, weights).expect("valid tree")
}

/// Random tree with at most two children per node.
pub fn random_binary_tree<R: Rng>(rng: &mut R, n: usize) -> TreeModel {
    let mut parents = vec![None];
    let mut open = vec![0usize];
    let mut kids = vec![0usize; n];
    for v in 1..n {
        let slot = rng.random_range(0..open.len());
        let p = open[slot];
        parents.push(Some(p));
        kids[p] += 1;
        if kids[p] == 2 {
            open.swap_remove(slot);
        }
        open.push(v);
    }
    let weights = (0..n).map(|_| rng.random::<f64>() * 10.0).collect();
    TreeModel::new(Forest::from_parents(parents).expect("valid tree"), weights).expect("valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{classify, StructureTag};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_build_the_advertised_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..30 {
            let s = random_loopless_pairwise(&mut rng, m, 2);
            assert_eq!(s.num_groups(), m);
            assert_eq!(classify(&s).tag, StructureTag::LooplessPairwise);
        }
        assert_eq!(classify(&complete_binary_groups(15)).tag, StructureTag::LooplessPairwise);
        assert_eq!(classify(&path_groups(5, 3)).tag, StructureTag::LooplessPairwise);
        assert_eq!(classify(&case_study()).tag, StructureTag::LooplessPairwise);
        let t = random_binary_tree(&mut rng, 20);
        assert!(t.max_children() <= 2);
    }
}
