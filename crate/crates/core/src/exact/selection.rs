use crate::error::{Error, Result};
use crate::structure::GroupStructure;

/// Per-element weights; for a signal these are the squared magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "weights must be finite and non-negative, got {w}"
            )));
        }
        Ok(Self(weights))
    }

    /// `w_i = x_i²`.
    pub fn from_signal(x: &[f64]) -> Self {
        Self(x.iter().map(|v| v * v).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().fold(0.0, |a, b| a + b)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: self.0.len(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Selected groups (ω), selected elements (y) and the covered weight Σ y_i w_i.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub active_groups: Vec<bool>,
    pub active_elements: Vec<bool>,
    pub objective: f64,
}

impl Selection {
    pub fn empty(num_groups: usize, ground_size: usize) -> Self {
        Self {
            active_groups: vec![false; num_groups],
            active_elements: vec![false; ground_size],
            objective: 0.0,
        }
    }

    /// Builds a selection from group and element lists, computing the objective.
    pub fn from_parts(
        num_groups: usize,
        groups: &[usize],
        elements: &[usize],
        w: &WeightVector,
    ) -> Self {
        let mut sel = Self::empty(num_groups, w.len());
        for &j in groups {
            sel.active_groups[j] = true;
        }
        for &i in elements {
            sel.active_elements[i] = true;
        }
        sel.objective = sel.recompute_objective(w);
        sel
    }

    /// Sum of weights over the selected elements, in index order.
    pub fn recompute_objective(&self, w: &WeightVector) -> f64 {
        self.active_elements
            .iter()
            .zip(w.as_slice())
            .filter(|(y, _)| **y)
            .fold(0.0, |acc, (_, w)| acc + w)
    }

    pub fn groups(&self) -> Vec<usize> {
        indices(&self.active_groups)
    }

    pub fn elements(&self) -> Vec<usize> {
        indices(&self.active_elements)
    }

    pub fn num_groups(&self) -> usize {
        self.active_groups.iter().filter(|b| **b).count()
    }

    pub fn num_elements(&self) -> usize {
        self.active_elements.iter().filter(|b| **b).count()
    }

    /// Union of the selected groups.
    pub fn covered(&self, s: &GroupStructure) -> Vec<bool> {
        let mut covered = vec![false; s.ground_size()];
        for j in self.groups() {
            for &i in s.group(j) {
                covered[i] = true;
            }
        }
        covered
    }

    /// Checks coverage and, when given, the group and element budgets.
    pub fn is_feasible(&self, s: &GroupStructure, g: Option<usize>, k: Option<usize>) -> bool {
        if self.active_groups.len() != s.num_groups()
            || self.active_elements.len() != s.ground_size()
        {
            return false;
        }
        let covered = self.covered(s);
        let covers = self
            .active_elements
            .iter()
            .zip(&covered)
            .all(|(y, c)| !*y || *c);
        covers
            && g.is_none_or(|g| self.num_groups() <= g)
            && k.is_none_or(|k| self.num_elements() <= k)
    }
}

fn indices(flags: &[bool]) -> Vec<usize> {
    flags
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect()
}

/// Orders indices by decreasing weight, ties by lower index.
pub(crate) fn sort_by_weight_desc(indices: &mut [usize], w: &[f64]) {
    indices.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
}

/// The `min(k, |S|)` heaviest elements of `S` and their total weight.
pub fn top_k_weight(indices: &[usize], w: &WeightVector, k: usize) -> (f64, Vec<usize>) {
    let mut sorted = indices.to_vec();
    sort_by_weight_desc(&mut sorted, w.as_slice());
    sorted.truncate(k);
    let total = sorted.iter().fold(0.0, |acc, &i| acc + w[i]);
    sorted.sort_unstable();
    (total, sorted)
}
