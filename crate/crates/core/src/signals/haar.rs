use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::tree::TreeModel;

/// Orthonormal Haar coefficients laid out as `[scaling | details coarse → fine]`.
///
/// Position 0 is the scaling coefficient and the root of the coefficient tree;
/// position 1 is the coarsest detail; the details of level `l` occupy
/// `2^(l-1)..2^l`. The parent of position `i ≥ 2` is `i / 2`, the parent of 1 is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarCoefficients {
    pub values: Vec<f64>,
    /// Coefficient tree weighted by squared coefficients.
    pub tree: TreeModel,
    pub depth: usize,
}

impl HaarCoefficients {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        let tree = haar_tree(&values)?;
        Ok(Self {
            values,
            tree,
            depth: n.trailing_zeros() as usize,
        })
    }
}

pub fn haar_parent(i: usize) -> Option<usize> {
    match i {
        0 => None,
        1 => Some(0),
        _ => Some(i / 2),
    }
}

/// Coefficient tree with weights `c_i²`.
pub fn haar_tree(values: &[f64]) -> Result<TreeModel> {
    let parents = (0..values.len()).map(haar_parent).collect();
    TreeModel::from_parents(parents, values.iter().map(|v| v * v).collect())
}

pub fn haar_forward(x: &[f64]) -> Result<HaarCoefficients> {
    let n = x.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut out = vec![0.0; n];
    let mut approx = x.to_vec();
    let mut len = n;
    while len > 1 {
        let half = len / 2;
        let mut next = vec![0.0; half];
        for k in 0..half {
            let (a, b) = (approx[2 * k], approx[2 * k + 1]);
            next[k] = (a + b) * FRAC_1_SQRT_2;
            out[half + k] = (a - b) * FRAC_1_SQRT_2;
        }
        approx = next;
        len = half;
    }
    out[0] = approx[0];
    HaarCoefficients::new(out)
}

pub fn haar_inverse(c: &HaarCoefficients) -> Result<Vec<f64>> {
    let n = c.values.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut approx = vec![c.values[0]];
    let mut len = 1;
    while len < n {
        let mut next = vec![0.0; 2 * len];
        for k in 0..len {
            let (a, d) = (approx[k], c.values[len + k]);
            next[2 * k] = (a + d) * FRAC_1_SQRT_2;
            next[2 * k + 1] = (a - d) * FRAC_1_SQRT_2;
        }
        approx = next;
        len *= 2;
    }
    Ok(approx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_has_only_scaling() {
        let c = haar_forward(&[3.0; 16]).unwrap();
        assert!((c.values[0] - 12.0).abs() < 1e-12);
        assert!(c.values[1..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn step_hits_coarsest_detail() {
        let c = haar_forward(&[1.0, 1.0, -1.0, -1.0]).unwrap();
        assert!(c.values[0].abs() < 1e-12);
        assert!((c.values[1] - 2.0).abs() < 1e-12);
        assert!(c.values[2].abs() < 1e-12 && c.values[3].abs() < 1e-12);
    }

    #[test]
    fn round_trip_and_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x: Vec<f64> = (0..64).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let c = haar_forward(&x).unwrap();
        let y = haar_inverse(&c).unwrap();
        assert!(x.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-10));
        let ex: f64 = x.iter().map(|v| v * v).sum();
        let ec: f64 = c.values.iter().map(|v| v * v).sum();
        assert!((ex.sqrt() - ec.sqrt()).abs() < 1e-10);
        assert_eq!(c.depth, 6);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert_eq!(haar_forward(&[1.0; 6]), Err(Error::NotPowerOfTwo(6)));
        assert!(haar_forward(&[]).is_err());
    }

    #[test]
    fn parents_are_positional() {
        assert_eq!(haar_parent(0), None);
        assert_eq!(haar_parent(1), Some(0));
        assert_eq!(haar_parent(2), Some(1));
        assert_eq!(haar_parent(7), Some(3));
    }
}
