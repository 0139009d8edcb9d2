use super::selection::{Selection, WeightVector};
use crate::structure::GroupStructure;

/// Classical greedy for weighted maximum coverage.
///
/// Each round adds the group with the largest newly covered weight (lowest
/// index on ties). Stops after `g` rounds or once no group adds weight.
pub fn greedy_wmc(s: &GroupStructure, w: &WeightVector, g: usize) -> Selection {
    let mut sel = Selection::empty(s.num_groups(), s.ground_size());
    let mut covered = vec![false; s.ground_size()];
    for _ in 0..g {
        let mut best: Option<(usize, f64)> = None;
        for j in (0..s.num_groups()).filter(|&j| !sel.active_groups[j]) {
            let gain: f64 = s.group(j).iter().filter(|&&i| !covered[i]).map(|&i| w[i]).sum();
            if best.is_none_or(|(_, b)| gain > b) {
                best = Some((j, gain));
            }
        }
        match best {
            Some((j, gain)) if gain > 0.0 => {
                sel.active_groups[j] = true;
                for &i in s.group(j) {
                    covered[i] = true;
                }
            }
            _ => break,
        }
    }
    sel.active_elements = covered;
    sel.objective = sel.recompute_objective(w);
    sel
}
