//! Dynamic program for budgeted maximum coverage on loopless pairwise
//! overlapping groups.
//!
//! Groups are explored one at a time in [`Forest::node_order`] of the group
//! graph. The table stores, for every group budget g, element budget k and every
//! picked/forbidden assignment of the current boundary groups (explored groups
//! that still touch an unexplored one), the best covered weight among the
//! explored groups. Adding a group either rejects it or accepts it with its
//! elements cleaned of the overlaps with picked explored neighbours; groups that
//! leave the boundary are condensed away by maximising over their two states.

use super::selection::{sort_by_weight_desc, Selection, WeightVector};
use crate::error::{Error, Result};
use crate::structure::{classify, GroupStructure, StructureTag};
use crate::tree::Forest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpOptions {
    /// Fold groups out of the table once they stop being boundary groups.
    /// Turning this off keeps every explored group in the table (exponential;
    /// only useful as a cross-check on tiny instances).
    pub condense: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        Self { condense: true }
    }
}

/// Instrumentation collected during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Exploration order of the groups.
    pub order: Vec<usize>,
    /// Largest number of boundary groups after any step.
    pub max_boundary: usize,
    /// Largest number of groups carried in the table at any step.
    pub max_tracked: usize,
    /// Largest table length (entries) at any step.
    pub max_table_len: usize,
}

/// Optimal selection of at most `g` groups (element budget inactive).
pub fn solve_wmc_dp(s: &GroupStructure, w: &WeightVector, g: usize) -> Result<Selection> {
    solve_gwmc_dp(s, w, g, s.ground_size())
}

/// Optimal selection of at most `g` groups and at most `k` elements.
pub fn solve_gwmc_dp(s: &GroupStructure, w: &WeightVector, g: usize, k: usize) -> Result<Selection> {
    solve_gwmc_dp_with(s, w, g, k, DpOptions::default()).map(|(sel, _)| sel)
}

pub fn solve_gwmc_dp_with(
    s: &GroupStructure,
    w: &WeightVector,
    g: usize,
    k: usize,
    opts: DpOptions,
) -> Result<(Selection, DpStats)> {
    w.check_len(s.ground_size())?;
    if classify(s).tag != StructureTag::LooplessPairwise {
        return Err(Error::NotLooplessPairwise);
    }
    if g == 0 || g > s.num_groups() {
        return Err(Error::BudgetOutOfRange {
            name: "G",
            value: g,
            max: s.num_groups(),
        });
    }
    if k == 0 || k > s.ground_size() {
        return Err(Error::BudgetOutOfRange {
            name: "K",
            value: k,
            max: s.ground_size(),
        });
    }
    if !opts.condense && s.num_groups() > 16 {
        return Err(Error::InstanceTooLarge {
            size: s.num_groups(),
            cap: 16,
        });
    }
    Ok(solve_groups(
        s.ground_size(),
        s.groups(),
        w.as_slice(),
        g,
        k,
        opts,
    ))
}

/// Runs the DP on any collection of groups whose overlap graph is a forest and
/// where no element lies in more than two groups. Budgets may be zero.
pub(crate) fn solve_groups(
    n: usize,
    groups: &[Vec<usize>],
    w: &[f64],
    g_budget: usize,
    k_budget: usize,
    opts: DpOptions,
) -> (Selection, DpStats) {
    let inst = Instance::new(n, groups);
    let k_dim = if k_budget >= n { None } else { Some(k_budget) };
    let mut run = Run::new(&inst, w, g_budget, k_dim, opts);
    for &node in &run.stats.order.clone() {
        run.step(node);
    }
    run.finish()
}

struct Instance<'a> {
    groups: &'a [Vec<usize>],
    /// (neighbour, shared elements) per group.
    adjacency: Vec<Vec<(usize, Vec<usize>)>>,
    forest: Forest,
}

impl<'a> Instance<'a> {
    fn new(n: usize, groups: &'a [Vec<usize>]) -> Self {
        let m = groups.len();
        let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (j, g) in groups.iter().enumerate() {
            for &i in g {
                owners[i].push(j);
            }
        }
        let mut shared: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
            std::collections::BTreeMap::new();
        for (i, own) in owners.iter().enumerate() {
            debug_assert!(own.len() <= 2, "element {i} in more than two groups");
            if let [a, b] = own[..] {
                shared.entry((a.min(b), a.max(b))).or_default().push(i);
            }
        }
        let mut adjacency = vec![Vec::new(); m];
        for ((a, b), overlap) in shared {
            adjacency[a].push((b, overlap.clone()));
            adjacency[b].push((a, overlap));
        }

        let mut parent = vec![None; m];
        let mut seen = vec![false; m];
        for start in 0..m {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(u, _) in &adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = Some(v);
                        queue.push_back(u);
                    }
                }
            }
        }
        let forest = Forest::from_parents(parent).expect("overlap graph must be a forest");
        Self {
            groups,
            adjacency,
            forest,
        }
    }
}

/// Backpointer: low 32 bits old mask, bits 32..63 number of elements taken,
/// bit 63 set when the group was picked.
type Back = u64;
const PICKED: u64 = 1 << 63;

fn pack(old_mask: usize, picked: bool, taken: usize) -> Back {
    debug_assert!(old_mask < (1 << 32) && taken < (1 << 31));
    (old_mask as u64) | ((taken as u64) << 32) | if picked { PICKED } else { 0 }
}

fn unpack(b: Back) -> (usize, bool, usize) {
    let mask = (b & 0xFFFF_FFFF) as usize;
    let taken = ((b >> 32) & 0x7FFF_FFFF) as usize;
    (mask, b & PICKED != 0, taken)
}

struct StepTrace {
    node: usize,
    old_tracked: Vec<usize>,
    back: Vec<Back>,
}

struct Run<'a> {
    inst: &'a Instance<'a>,
    w: &'a [f64],
    g_dim: usize,
    k_dim: Option<usize>,
    opts: DpOptions,
    explored: Vec<bool>,
    unexplored_nbrs: Vec<usize>,
    tracked: Vec<usize>,
    values: Vec<f64>,
    traces: Vec<StepTrace>,
    stats: DpStats,
}

impl<'a> Run<'a> {
    fn new(
        inst: &'a Instance<'a>,
        w: &'a [f64],
        g_budget: usize,
        k_dim: Option<usize>,
        opts: DpOptions,
    ) -> Self {
        let m = inst.groups.len();
        let stats = DpStats {
            order: inst.forest.node_order(),
            ..DpStats::default()
        };
        let cells = (g_budget + 1) * k_dim.map_or(1, |k| k + 1);
        Self {
            inst,
            w,
            g_dim: g_budget + 1,
            k_dim,
            opts,
            explored: vec![false; m],
            unexplored_nbrs: inst.adjacency.iter().map(Vec::len).collect(),
            tracked: Vec::new(),
            values: vec![0.0; cells],
            traces: Vec::with_capacity(m),
            stats,
        }
    }

    fn kk(&self) -> usize {
        self.k_dim.map_or(1, |k| k + 1)
    }

    fn cell(&self, mask: usize, g: usize, k: usize) -> usize {
        (mask * self.g_dim + g) * self.kk() + k
    }

    /// Elements of `node` not shared with the picked explored neighbours,
    /// heaviest first.
    fn cleaned(&self, node: usize, picked_nbrs: &[usize]) -> Vec<usize> {
        let mut elems: Vec<usize> = self.inst.groups[node]
            .iter()
            .copied()
            .filter(|i| {
                !self.inst.adjacency[node]
                    .iter()
                    .any(|(nb, shared)| picked_nbrs.contains(nb) && shared.binary_search(i).is_ok())
            })
            .collect();
        sort_by_weight_desc(&mut elems, self.w);
        elems
    }

    fn step(&mut self, node: usize) {
        let old_tracked = std::mem::take(&mut self.tracked);
        let t = old_tracked.len();
        let kk = self.kk();

        // explored neighbours are boundary groups, hence tracked
        let nbr_bits: Vec<(usize, usize)> = self.inst.adjacency[node]
            .iter()
            .filter(|(nb, _)| self.explored[*nb])
            .map(|(nb, _)| {
                let bit = old_tracked
                    .iter()
                    .position(|x| x == nb)
                    .expect("explored neighbour must be tracked");
                (*nb, bit)
            })
            .collect();
        let variants: Vec<Vec<f64>> = (0..1usize << nbr_bits.len())
            .map(|v| {
                let picked: Vec<usize> = nbr_bits
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| v >> b & 1 == 1)
                    .map(|(_, (nb, _))| *nb)
                    .collect();
                let elems = self.cleaned(node, &picked);
                let mut prefix = vec![0.0];
                for &i in &elems {
                    prefix.push(prefix.last().unwrap() + self.w[i]);
                }
                prefix
            })
            .collect();
        let variant_of = |mask: usize| {
            nbr_bits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (b, (_, bit))| acc | ((mask >> bit & 1) << b))
        };

        // expand: new node occupies bit t
        let full_len = (1usize << (t + 1)) * self.g_dim * kk;
        let mut full_vals = vec![f64::NEG_INFINITY; full_len];
        let mut full_back = vec![0 as Back; full_len];
        for mask in 0..1usize << t {
            let h = &variants[variant_of(mask)];
            for g in 0..self.g_dim {
                for k in 0..kk {
                    let src = self.cell(mask, g, k);
                    let rej = self.cell(mask, g, k);
                    full_vals[rej] = self.values[src];
                    full_back[rej] = pack(mask, false, 0);

                    let acc = self.cell(mask | 1 << t, g, k);
                    if g == 0 {
                        continue;
                    }
                    let (best, taken) = match self.k_dim {
                        None => {
                            let all = h.len() - 1;
                            (self.values[self.cell(mask, g - 1, 0)] + h[all], all)
                        }
                        Some(_) => {
                            let mut best = f64::NEG_INFINITY;
                            let mut taken = 0;
                            for (l, hl) in h.iter().enumerate().take(k + 1) {
                                let v = self.values[self.cell(mask, g - 1, k - l)] + hl;
                                if v > best {
                                    best = v;
                                    taken = l;
                                }
                            }
                            (best, taken)
                        }
                    };
                    full_vals[acc] = best;
                    full_back[acc] = pack(mask, true, taken);
                }
            }
        }

        // boundary bookkeeping
        self.explored[node] = true;
        for (nb, _) in &self.inst.adjacency[node] {
            self.unexplored_nbrs[*nb] -= 1;
        }
        let mut full_tracked = old_tracked.clone();
        full_tracked.push(node);
        let boundary = full_tracked
            .iter()
            .filter(|&&j| self.unexplored_nbrs[j] > 0)
            .count();
        self.stats.max_boundary = self.stats.max_boundary.max(boundary);
        self.stats.max_tracked = self.stats.max_tracked.max(full_tracked.len());

        let last = self.traces.len() + 1 == self.stats.order.len();
        let removed: Vec<usize> = (0..full_tracked.len())
            .filter(|&b| {
                (self.opts.condense && self.unexplored_nbrs[full_tracked[b]] == 0) || last
            })
            .collect();
        self.condense(full_tracked, full_vals, full_back, &removed, node, old_tracked);
    }

    fn condense(
        &mut self,
        full_tracked: Vec<usize>,
        full_vals: Vec<f64>,
        full_back: Vec<Back>,
        removed: &[usize],
        node: usize,
        old_tracked: Vec<usize>,
    ) {
        let kept: Vec<usize> = (0..full_tracked.len())
            .filter(|b| !removed.contains(b))
            .collect();
        let kk = self.kk();
        let compose = |km: usize, ra: usize| {
            let mut full = 0usize;
            for (i, &b) in kept.iter().enumerate() {
                full |= (km >> i & 1) << b;
            }
            for (i, &b) in removed.iter().enumerate() {
                full |= (ra >> i & 1) << b;
            }
            full
        };
        let len = (1usize << kept.len()) * self.g_dim * kk;
        let mut vals = vec![f64::NEG_INFINITY; len];
        let mut back = vec![0 as Back; len];
        for km in 0..1usize << kept.len() {
            for ra in 0..1usize << removed.len() {
                let full = compose(km, ra);
                for g in 0..self.g_dim {
                    for k in 0..kk {
                        let src = (full * self.g_dim + g) * kk + k;
                        let dst = (km * self.g_dim + g) * kk + k;
                        // first assignment wins ties: unpicked before picked
                        if full_vals[src] > vals[dst] {
                            vals[dst] = full_vals[src];
                            back[dst] = full_back[src];
                        }
                    }
                }
            }
        }
        self.tracked = kept.iter().map(|&b| full_tracked[b]).collect();
        self.stats.max_table_len = self.stats.max_table_len.max(len);
        self.values = vals;
        self.traces.push(StepTrace {
            node,
            old_tracked,
            back,
        });
    }

    fn finish(self) -> (Selection, DpStats) {
        let n = self.w.len();
        let m = self.inst.groups.len();
        let mut sel = Selection::empty(m, n);
        let (mut mask, mut g, mut k) = (0usize, self.g_dim - 1, self.k_dim.unwrap_or(0));
        let mut picks: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        let kk = self.kk();
        for trace in self.traces.iter().rev() {
            let (old_mask, picked, taken) = unpack(trace.back[(mask * self.g_dim + g) * kk + k]);
            if picked {
                let picked_nbrs: Vec<usize> = trace
                    .old_tracked
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| old_mask >> b & 1 == 1)
                    .map(|(_, &j)| j)
                    .collect();
                picks.push((trace.node, taken, picked_nbrs));
                g -= 1;
                if self.k_dim.is_some() {
                    k -= taken;
                }
            }
            mask = old_mask;
        }
        for (node, taken, picked_nbrs) in picks {
            sel.active_groups[node] = true;
            for &i in self.cleaned(node, &picked_nbrs).iter().take(taken) {
                sel.active_elements[i] = true;
            }
        }
        sel.objective = sel
            .active_elements
            .iter()
            .zip(self.w)
            .filter(|(y, _)| **y)
            .fold(0.0, |acc, (_, w)| acc + w);
        (sel, self.stats)
    }
}
