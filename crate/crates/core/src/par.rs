//! Data-parallel helpers with a sequential fallback.
//!
//! Every batch operation in the crate (frontier sweeps, lambda grids, exhaustive
//! enumeration) goes through [`map_range`]. With the `parallel` feature the work
//! is spread over the rayon pool; without it, or when [`Exec::Sequential`] is
//! requested, the same closure runs in a plain loop. Results are always
//! returned in index order, so output never depends on scheduling.

/// Execution strategy for batch work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Evaluates `f(i)` for `i in 0..n` and collects the results in order.
pub fn map_range<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Maps over a slice, preserving order.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_range(exec, items.len(), |i| f(&items[i]))
}

/// Evaluates `f` over `0..n` in chunks and folds the per-chunk results with
/// `better`, which must be a total order (ties resolved inside `better`) so the
/// reduction is deterministic regardless of chunking.
pub fn reduce_range<T, F, B>(exec: Exec, n: u64, f: F, better: B) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
    B: Fn(&T, &T) -> bool + Sync + Send,
{
    let pick = |a: Option<T>, b: Option<T>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if better(&b, &a) {
                Some(b)
            } else {
                Some(a)
            }
        }
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .map(&f)
            .reduce(|| None, &pick);
    }
    let _ = exec;
    (0..n).map(f).fold(None, pick)
}
