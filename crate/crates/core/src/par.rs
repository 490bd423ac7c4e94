//! Sequential and rayon-backed execution of the crate's data-parallel loops.
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] runs on the
//! calling thread. Results never depend on the execution mode.

/// How data-parallel loops are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `(0..n).map(f).collect()`, in index order.
pub fn map_indexed_with<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_with(Execution::default(), n, f)
}

/// Maps a slice in order.
pub fn map_slice_with<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map_indexed_with(exec, items.len(), |i| f(&items[i]))
}

/// Index of the largest key, ties going to the smallest index.
///
/// The reduction is associative, so the answer is independent of how the
/// index range gets split.
pub fn argmax_with<F>(exec: Execution, n: usize, key: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    fn better(a: Option<(usize, f64)>, b: Option<(usize, f64)>) -> Option<(usize, f64)> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some((ia, va)), Some((ib, vb))) => {
                if vb > va || (vb == va && ib < ia) {
                    Some((ib, vb))
                } else {
                    Some((ia, va))
                }
            }
        }
    }
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n)
                .into_par_iter()
                .map(|i| Some((i, key(i))))
                .reduce(|| None, better)
        }
        _ => (0..n).map(|i| Some((i, key(i)))).fold(None, better),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_smallest_index_on_ties() {
        let keys = [1.0, 3.0, 2.0, 3.0, 0.5];
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(argmax_with(exec, keys.len(), |i| keys[i]), Some((1, 3.0)));
        }
        assert_eq!(argmax_with(Execution::Sequential, 0, |_| 0.0), None);
    }

    #[test]
    fn map_keeps_order() {
        let v = map_indexed_with(Execution::Parallel, 1000, |i| i * 2);
        assert!(v.iter().enumerate().all(|(i, &x)| x == 2 * i));
    }
}
