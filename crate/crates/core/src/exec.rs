//! Sequential / parallel dispatch for independent work items.
//!
//! Every caller maps an index range to values and reduces in index order, so
//! the choice of [`Execution`] never changes results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is on; sequential otherwise.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Evaluates `f` on `0..n` and returns the results in index order.
    pub fn map_indexed<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Index of the minimal key over `0..n`; ties go to the lowest index.
    /// Keys that are NaN are never selected.
    pub fn argmin<F>(self, n: usize, key: F) -> Option<(usize, f64)>
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let pick = |a: Option<(usize, f64)>, b: Option<(usize, f64)>| match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        };
        let eval = |i: usize| {
            let k = key(i);
            if k.is_nan() {
                None
            } else {
                Some((i, k))
            }
        };
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(eval).reduce(|| None, pick);
        }
        (0..n).map(eval).fold(None, pick)
    }
}
