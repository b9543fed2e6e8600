//! Sequential or rayon-backed execution behind one interface.
//!
//! With the `parallel` feature disabled every [`Exec`] runs on the calling
//! thread; results are always collected in index order, so output does not
//! depend on the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel sweeps are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Rayon with the given number of threads, or its global pool if `None`.
    Parallel(Option<usize>),
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel(None)
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `--jobs N` semantics: `1` is sequential, `0` means all cores.
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Exec::Sequential,
            Some(0) | None => Exec::default(),
            Some(n) if cfg!(feature = "parallel") => Exec::Parallel(Some(n)),
            Some(_) => Exec::Sequential,
        }
    }

    /// `f(0), f(1), ..., f(n-1)` in order.
    pub fn map_indices<U, F>(self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel(threads) => in_pool(threads, || (0..n).into_par_iter().map(f).collect()),
            #[cfg(not(feature = "parallel"))]
            Exec::Parallel(_) => (0..n).map(f).collect(),
        }
    }

    pub fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        self.map_indices(items.len(), |i| f(&items[i]))
    }
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(threads: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    match threads {
        None => op(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(op),
            // Pool creation only fails on resource exhaustion; fall back to the global pool.
            Err(_) => op(),
        },
    }
}
