//! Data-parallel map used by the sweeps. With the `parallel` feature off,
//! every execution mode runs on the calling thread.

use std::num::NonZeroUsize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool, or a dedicated pool of `workers` threads.
    #[default]
    Parallel,
    Workers(NonZeroUsize),
}

impl Execution {
    /// Reads a positive worker cap from an environment variable value.
    pub fn from_worker_env(value: Option<&str>) -> Result<Self, String> {
        match value {
            None => Ok(Self::Parallel),
            Some(v) => v
                .trim()
                .parse::<NonZeroUsize>()
                .map(Self::Workers)
                .map_err(|_| format!("worker count must be a positive integer, got `{v}`")),
        }
    }
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Maps `f` over `items`, preserving input order regardless of scheduling.
pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        #[cfg(feature = "parallel")]
        Execution::Workers(n) => {
            use rayon::prelude::*;
            match rayon::ThreadPoolBuilder::new().num_threads(n.get()).build() {
                Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
                Err(_) => items.iter().map(f).collect(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel | Execution::Workers(_) => items.iter().map(f).collect(),
    }
}
