//! Data-parallel helpers with a sequential fallback.

use crate::config::Exec;

/// Map `f` over `items`, preserving order.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Keep the items satisfying `pred`, preserving order.
pub fn filter<T, F>(exec: Exec, items: &[T], pred: F) -> Vec<T>
where
    T: Sync + Send + Clone,
    F: Fn(&T) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel if items.len() > 2048 => {
            use rayon::prelude::*;
            items.par_iter().filter(|x| pred(x)).cloned().collect()
        }
        _ => items.iter().filter(|x| pred(x)).cloned().collect(),
    }
}

/// Whether this build can actually run work in parallel.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Size the global worker pool. Returns false if it was already sized or the
/// build is sequential.
pub fn set_jobs(jobs: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        false
    }
}
