//! Tiny dispatch layer between rayon and plain iteration.
//!
//! All heavy sweeps in this crate are embarrassingly parallel over pure
//! functions, so a single map-collect helper covers every call site. The
//! `parallel` argument lets benchmarks compare both paths inside one build;
//! without the `parallel` feature it is ignored and everything runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_collect<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}
