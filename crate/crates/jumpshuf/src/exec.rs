//! Execution backends for the embarrassingly parallel inner loops.
//!
//! With the default `parallel` feature the crate fans bounded scans out over
//! rayon; without it everything runs on the current thread. Both paths keep
//! input order, so results are identical bit for bit.

/// Filters `items`, keeping input order.
#[cfg(feature = "parallel")]
pub fn filter_items<T, F>(items: Vec<T>, pred: F) -> Vec<T>
where
    T: Send,
    F: Fn(&T) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().filter(|t| pred(t)).collect()
}

/// Filters `items`, keeping input order.
#[cfg(not(feature = "parallel"))]
pub fn filter_items<T, F>(items: Vec<T>, pred: F) -> Vec<T>
where
    T: Send,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.into_iter().filter(|t| pred(t)).collect()
}

/// Sequential filter, always available (used by the benchmarks as the
/// baseline even when the `parallel` feature is on).
pub fn filter_items_seq<T, F>(items: Vec<T>, pred: F) -> Vec<T>
where
    F: Fn(&T) -> bool,
{
    items.into_iter().filter(|t| pred(t)).collect()
}

/// Maps `items`, keeping input order.
#[cfg(feature = "parallel")]
pub fn map_items<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Maps `items`, keeping input order.
#[cfg(not(feature = "parallel"))]
pub fn map_items<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Sequential map, always available (benchmark baseline).
pub fn map_items_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
