//! Execution strategy for grid-wide work.
//!
//! Every per-point computation in the crate is pure, so the only question is
//! whether the points are visited by one thread or many. Results are always
//! collected in point order, which keeps reductions bit-for-bit identical
//! between the two strategies.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Data-parallel over points via rayon. Falls back to sequential
    /// execution when the `parallel` feature is disabled.
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
    /// Maps `f` over `items` with a per-worker scratch value built by `init`.
    pub fn map_init<T, S, R, I, F>(self, items: &[T], init: I, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        S: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, &T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => {
                let mut scratch = init();
                items.iter().map(|t| f(&mut scratch, t)).collect()
            }
            Exec::Parallel => par_map_init(items, init, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map_init<T, S, R, I, F>(items: &[T], init: I, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items
        .par_iter()
        .with_min_len(64)
        .map_init(init, |s, t| f(s, t))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_init<T, S, R, I, F>(items: &[T], init: I, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> R + Sync + Send,
{
    Exec::Sequential.map_init(items, init, f)
}
