//! Thin dispatch layer over the data-parallel loops.
//!
//! Every parallel surface in the crate (retarded-time slices, sweep rows,
//! Maxwell-Bloch z nodes) goes through these helpers. With the `parallel`
//! feature (default) `ExecMode::Parallel` uses rayon; without it, or with
//! `ExecMode::Sequential`, the same closures run in a plain loop. Results
//! are written into index-addressed storage, so output ordering never
//! depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for embarrassingly parallel maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon work-stealing pool; falls back to sequential when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl ExecMode {
    /// Parallel when `threads != 1` and the feature is available.
    pub fn from_threads(threads: usize) -> Self {
        if threads == 1 {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        }
    }
}

/// Indexed map producing a Vec in input order.
pub fn par_map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    match mode {
        ExecMode::Sequential => items.iter().enumerate().map(|(i, t)| f(i, t)).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
            }
        }
    }
}

/// Indexed in-place map with fallible element updates.
pub fn par_map_mut<T, F>(mode: ExecMode, items: &mut [T], f: F) -> crate::error::Result<()>
where
    T: Send,
    F: Fn(usize, &mut T) -> crate::error::Result<()> + Sync,
{
    match mode {
        ExecMode::Sequential => items.iter_mut().enumerate().try_for_each(|(i, t)| f(i, t)),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items
                    .par_iter_mut()
                    .enumerate()
                    .try_for_each(|(i, t)| f(i, t))
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter_mut().enumerate().try_for_each(|(i, t)| f(i, t))
            }
        }
    }
}
