//! Index-parallel map used by the batch routines.
//!
//! With the `parallel` feature the work is spread over the rayon pool,
//! otherwise it runs in order. Either way the output vector is ordered by
//! index, so callers that derive everything from the index are deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` using the default execution mode.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_range_sequential(n, f)
    }
}

/// Maps `f` over `0..n` on the calling thread.
pub fn map_range_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Calls `f(i, chunk)` for the `i`-th `width`-sized chunk of `buf`.
pub fn for_each_chunk<T, F>(buf: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if width == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        buf.par_chunks_mut(width).enumerate().for_each(|(i, c)| f(i, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for_each_chunk_sequential(buf, width, f)
    }
}

pub fn for_each_chunk_sequential<T, F>(buf: &mut [T], width: usize, f: F)
where
    F: Fn(usize, &mut [T]),
{
    if width == 0 {
        return;
    }
    buf.chunks_mut(width).enumerate().for_each(|(i, c)| f(i, c));
}

/// Whether [`map_range`] fans out to a thread pool in this build.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
