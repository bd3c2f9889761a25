//! Data-parallel map over slices, sequential without the `parallel` feature.

#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Sizes the global pool; call once before any parallel work.
#[cfg(feature = "parallel")]
pub fn init_threads(n: usize) -> crate::Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| crate::Error::Argument(format!("thread pool: {e}")))
}

#[cfg(not(feature = "parallel"))]
pub fn init_threads(_n: usize) -> crate::Result<()> {
    Ok(())
}
