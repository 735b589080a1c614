//! Execution policy for the data-parallel loops.
//!
//! Every parallel loop in the crate maps independent work items to an
//! ordered output vector, so results are identical between [`Exec::Serial`]
//! and [`Exec::Parallel`] down to the last bit. Without the `parallel`
//! feature, `Exec::Parallel` silently runs serially.

/// How to run a batch of independent work items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Serial,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Serial
        }
    }
}

impl Exec {
    /// Maps `f` over `0..len`, returning results in index order.
    pub fn map_indexed<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Serial => (0..len).map(f).collect(),
            Exec::Parallel => par_map_indexed(len, f),
        }
    }

    /// Like [`Exec::map_indexed`] but short-circuits on the first error
    /// (the reported error is the one with the lowest index).
    pub fn try_map_indexed<T, F>(self, len: usize, f: F) -> crate::Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> crate::Result<T> + Sync + Send,
    {
        self.map_indexed(len, f).into_iter().collect()
    }
}

#[cfg(feature = "parallel")]
fn par_map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_indexed<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..len).map(f).collect()
}
