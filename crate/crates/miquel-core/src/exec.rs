//! Execution strategy for the batch-style operations (seed sweeps, curve
//! sampling, Riemann reference sums).
//!
//! With the `parallel` feature (default) the parallel mode fans out over
//! rayon's global pool; without it both modes run sequentially, so downstream
//! code never needs a cfg. Results are collected in index order either way,
//! which keeps outputs byte-identical across modes and thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProcessingMode {
    Sequential,
    #[default]
    Parallel,
}

impl ProcessingMode {
    /// Map `f` over `0..n`, preserving order.
    pub fn map_indices<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            ProcessingMode::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            ProcessingMode::Parallel => (0..n).into_par_iter().map(f).collect(),
            #[cfg(not(feature = "parallel"))]
            ProcessingMode::Parallel => (0..n).map(f).collect(),
        }
    }

    /// Sum `f(i)` over `0..n` in fixed-size chunks. Chunk boundaries and the
    /// final left-to-right reduction are independent of the mode, so the
    /// result is deterministic (not just up to float reassociation).
    pub fn sum_indexed<F>(self, n: usize, chunk: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let chunk = chunk.max(1);
        let chunks = n.div_ceil(chunk);
        let partials = self.map_indices(chunks, |ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(n);
            let mut acc = 0.0;
            for i in lo..hi {
                acc += f(i);
            }
            acc
        });
        partials.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_bitwise() {
        let f = |i: usize| ((i as f64) * 0.1).sin() / (1.0 + i as f64);
        let seq = ProcessingMode::Sequential.sum_indexed(100_000, 4096, f);
        let par = ProcessingMode::Parallel.sum_indexed(100_000, 4096, f);
        assert_eq!(seq.to_bits(), par.to_bits());

        let a = ProcessingMode::Sequential.map_indices(1000, |i| i * i);
        let b = ProcessingMode::Parallel.map_indices(1000, |i| i * i);
        assert_eq!(a, b);
    }
}
