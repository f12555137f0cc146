//! Data-parallel helpers with a sequential fallback.
//!
//! Hot loops (per-type spectra, per-vertex oracle sums, per-`l` theorem
//! sweeps) go through [`map_collect`] / [`map_range`]. With the `parallel`
//! feature they fan out over rayon; otherwise, or when the caller asks for
//! [`Strategy::Sequential`], they run in order. Output order always matches
//! input order, so results never depend on scheduling.

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

pub fn map_collect<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn map_range<U, F>(strategy: Strategy, range: std::ops::Range<u64>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

/// Splits `0..len` into contiguous chunks and maps each chunk. Used where
/// per-item work is tiny and per-chunk accumulation avoids allocation.
pub fn map_chunks<U, F>(strategy: Strategy, len: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(std::ops::Range<u64>) -> U + Sync + Send,
{
    let chunks = match strategy {
        Strategy::Sequential => 1,
        Strategy::Parallel => workers() as u64 * 4,
    }
    .clamp(1, len.max(1));
    let step = len.div_ceil(chunks).max(1);
    map_range(strategy, 0..chunks, |c| {
        let start = (c * step).min(len);
        let end = ((c + 1) * step).min(len);
        f(start..end)
    })
}

fn workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            let out = map_collect(s, &items, |x| x * x);
            assert_eq!(out, items.iter().map(|x| x * x).collect::<Vec<_>>());
            assert_eq!(map_range(s, 0..1000, |x| x + 1)[999], 1000);
        }
    }

    #[test]
    fn chunks_cover_range_exactly() {
        for len in [0u64, 1, 7, 1000] {
            let ranges = map_chunks(Strategy::Parallel, len, |r| r);
            let total: u64 = ranges.iter().map(|r| r.end - r.start).sum();
            assert_eq!(total, len);
            for w in ranges.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
        }
    }
}
