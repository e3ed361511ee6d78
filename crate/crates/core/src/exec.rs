//! Data-parallel helpers. With the `parallel` feature the default strategy
//! fans out over rayon; without it everything runs sequentially. Results are
//! always returned in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Strategy {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// `(0..n).map(f)` collected in order.
pub fn map_range<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Smallest index `i < n` with `f(i) = Some(_)`.
pub fn find_first<T, F>(strategy: Strategy, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().find_map_first(|i| f(i).map(|t| (i, t))),
        _ => (0..n).find_map(|i| f(i).map(|t| (i, t))),
    }
}

/// Decodes `index` as a little-endian mixed-radix tuple with base `radix`.
pub fn tuple(mut index: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % radix);
        index /= radix;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let f = |i: usize| i * i;
        assert_eq!(map_range(Strategy::Sequential, 100, f), map_range(Strategy::Parallel, 100, f));
        let g = |i: usize| (i % 7 == 3 && i > 20).then_some(i);
        assert_eq!(find_first(Strategy::Sequential, 100, g), Some((24, 24)));
        assert_eq!(find_first(Strategy::Parallel, 100, g), Some((24, 24)));
    }

    #[test]
    fn tuple_decoding() {
        assert_eq!(tuple(5, 2, 3), vec![1, 0, 1]);
        assert_eq!(tuple(7, 3, 2), vec![1, 2]);
    }
}
