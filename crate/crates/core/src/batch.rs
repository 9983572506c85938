//! Batch evaluation helpers: the data-parallel inner loops of corpus runs,
//! residual scans and per-sample decomposition work.
//!
//! Every helper has a sequential implementation and, under the `parallel`
//! feature (on by default), a rayon implementation. The unsuffixed functions
//! dispatch on the feature so callers stay oblivious; the suffixed pairs stay
//! public for the benchmark suite that compares the two.
//!
//! All reductions used here (index-ordered collection, max, first error) are
//! order-independent, so the parallel results are bit-identical to the
//! sequential ones.

use crate::error::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_indexed_par<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Applies `f` to `0..n`, collecting results in index order.
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        map_indexed_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

pub fn try_map_indexed_seq<U, F>(n: usize, f: F) -> Result<Vec<U>, Error>
where
    F: Fn(usize) -> Result<U, Error>,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn try_map_indexed_par<U, F>(n: usize, f: F) -> Result<Vec<U>, Error>
where
    U: Send,
    F: Fn(usize) -> Result<U, Error> + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Fallible variant of [`map_indexed`]; the first error wins.
pub fn try_map_indexed<U, F>(n: usize, f: F) -> Result<Vec<U>, Error>
where
    U: Send,
    F: Fn(usize) -> Result<U, Error> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        try_map_indexed_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        try_map_indexed_seq(n, f)
    }
}

pub fn try_max_map_seq<T, F>(items: &[T], f: F) -> Result<f64, Error>
where
    F: Fn(&T) -> Result<f64, Error>,
{
    let mut acc = 0.0f64;
    for item in items {
        acc = acc.max(f(item)?);
    }
    Ok(acc)
}

#[cfg(feature = "parallel")]
pub fn try_max_map_par<T, F>(items: &[T], f: F) -> Result<f64, Error>
where
    T: Sync,
    F: Fn(&T) -> Result<f64, Error> + Send + Sync,
{
    items
        .par_iter()
        .map(&f)
        .try_reduce(|| 0.0f64, |a, b| Ok(a.max(b)))
}

/// Maximum of `f` over a slice, starting from zero (gaps are nonnegative).
pub fn try_max_map<T, F>(items: &[T], f: F) -> Result<f64, Error>
where
    T: Sync,
    F: Fn(&T) -> Result<f64, Error> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        try_max_map_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        try_max_map_seq(items, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexed_map_preserves_order() {
        let v = map_indexed(5, |i| i * i);
        assert_eq!(v, vec![0, 1, 4, 9, 16]);
    }

    #[test]
    fn max_map_matches_sequential() {
        let items: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin().abs()).collect();
        let f = |x: &f64| Ok(*x);
        let seq = try_max_map_seq(&items, f).unwrap();
        let any = try_max_map(&items, f).unwrap();
        assert_eq!(seq, any);
    }

    #[test]
    fn errors_propagate() {
        let r = try_map_indexed(4, |i| {
            if i == 2 {
                Err(Error::EmptyPointList)
            } else {
                Ok(i)
            }
        });
        assert!(r.is_err());
    }
}
