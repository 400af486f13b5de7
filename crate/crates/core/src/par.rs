//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel inner loop in the crate goes through these functions, so
//! building with `--no-default-features` yields a fully sequential library
//! with identical results. The benches compare the two paths.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` and collects the results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
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
        (0..n).map(f).collect()
    }
}

/// Sequential twin of [`map_indexed`], kept unconditionally compiled so the
/// bench suite can compare both paths in one build.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<'a, T, U, F>(items: &'a [T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&'a T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sums `f(i)` over `0..n` with an associative, commutative `add`.
pub fn sum_indexed<T, F, A>(n: usize, zero: T, f: F, add: A) -> T
where
    T: Send + Sync + Clone,
    F: Fn(usize) -> T + Sync + Send,
    A: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| zero.clone(), |a, b| add(a, b))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(zero, |a, b| add(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_matches_seq() {
        let a = map_indexed(1000, |i| i * i);
        let b = map_indexed_seq(1000, |i| i * i);
        assert_eq!(a, b);
    }

    #[test]
    fn sum_matches_direct() {
        let s = sum_indexed(1001, 0u64, |i| i as u64, |a, b| a + b);
        assert_eq!(s, 500_500);
    }
}
