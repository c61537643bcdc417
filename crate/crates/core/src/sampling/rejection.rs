//! Rejection sampler for short main branches.
//!
//! Samples the superset where every main vertex but the root receives a
//! possibly empty chain, started at a uniform earlier main vertex, and keeps
//! the draw iff every empty chain starts at the root. Accepted empty chains
//! are read as free vertices, which makes the accepted graph uniform among
//! Git graphs with the same `(n, k)`. The expected number of trials stays
//! bounded while `k = O(sqrt(n))`.

use rand::{Rng, RngCore};

use super::composition::sample_composition;
use super::SampleError;
use crate::graph::{Branch, GitGraph};

/// Whether `k` is past the regime where the trial count is known to stay
/// bounded (`k > 3 sqrt(n)`). Sampling still works, it may just be slow.
pub fn exceeds_rejection_regime(n: usize, k: usize) -> bool {
    (k as f64) > 3.0 * (n as f64).sqrt()
}

fn check(n: usize, k: usize) -> Result<(), SampleError> {
    if k == 0 || k > n {
        return Err(SampleError::Infeasible(format!(
            "no Git graph with n = {n}, k = {k}"
        )));
    }
    if k == 1 && n > 1 {
        return Err(SampleError::Infeasible(format!(
            "no Git graph with a single main vertex and n = {n}"
        )));
    }
    Ok(())
}

/// Uniform Git graph with `n` vertices, `k` on the main branch.
pub fn sample_rejection<R: RngCore + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<GitGraph, SampleError> {
    sample_rejection_counted(n, k, rng).map(|(g, _)| g)
}

/// As [`sample_rejection`], also returning the number of trials used
/// (at least 1).
pub fn sample_rejection_counted<R: RngCore + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<(GitGraph, u64), SampleError> {
    check(n, k)?;
    if k == 1 {
        return Ok((GitGraph::chain(1), 1));
    }
    let mut trials = 0u64;
    let lengths = loop {
        trials += 1;
        // lengths[i] is the chain merging into main vertex i + 2.
        let lengths = sample_composition(n - k, k - 1, false, rng)?;
        // Only the starts of empty chains decide acceptance, and starts are
        // independent, so draw those first.
        let accepted = lengths
            .iter()
            .enumerate()
            .all(|(i, &len)| len > 0 || rng.random_range(0..=i) == 0);
        if accepted {
            break lengths;
        }
    };
    let branches = lengths
        .iter()
        .enumerate()
        .filter(|&(_, &len)| len > 0)
        .map(|(i, &len)| {
            let end = i + 2;
            Branch::new(rng.random_range(1..end), end, len)
        })
        .collect();
    Ok((GitGraph::from_parts(k, branches), trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RandomSource;
    use std::collections::HashMap;

    #[test]
    fn single_vertex() {
        let mut rng = RandomSource::new(0);
        assert_eq!(
            sample_rejection(1, 1, &mut rng).unwrap(),
            GitGraph::chain(1)
        );
    }

    #[test]
    fn errors() {
        let mut rng = RandomSource::new(0);
        assert!(sample_rejection(3, 4, &mut rng).is_err());
        assert!(sample_rejection(3, 1, &mut rng).is_err());
        assert!(sample_rejection(3, 0, &mut rng).is_err());
    }

    #[test]
    fn five_three_hits_all_five() {
        let mut rng = RandomSource::new(12);
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        for _ in 0..25_000 {
            let g = sample_rejection(5, 3, &mut rng).unwrap();
            assert_eq!(g.validate(), Ok(()));
            assert_eq!((g.size(), g.k()), (5, 3));
            *seen.entry(g.canonical_encode().unwrap()).or_default() += 1;
        }
        assert_eq!(seen.len(), 5);
        for &c in seen.values() {
            assert!((4_600..5_400).contains(&c), "{seen:?}");
        }
    }

    #[test]
    fn all_black_needs_all_roots() {
        // Only the all-root assignment survives: acceptance 1/(k-1)!.
        let mut rng = RandomSource::new(2);
        let mut trials = 0;
        for _ in 0..2_000 {
            let (g, t) = sample_rejection_counted(4, 4, &mut rng).unwrap();
            assert_eq!(g, GitGraph::chain(4));
            trials += t;
        }
        let mean = trials as f64 / 2_000.0;
        assert!((mean - 6.0).abs() < 0.6, "{mean}");
    }

    #[test]
    fn regime_flag() {
        assert!(!exceeds_rejection_regime(10_000, 100));
        assert!(exceeds_rejection_regime(100, 31));
    }
}
