//! Exact uniform sampler through cyclariums.
//!
//! A uniform Git graph with `n` vertices and `k` main vertices is produced by
//! drawing the free-vertex count `f` with weight `[k, f] * C(n-k-1, k-f-1)`,
//! a uniform permutation of `1..=k` with `f` cycles, and a uniform
//! composition of the `n - k` white vertices into `k - f` positive chains,
//! then mapping the resulting cyclarium onto its Git graph.

use std::borrow::Cow;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, RngCore};

use super::composition::sample_composition;
use super::permutation::{sample_permutation_with_cycles, CycleCounts, ScaledStirling};
use super::random::weighted_index;
use super::SampleError;
use crate::counting::{free_vertex_distribution, CountTable, StirlingTable};
use crate::cyclarium::git_graph_from_paths;
use crate::graph::GitGraph;

/// Free-vertex log-weights below `max - TAIL_CUTOFF` (natural log) are
/// dropped, together with the geometric bound on everything after them.
/// `e^-40` is about `4e-18`, below the resolution of a double.
const TAIL_CUTOFF: f64 = 40.0;

/// Default ceiling on `k` for exact big-integer tables in
/// [`ExactSampler::auto`].
pub const EXACT_TABLE_LIMIT: usize = 256;

/// Upper bound on scaled table entries (`k` times the number of cycle
/// columns) before giving up.
const SCALED_TABLE_LIMIT: usize = 400_000_000;

#[derive(Clone, Debug)]
enum FreeLaw {
    Fixed(usize),
    // weights indexed by f
    Exact(Vec<BigUint>),
    // (first f, cumulative normalized weights)
    Float(usize, Vec<f64>),
}

#[derive(Clone, Debug)]
enum Tables<'a> {
    Exact(Cow<'a, StirlingTable>),
    Scaled(ScaledStirling),
}

/// Uniform sampler over Git graphs with fixed `(n, k)`, or `(n, k, f)`.
#[derive(Clone, Debug)]
pub struct ExactSampler<'a> {
    n: usize,
    k: usize,
    free: FreeLaw,
    tables: Tables<'a>,
}

fn check_nk(n: usize, k: usize) -> Result<(), SampleError> {
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

/// Whether some Git graph has parameters `(n, k, f)`.
pub fn feasible_free_count(n: usize, k: usize, f: usize) -> bool {
    if k == 0 || k > n {
        return n == 0 && k == 0 && f == 0;
    }
    if k == n {
        return f == k;
    }
    f >= 1 && f < k && f + n >= 2 * k
}

impl<'a> ExactSampler<'a> {
    /// Sampler backed by exact Stirling numbers. Every probability is an exact
    /// ratio of integers.
    pub fn new(
        n: usize,
        k: usize,
        f: Option<usize>,
        stirling: &'a StirlingTable,
    ) -> Result<Self, SampleError> {
        Self::exact(n, k, f, Cow::Borrowed(stirling))
    }

    fn exact(
        n: usize,
        k: usize,
        f: Option<usize>,
        stirling: Cow<'a, StirlingTable>,
    ) -> Result<Self, SampleError> {
        check_nk(n, k)?;
        if stirling.k_max() < k {
            return Err(SampleError::MissingTables {
                k,
                f: f.unwrap_or(k),
            });
        }
        let weights = free_vertex_distribution(n, k, &stirling)?;
        let free = match f {
            Some(f) => {
                if weights.get(f).is_none_or(Zero::is_zero) {
                    return Err(SampleError::Infeasible(format!(
                        "no Git graph with n = {n}, k = {k}, f = {f}"
                    )));
                }
                FreeLaw::Fixed(f)
            }
            None => FreeLaw::Exact(weights),
        };
        Ok(ExactSampler {
            n,
            k,
            free,
            tables: Tables::Exact(stirling),
        })
    }

    /// Sampler backed by floating-point scaled Stirling numbers, for main
    /// branches too long for exact tables. When `f` is not given its law is
    /// truncated where the remaining mass drops below `e^-40` of the mode.
    pub fn scaled(
        n: usize,
        k: usize,
        f: Option<usize>,
    ) -> Result<ExactSampler<'static>, SampleError> {
        check_nk(n, k)?;
        let guard = |columns: usize| {
            if columns.saturating_mul(k + 1) > SCALED_TABLE_LIMIT {
                Err(SampleError::TooLarge(format!(
                    "{columns} cycle columns over k = {k}"
                )))
            } else {
                Ok(())
            }
        };
        if let Some(f) = f {
            if !feasible_free_count(n, k, f) {
                return Err(SampleError::Infeasible(format!(
                    "no Git graph with n = {n}, k = {k}, f = {f}"
                )));
            }
            guard(f)?;
            return Ok(ExactSampler {
                n,
                k,
                free: FreeLaw::Fixed(f),
                tables: Tables::Scaled(ScaledStirling::with_columns(k, f)),
            });
        }
        let mut table = ScaledStirling::new(k);
        if k == n {
            guard(k)?;
            while table.column_count() < k {
                table.push_column();
            }
            return Ok(ExactSampler {
                n,
                k,
                free: FreeLaw::Fixed(k),
                tables: Tables::Scaled(table),
            });
        }
        // Support is f in f_lo..k with weight [k,f] C(m, k-f-1), m = n-k-1.
        let m = n - k - 1;
        let f_lo = 1.max((2 * k).saturating_sub(n));
        guard(f_lo)?;
        while table.column_count() < f_lo {
            table.push_column();
        }
        // ln C(m, k-f-1) - ln C(m, k-f_lo-1), accumulated by ratios.
        let mut ln_binom = 0.0;
        let mut log_w = Vec::new();
        let mut best = f64::NEG_INFINITY;
        for f in f_lo..k {
            if f > f_lo {
                let j = (k - f) as f64; // C(m, j-1) / C(m, j) = j / (m - j + 1)
                ln_binom += (j / (m as f64 - j + 1.0)).ln();
                guard(f)?;
                table.push_column();
            }
            let w = table.ln_scaled(k, f) + ln_binom;
            best = best.max(w);
            log_w.push(w);
            if let [.., before, last] = log_w[..] {
                // Log-concave weights: past the mode the ratio only shrinks,
                // so the rest is bounded by a geometric series.
                let ratio = (last - before).exp();
                if ratio < 1.0 && last - (1.0 - ratio).ln() < best - TAIL_CUTOFF {
                    break;
                }
            }
        }
        let mut cumulative = Vec::with_capacity(log_w.len());
        let mut acc = 0.0;
        for w in &log_w {
            acc += (w - best).exp();
            cumulative.push(acc);
        }
        for c in &mut cumulative {
            *c /= acc;
        }
        Ok(ExactSampler {
            n,
            k,
            free: FreeLaw::Float(f_lo, cumulative),
            tables: Tables::Scaled(table),
        })
    }

    /// Exact tables up to [`EXACT_TABLE_LIMIT`], scaled tables beyond.
    pub fn auto(
        n: usize,
        k: usize,
        f: Option<usize>,
    ) -> Result<ExactSampler<'static>, SampleError> {
        if k <= EXACT_TABLE_LIMIT {
            ExactSampler::exact(n, k, f, Cow::Owned(StirlingTable::build(k)))
        } else {
            ExactSampler::scaled(n, k, f)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn sample_free<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        match &self.free {
            FreeLaw::Fixed(f) => *f,
            FreeLaw::Exact(weights) => weighted_index(rng, weights).expect("nonempty class"),
            FreeLaw::Float(f_lo, cumulative) => {
                let u: f64 = rng.random();
                let i = cumulative.partition_point(|&c| c <= u);
                f_lo + i.min(cumulative.len() - 1)
            }
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> GitGraph {
        let f = self.sample_free(rng);
        let cycles = match &self.tables {
            Tables::Exact(t) => permutation(self.k, f, rng, t.as_ref()),
            Tables::Scaled(t) => permutation(self.k, f, rng, t),
        };
        let chains = sample_composition(self.n - self.k, self.k - f, true, rng)
            .expect("feasible free count");
        assemble(self.k, cycles, &chains)
    }
}

fn permutation<T: CycleCounts, R: RngCore + ?Sized>(
    k: usize,
    f: usize,
    rng: &mut R,
    tables: &T,
) -> Vec<Vec<usize>> {
    sample_permutation_with_cycles(k, f, rng, tables).expect("tables checked at construction")
}

/// Hands chain lengths to the non-maximum labels in increasing label order,
/// then maps the cyclarium to its Git graph.
fn assemble(k: usize, mut cycles: Vec<Vec<usize>>, chains: &[usize]) -> GitGraph {
    let mut is_max = vec![false; k + 1];
    for c in &mut cycles {
        let at = (0..c.len()).max_by_key(|&i| c[i]).expect("nonempty cycle");
        c.rotate_left(at);
        is_max[c[0]] = true;
    }
    let mut chain_of = vec![0usize; k + 1];
    let mut next = chains.iter();
    for label in 1..=k {
        if !is_max[label] {
            chain_of[label] = *next.next().expect("one chain per non-maximum");
        }
    }
    cycles.sort_unstable_by_key(|c| c[0]);
    let labels: Vec<usize> = cycles.into_iter().flatten().collect();
    let lengths: Vec<usize> = labels.iter().map(|&l| chain_of[l]).collect();
    git_graph_from_paths(&labels, &lengths)
}

/// One-shot exact sample with borrowed tables.
pub fn sample_exact<R: RngCore + ?Sized>(
    n: usize,
    k: usize,
    f: Option<usize>,
    rng: &mut R,
    stirling: &StirlingTable,
) -> Result<GitGraph, SampleError> {
    Ok(ExactSampler::new(n, k, f, stirling)?.sample(rng))
}

/// Uniform sampler over all Git graphs of a fixed size: `k` is drawn with
/// weight `g(n, k)` by one exact draw, then sampled exactly.
#[derive(Clone, Debug)]
pub struct SizeSampler<'a> {
    n: usize,
    k_weights: Vec<BigUint>,
    by_k: Vec<Option<ExactSampler<'a>>>,
}

impl<'a> SizeSampler<'a> {
    pub fn new(
        n: usize,
        counts: &CountTable,
        stirling: &'a StirlingTable,
    ) -> Result<Self, SampleError> {
        let row = counts.row(n)?;
        if n > 0 && stirling.k_max() < n {
            return Err(SampleError::MissingTables { k: n, f: n });
        }
        let by_k = row
            .iter()
            .enumerate()
            .map(|(k, g)| {
                if g.is_zero() || k == 0 {
                    Ok(None)
                } else {
                    ExactSampler::new(n, k, None, stirling).map(Some)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(SizeSampler {
            n,
            k_weights: row.to_vec(),
            by_k,
        })
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> GitGraph {
        if self.n == 0 {
            return GitGraph::empty();
        }
        let k = weighted_index(rng, &self.k_weights).expect("nonempty size class");
        self.by_k[k]
            .as_ref()
            .expect("sampler for every weighted k")
            .sample(rng)
    }
}

pub fn sample_exact_size_only<R: RngCore + ?Sized>(
    n: usize,
    rng: &mut R,
    counts: &CountTable,
    stirling: &StirlingTable,
) -> Result<GitGraph, SampleError> {
    Ok(SizeSampler::new(n, counts, stirling)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::permutation::biguint_ln;
    use crate::sampling::RandomSource;
    use std::collections::HashMap;

    fn census(sampler: &ExactSampler, draws: usize) -> HashMap<Vec<u8>, usize> {
        let mut rng = RandomSource::new(5);
        let mut seen = HashMap::new();
        for _ in 0..draws {
            let g = sampler.sample(&mut rng);
            assert_eq!(g.validate(), Ok(()));
            assert_eq!((g.size(), g.k()), (sampler.n, sampler.k));
            *seen.entry(g.canonical_encode().unwrap()).or_insert(0) += 1;
        }
        seen
    }

    #[test]
    fn all_black_is_a_chain() {
        let s = StirlingTable::build(6);
        let mut rng = RandomSource::new(0);
        for _ in 0..10 {
            assert_eq!(
                sample_exact(6, 6, None, &mut rng, &s).unwrap(),
                GitGraph::chain(6)
            );
        }
        let scaled = ExactSampler::scaled(6, 6, None).unwrap();
        assert_eq!(scaled.sample(&mut rng), GitGraph::chain(6));
    }

    #[test]
    fn fixed_free_count_covers_three_graphs() {
        let s = StirlingTable::build(3);
        let sampler = ExactSampler::new(5, 3, Some(2), &s).unwrap();
        let mut rng = RandomSource::new(1);
        let seen = census(&sampler, 30_000);
        assert_eq!(seen.len(), 3);
        for &c in seen.values() {
            assert!((9_400..10_600).contains(&c), "{seen:?}");
        }
        for _ in 0..100 {
            assert_eq!(sampler.sample(&mut rng).free_count(), 2);
        }
    }

    #[test]
    fn scaled_backend_hits_every_graph() {
        let sampler = ExactSampler::scaled(7, 4, None).unwrap();
        let seen = census(&sampler, 34_000);
        assert_eq!(seen.len(), 34);
        for &c in seen.values() {
            assert!((780..1_220).contains(&c), "{c}");
        }
    }

    #[test]
    fn scaled_free_law_matches_exact() {
        // Compare the truncated float law of f against exact weights.
        let (n, k) = (200, 60);
        let s = StirlingTable::build(k);
        let exact = free_vertex_distribution(n, k, &s).unwrap();
        let total: BigUint = exact.iter().sum();
        let sampler = ExactSampler::scaled(n, k, None).unwrap();
        let FreeLaw::Float(f_lo, cumulative) = &sampler.free else {
            panic!("float law expected")
        };
        let mut prev = 0.0;
        for (i, c) in cumulative.iter().enumerate() {
            let f = f_lo + i;
            let want = (biguint_ln(&exact[f]) - biguint_ln(&total)).exp();
            let got = c - prev;
            prev = *c;
            assert!(
                (want - got).abs() < 1e-12 + 1e-9 * want,
                "f={f}: {want} vs {got}"
            );
        }
    }

    #[test]
    fn rejects_infeasible() {
        let s = StirlingTable::build(5);
        assert!(ExactSampler::new(5, 3, Some(3), &s).is_err());
        assert!(ExactSampler::new(5, 1, None, &s).is_err());
        assert!(ExactSampler::new(3, 4, None, &s).is_err());
        assert!(ExactSampler::scaled(5, 3, Some(0)).is_err());
        assert!(matches!(
            ExactSampler::new(9, 7, None, &StirlingTable::build(3)),
            Err(SampleError::MissingTables { .. })
        ));
        let mut rng = RandomSource::new(0);
        assert_eq!(
            sample_exact(1, 1, None, &mut rng, &s).unwrap(),
            GitGraph::chain(1)
        );
    }

    #[test]
    fn feasibility_matches_weights() {
        let s = StirlingTable::build(9);
        for n in 1..=14 {
            for k in 1..=n.min(9) {
                let w = free_vertex_distribution(n, k, &s).unwrap();
                for f in 0..=k + 1 {
                    let nonzero = w.get(f).is_some_and(|x| !x.is_zero());
                    assert_eq!(feasible_free_count(n, k, f), nonzero, "{n} {k} {f}");
                }
            }
        }
    }

    #[test]
    fn size_only_k_law() {
        let counts = CountTable::build(5);
        let s = StirlingTable::build(5);
        let sampler = SizeSampler::new(5, &counts, &s).unwrap();
        let mut rng = RandomSource::new(8);
        let mut by_k = [0usize; 6];
        for _ in 0..26_000 {
            by_k[sampler.sample(&mut rng).k()] += 1;
        }
        // (0, 0, 1, 5, 6, 1) / 13
        for (k, want) in [(2, 2_000.0), (3, 10_000.0), (4, 12_000.0), (5, 2_000.0)] {
            let got = by_k[k] as f64;
            assert!(
                (got - want).abs() < 4.0 * want.sqrt() + 50.0,
                "k={k}: {by_k:?}"
            );
        }
        assert_eq!(by_k[0] + by_k[1], 0);
        assert_eq!(
            sample_exact_size_only(1, &mut rng, &counts, &s).unwrap(),
            GitGraph::chain(1)
        );
        assert_eq!(
            sample_exact_size_only(0, &mut rng, &counts, &s).unwrap(),
            GitGraph::empty()
        );
    }
}
