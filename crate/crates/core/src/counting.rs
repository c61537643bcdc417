//! Exact enumeration of Git graphs.
//!
//! `g(n, k)` is the number of Git graphs with `n` vertices of which `k` are on
//! the main branch. It is computed two independent ways: by the
//! last-main-vertex recurrence
//!
//! ```text
//! g(n, k) = g(n-1, k-1) + (k-1) * sum_{m <= n-2} g(m, k-1)
//! ```
//!
//! and by the closed form `sum_f [k, f] * C(n-k-1, k-f-1)` over Stirling
//! numbers of the first kind.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: usize, k: usize },
    #[error("k must be at least 1 (got n = {n}, k = 0)")]
    ZeroK { n: usize },
    #[error("table covers sizes up to {have}, {needed} requested")]
    TableTooSmall { needed: usize, have: usize },
    #[error("weight parameter u must be positive")]
    NonPositiveWeight,
}

/// Exact counts `g(n, k)` for all `0 <= k <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct CountTable {
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    /// Builds the table with per-`k` running prefix sums, so each entry costs
    /// one big addition and one multiplication by a machine word.
    pub fn build(n_max: usize) -> Self {
        let mut rows = Vec::with_capacity(n_max + 1);
        let mut walker = RowWalker::new(n_max);
        rows.push(walker.row.clone());
        for _ in 1..=n_max {
            walker.advance();
            rows.push(walker.row.clone());
        }
        CountTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `g(n, k)`, zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Result<BigUint, CountError> {
        let row = self.row(n)?;
        Ok(row.get(k).cloned().unwrap_or_default())
    }

    /// `g(n, 0..=n)`.
    pub fn row(&self, n: usize) -> Result<&[BigUint], CountError> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(CountError::TableTooSmall {
                needed: n,
                have: self.n_max(),
            })
    }

    /// Number of Git graphs of size `n`, all `k` together.
    pub fn total(&self, n: usize) -> Result<BigUint, CountError> {
        Ok(self.row(n)?.iter().sum())
    }

    pub fn k_distribution(&self, n: usize, model: &KModel) -> Result<KDistribution, CountError> {
        k_distribution(self.row(n)?, model)
    }
}

/// Advances the recurrence one size at a time, keeping only the current row
/// and the prefix sums.
struct RowWalker {
    n: usize,
    row: Vec<BigUint>,
    // sum of g(m, k) over m <= n - 1
    prefix: Vec<BigUint>,
}

impl RowWalker {
    fn new(capacity: usize) -> Self {
        RowWalker {
            n: 0,
            row: vec![BigUint::one()],
            prefix: vec![BigUint::zero(); capacity + 1],
        }
    }

    fn advance(&mut self) {
        let n = self.n + 1;
        if self.prefix.len() < n + 1 {
            self.prefix.resize(n + 1, BigUint::zero());
        }
        let prev = &self.row;
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigUint::zero());
        for k in 1..=n {
            // self.prefix holds sums up to n - 2 at this point.
            let mut v = prev.get(k - 1).cloned().unwrap_or_default();
            if k >= 2 && !self.prefix[k - 1].is_zero() {
                v += &self.prefix[k - 1] * (k - 1);
            }
            next.push(v);
        }
        for (s, g) in self.prefix.iter_mut().zip(prev) {
            *s += g;
        }
        self.row = next;
        self.n = n;
    }
}

/// `g(n, 0..=n)` for a single size, without materializing smaller rows.
/// Memory is one row plus the prefix sums.
pub fn count_row(n: usize) -> Vec<BigUint> {
    let mut walker = RowWalker::new(n);
    for _ in 0..n {
        walker.advance();
    }
    walker.row
}

/// Unsigned Stirling numbers of the first kind `[k, f]`, `0 <= f <= k <= k_max`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn build(k_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(k_max + 1);
        rows.push(vec![BigUint::one()]);
        for k in 1..=k_max {
            let prev = &rows[k - 1];
            let mut row = vec![BigUint::zero(); k + 1];
            for f in 1..=k {
                let mut v = prev[f - 1].clone();
                if f < k {
                    v += &prev[f] * (k - 1);
                }
                row[f] = v;
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[k, f]`; zero outside `0 <= f <= k`. Panics if `k > k_max`.
    pub fn get(&self, k: usize, f: usize) -> &BigUint {
        static ZERO: BigUint = BigUint::ZERO;
        self.rows[k].get(f).unwrap_or(&ZERO)
    }

    pub fn row(&self, k: usize) -> &[BigUint] {
        &self.rows[k]
    }

    pub(crate) fn check(&self, k: usize) -> Result<(), CountError> {
        if k > self.k_max() {
            return Err(CountError::TableTooSmall {
                needed: k,
                have: self.k_max(),
            });
        }
        Ok(())
    }
}

/// Binomial coefficient with zero outside `0 <= j <= m`.
pub fn binomial(m: i64, j: i64) -> BigUint {
    if m < 0 || j < 0 || j > m {
        return BigUint::zero();
    }
    let j = j.min(m - j) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `C(m, 0..len)`, with zeros past `m`.
pub fn binomial_row(m: usize, len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigUint::one();
    for j in 0..len {
        if j > m {
            out.push(BigUint::zero());
            continue;
        }
        out.push(c.clone());
        c *= m - j;
        c /= j + 1;
    }
    out
}

fn check_nk(n: usize, k: usize) -> Result<(), CountError> {
    if k > n {
        return Err(CountError::KExceedsN { n, k });
    }
    Ok(())
}

/// `g(n, k)` from the Stirling closed form.
pub fn count_closed_form(
    n: usize,
    k: usize,
    stirling: &StirlingTable,
) -> Result<BigUint, CountError> {
    check_nk(n, k)?;
    if k == n {
        return Ok(BigUint::one());
    }
    stirling.check(k)?;
    // C(n-k-1, k-f-1) for f = 1..k-1 reads the row at indices k-2 down to 0.
    let binomials = binomial_row(n - k - 1, k.saturating_sub(1));
    let mut total = BigUint::zero();
    for f in 1..k {
        let c = &binomials[k - f - 1];
        if !c.is_zero() {
            total += stirling.get(k, f) * c;
        }
    }
    Ok(total)
}

/// Size of the rejection superset: every main vertex after the root receives
/// a possibly empty chain, started anywhere before it. `(k-1)! * C(n-2, k-2)`.
pub fn superset_count_h(n: usize, k: usize) -> Result<BigUint, CountError> {
    check_nk(n, k)?;
    if k == 0 {
        return Err(CountError::ZeroK { n });
    }
    if k == 1 {
        return Ok(if n == 1 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    let fact: BigUint = (1..k as u64).product();
    Ok(fact * binomial(n as i64 - 2, k as i64 - 2))
}

/// Number of Git graphs with `(n, k)` and `f` free vertices, indexed by `f`
/// in `0..=k`. Sums to `g(n, k)`.
pub fn free_vertex_distribution(
    n: usize,
    k: usize,
    stirling: &StirlingTable,
) -> Result<Vec<BigUint>, CountError> {
    check_nk(n, k)?;
    if k == 0 {
        return Err(CountError::ZeroK { n });
    }
    stirling.check(k)?;
    let mut weights = vec![BigUint::zero(); k + 1];
    if k == n {
        weights[k] = BigUint::one();
        return Ok(weights);
    }
    let binomials = binomial_row(n - k - 1, k - 1);
    for f in 1..k {
        let c = &binomials[k - f - 1];
        if !c.is_zero() {
            weights[f] = stirling.get(k, f) * c;
        }
    }
    Ok(weights)
}

/// Law of the main-branch length among graphs of a fixed size.
#[derive(Clone, Debug, PartialEq)]
pub enum KModel {
    /// Every graph equally likely.
    Uniform,
    /// Graph weight `u^k / k!`.
    LabeledMain(BigRational),
}

/// Exact law of `k` at a fixed size: integer weights proportional to the
/// probabilities, and exact moments.
#[derive(Clone, Debug)]
pub struct KDistribution {
    pub weights: Vec<BigUint>,
    pub total: BigUint,
    pub mean: BigRational,
    pub variance: BigRational,
}

impl KDistribution {
    pub fn probability(&self, k: usize) -> BigRational {
        let w = self.weights.get(k).cloned().unwrap_or_default();
        BigRational::new(BigInt::from(w), BigInt::from(self.total.clone()))
    }

    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact `k` law from a count row `g(n, 0..=n)`.
pub fn k_distribution(row: &[BigUint], model: &KModel) -> Result<KDistribution, CountError> {
    let n = row.len().saturating_sub(1);
    let weights = match model {
        KModel::Uniform => row.to_vec(),
        KModel::LabeledMain(u) => {
            if !u.is_positive() {
                return Err(CountError::NonPositiveWeight);
            }
            // g(n,k) u^k / k!, scaled by q^n n! where u = p/q.
            let p = u.numer().magnitude();
            let q = u.denom().magnitude();
            let mut p_pow = Vec::with_capacity(n + 1);
            let mut acc = BigUint::one();
            for _ in 0..=n {
                p_pow.push(acc.clone());
                acc *= p;
            }
            let mut weights = vec![BigUint::zero(); n + 1];
            let mut falling = BigUint::one(); // n! / k!
            let mut q_pow = BigUint::one(); // q^(n-k)
            for k in (0..=n).rev() {
                if !row[k].is_zero() {
                    weights[k] = &row[k] * &p_pow[k] * &q_pow * &falling;
                }
                falling *= k.max(1);
                q_pow *= q;
            }
            weights
        }
    };
    let total: BigUint = weights.iter().sum();
    let mut first = BigUint::zero();
    let mut second = BigUint::zero();
    for (k, w) in weights.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let kw = w * k;
        second += &kw * k;
        first += kw;
    }
    let denom = BigInt::from(total.clone());
    let mean = BigRational::new(BigInt::from(first), denom.clone());
    let variance = BigRational::new(BigInt::from(second), denom) - &mean * &mean;
    Ok(KDistribution {
        weights,
        total,
        mean,
        variance,
    })
}

/// `sum_k g(n, k) u^k / k!`, the size-`n` coefficient of the labeled-main
/// generating function.
pub fn labeled_main_coefficient(row: &[BigUint], u: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    let mut term = BigRational::one(); // u^k / k!
    for (k, g) in row.iter().enumerate() {
        if k > 0 {
            term = term * u / BigRational::from_integer(BigInt::from(k));
        }
        if !g.is_zero() {
            total += &term * BigRational::from_integer(BigInt::from(g.clone()));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    // Brute force: count permutations of 0..k by cycle count.
    fn stirling_by_permutations(k: usize) -> Vec<u64> {
        let mut counts = vec![0u64; k + 1];
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let mut seen = vec![false; k];
            let mut cycles = 0;
            for s in 0..k {
                if !seen[s] {
                    cycles += 1;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = perm[x];
                    }
                }
            }
            counts[cycles] += 1;
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        counts
    }

    #[test]
    fn recurrence_spot_values() {
        let t = CountTable::build(10);
        assert_eq!(t.get(0, 0).unwrap(), big(1));
        assert_eq!(t.get(1, 1).unwrap(), big(1));
        assert_eq!(t.get(5, 3).unwrap(), big(5));
        assert_eq!(t.get(7, 4).unwrap(), big(34));
        assert_eq!(t.get(8, 4).unwrap(), big(57));
        assert_eq!(t.get(6, 5).unwrap(), big(10));
        assert_eq!(t.get(3, 7).unwrap(), big(0));
        assert!(matches!(
            t.get(11, 1),
            Err(CountError::TableTooSmall { .. })
        ));
    }

    #[test]
    fn boundary_values() {
        let t = CountTable::build(30);
        for n in 1..=30 {
            assert_eq!(t.get(n, 0).unwrap(), big(0));
            assert_eq!(t.get(n, n).unwrap(), big(1));
            if n >= 2 {
                assert_eq!(t.get(n, 1).unwrap(), big(0));
            }
        }
    }

    #[test]
    fn rolling_row_matches_table() {
        let t = CountTable::build(25);
        for n in [0, 1, 2, 9, 25] {
            assert_eq!(count_row(n), t.row(n).unwrap());
        }
    }

    #[test]
    fn stirling_matches_permutation_census() {
        let s = StirlingTable::build(7);
        assert_eq!(s.get(0, 0), &big(1));
        for k in 1..=7 {
            for (f, &c) in stirling_by_permutations(k).iter().enumerate() {
                assert_eq!(s.get(k, f), &big(c), "[{k},{f}]");
            }
        }
        assert_eq!(s.get(3, 2), &big(3));
        assert_eq!(s.get(4, 2), &big(11));
    }

    #[test]
    fn stirling_rows_sum_to_factorial() {
        let s = StirlingTable::build(40);
        let mut fact = big(1);
        for k in 0..=40u64 {
            if k > 0 {
                fact *= k;
            }
            let sum: BigUint = s.row(k as usize).iter().sum();
            assert_eq!(sum, fact);
            assert_eq!(s.get(k as usize, k as usize), &big(1));
        }
    }

    #[test]
    fn closed_form_examples() {
        let s = StirlingTable::build(10);
        assert_eq!(count_closed_form(5, 3, &s).unwrap(), big(5));
        assert_eq!(count_closed_form(7, 4, &s).unwrap(), big(34));
        assert_eq!(count_closed_form(9, 9, &s).unwrap(), big(1));
        assert_eq!(count_closed_form(0, 0, &s).unwrap(), big(1));
        assert_eq!(
            count_closed_form(3, 4, &s),
            Err(CountError::KExceedsN { n: 3, k: 4 })
        );
    }

    #[test]
    fn superset_examples() {
        assert_eq!(superset_count_h(5, 3).unwrap(), big(6));
        assert_eq!(superset_count_h(7, 4).unwrap(), big(60));
        assert_eq!(superset_count_h(6, 6).unwrap(), big(120));
        assert_eq!(superset_count_h(1, 1).unwrap(), big(1));
        assert_eq!(superset_count_h(4, 1).unwrap(), big(0));
        assert!(superset_count_h(2, 3).is_err());
    }

    #[test]
    fn free_vertex_examples() {
        let s = StirlingTable::build(10);
        let w = free_vertex_distribution(5, 3, &s).unwrap();
        assert_eq!(w, vec![big(0), big(2), big(3), big(0)]);
        let w = free_vertex_distribution(8, 4, &s).unwrap();
        assert_eq!(w, vec![big(0), big(18), big(33), big(6), big(0)]);
        let w = free_vertex_distribution(6, 6, &s).unwrap();
        assert_eq!(w[6], big(1));
        assert_eq!(w.iter().sum::<BigUint>(), big(1));
        assert_eq!(
            free_vertex_distribution(3, 0, &s),
            Err(CountError::ZeroK { n: 3 })
        );
    }

    #[test]
    fn free_vertex_support() {
        let s = StirlingTable::build(12);
        for n in 1..=20usize {
            for k in 1..=n.min(12) {
                let w = free_vertex_distribution(n, k, &s).unwrap();
                for (f, wf) in w.iter().enumerate() {
                    let expect = if k == n {
                        f == k
                    } else {
                        f >= 1.max((2 * k).saturating_sub(n)) && f < k
                    };
                    assert_eq!(!wf.is_zero(), expect, "n={n} k={k} f={f}");
                }
            }
        }
    }

    #[test]
    fn uniform_k_law_at_five() {
        let t = CountTable::build(5);
        let d = t.k_distribution(5, &KModel::Uniform).unwrap();
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let probs: Vec<_> = (0..=5).map(|k| d.probability(k)).collect();
        assert_eq!(
            probs,
            vec![r(0, 1), r(0, 1), r(1, 13), r(5, 13), r(6, 13), r(1, 13)]
        );
        let sum: BigRational = probs.iter().sum();
        assert_eq!(sum, r(1, 1));
    }

    #[test]
    fn labeled_main_mean_small() {
        let t = CountTable::build(3);
        let u = BigRational::from_integer(2.into());
        let d = t.k_distribution(3, &KModel::LabeledMain(u)).unwrap();
        assert_eq!(d.mean, BigRational::new(12.into(), 5.into()));
        // weights 2 and 4/3 on k = 2, 3
        assert_eq!(d.variance, BigRational::new(6.into(), 25.into()));
    }

    #[test]
    fn labeled_main_rejects_nonpositive_u() {
        let t = CountTable::build(3);
        let d = t.k_distribution(3, &KModel::LabeledMain(BigRational::zero()));
        assert_eq!(d.unwrap_err(), CountError::NonPositiveWeight);
    }

    #[test]
    fn labeled_main_coefficients_small() {
        let t = CountTable::build(3);
        let u = BigRational::from_integer(2.into());
        // n=3: g(3,2)=1, g(3,3)=1 -> 4/2 + 8/6
        assert_eq!(
            labeled_main_coefficient(t.row(3).unwrap(), &u),
            BigRational::new(10.into(), 3.into())
        );
        assert_eq!(
            labeled_main_coefficient(t.row(0).unwrap(), &u),
            BigRational::one()
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(
            binomial_row(3, 6),
            vec![big(1), big(3), big(3), big(1), big(0), big(0)]
        );
    }
}
