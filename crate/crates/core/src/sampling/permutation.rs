//! Uniform permutations with a prescribed number of cycles.
//!
//! Recursive method on the largest element: in a uniform permutation of
//! `1..=j` with `c` cycles, `j` is a fixed point with probability
//! `[j-1, c-1] / [j, c]`; otherwise it sits after a uniformly chosen element
//! of a uniform permutation of `1..j` with `c` cycles.

use num_traits::Zero;
use rand::{Rng, RngCore};

use super::random::uniform_below;
use super::SampleError;
use crate::counting::StirlingTable;

/// Source of the fixed-point probabilities `[j-1, c-1] / [j, c]`.
pub trait CycleCounts {
    /// Whether `[j, c]` for every `c <= f` and `j <= k` is available.
    fn covers(&self, k: usize, f: usize) -> bool;

    /// Draws the event "the largest element is a fixed point" for a uniform
    /// permutation of size `j` with `c` cycles.
    fn largest_is_fixed<R: RngCore + ?Sized>(&self, j: usize, c: usize, rng: &mut R) -> bool;
}

impl CycleCounts for StirlingTable {
    fn covers(&self, k: usize, _f: usize) -> bool {
        k <= self.k_max()
    }

    fn largest_is_fixed<R: RngCore + ?Sized>(&self, j: usize, c: usize, rng: &mut R) -> bool {
        let fixed = self.get(j - 1, c - 1);
        if fixed.is_zero() {
            return false;
        }
        let all = self.get(j, c);
        if fixed == all {
            return true;
        }
        &uniform_below(rng, all) < fixed
    }
}

/// `ln([j, c] / (j-1)!)` in floating point, built one cycle count at a time.
///
/// Dividing by `(j-1)!` keeps the values of moderate size for small `c`, and
/// the recurrence
/// `A(j, c) = A(j-1, c-1) / (j-1) + A(j-1, c)` only adds positive terms, so
/// the relative error stays at a few ulps per step. Used where exact tables
/// would be too large.
#[derive(Clone, Debug)]
pub struct ScaledStirling {
    k: usize,
    ln_int: Vec<f64>,
    // columns[c - 1][j] = ln A(j, c), j in 0..=k
    columns: Vec<Vec<f64>>,
}

impl ScaledStirling {
    pub fn new(k: usize) -> Self {
        ScaledStirling {
            k,
            ln_int: (0..=k).map(|i| (i as f64).ln()).collect(),
            columns: Vec::new(),
        }
    }

    /// Builds columns `1..=c_max` at once.
    pub fn with_columns(k: usize, c_max: usize) -> Self {
        let mut s = ScaledStirling::new(k);
        while s.columns.len() < c_max.min(k) {
            s.push_column();
        }
        s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Appends the next cycle count column.
    pub fn push_column(&mut self) {
        let c = self.columns.len() + 1;
        let mut col = vec![f64::NEG_INFINITY; self.k + 1];
        if c == 1 {
            // [j, 1] = (j-1)!
            for v in col.iter_mut().skip(1) {
                *v = 0.0;
            }
        } else {
            let prev = &self.columns[c - 2];
            for j in c..=self.k {
                let via_fixed = prev[j - 1] - self.ln_int[j - 1];
                col[j] = log_add_exp(via_fixed, col[j - 1]);
            }
        }
        self.columns.push(col);
    }

    /// `ln([j, c] / (j-1)!)`, `-inf` where `[j, c] = 0`.
    pub fn ln_scaled(&self, j: usize, c: usize) -> f64 {
        if c == 0 {
            return if j == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        self.columns[c - 1][j]
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

impl CycleCounts for ScaledStirling {
    fn covers(&self, k: usize, f: usize) -> bool {
        k <= self.k && f <= self.columns.len()
    }

    fn largest_is_fixed<R: RngCore + ?Sized>(&self, j: usize, c: usize, rng: &mut R) -> bool {
        if c == j {
            return true;
        }
        if c == 1 || j == 1 {
            return j == 1;
        }
        let ln_p = self.ln_scaled(j - 1, c - 1) - self.ln_int[j - 1] - self.ln_scaled(j, c);
        rng.random::<f64>() < ln_p.exp()
    }
}

/// Uniform permutation of `1..=k` with exactly `f` cycles, as a list of
/// cycles (each listed in cyclic order).
pub fn sample_permutation_with_cycles<T: CycleCounts, R: RngCore + ?Sized>(
    k: usize,
    f: usize,
    rng: &mut R,
    counts: &T,
) -> Result<Vec<Vec<usize>>, SampleError> {
    if f == 0 || f > k {
        return Err(SampleError::Infeasible(format!(
            "{f} cycles on {k} elements"
        )));
    }
    if !counts.covers(k, f) {
        return Err(SampleError::MissingTables { k, f });
    }
    // Top-down: which elements open a new cycle.
    let mut fixed = vec![false; k + 1];
    let mut c = f;
    for j in (1..=k).rev() {
        if counts.largest_is_fixed(j, c, rng) {
            fixed[j] = true;
            c -= 1;
        }
    }
    debug_assert_eq!(c, 0);
    // Bottom-up: successor array, inserting non-fixed elements after a
    // uniform earlier element.
    let mut next = vec![0usize; k + 1];
    for j in 1..=k {
        if fixed[j] {
            next[j] = j;
        } else {
            let x = rng.random_range(1..j);
            next[j] = next[x];
            next[x] = j;
        }
    }
    Ok(cycles_of(&next))
}

fn cycles_of(next: &[usize]) -> Vec<Vec<usize>> {
    let k = next.len() - 1;
    let mut seen = vec![false; k + 1];
    let mut cycles = Vec::new();
    for s in 1..=k {
        if seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = next[x];
        }
        cycles.push(cycle);
    }
    cycles
}

/// Natural log of a big integer.
#[cfg(test)]
pub(crate) fn biguint_ln(x: &num_bigint::BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(x).unwrap().ln();
    }
    let shift = bits - 900;
    num_traits::ToPrimitive::to_f64(&(x >> shift)).unwrap().ln()
        + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RandomSource;
    use std::collections::HashMap;

    fn canonical(mut cycles: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        for c in &mut cycles {
            let at = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
            c.rotate_left(at);
        }
        cycles.sort();
        cycles
    }

    fn census<T: CycleCounts>(
        k: usize,
        f: usize,
        draws: usize,
        counts: &T,
    ) -> HashMap<Vec<Vec<usize>>, usize> {
        let mut rng = RandomSource::new(21);
        let mut seen = HashMap::new();
        for _ in 0..draws {
            let p = sample_permutation_with_cycles(k, f, &mut rng, counts).unwrap();
            assert_eq!(p.len(), f);
            *seen.entry(canonical(p)).or_insert(0) += 1;
        }
        seen
    }

    #[test]
    fn all_fixed_points() {
        let s = StirlingTable::build(6);
        let seen = census(6, 6, 50, &s);
        assert_eq!(seen.len(), 1);
        assert_eq!(seen.keys().next().unwrap().len(), 6);
    }

    #[test]
    fn three_two_is_uniform() {
        let s = StirlingTable::build(3);
        let seen = census(3, 2, 30_000, &s);
        assert_eq!(seen.len(), 3);
        for &c in seen.values() {
            assert!((9_500..10_500).contains(&c), "{seen:?}");
        }
    }

    #[test]
    fn four_two_is_uniform_exact_and_scaled() {
        let s = StirlingTable::build(4);
        let scaled = ScaledStirling::with_columns(4, 2);
        for seen in [census(4, 2, 55_000, &s), census(4, 2, 55_000, &scaled)] {
            assert_eq!(seen.len(), 11);
            for &c in seen.values() {
                assert!((4_600..5_400).contains(&c), "{seen:?}");
            }
        }
    }

    #[test]
    fn scaled_matches_exact_logs() {
        let exact = StirlingTable::build(120);
        let scaled = ScaledStirling::with_columns(120, 40);
        let mut ln_fact = 0.0;
        for j in 1..=120usize {
            if j > 1 {
                ln_fact += ((j - 1) as f64).ln();
            }
            for c in 1..=40.min(j) {
                let want = biguint_ln(exact.get(j, c)) - ln_fact;
                let got = scaled.ln_scaled(j, c);
                assert!(
                    (want - got).abs() < 1e-9 * want.abs().max(1.0),
                    "j={j} c={c}"
                );
            }
        }
    }

    #[test]
    fn missing_tables_and_infeasible() {
        let s = StirlingTable::build(3);
        let mut rng = RandomSource::new(0);
        assert!(matches!(
            sample_permutation_with_cycles(5, 2, &mut rng, &s),
            Err(SampleError::MissingTables { .. })
        ));
        assert!(matches!(
            sample_permutation_with_cycles(3, 0, &mut rng, &s),
            Err(SampleError::Infeasible(_))
        ));
        assert!(matches!(
            sample_permutation_with_cycles(3, 4, &mut rng, &s),
            Err(SampleError::Infeasible(_))
        ));
    }
}
