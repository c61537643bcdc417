//! Boltzmann sampler for the labeled-main distribution, where a graph with
//! `n` vertices and `k` main vertices has probability
//! `u^k z^n / (k! G(z, u))`.
//!
//! The cycle structure of the underlying cyclarium is drawn first: a Poisson
//! number of cycles with log-series lengths. The cycles are then placed on
//! the main branch right to left by size-biased extraction, which marks the
//! free vertices; every other main vertex receives one branch.

use rand::{Rng, RngCore};

use super::discrete::{geometric_unchecked, log_series, poisson};
use super::SampleError;
use crate::graph::{Branch, GitGraph};
use crate::tuning::{check_admissible, log_gf};

/// Labeled-main Boltzmann parameters, strictly inside the domain of
/// convergence: `0 < z < 1`, `u > 0` and `u z^2 / (1 - z) < 1`, with `z`
/// kept a relative [`SINGULARITY_MARGIN`](crate::tuning::SINGULARITY_MARGIN)
/// below the singularity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoltzmannParams {
    z: f64,
    u: f64,
}

impl BoltzmannParams {
    pub fn new(z: f64, u: f64) -> Result<Self, SampleError> {
        check_admissible(z, u).map_err(|e| SampleError::Parameter(e.to_string()))?;
        Ok(BoltzmannParams { z, u })
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Parameter of the log-series cycle lengths, `u z^2 / (1 - z)`.
    pub fn cycle_parameter(&self) -> f64 {
        self.u * self.z * self.z / (1.0 - self.z)
    }

    /// Poisson rate of the cycle count, `ln G(z, u)`.
    pub fn cycle_rate(&self) -> f64 {
        log_gf(self.z, self.u).expect("validated parameters")
    }
}

/// Marks the main vertex each cycle starts on, given the cycle lengths in
/// extraction order. `total` must be their sum.
pub fn marks_from_extraction(
    total: usize,
    extracted: impl IntoIterator<Item = usize>,
) -> Vec<bool> {
    let mut marks = vec![false; total];
    let mut remaining = total;
    for x in extracted {
        remaining -= x;
        marks[remaining] = true;
    }
    debug_assert_eq!(remaining, 0);
    marks
}

/// Free-vertex marks of the main branch; its length is `k`.
fn draw_skeleton<R: RngCore + ?Sized>(
    params: &BoltzmannParams,
    rng: &mut R,
) -> Result<Vec<bool>, SampleError> {
    let cycles = poisson(params.cycle_rate(), rng)?;
    let p = params.cycle_parameter();
    let mut lengths = Vec::with_capacity(cycles as usize);
    let mut total = 0usize;
    for _ in 0..cycles {
        let x = usize::try_from(log_series(p, rng)?)
            .map_err(|_| SampleError::TooLarge("cycle length".into()))?;
        total = total
            .checked_add(x)
            .ok_or_else(|| SampleError::TooLarge("main branch length".into()))?;
        lengths.push(x);
    }
    // Size-biased extraction, one linear scan per cycle.
    let mut order = Vec::with_capacity(lengths.len());
    let mut remaining = total;
    while remaining > 0 {
        let mut r = rng.random_range(0..remaining);
        let mut at = 0;
        while r >= lengths[at] {
            r -= lengths[at];
            at += 1;
        }
        let x = lengths.swap_remove(at);
        order.push(x);
        remaining -= x;
    }
    Ok(marks_from_extraction(total, order))
}

fn attach_branches<R: RngCore + ?Sized>(
    marks: &[bool],
    ln_z: f64,
    white_budget: Option<usize>,
    rng: &mut R,
) -> Option<Vec<Branch>> {
    let free = marks.iter().filter(|&&m| m).count();
    let mut branches = Vec::with_capacity(marks.len() - free);
    let mut whites = 0usize;
    for (j, &marked) in marks.iter().enumerate().skip(1) {
        if marked {
            continue;
        }
        let start = rng.random_range(0..j);
        let length = 1 + geometric_unchecked(ln_z, rng) as usize;
        whites += length;
        if white_budget.is_some_and(|b| whites > b) {
            return None;
        }
        branches.push(Branch::new(start + 1, j + 1, length));
    }
    Some(branches)
}

/// One labeled-main Boltzmann sample.
pub fn sample_boltzmann<R: RngCore + ?Sized>(
    params: &BoltzmannParams,
    rng: &mut R,
) -> Result<GitGraph, SampleError> {
    let marks = draw_skeleton(params, rng)?;
    let branches = attach_branches(&marks, params.z.ln(), None, rng).expect("no budget");
    Ok(GitGraph::from_parts(marks.len(), branches))
}

/// Resamples until the size lands in `min_size..=max_size`. Draws whose main
/// branch alone overshoots are abandoned before any white vertex is drawn.
/// Returns the graph and the number of attempts.
pub fn sample_boltzmann_in_window<R: RngCore + ?Sized>(
    params: &BoltzmannParams,
    min_size: usize,
    max_size: usize,
    max_attempts: u64,
    rng: &mut R,
) -> Result<(GitGraph, u64), SampleError> {
    if min_size > max_size {
        return Err(SampleError::Parameter(format!(
            "empty size window {min_size}..={max_size}"
        )));
    }
    let ln_z = params.z.ln();
    for attempt in 1..=max_attempts {
        let marks = draw_skeleton(params, rng)?;
        let k = marks.len();
        if k > max_size {
            continue;
        }
        let Some(branches) = attach_branches(&marks, ln_z, Some(max_size - k), rng) else {
            continue;
        };
        let g = GitGraph::from_parts(k, branches);
        if g.size() >= min_size {
            return Ok((g, attempt));
        }
    }
    Err(SampleError::Exhausted(max_attempts))
}
