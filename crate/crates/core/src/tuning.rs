//! Analytics of the labeled-main generating function
//!
//! ```text
//! G(z, u) = (1 - u z^2 / (1 - z)) ^ (-(1 - z) / z)
//! ```
//!
//! and the parameter choices that make the Boltzmann sampler hit a target
//! size and main-branch ratio. For fixed `u` the dominant singularity in `z`
//! is `rho_u = (sqrt(1 + 4u) - 1) / (2u)`, the root of `u z^2 = 1 - z`, and
//! the main-branch ratio of large graphs concentrates around
//! `(1 - rho_u) / (2 - rho_u)`.

use thiserror::Error;

/// Relative margin kept below the singularity.
pub const SINGULARITY_MARGIN: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TuningError {
    #[error("(z, u) = ({z}, {u}) is outside the domain of convergence")]
    OutsideDomain { z: f64, u: f64 },
    #[error("(z, u) = ({z}, {u}) is within {SINGULARITY_MARGIN:e} of the singularity")]
    NearSingularity { z: f64, u: f64 },
    #[error("target ratio {0} is outside (0, 1/2)")]
    RatioOutOfRange(f64),
    #[error("u = {0} must be positive and finite")]
    InvalidWeight(f64),
    #[error("target size {0} is not reachable")]
    UnreachableSize(f64),
}

/// Checks `0 < z < 1`, `u > 0` and `z <= (1 - margin) rho_u`.
pub fn check_admissible(z: f64, u: f64) -> Result<(), TuningError> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(TuningError::InvalidWeight(u));
    }
    if !(z > 0.0 && z < 1.0) || u * z * z >= 1.0 - z {
        return Err(TuningError::OutsideDomain { z, u });
    }
    if z > (1.0 - SINGULARITY_MARGIN) * rho_of_u(u) {
        return Err(TuningError::NearSingularity { z, u });
    }
    Ok(())
}

fn cycle_parameter(z: f64, u: f64) -> f64 {
    u * z * z / (1.0 - z)
}

/// `ln G(z, u)`, the Poisson rate of the Boltzmann sampler's cycle count.
pub fn log_gf(z: f64, u: f64) -> Result<f64, TuningError> {
    check_admissible(z, u)?;
    let p = cycle_parameter(z, u);
    Ok(-(1.0 - z) / z * (-p).ln_1p())
}

/// `d/dz ln G(z, u)`.
pub fn log_gf_dz(z: f64, u: f64) -> Result<f64, TuningError> {
    check_admissible(z, u)?;
    let p = cycle_parameter(z, u);
    Ok((-p).ln_1p() / (z * z) + u * (2.0 - z) / ((1.0 - z) * (1.0 - p)))
}

/// `d/du ln G(z, u)`.
pub fn log_gf_du(z: f64, u: f64) -> Result<f64, TuningError> {
    check_admissible(z, u)?;
    Ok(z / (1.0 - cycle_parameter(z, u)))
}

/// Mean size of a Boltzmann sample, `z d/dz ln G`.
pub fn expected_size(z: f64, u: f64) -> Result<f64, TuningError> {
    Ok(z * log_gf_dz(z, u)?)
}

/// Mean main-branch length of a Boltzmann sample, `u d/du ln G`.
pub fn expected_black(z: f64, u: f64) -> Result<f64, TuningError> {
    Ok(u * log_gf_du(z, u)?)
}

pub fn rho_of_u(u: f64) -> f64 {
    // (sqrt(1 + 4u) - 1) / (2u) without the cancellation at small u.
    2.0 / ((1.0 + 4.0 * u).sqrt() + 1.0)
}

pub fn u_of_rho(rho: f64) -> f64 {
    (1.0 - rho) / (rho * rho)
}

/// Singularity whose asymptotic main-branch ratio is `alpha`.
pub fn rho_of_alpha(alpha: f64) -> Result<f64, TuningError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(TuningError::RatioOutOfRange(alpha));
    }
    Ok((1.0 - 2.0 * alpha) / (1.0 - alpha))
}

pub fn u_of_alpha(alpha: f64) -> Result<f64, TuningError> {
    Ok(u_of_rho(rho_of_alpha(alpha)?))
}

/// Asymptotic mean and variance of `k` among graphs of size `n` under the
/// labeled-main law.
pub fn asymptotic_moments(u: f64, n: f64) -> (f64, f64) {
    let rho = rho_of_u(u);
    let mean = n * (1.0 - rho) / (2.0 - rho);
    let variance = n * rho * (1.0 - rho) / (2.0 - rho).powi(3);
    (mean, variance)
}

/// Finds `z` in `(0, rho_u)` with `expected_size(z, u) = n_target` by
/// bisection. The mean size increases strictly with `z` and diverges at
/// `rho_u`.
pub fn solve_z(n_target: f64, u: f64) -> Result<f64, TuningError> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(TuningError::InvalidWeight(u));
    }
    if !(n_target > 0.0 && n_target.is_finite()) {
        return Err(TuningError::UnreachableSize(n_target));
    }
    let mut lo = 0.0;
    let mut hi = (1.0 - SINGULARITY_MARGIN) * rho_of_u(u);
    if expected_size(hi, u)? < n_target {
        return Err(TuningError::UnreachableSize(n_target));
    }
    for _ in 0..2_000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let size = expected_size(mid, u)?;
        if (size - n_target).abs() <= 1e-10 * n_target {
            return Ok(mid);
        }
        if size < n_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Boltzmann parameters for a target size and main-branch ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TuningResult {
    pub alpha: f64,
    pub u: f64,
    pub rho: f64,
    pub z: f64,
    pub expected_size: f64,
    pub expected_black: f64,
}

impl TuningResult {
    pub fn for_target(alpha: f64, n_target: f64) -> Result<Self, TuningError> {
        let rho = rho_of_alpha(alpha)?;
        let u = u_of_rho(rho);
        let z = solve_z(n_target, u)?;
        Ok(TuningResult {
            alpha,
            u,
            rho,
            z,
            expected_size: expected_size(z, u)?,
            expected_black: expected_black(z, u)?,
        })
    }
}
