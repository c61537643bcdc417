//! Poisson, logarithmic-series and geometric variates.

use rand::{Rng, RngCore};

use super::SampleError;

/// Largest rate handled in one inversion pass; larger rates are split into
/// independent parts (Poisson laws add).
const POISSON_CHUNK: f64 = 500.0;

/// `P(j) = e^-λ λ^j / j!` by sequential inversion.
pub fn poisson<R: RngCore + ?Sized>(lambda: f64, rng: &mut R) -> Result<u64, SampleError> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(SampleError::Parameter(format!("poisson rate {lambda}")));
    }
    let mut remaining = lambda;
    let mut total = 0;
    while remaining > POISSON_CHUNK {
        total += poisson_inversion(POISSON_CHUNK, rng);
        remaining -= POISSON_CHUNK;
    }
    Ok(total + poisson_inversion(remaining, rng))
}

fn poisson_inversion<R: RngCore + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    if lambda == 0.0 {
        return 0;
    }
    'draw: loop {
        let u: f64 = rng.random();
        let mut j = 0u64;
        let mut p = (-lambda).exp();
        let mut cdf = p;
        while u >= cdf {
            j += 1;
            p *= lambda / j as f64;
            cdf += p;
            if p == 0.0 {
                // u fell in the rounding gap above the accumulated cdf.
                continue 'draw;
            }
        }
        return j;
    }
}

/// Logarithmic series law `P(x) = p^x / (x * -ln(1-p))`, `x >= 1`.
///
/// Kemp's LK generator: a constant number of uniforms per draw regardless of
/// how heavy the tail is.
pub fn log_series<R: RngCore + ?Sized>(p: f64, rng: &mut R) -> Result<u64, SampleError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(SampleError::Parameter(format!("log-series parameter {p}")));
    }
    let r = (-p).ln_1p();
    loop {
        let v: f64 = rng.random();
        if v >= p {
            return Ok(1);
        }
        let u: f64 = rng.random();
        let q = -(r * u).exp_m1();
        if v <= q * q {
            if v == 0.0 {
                continue;
            }
            let x = (1.0 + v.ln() / q.ln()).floor();
            if x < 1.0 || !x.is_finite() {
                continue;
            }
            return Ok(x as u64);
        }
        return Ok(if v >= q { 1 } else { 2 });
    }
}

/// `P(m) = (1-z) z^m`, `m >= 0`, by closed-form inversion.
pub fn geometric<R: RngCore + ?Sized>(z: f64, rng: &mut R) -> Result<u64, SampleError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(SampleError::Parameter(format!("geometric parameter {z}")));
    }
    Ok(geometric_unchecked(z.ln(), rng))
}

/// Geometric draw given `ln z` precomputed.
pub(crate) fn geometric_unchecked<R: RngCore + ?Sized>(ln_z: f64, rng: &mut R) -> u64 {
    // 1 - U lies in (0, 1].
    let u = 1.0 - rng.random::<f64>();
    (u.ln() / ln_z).floor() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RandomSource;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    // Pearson test against a pmf, pooling the tail into one cell.
    fn chi_square_fits(counts: &[u64], tail: u64, pmf: impl Fn(u64) -> f64, draws: u64) {
        let mut stat = 0.0;
        let mut mass = 0.0;
        let mut cells = 0;
        for (x, &c) in counts.iter().enumerate() {
            let p = pmf(x as u64);
            mass += p;
            if p == 0.0 {
                assert_eq!(c, 0, "impossible value {x} drawn");
                continue;
            }
            let e = p * draws as f64;
            stat += (c as f64 - e).powi(2) / e;
            cells += 1;
        }
        let e_tail = (1.0 - mass).max(0.0) * draws as f64;
        if e_tail > 5.0 {
            stat += (tail as f64 - e_tail).powi(2) / e_tail;
            cells += 1;
        }
        let crit = ChiSquared::new((cells - 1) as f64)
            .unwrap()
            .inverse_cdf(0.999);
        assert!(stat < crit, "chi-square {stat} >= {crit}");
    }

    fn histogram(draws: u64, cells: usize, mut f: impl FnMut() -> u64) -> (Vec<u64>, u64) {
        let mut counts = vec![0u64; cells];
        let mut tail = 0;
        for _ in 0..draws {
            let x = f() as usize;
            if x < cells {
                counts[x] += 1;
            } else {
                tail += 1;
            }
        }
        (counts, tail)
    }

    #[test]
    fn poisson_zero_rate() {
        let mut rng = RandomSource::new(0);
        for _ in 0..100 {
            assert_eq!(poisson(0.0, &mut rng).unwrap(), 0);
        }
    }

    #[test]
    fn poisson_matches_pmf() {
        let mut rng = RandomSource::new(11);
        let lambda = 1.5 * (15.0f64 / 7.0).ln();
        let (counts, tail) = histogram(200_000, 8, || poisson(lambda, &mut rng).unwrap());
        let pmf = |j: u64| {
            let lf: f64 = (1..=j).map(|i| (i as f64).ln()).sum();
            (-lambda + j as f64 * lambda.ln() - lf).exp()
        };
        chi_square_fits(&counts, tail, pmf, 200_000);
    }

    #[test]
    fn poisson_large_rate_mean() {
        let mut rng = RandomSource::new(5);
        let lambda = 1234.5;
        let draws = 2_000;
        let sum: u64 = (0..draws).map(|_| poisson(lambda, &mut rng).unwrap()).sum();
        let mean = sum as f64 / draws as f64;
        let se = (lambda / draws as f64).sqrt();
        assert!((mean - lambda).abs() < 4.0 * se, "{mean}");
    }

    #[test]
    fn log_series_first_mass() {
        let p: f64 = 8.0 / 15.0;
        let p1 = p / -(-p).ln_1p();
        assert!((p1 - 0.6998).abs() < 1e-4);
    }

    #[test]
    fn log_series_matches_pmf() {
        for (seed, p) in [(1u64, 8.0f64 / 15.0), (2, 0.95)] {
            let mut rng = RandomSource::new(seed);
            let (counts, tail) = histogram(200_000, 12, || log_series(p, &mut rng).unwrap());
            let norm = -(-p).ln_1p();
            let pmf = |x: u64| {
                if x == 0 {
                    0.0
                } else {
                    p.powi(x as i32) / (x as f64 * norm)
                }
            };
            chi_square_fits(&counts, tail, pmf, 200_000);
        }
    }

    #[test]
    fn geometric_matches_pmf() {
        let mut rng = RandomSource::new(3);
        let z = 0.4;
        let (counts, tail) = histogram(200_000, 10, || geometric(z, &mut rng).unwrap());
        chi_square_fits(&counts, tail, |m| (1.0 - z) * z.powi(m as i32), 200_000);
        // P(0) = 1 - z
        let zero = counts[0] as f64 / 200_000.0;
        assert!((zero - 0.6).abs() < 0.005);
    }

    #[test]
    fn rejects_out_of_range() {
        let mut rng = RandomSource::new(0);
        assert!(poisson(-1.0, &mut rng).is_err());
        assert!(poisson(f64::NAN, &mut rng).is_err());
        assert!(log_series(1.0, &mut rng).is_err());
        assert!(log_series(0.0, &mut rng).is_err());
        assert!(geometric(1.0, &mut rng).is_err());
        assert!(geometric(0.0, &mut rng).is_err());
    }
}
