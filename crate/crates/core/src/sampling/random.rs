use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seedable random stream used by every sampler.
///
/// Backed by ChaCha8; a given seed produces the same stream on every
/// platform and release of this crate.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream number `stream` under the same seed. Used to split
    /// one base seed across many samples: sample `i` of a batch draws from
    /// `derive(seed, i)`.
    pub fn derive(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RandomSource { seed, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Uniform integer in `0..bound` by masked rejection. `bound` must be nonzero.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(bound.bits() > 0, "empty range");
    let bits = bound.bits();
    let len = bits.div_ceil(8) as usize;
    let spare = (len as u64 * 8 - bits) as u32;
    let mut buf = vec![0u8; len];
    loop {
        rng.fill_bytes(&mut buf);
        buf[len - 1] &= 0xff >> spare;
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return x;
        }
    }
}

/// Index drawn proportionally to `weights` with a single exact draw below
/// their total.
pub fn weighted_index<R: RngCore + ?Sized>(rng: &mut R, weights: &[BigUint]) -> Option<usize> {
    let total: BigUint = weights.iter().sum();
    if total.bits() == 0 {
        return None;
    }
    let mut x = uniform_below(rng, &total);
    for (i, w) in weights.iter().enumerate() {
        if &x < w {
            return Some(i);
        }
        x -= w;
    }
    unreachable!("draw below total")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomSource::new(7);
        let mut b = RandomSource::new(7);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        let mut c = RandomSource::new(8);
        assert_ne!(xs[0], c.next_u64());
    }

    #[test]
    fn derived_streams_differ() {
        let mut a = RandomSource::derive(7, 0);
        let mut b = RandomSource::derive(7, 1);
        assert_ne!(a.next_u64(), b.next_u64());
        let mut c = RandomSource::derive(7, 1);
        let mut d = RandomSource::derive(7, 1);
        assert_eq!(c.next_u64(), d.next_u64());
    }

    #[test]
    fn uniform_below_small_bound_is_flat() {
        let mut rng = RandomSource::new(1);
        let bound = BigUint::from(5u32);
        let mut hits = [0u32; 5];
        for _ in 0..50_000 {
            let x = uniform_below(&mut rng, &bound);
            hits[usize::try_from(x.to_u32_digits().first().copied().unwrap_or(0)).unwrap()] += 1;
        }
        for h in hits {
            assert!((9_400..10_600).contains(&h), "{hits:?}");
        }
    }

    #[test]
    fn uniform_below_one_is_zero() {
        let mut rng = RandomSource::new(1);
        assert_eq!(uniform_below(&mut rng, &BigUint::from(1u8)), BigUint::ZERO);
    }

    #[test]
    fn weighted_index_skips_zero_weights() {
        let mut rng = RandomSource::new(3);
        let w = [0u32, 3, 0, 1].map(BigUint::from);
        for _ in 0..200 {
            let i = weighted_index(&mut rng, &w).unwrap();
            assert!(i == 1 || i == 3);
        }
        assert_eq!(weighted_index(&mut rng, &[BigUint::ZERO]), None);
    }
}
