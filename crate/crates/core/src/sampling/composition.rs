use rand::RngCore;

use super::SampleError;

/// Uniform composition of `m` into `p` ordered parts, positive or weak,
/// by choosing the bar positions of a stars-and-bars diagram.
pub fn sample_composition<R: RngCore + ?Sized>(
    m: usize,
    p: usize,
    positive: bool,
    rng: &mut R,
) -> Result<Vec<usize>, SampleError> {
    if p == 0 {
        return if m == 0 {
            Ok(Vec::new())
        } else {
            Err(SampleError::Infeasible(format!(
                "composition of {m} into 0 parts"
            )))
        };
    }
    if positive {
        if m < p {
            return Err(SampleError::Infeasible(format!(
                "composition of {m} into {p} positive parts"
            )));
        }
        Ok(positive_composition(m, p, rng))
    } else {
        // Weak compositions of m are positive compositions of m + p, shifted.
        let mut parts = positive_composition(m + p, p, rng);
        for x in &mut parts {
            *x -= 1;
        }
        Ok(parts)
    }
}

fn positive_composition<R: RngCore + ?Sized>(m: usize, p: usize, rng: &mut R) -> Vec<usize> {
    // p - 1 distinct cuts among the m - 1 gaps between stars.
    let mut cuts = rand::seq::index::sample(rng, m - 1, p - 1).into_vec();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(p);
    let mut last = 0;
    for c in cuts {
        parts.push(c + 1 - last);
        last = c + 1;
    }
    parts.push(m - last);
    parts
}
