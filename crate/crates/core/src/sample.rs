//! Seeded random positive rationals for exact spot checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Rational;

/// Largest numerator/denominator drawn by [`positive_rational`].
pub const SAMPLE_BOUND: i64 = 97;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p, q` uniform in `[1, 97]`.
pub fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.gen_range(1..=SAMPLE_BOUND);
    let q = rng.gen_range(1..=SAMPLE_BOUND);
    Rational::new(p, q)
}

pub fn positive_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| positive_rational(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_positive() {
        let a = positive_point(&mut rng(7), 20);
        let b = positive_point(&mut rng(7), 20);
        assert_eq!(a, b);
        assert!(a.iter().all(Rational::is_positive));
        assert_ne!(a, positive_point(&mut rng(8), 20));
    }
}
