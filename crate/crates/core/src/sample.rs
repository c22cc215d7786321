//! Seeded random generators for the randomized checks.
//!
//! The seed comes from `ORESMOOTH_SEED` when set, so every sweep can be
//! replayed exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basering::{BaseKind, BasePoly};
use crate::ore::{Algebra, OreElement};
use crate::scalar::Scalar;

pub const SEED_ENV: &str = "ORESMOOTH_SEED";
pub const DEFAULT_SEED: u64 = 0x0e5e_ed00;

/// Reads `ORESMOOTH_SEED`, falling back to [`DEFAULT_SEED`] when unset or
/// unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn with_seed(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Seeded from the environment, mixed with a per-call-site salt so
    /// independent sweeps do not replay the same stream.
    pub fn from_env(salt: u64) -> Self {
        Self::with_seed(seed_from_env() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi_inclusive: i64) -> i64 {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    /// Small rational with numerator in `-9..=9` and denominator in `1..=4`.
    pub fn scalar(&mut self) -> Scalar {
        let n = self.rng.gen_range(-9..=9);
        let d = self.rng.gen_range(1..=4);
        Scalar::frac(n, d)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Dense-ish base-ring element of degree at most `degree`; Laurent
    /// values draw exponents from `-degree..=degree`.
    pub fn base_poly(&mut self, kind: BaseKind, degree: i64) -> BasePoly {
        let lo = match kind {
            BaseKind::Poly => 0,
            BaseKind::Laurent => -degree,
        };
        let mut terms: Vec<(i64, Scalar)> = Vec::new();
        for e in lo..=degree {
            if self.rng.gen_bool(0.6) {
                terms.push((e, self.scalar()));
            }
        }
        BasePoly::from_terms(kind, terms).unwrap()
    }

    /// Monomial exponents `(k, l)` with `|k| + l <= bound`, `k >= 0` over `K[x]`.
    pub fn exponents(&mut self, kind: BaseKind, bound: i64) -> (i64, u32) {
        let l = self.rng.gen_range(0..=bound);
        let rest = bound - l;
        let k = match kind {
            BaseKind::Poly => self.rng.gen_range(0..=rest),
            BaseKind::Laurent => self.rng.gen_range(-rest..=rest),
        };
        (k, l as u32)
    }

    /// Sum of up to `max_terms` random monomials with `|k| + l <= bound`.
    pub fn ore_element(&mut self, algebra: &Algebra, bound: i64, max_terms: usize) -> OreElement {
        let n = self.rng.gen_range(1..=max_terms);
        let terms: Vec<(i64, u32, Scalar)> = (0..n)
            .map(|_| {
                let (k, l) = self.exponents(algebra.base_kind(), bound);
                (k, l, self.scalar())
            })
            .collect();
        algebra.element(terms).unwrap()
    }
}
