//! Random exact rationals for property checks and randomized commands.

use num_bigint::BigInt;
use rand::Rng;

use crate::scalar::{Ext, Rat};

/// Uniform on the grid `{k/denom : |k/denom| ≤ bound}`.
pub fn rat<R: Rng + ?Sized>(rng: &mut R, bound: i64, denom: i64) -> Rat {
    let k = rng.gen_range(-bound * denom..=bound * denom);
    Rat::new(BigInt::from(k), BigInt::from(denom))
}

/// Uniform on `{k/denom : 0 ≤ k/denom ≤ bound}`.
pub fn nonneg_rat<R: Rng + ?Sized>(rng: &mut R, bound: i64, denom: i64) -> Rat {
    let k = rng.gen_range(0..=bound * denom);
    Rat::new(BigInt::from(k), BigInt::from(denom))
}

pub fn point<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64, denom: i64) -> Vec<Rat> {
    (0..n).map(|_| rat(rng, bound, denom)).collect()
}

pub fn nonneg_point<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64, denom: i64) -> Vec<Rat> {
    (0..n).map(|_| nonneg_rat(rng, bound, denom)).collect()
}

/// A finite entry with probability `1 - p_neg_inf`, otherwise `-inf`.
pub fn max_entry<R: Rng + ?Sized>(rng: &mut R, p_neg_inf: f64, bound: i64, denom: i64) -> Ext {
    if rng.gen_bool(p_neg_inf) {
        Ext::NegInf
    } else {
        Ext::Fin(rat(rng, bound, denom))
    }
}
