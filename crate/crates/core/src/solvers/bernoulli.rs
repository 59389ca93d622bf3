use num_bigint::BigInt;
use num_traits::One;

use crate::rational::Rational;

/// `B₀..=B_n` with the convention `x/(eˣ−1) = Σ Bₖ xᵏ/k!` (so `B₁ = −1/2`),
/// from the recurrence `Σ_{j=0}^{k} C(k+1, j)·B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(n + 1);
    table.push(Rational::one());
    for k in 1..=n {
        // C(k+1, j) for j = 0..k, built row by row
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc = acc + Rational::from_bigints(binom.clone(), BigInt::one()).unwrap() * b;
            }
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-acc * Rational::new(1, k as i64 + 1));
    }
    table
}

pub fn bernoulli(k: usize) -> Rational {
    bernoulli_numbers(k).pop().expect("non-empty table")
}
