//! BCH series and the two BCH-type recursions.
//!
//! Both recursions are solved degree by degree: the correction term of each
//! is at least bilinear in arguments of positive valuation, so its
//! `t^m` coefficient only sees coefficients of degree `< m`. Growing the cap
//! one step at a time therefore reaches the fixed point after `cap − 1`
//! steps, each at a smaller working cap than a full Picard sweep.

use crate::error::{Error, Result};
use crate::operator::OperatorSpec;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

use super::bernoulli::bernoulli_numbers;

/// `log(exp(x)·exp(y)) − x − y`.
pub fn bch(x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
    x.check_compatible(y)?;
    let one = TruncatedSeries::one(x.ring(), x.cap());
    let prod = &x.exp()? * &y.exp()?;
    let log = (&prod - &one).log1p()?;
    Ok(&(&log - x) - y)
}

/// Solves `χ = a + F(χ)` where the `t^m` coefficient of `F(χ)` depends only on
/// coefficients of `χ` below `m`.
fn graded_fixed_point(
    a: &TruncatedSeries,
    correction: impl Fn(&TruncatedSeries) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let cap = a.cap();
    let mut chi = a.truncate(cap.min(1));
    for m in 2..=cap {
        let prev = chi.extend(m);
        chi = &a.truncate(m) + &correction(&prev)?;
    }
    Ok(chi)
}

/// `χ_λ(a)`: the fixed point of `χ = a + λ⁻¹·BCH(P(χ), P̃(χ))`.
pub fn chi_lambda(op: &OperatorSpec, a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let lambda = op.weight();
    let inv = lambda.recip().ok_or_else(|| {
        Error::Usage("chi_lambda needs a nonzero weight; use chi_zero for weight 0".into())
    })?;
    if a.valuation() == 0 {
        return Err(Error::Domain(
            "chi_lambda: argument must have zero constant term".into(),
        ));
    }
    graded_fixed_point(a, |chi| {
        Ok(bch(&op.apply(chi)?, &op.tilde_apply(chi)?)?.scale(&inv))
    })
}

/// `Σ_{k=0}^{cap} (B_k/k!)·ad_x^k(a)`.
pub fn bernoulli_ad_series(x: &TruncatedSeries, a: &TruncatedSeries) -> TruncatedSeries {
    let cap = a.cap();
    let bernoulli = bernoulli_numbers(cap);
    let mut out = a.clone();
    let mut term = a.clone();
    let mut fact = Rational::one();
    for (k, b) in bernoulli.iter().enumerate().skip(1) {
        term = &(x * &term) - &(&term * x);
        if term.is_zero() {
            break;
        }
        fact = fact * Rational::from_integer(k as i64);
        if !b.is_zero() {
            out = &out + &term.scale(&(b / &fact));
        }
    }
    out
}

/// `χ₀(a)`: the fixed point of `χ = Σ_k (B_k/k!)·ad_{P(χ)}^k(a)` for a weight-0 operator.
pub fn chi_zero(op: &OperatorSpec, a: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !op.weight().is_zero() {
        return Err(Error::Usage(format!(
            "chi_zero needs a weight-0 operator; {op} has weight {}",
            op.weight()
        )));
    }
    if a.valuation() == 0 {
        return Err(Error::Domain(
            "chi_zero: argument must have zero constant term".into(),
        ));
    }
    graded_fixed_point(a, |chi| {
        let a_m = a.truncate(chi.cap());
        Ok(&bernoulli_ad_series(&op.apply(chi)?, &a_m) - &a_m)
    })
}
