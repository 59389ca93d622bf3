//! q-series identities over ℚ[[t]] at a fixed rational `q`.
//!
//! Infinite products in `t` are evaluated through their logarithms: for
//! `|q| < 1`, `log Π_{n≥1}(1 + qⁿt) = Σ_m (−1)^{m−1} tᵐ/m · Σ_n q^{nm}`, and the
//! inner geometric sum is `qᵐ/(1−qᵐ)`. Taking that rational function as the
//! definition extends every product to all `q` outside `{0, 1, −1}`. A finite
//! product of factors would not do: every factor contributes at `t¹`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::{check_q, OperatorSpec};
use crate::rational::Rational;
use crate::ring::{RingDescriptor, RingElement};
use crate::series::TruncatedSeries;
use crate::solvers::{picard_solve, EquationSpec};

use super::report::{compare, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductForm {
    /// `Π_{n≥1} (1 + qⁿt)`
    OnePlus,
    /// `Π_{n≥1} 1/(1 − qⁿt)`
    OneMinusInv,
}

fn scalar_series(cap: usize, coeffs: impl IntoIterator<Item = Rational>) -> TruncatedSeries {
    let coeffs: Vec<RingElement> = coeffs
        .into_iter()
        .take(cap + 1)
        .map(RingElement::Scalar)
        .collect();
    TruncatedSeries::new(RingDescriptor::SCALAR, cap, coeffs).expect("scalar coefficients")
}

pub fn q_product(form: ProductForm, q: &Rational, cap: usize) -> Result<TruncatedSeries> {
    check_q(q)?;
    let log = scalar_series(
        cap,
        (0..=cap).map(|m| {
            if m == 0 {
                return Rational::zero();
            }
            let qm = q.pow(m as u32);
            let power_sum = &qm / &(Rational::one() - &qm);
            let sign = match form {
                ProductForm::OnePlus if m % 2 == 0 => -1,
                _ => 1,
            };
            power_sum * Rational::new(sign, m as i64)
        }),
    );
    log.exp()
}

/// `(q;q)_n = (1−q)(1−q²)⋯(1−qⁿ)`, for `n = 0..=cap`.
pub fn q_pochhammer_table(q: &Rational, cap: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(cap + 1);
    let mut acc = Rational::one();
    let mut qn = Rational::one();
    out.push(acc.clone());
    for _ in 1..=cap {
        qn = &qn * q;
        acc = acc * (Rational::one() - &qn);
        out.push(acc.clone());
    }
    out
}

/// `Σ_{n≥0} c_n tⁿ / (q;q)_n` with `c_n` supplied by `numer`.
fn pochhammer_sum(q: &Rational, cap: usize, numer: impl Fn(usize) -> Rational) -> TruncatedSeries {
    let poch = q_pochhammer_table(q, cap);
    scalar_series(cap, (0..=cap).map(|n| numer(n) / &poch[n]))
}

fn t_series(coeffs: &[i64], cap: usize) -> TruncatedSeries {
    scalar_series(
        cap,
        coeffs
            .iter()
            .map(|&c| Rational::from_integer(c))
            .chain(std::iter::repeat(Rational::zero())),
    )
}

/// `q` raised to a triangular-number offset, `q^{n(n+1)/2 + shift}`.
fn q_triangular(q: &Rational, n: usize, shift: i64) -> Rational {
    q.powi((n * (n + 1) / 2) as i64 + shift)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EulerianVariant {
    PropOnePrinted,
    PropOneCorrected,
    PropTwo,
    QBinomialPrinted,
    QBinomialCorrected,
    InteriorLemma,
    ComputationOne,
    EulerianThird,
    EulerianFirstPartial,
}

impl EulerianVariant {
    pub const ALL: [EulerianVariant; 9] = [
        EulerianVariant::PropOnePrinted,
        EulerianVariant::PropOneCorrected,
        EulerianVariant::PropTwo,
        EulerianVariant::QBinomialPrinted,
        EulerianVariant::QBinomialCorrected,
        EulerianVariant::InteriorLemma,
        EulerianVariant::ComputationOne,
        EulerianVariant::EulerianThird,
        EulerianVariant::EulerianFirstPartial,
    ];

    pub fn id(self) -> &'static str {
        match self {
            EulerianVariant::PropOnePrinted => "eulerian-prop-one-printed",
            EulerianVariant::PropOneCorrected => "eulerian-prop-one-corrected",
            EulerianVariant::PropTwo => "eulerian-prop-two",
            EulerianVariant::QBinomialPrinted => "eulerian-qbinomial-printed",
            EulerianVariant::QBinomialCorrected => "eulerian-qbinomial-corrected",
            EulerianVariant::InteriorLemma => "eulerian-interior-lemma",
            EulerianVariant::ComputationOne => "computation-one",
            EulerianVariant::EulerianThird => "eulerian-third",
            EulerianVariant::EulerianFirstPartial => "eulerian-first-partial",
        }
    }

    /// Both sides of the identity at the given `q` and cap.
    pub fn sides(self, q: &Rational, cap: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
        check_q(q)?;
        let one = t_series(&[1], cap);
        let t = t_series(&[0, 1], cap);
        Ok(match self {
            EulerianVariant::PropOnePrinted | EulerianVariant::PropOneCorrected => {
                let lhs = pochhammer_sum(q, cap, |n| {
                    if n == 0 {
                        Rational::one()
                    } else {
                        q.powi(2 * n as i64 - 1)
                    }
                });
                let h = q_product(ProductForm::OneMinusInv, q, cap)?;
                let rhs = if self == EulerianVariant::PropOnePrinted {
                    &(&one - &t) * &h
                } else {
                    let inv_q = q.recip().expect("guarded q");
                    let shift = one.scale(&(Rational::one() - &inv_q));
                    &(&(&one.scale(&inv_q) - &t) * &h) + &shift
                };
                (lhs, rhs)
            }
            EulerianVariant::PropTwo => (
                pochhammer_sum(q, cap, |n| q.pow(n as u32)),
                q_product(ProductForm::OneMinusInv, q, cap)?,
            ),
            EulerianVariant::QBinomialPrinted | EulerianVariant::QBinomialCorrected => {
                let shift = if self == EulerianVariant::QBinomialPrinted {
                    -1
                } else {
                    0
                };
                let lhs = pochhammer_sum(q, cap, |n| {
                    if n == 0 {
                        Rational::one()
                    } else {
                        q_triangular(q, n, shift)
                    }
                });
                (lhs, q_product(ProductForm::OnePlus, q, cap)?)
            }
            EulerianVariant::InteriorLemma => {
                let lhs = q_product(ProductForm::OnePlus, q, cap)?.unit_inverse()?;
                let sum = pochhammer_sum(q, cap, |n| {
                    Rational::from_integer(if n % 2 == 0 { 1 } else { -1 })
                });
                (lhs, &(&one + &t) * &sum)
            }
            EulerianVariant::ComputationOne => {
                let p = OperatorSpec::q_integral(q.clone())?;
                let lhs = (-&p.apply(&t.log1p()?)?).exp()?;
                (
                    lhs,
                    q_product(ProductForm::OnePlus, q, cap)?.unit_inverse()?,
                )
            }
            EulerianVariant::EulerianThird => {
                let p = OperatorSpec::q_integral(q.clone())?;
                let inner = (-&p.apply(&t.log1p()?)?).exp()?;
                let lhs = p.apply(&(&inner * &t))?;
                // −Σ_{n≥0} q^{2n+1}(−t)^{n+1}/(q;q)_{n+1}, indexed by m = n+1
                let rhs = pochhammer_sum(q, cap, |m| {
                    if m == 0 {
                        return Rational::zero();
                    }
                    let sign = if m % 2 == 0 { -1 } else { 1 };
                    q.powi(2 * m as i64 - 1) * Rational::from_integer(sign)
                });
                (lhs, rhs)
            }
            EulerianVariant::EulerianFirstPartial => {
                let p = OperatorSpec::q_integral(q.clone())?;
                let lhs = picard_solve(&EquationSpec::left(p, t.clone(), t.clone())?)?;
                let rhs = pochhammer_sum(q, cap, |n| match n {
                    0 => Rational::zero(),
                    1 => q.clone(),
                    _ => q_triangular(q, n, -1),
                });
                (lhs, rhs)
            }
        })
    }

    pub fn check(self, q: &Rational, cap: usize) -> Verdict {
        let (lhs, rhs) = self.sides(q, cap)?;
        compare(&lhs, &rhs)
    }
}

impl fmt::Display for EulerianVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for EulerianVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EulerianVariant::ALL
            .into_iter()
            .find(|v| v.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown eulerian variant '{s}'")))
    }
}
