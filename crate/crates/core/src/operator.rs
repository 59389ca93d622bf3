//! The concrete Rota-Baxter operators on truncated series.
//!
//! | kind | action on `tⁿ` | weight |
//! |------|----------------|--------|
//! | q-integral | `qⁿtⁿ/(1−qⁿ)` | 1 |
//! | q-scale | `tⁿ/(1−qⁿ)` | −1 |
//! | formal antiderivative | `t^{n+1}/(n+1)` | 0 |
//!
//! All three act coefficientwise, so over a matrix ring each coefficient is
//! scaled (or shifted) independently. The q-operators are undefined on the
//! constant term and reject series with `c₀ ≠ 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "qint")]
    QIntegral,
    #[serde(rename = "qscale")]
    QScale,
    #[serde(rename = "antider")]
    Antiderivative,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::QIntegral => "qint",
            OperatorKind::QScale => "qscale",
            OperatorKind::Antiderivative => "antider",
        }
    }

    pub fn needs_q(self) -> bool {
        !matches!(self, OperatorKind::Antiderivative)
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qint" => Ok(OperatorKind::QIntegral),
            "qscale" => Ok(OperatorKind::QScale),
            "antider" => Ok(OperatorKind::Antiderivative),
            other => Err(Error::Parse(format!(
                "unknown operator '{other}' (expected qint, qscale or antider)"
            ))),
        }
    }
}

/// A Rota-Baxter operator together with its weight and parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorSpec {
    kind: OperatorKind,
    q: Option<Rational>,
}

/// Rejects `q ∈ {0, 1, −1}`; for any other rational `qⁿ ≠ 1` for all `n ≥ 1`.
pub fn check_q(q: &Rational) -> Result<()> {
    if q.is_zero() || q.abs().is_one() {
        Err(Error::Config(format!("q must not be 0, 1 or -1 (got {q})")))
    } else {
        Ok(())
    }
}

impl OperatorSpec {
    pub fn q_integral(q: Rational) -> Result<Self> {
        check_q(&q)?;
        Ok(OperatorSpec {
            kind: OperatorKind::QIntegral,
            q: Some(q),
        })
    }

    pub fn q_scale(q: Rational) -> Result<Self> {
        check_q(&q)?;
        Ok(OperatorSpec {
            kind: OperatorKind::QScale,
            q: Some(q),
        })
    }

    pub fn antiderivative() -> Self {
        OperatorSpec {
            kind: OperatorKind::Antiderivative,
            q: None,
        }
    }

    /// `q` is required for the q-kinds and ignored for the antiderivative.
    pub fn new(kind: OperatorKind, q: Option<Rational>) -> Result<Self> {
        match kind {
            OperatorKind::Antiderivative => Ok(Self::antiderivative()),
            _ => {
                let q = q.ok_or_else(|| {
                    Error::Config(format!("operator {kind} requires a value for q"))
                })?;
                if kind == OperatorKind::QIntegral {
                    Self::q_integral(q)
                } else {
                    Self::q_scale(q)
                }
            }
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn q(&self) -> Option<&Rational> {
        self.q.as_ref()
    }

    pub fn weight(&self) -> Rational {
        match self.kind {
            OperatorKind::QIntegral => Rational::one(),
            OperatorKind::QScale => Rational::from_integer(-1),
            OperatorKind::Antiderivative => Rational::zero(),
        }
    }

    /// Whether `x` lies in the operator's domain.
    pub fn accepts(&self, x: &TruncatedSeries) -> bool {
        self.kind == OperatorKind::Antiderivative || x.coeff(0).is_zero()
    }

    pub fn apply(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !self.accepts(x) {
            return Err(Error::Domain(format!(
                "{}: operator undefined on constant term",
                self.kind
            )));
        }
        Ok(match self.kind {
            OperatorKind::Antiderivative => {
                let ring = x.ring();
                x.map_coeffs(|k, _| {
                    if k == 0 {
                        ring.zero()
                    } else {
                        x.coeff(k - 1).scale(&Rational::new(1, k as i64))
                    }
                })
            }
            OperatorKind::QIntegral | OperatorKind::QScale => {
                let q = self.q.as_ref().expect("q-operator without q");
                let numer_is_power = self.kind == OperatorKind::QIntegral;
                let mut qn = Rational::one();
                x.map_coeffs(|k, c| {
                    if k == 0 {
                        return c.clone();
                    }
                    qn = &qn * q;
                    if c.is_zero() {
                        return c.clone();
                    }
                    let denom = Rational::one() - &qn;
                    let factor = if numer_is_power {
                        &qn / &denom
                    } else {
                        denom.recip().expect("guarded q")
                    };
                    c.scale(&factor)
                })
            }
        })
    }

    /// The companion operator `x ↦ −λx − P(x)`.
    pub fn tilde_apply(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        let px = self.apply(x)?;
        Ok(&(-&x.scale(&self.weight())) - &px)
    }

    pub fn label(&self) -> String {
        match &self.q {
            Some(q) => format!("{}(q={q})", self.kind),
            None => self.kind.to_string(),
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    fn s(text: &str, cap: usize) -> TruncatedSeries {
        TruncatedSeries::parse(text, RingDescriptor::SCALAR, cap).unwrap()
    }

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    #[test]
    fn q_integral_on_monomials() {
        let p = OperatorSpec::q_integral(q("1/2")).unwrap();
        assert_eq!(p.apply(&s("0,1", 3)).unwrap(), s("0,1", 3));
        assert_eq!(p.apply(&s("0,0,1", 3)).unwrap(), s("0,0,1/3", 3));
    }

    #[test]
    fn antiderivative_on_polynomial() {
        let j = OperatorSpec::antiderivative();
        assert_eq!(j.apply(&s("1,1", 3)).unwrap(), s("0,1,1/2", 3));
        // top coefficient falls off the cap
        assert_eq!(j.apply(&s("0,0,0,5", 3)).unwrap(), s("0", 3));
    }

    #[test]
    fn tilde_examples() {
        let j = OperatorSpec::antiderivative();
        let x = s("2,1,-3", 4);
        assert_eq!(j.tilde_apply(&x).unwrap(), -&j.apply(&x).unwrap());

        let p = OperatorSpec::q_integral(q("1/2")).unwrap();
        assert_eq!(p.tilde_apply(&s("0,1", 2)).unwrap(), s("0,-2", 2));

        let qs = OperatorSpec::q_scale(q("1/2")).unwrap();
        assert_eq!(qs.apply(&s("0,1", 2)).unwrap(), s("0,2", 2));
        assert_eq!(qs.tilde_apply(&s("0,1", 2)).unwrap(), s("0,-1", 2));
    }

    #[test]
    fn constant_term_rejected_by_q_kinds() {
        let p = OperatorSpec::q_integral(q("2/3")).unwrap();
        assert!(matches!(p.apply(&s("1,1", 2)), Err(Error::Domain(_))));
        assert!(p.tilde_apply(&s("1", 2)).is_err());
        assert!(OperatorSpec::antiderivative().apply(&s("1", 2)).is_ok());
    }

    #[test]
    fn q_guard() {
        for bad in ["0", "1", "-1"] {
            assert!(OperatorSpec::q_integral(q(bad)).is_err());
            assert!(OperatorSpec::q_scale(q(bad)).is_err());
        }
        assert!(OperatorSpec::new(OperatorKind::QScale, None).is_err());
        assert_eq!(OperatorSpec::q_scale(q("3")).unwrap().weight(), q("-1"));
        assert_eq!(OperatorSpec::q_integral(q("3")).unwrap().weight(), q("1"));
        assert!(OperatorSpec::antiderivative().weight().is_zero());
    }

    #[test]
    fn matrix_coefficients_scale_entrywise() {
        let ring = RingDescriptor::matrix(2).unwrap();
        let x = TruncatedSeries::parse("0,[[1,2],[3,4]]", ring, 2).unwrap();
        let p = OperatorSpec::q_integral(q("1/3")).unwrap();
        // q/(1−q) = 1/2
        let want = TruncatedSeries::parse("0,[[1/2,1],[3/2,2]]", ring, 2).unwrap();
        assert_eq!(p.apply(&x).unwrap(), want);
    }
}
