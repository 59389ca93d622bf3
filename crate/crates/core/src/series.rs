//! Truncated formal power series in one variable `t`.
//!
//! A [`TruncatedSeries`] stores `c₀..c_N` and represents its class modulo
//! `t^{N+1}`; `N` is the *cap*. The t-adic valuation plays the role of the
//! filtration: a series with valuation `n` lies in the n-th filtration ideal.
//! Every map here (products, exp, log, the geometric inverse) is computed
//! exactly on the first `N+1` coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::{RingDescriptor, RingElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    ring: RingDescriptor,
    coeffs: Vec<RingElement>,
}

impl TruncatedSeries {
    /// Builds a series from leading coefficients; missing ones are zero.
    pub fn new(ring: RingDescriptor, cap: usize, coeffs: Vec<RingElement>) -> Result<Self> {
        if coeffs.len() > cap + 1 {
            return Err(Error::Config(format!(
                "{} coefficients given for truncation order {cap}",
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: c.ring(),
            });
        }
        let mut coeffs = coeffs;
        coeffs.resize(cap + 1, ring.zero());
        Ok(TruncatedSeries { ring, coeffs })
    }

    /// Scalar series from rational coefficients.
    pub fn from_rationals(cap: usize, coeffs: &[Rational]) -> Result<Self> {
        let elems = coeffs.iter().cloned().map(RingElement::Scalar).collect();
        Self::new(RingDescriptor::SCALAR, cap, elems)
    }

    pub fn zero(ring: RingDescriptor, cap: usize) -> Self {
        TruncatedSeries {
            ring,
            coeffs: vec![ring.zero(); cap + 1],
        }
    }

    pub fn one(ring: RingDescriptor, cap: usize) -> Self {
        Self::constant(ring.one(), cap)
    }

    pub fn constant(c: RingElement, cap: usize) -> Self {
        Self::monomial(c, 0, cap)
    }

    /// `c·t^power`; zero if `power > cap`.
    pub fn monomial(c: RingElement, power: usize, cap: usize) -> Self {
        let mut s = Self::zero(c.ring(), cap);
        if power <= cap {
            s.coeffs[power] = c;
        }
        s
    }

    /// The indeterminate `t` (times the ring identity).
    pub fn variable(ring: RingDescriptor, cap: usize) -> Self {
        Self::monomial(ring.one(), 1, cap)
    }

    /// Random series with `c_k = 0` for `k < min_valuation` and every other
    /// coefficient drawn by [`RingElement::random`].
    pub fn random<R: Rng + ?Sized>(
        ring: RingDescriptor,
        cap: usize,
        min_valuation: usize,
        bound: u32,
        rng: &mut R,
    ) -> Self {
        let coeffs = (0..=cap)
            .map(|k| {
                if k < min_valuation {
                    ring.zero()
                } else {
                    RingElement::random(ring, rng, bound)
                }
            })
            .collect();
        TruncatedSeries { ring, coeffs }
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RingElement {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }

    /// Least `k` with `c_k ≠ 0`, or `cap + 1` for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    /// Drops every coefficient above `cap`. `cap` must not exceed the current cap.
    pub fn truncate(&self, cap: usize) -> Self {
        assert!(cap <= self.cap(), "truncate can only lower the cap");
        TruncatedSeries {
            ring: self.ring,
            coeffs: self.coeffs[..=cap].to_vec(),
        }
    }

    /// Same coefficients at a larger cap, the new ones zero.
    pub fn extend(&self, cap: usize) -> Self {
        assert!(cap >= self.cap(), "extend can only raise the cap");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(cap + 1, self.ring.zero());
        TruncatedSeries {
            ring: self.ring,
            coeffs,
        }
    }

    /// Applies `f(k, c_k)` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(usize, &RingElement) -> RingElement) -> Self {
        TruncatedSeries {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| f(k, c))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|_, c| c.scale(r))
    }

    /// Multiplies every coefficient on the left by `c`.
    pub fn left_mul_element(&self, c: &RingElement) -> Self {
        self.map_coeffs(|_, x| c * x)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.cap() != other.cap() {
            return Err(Error::CapMismatch {
                left: self.cap(),
                right: other.cap(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    /// Smallest power where the two series differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, RingElement, RingElement)> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(k, (a, b))| (k, a.clone(), b.clone()))
    }

    fn require_positive_valuation(&self, what: &str) -> Result<()> {
        if self.valuation() == 0 {
            Err(Error::Domain(format!(
                "{what}: argument must have zero constant term"
            )))
        } else {
            Ok(())
        }
    }

    /// Sums `Σ_{n≥0} w(n)·xⁿ` for a series of positive valuation, stopping
    /// once the powers vanish at this cap.
    fn power_sum(&self, mut weight: impl FnMut(usize) -> Option<Rational>) -> Self {
        let mut out = Self::zero(self.ring, self.cap());
        let mut power = Self::one(self.ring, self.cap());
        let mut n = 0;
        while !power.is_zero() {
            if let Some(w) = weight(n) {
                out = &out + &power.scale(&w);
            }
            power = &power * self;
            n += 1;
        }
        out
    }

    /// `exp(x) = Σ xⁿ/n!`.
    pub fn exp(&self) -> Result<Self> {
        self.require_positive_valuation("exp")?;
        let mut out = Self::one(self.ring, self.cap());
        let mut term = out.clone();
        let mut n = 0i64;
        loop {
            n += 1;
            term = (&term * self).scale(&Rational::new(1, n));
            if term.is_zero() {
                return Ok(out);
            }
            out = &out + &term;
        }
    }

    /// `log(1 + x) = Σ_{n≥1} (−1)^{n−1} xⁿ/n`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_positive_valuation("log1p")?;
        Ok(self.power_sum(|n| {
            (n > 0).then(|| Rational::new(if n % 2 == 1 { 1 } else { -1 }, n as i64))
        }))
    }

    /// `λ⁻¹·log(1 + λx) = Σ_{n≥1} (−λ)^{n−1} xⁿ/n`, defined for every
    /// rational `λ` including zero.
    pub fn lambda_log(&self, lambda: &Rational) -> Result<Self> {
        self.require_positive_valuation("lambda_log")?;
        let minus = -lambda;
        Ok(self
            .power_sum(|n| (n > 0).then(|| minus.pow(n as u32 - 1) * Rational::new(1, n as i64))))
    }

    /// `(1 + λx)⁻¹ = Σ_{n≥0} (−λx)ⁿ`.
    pub fn geom_inv(&self, lambda: &Rational) -> Result<Self> {
        self.require_positive_valuation("geom_inv")?;
        let minus = -lambda;
        Ok(self.power_sum(|n| Some(minus.pow(n as u32))))
    }

    /// Inverse of a series whose constant term is the ring identity.
    pub fn unit_inverse(&self) -> Result<Self> {
        let one = Self::one(self.ring, self.cap());
        if self.coeffs[0] != self.ring.one() {
            return Err(Error::Domain(
                "unit_inverse: constant term must be 1".into(),
            ));
        }
        (self - &one).geom_inv(&Rational::one())
    }

    /// Parses comma-separated coefficients from `c₀` upward; matrix
    /// coefficients use the bracketed row-major form, and a bare rational `r`
    /// in a matrix ring stands for `r` times the identity.
    pub fn parse(text: &str, ring: RingDescriptor, cap: usize) -> Result<Self> {
        let coeffs = split_top_level(text)?
            .into_iter()
            .map(|part| {
                part.parse::<RingElement>().map(|c| match c {
                    RingElement::Scalar(r) if !ring.is_commutative() => ring.scalar_element(r),
                    c => c,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, cap, coeffs)
    }

    /// Parses the JSON form: an array of rational strings or of matrices.
    pub fn from_json(json: &str, ring: RingDescriptor, cap: usize) -> Result<Self> {
        let coeffs: Vec<RingElement> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(ring, cap, coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coeffs).expect("series serialization")
    }
}

fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in '{text}'")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in '{text}'")));
    }
    parts.push(text[start..].trim());
    Ok(parts)
}

fn incompatible(l: &TruncatedSeries, r: &TruncatedSeries) -> ! {
    panic!(
        "incompatible series: {} cap {} vs {} cap {}",
        l.ring,
        l.cap(),
        r.ring,
        r.cap()
    )
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        if self.check_compatible(rhs).is_err() {
            incompatible(self, rhs);
        }
        self.map_coeffs(|k, c| c + &rhs.coeffs[k])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        if self.check_compatible(rhs).is_err() {
            incompatible(self, rhs);
        }
        self.map_coeffs(|k, c| c - &rhs.coeffs[k])
    }
}

/// Cauchy product truncated at the cap.
/// A series over ℚ or `M_d(ℚ)` rescaled to integer entries by one common
/// denominator, so that products need no gcd until the final division.
struct IntegerImage {
    denom: BigInt,
    /// Per power: `None` for a zero coefficient, else row-major entries.
    coeffs: Vec<Option<Vec<BigInt>>>,
}

impl IntegerImage {
    fn of(s: &TruncatedSeries) -> IntegerImage {
        let denom = s
            .coeffs
            .iter()
            .flat_map(RingElement::entries)
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| {
                (!c.is_zero()).then(|| {
                    c.entries()
                        .iter()
                        .map(|r| r.numer() * (&denom / r.denom()))
                        .collect()
                })
            })
            .collect();
        IntegerImage { denom, coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        if self.check_compatible(rhs).is_err() {
            incompatible(self, rhs);
        }
        let (cap, ring, n) = (self.cap(), self.ring, self.ring.dim());
        let (a, b) = (IntegerImage::of(self), IntegerImage::of(rhs));
        let a_support: Vec<(usize, &Vec<BigInt>)> = a
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.as_ref().map(|c| (i, c)))
            .collect();
        let b_support: Vec<(usize, &Vec<BigInt>)> = b
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.as_ref().map(|c| (j, c)))
            .collect();
        let mut acc: Vec<Option<Vec<BigInt>>> = vec![None; cap + 1];
        for &(i, x) in &a_support {
            for &(j, y) in &b_support {
                if i + j > cap {
                    break;
                }
                let out = acc[i + j].get_or_insert_with(|| vec![BigInt::zero(); n * n]);
                for r in 0..n {
                    for m in 0..n {
                        let xv = &x[r * n + m];
                        if xv.is_zero() {
                            continue;
                        }
                        for c in 0..n {
                            out[r * n + c] += xv * &y[m * n + c];
                        }
                    }
                }
            }
        }
        let denom = &a.denom * &b.denom;
        let coeffs = acc
            .into_iter()
            .map(|c| match c {
                None => ring.zero(),
                Some(entries) => RingElement::from_entries(
                    ring,
                    entries
                        .into_iter()
                        .map(|e| {
                            Rational::from_bigints(e, denom.clone()).expect("nonzero denominator")
                        })
                        .collect(),
                ),
            })
            .collect();
        TruncatedSeries { ring, coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.map_coeffs(|_, c| -c)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; cap {}] {}", self.ring, self.cap(), self)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    /// The cap is inferred from the number of coefficients.
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<RingElement>::deserialize(deserializer)?;
        let first = coeffs
            .first()
            .ok_or_else(|| serde::de::Error::custom("empty coefficient list"))?;
        let ring = first.ring();
        let cap = coeffs.len() - 1;
        TruncatedSeries::new(ring, cap, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, cap: usize) -> TruncatedSeries {
        TruncatedSeries::parse(text, RingDescriptor::SCALAR, cap).unwrap()
    }

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&s("1,1", 2) * &s("1,-1", 2), s("1,0,-1", 2));
    }

    #[test]
    fn product_truncates() {
        let t = s("0,1", 1);
        assert!((&t * &t).is_zero());
    }

    #[test]
    fn matrix_coefficients_do_not_commute() {
        let ring = RingDescriptor::matrix(2).unwrap();
        let x = TruncatedSeries::parse("0,[[0,1],[0,0]]", ring, 3).unwrap();
        let y = TruncatedSeries::parse("0,[[0,0],[1,0]]", ring, 3).unwrap();
        let xy = &x * &y;
        let yx = &y * &x;
        assert_ne!(xy, yx);
        assert_eq!(xy.coeff(2), &"[[1,0],[0,0]]".parse().unwrap());
        assert_eq!(yx.coeff(2), &"[[0,0],[0,1]]".parse().unwrap());
    }

    #[test]
    fn valuations() {
        assert_eq!(
            TruncatedSeries::zero(RingDescriptor::SCALAR, 5).valuation(),
            6
        );
        assert_eq!(s("1,1", 5).valuation(), 0);
        assert_eq!(s("0,0,0,1,-1", 5).valuation(), 3);
    }

    #[test]
    fn mismatch_errors() {
        let a = s("0,1", 3);
        assert!(matches!(
            a.checked_add(&s("0,1", 4)),
            Err(Error::CapMismatch { .. })
        ));
        let m = TruncatedSeries::zero(RingDescriptor::matrix(2).unwrap(), 3);
        assert!(matches!(a.checked_mul(&m), Err(Error::RingMismatch { .. })));
        assert!(TruncatedSeries::parse("1,2,3", RingDescriptor::SCALAR, 1).is_err());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            TruncatedSeries::zero(RingDescriptor::SCALAR, 4)
                .exp()
                .unwrap(),
            s("1", 4)
        );
        assert_eq!(s("0,1", 3).exp().unwrap(), s("1,1,1/2,1/6", 3));
        assert_eq!(s("0,0,1/2", 4).exp().unwrap(), s("1,0,1/2,0,1/8", 4));
        assert!(matches!(s("1,1", 3).exp(), Err(Error::Domain(_))));
    }

    #[test]
    fn log_examples() {
        assert!(TruncatedSeries::zero(RingDescriptor::SCALAR, 4)
            .log1p()
            .unwrap()
            .is_zero());
        assert_eq!(s("0,1", 3).log1p().unwrap(), s("0,1,-1/2,1/3", 3));
        let e = &s("0,1", 6).exp().unwrap() - &s("1", 6);
        assert_eq!(e.log1p().unwrap(), s("0,1", 6));
        assert!(s("2", 3).log1p().is_err());
    }

    #[test]
    fn lambda_log_examples() {
        let a = s("0,3,-1,2/5", 5);
        assert_eq!(a.lambda_log(&Rational::zero()).unwrap(), a);
        assert_eq!(
            s("0,1", 3).lambda_log(&q("1")).unwrap(),
            s("0,1,-1/2,1/3", 3)
        );
        assert_eq!(s("0,1", 3).lambda_log(&q("2")).unwrap(), s("0,1,-1,4/3", 3));
        assert!(s("1", 3).lambda_log(&q("2")).is_err());
    }

    #[test]
    fn geom_inv_examples() {
        assert_eq!(s("0,1", 4).geom_inv(&Rational::zero()).unwrap(), s("1", 4));
        assert_eq!(s("0,1", 3).geom_inv(&q("1")).unwrap(), s("1,-1,1,-1", 3));
        let inv = s("0,1", 8).geom_inv(&q("2")).unwrap();
        assert_eq!(&s("1,2", 8) * &inv, s("1", 8));
        assert!(s("1", 3).geom_inv(&q("1")).is_err());
    }

    #[test]
    fn unit_inverse() {
        let u = s("1,2,-1/3,4", 6);
        assert_eq!(&u * &u.unit_inverse().unwrap(), s("1", 6));
        assert!(s("2,1", 3).unit_inverse().is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let x = s("0,1,1/2", 4);
        assert_eq!(x.to_string(), "0,1,1/2,0,0");
        assert_eq!(x.to_json(), r#"["0","1","1/2","0","0"]"#);
        assert_eq!(
            TruncatedSeries::from_json(&x.to_json(), RingDescriptor::SCALAR, 4).unwrap(),
            x
        );
        let ring = RingDescriptor::matrix(2).unwrap();
        let m = TruncatedSeries::parse("[[1,0],[0,1]],[[0,1/2],[0,0]]", ring, 2).unwrap();
        assert_eq!(m.to_string(), "[[1,0],[0,1]],[[0,1/2],[0,0]],[[0,0],[0,0]]");
        assert_eq!(TruncatedSeries::parse(&m.to_string(), ring, 2).unwrap(), m);
        let back: TruncatedSeries = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
