//! Coefficient rings: the rationals and square rational matrices.
//!
//! Every series coefficient is a [`RingElement`]. Binary operations require
//! both operands to belong to the same ring; the `checked_*` methods report a
//! mismatch as an error, while the operator impls panic on it (series code
//! validates rings once at its boundary and then uses the operators).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    ScalarRational,
    MatrixRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    kind: RingKind,
    dim: usize,
}

impl RingDescriptor {
    pub const SCALAR: RingDescriptor = RingDescriptor {
        kind: RingKind::ScalarRational,
        dim: 1,
    };

    pub fn scalar() -> Self {
        Self::SCALAR
    }

    pub fn matrix(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("matrix dimension must be at least 1".into()));
        }
        Ok(RingDescriptor {
            kind: RingKind::MatrixRational,
            dim,
        })
    }

    /// Scalar ring for `dim == 1`, matrix ring otherwise.
    pub fn with_dim(dim: usize) -> Result<Self> {
        if dim == 1 {
            Ok(Self::SCALAR)
        } else {
            Self::matrix(dim)
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_commutative(&self) -> bool {
        self.dim == 1
    }

    pub fn zero(&self) -> RingElement {
        match self.kind {
            RingKind::ScalarRational => RingElement::Scalar(Rational::zero()),
            RingKind::MatrixRational => RingElement::Matrix(Matrix::zero(self.dim)),
        }
    }

    pub fn one(&self) -> RingElement {
        match self.kind {
            RingKind::ScalarRational => RingElement::Scalar(Rational::one()),
            RingKind::MatrixRational => RingElement::Matrix(Matrix::identity(self.dim)),
        }
    }

    /// Embeds a rational as `r·1`.
    pub fn scalar_element(&self, r: Rational) -> RingElement {
        match self.kind {
            RingKind::ScalarRational => RingElement::Scalar(r),
            RingKind::MatrixRational => {
                let mut m = Matrix::zero(self.dim);
                for i in 0..self.dim {
                    m.entries[i * self.dim + i] = r.clone();
                }
                RingElement::Matrix(m)
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::ScalarRational => write!(f, "Q"),
            RingKind::MatrixRational => write!(f, "M{}(Q)", self.dim),
        }
    }
}

/// Square rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse("matrix must be square and non-empty".into()));
        }
        Ok(Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim)
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(&Rational) -> Rational) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn matmul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        let acc = &mut out.entries[i * n + j];
                        *acc = &*acc + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of a coefficient ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RingElement {
    Scalar(Rational),
    Matrix(Matrix),
}

impl RingElement {
    pub fn ring(&self) -> RingDescriptor {
        match self {
            RingElement::Scalar(_) => RingDescriptor::SCALAR,
            RingElement::Matrix(m) => RingDescriptor {
                kind: RingKind::MatrixRational,
                dim: m.dim,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Scalar(r) => r.is_zero(),
            RingElement::Matrix(m) => m.is_zero(),
        }
    }

    /// Entries in row-major order; a scalar is its own single entry.
    pub(crate) fn entries(&self) -> &[Rational] {
        match self {
            RingElement::Scalar(r) => std::slice::from_ref(r),
            RingElement::Matrix(m) => &m.entries,
        }
    }

    /// Inverse of [`RingElement::entries`]; `entries` must have `dim²` items.
    pub(crate) fn from_entries(ring: RingDescriptor, mut entries: Vec<Rational>) -> RingElement {
        debug_assert_eq!(entries.len(), ring.dim() * ring.dim());
        match ring.kind() {
            RingKind::ScalarRational => RingElement::Scalar(entries.pop().expect("one entry")),
            RingKind::MatrixRational => RingElement::Matrix(Matrix {
                dim: ring.dim(),
                entries,
            }),
        }
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            RingElement::Scalar(r) => Some(r),
            RingElement::Matrix(_) => None,
        }
    }

    fn check_same_ring(&self, other: &RingElement) -> Result<()> {
        let (l, r) = (self.ring(), other.ring());
        if l == r {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: l, right: r })
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, r: &Rational) -> RingElement {
        match self {
            RingElement::Scalar(x) => RingElement::Scalar(x * r),
            RingElement::Matrix(m) => RingElement::Matrix(m.map(|x| x * r)),
        }
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same_ring(other)?;
        Ok(&(self * other) - &(other * self))
    }

    /// Deterministic given the state of `rng`: every entry is `p/q` with
    /// `|p| ≤ bound` and `1 ≤ q ≤ bound`, before reduction.
    pub fn random<R: Rng + ?Sized>(ring: RingDescriptor, rng: &mut R, bound: u32) -> RingElement {
        assert!(bound >= 1, "bound must be positive");
        let b = bound as i64;
        let mut draw = || Rational::new(rng.gen_range(-b..=b), rng.gen_range(1..=b));
        match ring.kind {
            RingKind::ScalarRational => RingElement::Scalar(draw()),
            RingKind::MatrixRational => {
                let n = ring.dim;
                RingElement::Matrix(Matrix {
                    dim: n,
                    entries: (0..n * n).map(|_| draw()).collect(),
                })
            }
        }
    }
}

fn mismatch(l: &RingElement, r: &RingElement) -> ! {
    panic!("ring mismatch: {} vs {}", l.ring(), r.ring())
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        match (self, rhs) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => RingElement::Scalar(a + b),
            (RingElement::Matrix(a), RingElement::Matrix(b)) if a.dim == b.dim => {
                RingElement::Matrix(a.zip_with(b, |x, y| x + y))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        match (self, rhs) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => RingElement::Scalar(a - b),
            (RingElement::Matrix(a), RingElement::Matrix(b)) if a.dim == b.dim => {
                RingElement::Matrix(a.zip_with(b, |x, y| x - y))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        match (self, rhs) {
            (RingElement::Scalar(a), RingElement::Scalar(b)) => RingElement::Scalar(a * b),
            (RingElement::Matrix(a), RingElement::Matrix(b)) if a.dim == b.dim => {
                RingElement::Matrix(a.matmul(b))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Scalar(a) => RingElement::Scalar(-a),
            RingElement::Matrix(m) => RingElement::Matrix(m.map(|x| -x)),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Scalar(r) => write!(f, "{r}"),
            RingElement::Matrix(m) => write!(f, "{m}"),
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p/q` or a row-major bracketed matrix `[[a,b],[c,d]]`.
impl FromStr for RingElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.starts_with('[') {
            return s.parse().map(RingElement::Scalar);
        }
        let bad = || Error::Parse(format!("malformed matrix '{s}'"));
        let inner = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(bad)?
            .trim();
        let mut rows = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let open = rest.strip_prefix('[').ok_or_else(bad)?;
            let close = open.find(']').ok_or_else(bad)?;
            let row = open[..close]
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<Rational>>>()?;
            rows.push(row);
            rest = open[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(bad());
                }
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        Matrix::from_rows(rows).map(RingElement::Matrix)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ElementRepr {
    Scalar(Rational),
    Matrix(Vec<Vec<Rational>>),
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RingElement::Scalar(r) => r.serialize(serializer),
            RingElement::Matrix(m) => {
                let rows: Vec<&[Rational]> = m.rows().collect();
                rows.serialize(serializer)
            }
        }
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        match ElementRepr::deserialize(deserializer)? {
            ElementRepr::Scalar(r) => Ok(RingElement::Scalar(r)),
            ElementRepr::Matrix(rows) => Matrix::from_rows(rows)
                .map(RingElement::Matrix)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    #[test]
    fn matrix_product_of_nilpotents() {
        assert_eq!(
            &m("[[0,1],[0,0]]") * &m("[[0,0],[1,0]]"),
            m("[[1,0],[0,0]]")
        );
    }

    #[test]
    fn commutator_of_nilpotents() {
        let c = m("[[0,1],[0,0]]").commutator(&m("[[0,0],[1,0]]")).unwrap();
        assert_eq!(c, m("[[1,0],[0,-1]]"));
    }

    #[test]
    fn scalar_commutator_vanishes() {
        let c = m("3/7").commutator(&m("-2/5")).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = m("1").checked_add(&m("[[1,0],[0,1]]")).unwrap_err();
        assert!(matches!(err, Error::RingMismatch { .. }));
        let two = RingDescriptor::matrix(2).unwrap().one();
        let three = RingDescriptor::matrix(3).unwrap().one();
        assert!(two.checked_mul(&three).is_err());
        assert!(two.commutator(&three).is_err());
    }

    #[test]
    fn descriptor_commutativity() {
        assert!(RingDescriptor::scalar().is_commutative());
        assert!(!RingDescriptor::matrix(2).unwrap().is_commutative());
        assert!(RingDescriptor::matrix(0).is_err());
        assert_eq!(RingDescriptor::with_dim(1).unwrap(), RingDescriptor::SCALAR);
    }

    #[test]
    fn random_is_deterministic_and_bounded() {
        let ring = RingDescriptor::matrix(3).unwrap();
        let a = RingElement::random(ring, &mut ChaCha8Rng::seed_from_u64(11), 10);
        let b = RingElement::random(ring, &mut ChaCha8Rng::seed_from_u64(11), 10);
        assert_eq!(a, b);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = RingElement::random(RingDescriptor::SCALAR, &mut rng, 1);
            let r = x.as_scalar().unwrap();
            assert!(r.is_zero() || r.abs().is_one(), "{r}");
        }
    }

    #[test]
    fn random_scalar_value_for_seed_zero() {
        // ChaCha8 with seed_from_u64(0), bound 10; value frozen from a run.
        let x = RingElement::random(
            RingDescriptor::SCALAR,
            &mut ChaCha8Rng::seed_from_u64(0),
            10,
        );
        let r = x.as_scalar().unwrap();
        assert!(r.numer().magnitude() <= &10u32.into());
        assert!(r.denom() <= &10.into());
        assert_eq!(x, m("-3/2"));
    }

    #[test]
    fn text_round_trip() {
        for s in ["-3/4", "0", "[[1/2,0],[-1,5]]", "[[1,2,3],[4,5,6],[7,8,9]]"] {
            assert_eq!(m(s).to_string(), s);
        }
        for s in ["[[1,2],[3]]", "[[1,2],[3,4],]", "[1,2]", "[[1,2][3,4]]"] {
            assert!(s.parse::<RingElement>().is_err(), "{s}");
        }
    }

    #[test]
    fn json_forms() {
        let x = m("[[1/2,0],[-1,5]]");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"[["1/2","0"],["-1","5"]]"#);
        assert_eq!(serde_json::from_str::<RingElement>(&json).unwrap(), x);
        assert_eq!(serde_json::to_string(&m("2/3")).unwrap(), "\"2/3\"");
    }
}
