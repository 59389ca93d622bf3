//! Solutions of the linear Rota-Baxter equations.
//!
//! Every equation is solved twice: by fixed-point (Picard) iteration, which
//! needs nothing beyond the operator, and by the exponential closed forms.
//! Agreement of the two at the cap is what the identity checks assert.
//!
//! The equation forms, with `λ` the operator weight and `P̃ = −λ − P`:
//!
//! * homogeneous: `b = 1 + P(a₁b)`
//! * left: `b = P((1 + λa₁)a₀) + P(a₁b)`
//! * right: `b = P̃(a₀(1 + λa₁)) + P̃(ba₁)`, the left equation read in the
//!   opposite algebra with `P̃` in place of `P`.

mod bch;
mod bernoulli;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bch::{bch, bernoulli_ad_series, chi_lambda, chi_zero};
pub use bernoulli::{bernoulli, bernoulli_numbers};

use crate::error::{Error, Result};
use crate::operator::OperatorSpec;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationForm {
    Homogeneous,
    InhomogeneousLeft,
    InhomogeneousRight,
}

impl EquationForm {
    pub fn name(self) -> &'static str {
        match self {
            EquationForm::Homogeneous => "homogeneous",
            EquationForm::InhomogeneousLeft => "inhom-left",
            EquationForm::InhomogeneousRight => "inhom-right",
        }
    }
}

impl fmt::Display for EquationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homogeneous" | "hom" => Ok(EquationForm::Homogeneous),
            "inhom-left" | "inhomogeneous-left" => Ok(EquationForm::InhomogeneousLeft),
            "inhom-right" | "inhomogeneous-right" => Ok(EquationForm::InhomogeneousRight),
            other => Err(Error::Parse(format!(
                "unknown equation '{other}' (expected homogeneous, inhom-left or inhom-right)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSpec {
    form: EquationForm,
    op: OperatorSpec,
    a0: Option<TruncatedSeries>,
    a1: TruncatedSeries,
}

impl EquationSpec {
    pub fn homogeneous(op: OperatorSpec, a1: TruncatedSeries) -> Result<Self> {
        Self::new(EquationForm::Homogeneous, op, None, a1)
    }

    pub fn left(op: OperatorSpec, a0: TruncatedSeries, a1: TruncatedSeries) -> Result<Self> {
        Self::new(EquationForm::InhomogeneousLeft, op, Some(a0), a1)
    }

    pub fn right(op: OperatorSpec, a0: TruncatedSeries, a1: TruncatedSeries) -> Result<Self> {
        Self::new(EquationForm::InhomogeneousRight, op, Some(a0), a1)
    }

    /// `a₀` is required for the inhomogeneous forms and must be absent for
    /// the homogeneous one; both inputs need positive valuation.
    pub fn new(
        form: EquationForm,
        op: OperatorSpec,
        a0: Option<TruncatedSeries>,
        a1: TruncatedSeries,
    ) -> Result<Self> {
        if a1.valuation() == 0 {
            return Err(Error::Domain("a1 must have zero constant term".into()));
        }
        match (&form, &a0) {
            (EquationForm::Homogeneous, Some(_)) => {
                return Err(Error::Config("homogeneous equation takes no a0".into()))
            }
            (EquationForm::Homogeneous, None) => {}
            (_, None) => return Err(Error::Config(format!("{form} equation requires a0"))),
            (_, Some(a0)) => {
                a0.check_compatible(&a1)?;
                if a0.valuation() == 0 {
                    return Err(Error::Domain("a0 must have zero constant term".into()));
                }
            }
        }
        Ok(EquationSpec { form, op, a0, a1 })
    }

    pub fn form(&self) -> EquationForm {
        self.form
    }

    pub fn op(&self) -> &OperatorSpec {
        &self.op
    }

    pub fn a0(&self) -> Option<&TruncatedSeries> {
        self.a0.as_ref()
    }

    pub fn a1(&self) -> &TruncatedSeries {
        &self.a1
    }

    fn a0_or_zero(&self) -> TruncatedSeries {
        self.a0
            .clone()
            .unwrap_or_else(|| TruncatedSeries::zero(self.a1.ring(), self.a1.cap()))
    }

    /// `1 + λa₁`.
    fn one_plus_lambda_a1(&self) -> TruncatedSeries {
        let one = TruncatedSeries::one(self.a1.ring(), self.a1.cap());
        &one + &self.a1.scale(&self.op.weight())
    }

    /// The parts of the right-hand side that do not involve `b`.
    fn source(&self) -> Result<TruncatedSeries> {
        let a0 = self.a0_or_zero();
        match self.form {
            EquationForm::Homogeneous => Ok(TruncatedSeries::one(self.a1.ring(), self.a1.cap())),
            EquationForm::InhomogeneousLeft => self.op.apply(&(&self.one_plus_lambda_a1() * &a0)),
            EquationForm::InhomogeneousRight => {
                self.op.tilde_apply(&(&a0 * &self.one_plus_lambda_a1()))
            }
        }
    }

    /// Evaluates the right-hand side at `b`.
    pub fn rhs(&self, b: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.a1.check_compatible(b)?;
        let source = self.source()?;
        self.rhs_with_source(&source, b)
    }

    fn rhs_with_source(
        &self,
        source: &TruncatedSeries,
        b: &TruncatedSeries,
    ) -> Result<TruncatedSeries> {
        let feedback = match self.form {
            EquationForm::Homogeneous | EquationForm::InhomogeneousLeft => {
                self.op.apply(&(&self.a1 * b))?
            }
            EquationForm::InhomogeneousRight => self.op.tilde_apply(&(b * &self.a1))?,
        };
        Ok(source + &feedback)
    }
}

/// Iterates `b ↦ f(b)` from `start` until two successive iterates agree.
///
/// For a map whose `b`-dependence gains one valuation per step this takes at
/// most `cap + 1` steps; anything slower is reported as a domain error.
pub fn iterate_to_fixed_point(
    start: TruncatedSeries,
    mut f: impl FnMut(&TruncatedSeries) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    let limit = start.cap() + 2;
    let mut b = start;
    for _ in 0..=limit {
        let next = f(&b)?;
        if next == b {
            return Ok(b);
        }
        b = next;
    }
    Err(Error::Domain(
        "fixed-point iteration did not stabilise".into(),
    ))
}

/// The unique fixed point of the equation, by iteration from zero.
pub fn picard_solve(eq: &EquationSpec) -> Result<TruncatedSeries> {
    picard_solve_from(eq, TruncatedSeries::zero(eq.a1.ring(), eq.a1.cap()))
}

pub fn picard_solve_from(eq: &EquationSpec, start: TruncatedSeries) -> Result<TruncatedSeries> {
    eq.a1.check_compatible(&start)?;
    let source = eq.source()?;
    iterate_to_fixed_point(start, |b| eq.rhs_with_source(&source, b))
}

/// The nested sum `Σₙ P(a₁⋯P(a₁·x)⋯)` with `n` nestings, `n = 0..`; with
/// `x = 1` this is the iterated solution of the homogeneous equation.
pub fn nested_sum(
    op: &OperatorSpec,
    a1: &TruncatedSeries,
    x: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    a1.check_compatible(x)?;
    let mut term = x.clone();
    let mut out = x.clone();
    while !term.is_zero() {
        term = op.apply(&(a1 * &term))?;
        out = &out + &term;
    }
    Ok(out)
}

/// Spitzer's closed form `exp(P(λ⁻¹log(1 + λa)))`.
pub fn spitzer_closed(op: &OperatorSpec, a: &TruncatedSeries) -> Result<TruncatedSeries> {
    op.apply(&a.lambda_log(&op.weight())?)?.exp()
}

/// `exp(X)·P(exp(−X)·a₀)`.
fn left_solution(
    op: &OperatorSpec,
    x: &TruncatedSeries,
    a0: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    Ok(&x.exp()? * &op.apply(&(&(-x).exp()? * a0))?)
}

fn require_left(eq: &EquationSpec) -> Result<&TruncatedSeries> {
    match (eq.form, &eq.a0) {
        (EquationForm::InhomogeneousLeft, Some(a0)) => Ok(a0),
        _ => Err(Error::Usage(format!(
            "this closed form solves the inhom-left equation, not {}",
            eq.form
        ))),
    }
}

/// `exp(P(u))·P(exp(−P(u))·a₀)` with `u = λ⁻¹log(1 + λa₁)`; for weight 0, `u = a₁`.
pub fn inhom_closed_commutative(eq: &EquationSpec) -> Result<TruncatedSeries> {
    let a0 = require_left(eq)?;
    if !eq.a1.ring().is_commutative() {
        return Err(Error::Usage(
            "non-commutative ring: use inhom_closed_noncommutative or inhom_closed_weight0".into(),
        ));
    }
    let u = eq.a1.lambda_log(&eq.op.weight())?;
    left_solution(&eq.op, &eq.op.apply(&u)?, a0)
}

/// Closed forms through `χ_λ(u)`, `u = λ⁻¹log(1 + λa₁)`, for nonzero weight.
///
/// * left, solving the inhom-left equation: `exp(P(χ))·P(exp(−P(χ))·a₀)`
/// * right, solving the inhom-right equation: `P̃(a₀·exp(−P̃(χ)))·exp(P̃(χ))`
pub fn inhom_closed_noncommutative(eq: &EquationSpec, side: Side) -> Result<TruncatedSeries> {
    let lambda = eq.op.weight();
    if lambda.is_zero() {
        return Err(Error::Usage(
            "weight 0: use inhom_closed_weight0 for the non-commutative case".into(),
        ));
    }
    let expected = match side {
        Side::Left => EquationForm::InhomogeneousLeft,
        Side::Right => EquationForm::InhomogeneousRight,
    };
    let a0 = match (&eq.a0, eq.form == expected) {
        (Some(a0), true) => a0,
        _ => {
            return Err(Error::Usage(format!(
                "{side:?} closed form solves the {expected} equation, not {}",
                eq.form
            )))
        }
    };
    let chi = chi_lambda(&eq.op, &eq.a1.lambda_log(&lambda)?)?;
    match side {
        Side::Left => left_solution(&eq.op, &eq.op.apply(&chi)?, a0),
        Side::Right => {
            let pt = eq.op.tilde_apply(&chi)?;
            Ok(&eq.op.tilde_apply(&(a0 * &(-&pt).exp()?))? * &pt.exp()?)
        }
    }
}

/// `P(a₀·exp(−P(χ)))·exp(P(χ))`: the right-sided formula with `P` where the
/// mirrored equation has `P̃`. Kept to document that it does not solve
/// `b = P̃(a₀(1 + λa₁)) − P̃(ba₁)`.
pub fn right_formula_as_printed(
    op: &OperatorSpec,
    a0: &TruncatedSeries,
    a1: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let lambda = op.weight();
    if lambda.is_zero() {
        return Err(Error::Usage("needs a nonzero weight".into()));
    }
    let chi = chi_lambda(op, &a1.lambda_log(&lambda)?)?;
    let p = op.apply(&chi)?;
    Ok(&op.apply(&(a0 * &(-&p).exp()?))? * &p.exp()?)
}

/// Fixed point of `b = P̃(a₀(1 + λa₁)) − P̃(ba₁)`.
pub fn right_equation_as_printed(
    op: &OperatorSpec,
    a0: &TruncatedSeries,
    a1: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    a0.check_compatible(a1)?;
    let one = TruncatedSeries::one(a1.ring(), a1.cap());
    let source = op.tilde_apply(&(a0 * &(&one + &a1.scale(&op.weight()))))?;
    iterate_to_fixed_point(TruncatedSeries::zero(a1.ring(), a1.cap()), |b| {
        Ok(&source - &op.tilde_apply(&(b * a1))?)
    })
}

/// `exp(P(χ₀(a₁)))·P(exp(−P(χ₀(a₁)))·a₀)` for a weight-0 operator.
pub fn inhom_closed_weight0(eq: &EquationSpec) -> Result<TruncatedSeries> {
    if !eq.op.weight().is_zero() {
        return Err(Error::Usage(format!(
            "inhom_closed_weight0 needs weight 0; {} has weight {}",
            eq.op,
            eq.op.weight()
        )));
    }
    let a0 = require_left(eq)?;
    let chi = chi_zero(&eq.op, &eq.a1)?;
    left_solution(&eq.op, &eq.op.apply(&chi)?, a0)
}

/// Picks the closed form matching the equation and the ring.
pub fn closed_solve(eq: &EquationSpec) -> Result<TruncatedSeries> {
    let commutative = eq.a1.ring().is_commutative();
    let weight_zero = eq.op.weight().is_zero();
    match eq.form {
        EquationForm::Homogeneous if commutative => spitzer_closed(&eq.op, &eq.a1),
        EquationForm::Homogeneous if weight_zero => {
            Ok(eq.op.apply(&chi_zero(&eq.op, &eq.a1)?)?.exp()?)
        }
        EquationForm::Homogeneous => {
            // homogeneous = left equation with a₀ replaced by the unit source
            let u = eq.a1.lambda_log(&eq.op.weight())?;
            eq.op.apply(&chi_lambda(&eq.op, &u)?)?.exp()
        }
        EquationForm::InhomogeneousLeft if commutative => inhom_closed_commutative(eq),
        EquationForm::InhomogeneousLeft if weight_zero => inhom_closed_weight0(eq),
        EquationForm::InhomogeneousLeft => inhom_closed_noncommutative(eq, Side::Left),
        EquationForm::InhomogeneousRight => inhom_closed_noncommutative(eq, Side::Right),
    }
}
