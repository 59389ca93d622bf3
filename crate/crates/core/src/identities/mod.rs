//! Executable identity checks.
//!
//! Each check evaluates both sides of an identity exactly at the cap and
//! reports the lowest power where they differ. The typed `check_*` functions
//! return a [`Verdict`]; [`run_check`] resolves text parameters, draws seeded
//! samples and wraps the verdict into a [`CheckReport`].

pub mod eulerian;
pub mod report;
pub mod suite;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::{OperatorKind, OperatorSpec};
use crate::rational::Rational;
use crate::ring::RingDescriptor;
use crate::series::TruncatedSeries;
use crate::solvers::{
    chi_lambda, closed_solve, picard_solve, right_equation_as_printed, right_formula_as_printed,
    spitzer_closed, EquationSpec, Side,
};

pub use eulerian::{q_pochhammer_table, q_product, EulerianVariant, ProductForm};
pub use report::{compare, CheckReport, CheckStatus, Mismatch, Params, Verdict};
pub use suite::{run_suite, ManifestEntry, SuiteManifest, SuiteOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    RbAxiom,
    Kingman,
    LemmaIterA,
    LemmaIterB,
    Spitzer,
    GenSpitzerComm,
    GenSpitzerNoncomm,
    GenSpitzerNoncommRightPrinted,
    GenSpitzerWeight0,
    BchChlFactorization,
    SpecialEquality,
    Eulerian(EulerianVariant),
}

impl IdentityId {
    pub fn all() -> Vec<IdentityId> {
        let mut ids = vec![
            IdentityId::RbAxiom,
            IdentityId::Kingman,
            IdentityId::LemmaIterA,
            IdentityId::LemmaIterB,
            IdentityId::Spitzer,
            IdentityId::GenSpitzerComm,
            IdentityId::GenSpitzerNoncomm,
            IdentityId::GenSpitzerNoncommRightPrinted,
            IdentityId::GenSpitzerWeight0,
            IdentityId::BchChlFactorization,
            IdentityId::SpecialEquality,
        ];
        ids.extend(EulerianVariant::ALL.map(IdentityId::Eulerian));
        ids
    }

    pub fn id(self) -> &'static str {
        match self {
            IdentityId::RbAxiom => "rb-axiom",
            IdentityId::Kingman => "kingman",
            IdentityId::LemmaIterA => "lemma-iter-a",
            IdentityId::LemmaIterB => "lemma-iter-b",
            IdentityId::Spitzer => "spitzer",
            IdentityId::GenSpitzerComm => "gen-spitzer-comm",
            IdentityId::GenSpitzerNoncomm => "gen-spitzer-noncomm",
            IdentityId::GenSpitzerNoncommRightPrinted => "gen-spitzer-noncomm-right-printed",
            IdentityId::GenSpitzerWeight0 => "gen-spitzer-weight0",
            IdentityId::BchChlFactorization => "bch-chl-factorization",
            IdentityId::SpecialEquality => "special-equality",
            IdentityId::Eulerian(v) => v.id(),
        }
    }

    fn default_operator(self) -> OperatorKind {
        match self {
            IdentityId::LemmaIterA | IdentityId::LemmaIterB | IdentityId::GenSpitzerWeight0 => {
                OperatorKind::Antiderivative
            }
            _ => OperatorKind::QIntegral,
        }
    }

    fn default_dim(self) -> usize {
        match self {
            IdentityId::GenSpitzerNoncomm
            | IdentityId::GenSpitzerNoncommRightPrinted
            | IdentityId::GenSpitzerWeight0
            | IdentityId::BchChlFactorization => 2,
            _ => 1,
        }
    }

    /// Parameters that influence this check, echoed into its report.
    fn relevant_params(self) -> &'static [&'static str] {
        const SAMPLED: &[&str] = &["operator", "q", "order", "dim", "seed", "samples", "bound"];
        match self {
            IdentityId::Eulerian(_) => &["q", "order"],
            IdentityId::Kingman => &[
                "operator", "q", "order", "dim", "seed", "samples", "bound", "n",
            ],
            IdentityId::LemmaIterA | IdentityId::LemmaIterB => {
                &["operator", "q", "order", "seed", "samples", "bound", "k"]
            }
            IdentityId::GenSpitzerNoncomm => &[
                "operator", "q", "order", "dim", "seed", "samples", "bound", "side",
            ],
            _ => SAMPLED,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::all()
            .into_iter()
            .find(|id| id.id() == s)
            .ok_or_else(|| Error::Usage(format!("unknown identity id '{s}'")))
    }
}

fn pow(x: &TruncatedSeries, n: usize) -> TruncatedSeries {
    (0..n).fold(TruncatedSeries::one(x.ring(), x.cap()), |acc, _| &acc * x)
}

fn first_of(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    for v in verdicts {
        if let Some(m) = v? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn require_nonzero_weight(op: &OperatorSpec) -> Result<Rational> {
    let lambda = op.weight();
    if lambda.is_zero() {
        return Err(Error::Domain(format!(
            "{op} has weight 0; this identity needs λ ≠ 0"
        )));
    }
    Ok(lambda)
}

fn require_scalar(x: &TruncatedSeries) -> Result<()> {
    if x.ring().is_commutative() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "this identity is stated over a commutative ring, not {}",
            x.ring()
        )))
    }
}

/// Both sides of the Rota-Baxter axiom for `P`, or for `P̃` when `tilde` is set.
pub fn rb_axiom_sides(
    op: &OperatorSpec,
    x: &TruncatedSeries,
    y: &TruncatedSeries,
    tilde: bool,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    x.check_compatible(y)?;
    let p = |s: &TruncatedSeries| {
        if tilde {
            op.tilde_apply(s)
        } else {
            op.apply(s)
        }
    };
    let (px, py) = (p(x)?, p(y)?);
    let lhs = &px * &py;
    let rhs = &(&p(&(x * &py))? + &p(&(&px * y))?) + &p(&(x * y))?.scale(&op.weight());
    Ok((lhs, rhs))
}

/// Lowest valuation of the operator's domain.
fn domain_valuation(op: &OperatorSpec) -> usize {
    if op.kind() == OperatorKind::Antiderivative {
        0
    } else {
        1
    }
}

/// The axiom for `P` and `P̃` on `samples` seeded random domain pairs.
pub fn check_rb_axiom(
    op: &OperatorSpec,
    ring: RingDescriptor,
    samples: usize,
    cap: usize,
    seed: u64,
    bound: u32,
) -> Verdict {
    if samples == 0 {
        return Err(Error::Usage("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = domain_valuation(op);
    for _ in 0..samples {
        let x = TruncatedSeries::random(ring, cap, v, bound, &mut rng);
        let y = TruncatedSeries::random(ring, cap, v, bound, &mut rng);
        if let Some(m) = check_rb_axiom_pair(op, &x, &y)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn check_rb_axiom_pair(op: &OperatorSpec, x: &TruncatedSeries, y: &TruncatedSeries) -> Verdict {
    first_of([false, true].map(|tilde| {
        let (lhs, rhs) = rb_axiom_sides(op, x, y, tilde)?;
        compare(&lhs, &rhs)
    }))
}

/// `λP(u)ⁿ = P((−P̃(u))ⁿ − P(u)ⁿ)`.
pub fn check_kingman(op: &OperatorSpec, u: &TruncatedSeries, n: usize) -> Verdict {
    let lambda = require_nonzero_weight(op)?;
    if n == 0 {
        return Err(Error::Usage("kingman needs n ≥ 1".into()));
    }
    let pu = op.apply(u)?;
    let lhs = pow(&pu, n).scale(&lambda);
    let rhs = op.apply(&(&pow(&-&op.tilde_apply(u)?, n) - &pow(&pu, n)))?;
    compare(&lhs, &rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaItem {
    /// `P(a⋯P(a)⋯)` with `k` nestings equals `P(a)ᵏ/k!`.
    A,
    /// `Σ_{l=0..k} (−1)ˡ N_{k+1−l}·N_l = (−1)ᵏ N_{k+1}`, `N_j` the `j`-fold nesting.
    B,
}

/// `N_0 = 1`, `N_j = P(a·N_{j−1})`, for `j = 0..=upto`.
fn nestings(op: &OperatorSpec, a: &TruncatedSeries, upto: usize) -> Result<Vec<TruncatedSeries>> {
    let mut out = vec![TruncatedSeries::one(a.ring(), a.cap())];
    for j in 1..=upto {
        let next = op.apply(&(a * &out[j - 1]))?;
        out.push(next);
    }
    Ok(out)
}

pub fn check_lemma_iteration(
    item: LemmaItem,
    op: &OperatorSpec,
    a: &TruncatedSeries,
    k: usize,
) -> Verdict {
    if !op.weight().is_zero() {
        return Err(Error::Domain(format!(
            "{op} has nonzero weight; the lemma needs weight 0"
        )));
    }
    require_scalar(a)?;
    match item {
        LemmaItem::A => {
            let n = nestings(op, a, k)?;
            let factorial =
                (1..=k as i64).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i));
            let rhs = pow(&op.apply(a)?, k).scale(&factorial.recip().expect("k! > 0"));
            compare(&n[k], &rhs)
        }
        LemmaItem::B => {
            let n = nestings(op, a, k + 1)?;
            let sign = |l: usize| Rational::from_integer(if l.is_multiple_of(2) { 1 } else { -1 });
            let lhs = (0..=k).fold(TruncatedSeries::zero(a.ring(), a.cap()), |acc, l| {
                &acc + &(&n[k + 1 - l] * &n[l]).scale(&sign(l))
            });
            compare(&lhs, &n[k + 1].scale(&sign(k)))
        }
    }
}

/// Spitzer's closed form against the iterated solution of `b = 1 + P(ab)`.
pub fn check_spitzer(op: &OperatorSpec, a: &TruncatedSeries) -> Verdict {
    require_scalar(a)?;
    let eq = EquationSpec::homogeneous(op.clone(), a.clone())?;
    compare(&spitzer_closed(op, a)?, &picard_solve(&eq)?)
}

/// The closed form matching the equation against its iterated solution.
pub fn check_generalized_spitzer(eq: &EquationSpec) -> Verdict {
    compare(&closed_solve(eq)?, &picard_solve(eq)?)
}

/// The right-sided formula with `P` against the equation with `−P̃(ba₁)`;
/// expected to fail.
pub fn check_right_as_printed(
    op: &OperatorSpec,
    a0: &TruncatedSeries,
    a1: &TruncatedSeries,
) -> Verdict {
    compare(
        &right_formula_as_printed(op, a0, a1)?,
        &right_equation_as_printed(op, a0, a1)?,
    )
}

/// `1 − P(e·(1+λa₁)⁻¹·a₁) = e` with `e = exp(−P(λ⁻¹log(1+λa₁)))`, and `e`
/// solving `d = 1 + P(−(1+λa₁)⁻¹a₁·d)`.
pub fn check_special_equality(op: &OperatorSpec, a1: &TruncatedSeries) -> Verdict {
    let lambda = require_nonzero_weight(op)?;
    require_scalar(a1)?;
    let one = TruncatedSeries::one(a1.ring(), a1.cap());
    let e = (-&op.apply(&a1.lambda_log(&lambda)?)?).exp()?;
    let inv_a1 = &a1.geom_inv(&lambda)? * a1;
    let lhs = &one - &op.apply(&(&e * &inv_a1))?;
    let d_rhs = &one + &op.apply(&(&-&inv_a1 * &e))?;
    first_of([compare(&lhs, &e), compare(&e, &d_rhs)])
}

/// `exp(−λa) = exp(P(χ_λ(a)))·exp(P̃(χ_λ(a)))`.
pub fn check_bch_chl_factorization(op: &OperatorSpec, a: &TruncatedSeries) -> Verdict {
    let lambda = require_nonzero_weight(op)?;
    let chi = chi_lambda(op, a)?;
    let lhs = a.scale(&-lambda).exp()?;
    let rhs = &op.apply(&chi)?.exp()? * &op.tilde_apply(&chi)?.exp()?;
    compare(&lhs, &rhs)
}

const KNOWN_PARAMS: &[&str] = &[
    "operator", "q", "order", "dim", "seed", "samples", "bound", "a0", "a1", "n", "k", "side",
];

const DEFAULT_ORDER: usize = 12;
const DEFAULT_SEED: u64 = 0;
const DEFAULT_SAMPLES: usize = 10;
const DEFAULT_BOUND: u32 = 10;
const DEFAULT_Q: &str = "1/2";

/// Which sides of the non-commutative closed forms to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SideChoice {
    Left,
    Right,
    Both,
}

impl SideChoice {
    fn sides(self) -> &'static [Side] {
        match self {
            SideChoice::Left => &[Side::Left],
            SideChoice::Right => &[Side::Right],
            SideChoice::Both => &[Side::Left, Side::Right],
        }
    }
}

/// Text parameters resolved against the per-identity defaults.
struct Settings {
    id: IdentityId,
    op: Option<OperatorSpec>,
    q: Rational,
    ring: RingDescriptor,
    order: usize,
    seed: u64,
    samples: usize,
    bound: u32,
    a0: Option<TruncatedSeries>,
    a1: Option<TruncatedSeries>,
    n: RangeInclusive<usize>,
    k: RangeInclusive<usize>,
    side: SideChoice,
    echo: Params,
}

fn usage(key: &str, e: impl fmt::Display) -> Error {
    Error::Usage(format!("parameter '{key}': {e}"))
}

fn parse_param<T: FromStr>(params: &Params, key: &str, default: T) -> Result<T>
where
    T::Err: fmt::Display,
{
    match params.get(key) {
        Some(v) => v.trim().parse().map_err(|e| usage(key, e)),
        None => Ok(default),
    }
}

/// `"3"` or `"1-6"`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Parse(format!("expected an integer or a range a-b, got '{text}'"));
    let (lo, hi) = match text.trim().split_once('-') {
        Some((lo, hi)) => (lo.trim(), hi.trim()),
        None => (text.trim(), text.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn range_text(r: &RangeInclusive<usize>) -> String {
    if r.start() == r.end() {
        r.start().to_string()
    } else {
        format!("{}-{}", r.start(), r.end())
    }
}

impl Settings {
    fn resolve(id: IdentityId, params: &Params) -> Result<Settings> {
        if let Some(key) = params.keys().find(|k| !KNOWN_PARAMS.contains(&k.as_str())) {
            return Err(Error::Usage(format!("unknown parameter '{key}'")));
        }
        let kind = parse_param(params, "operator", id.default_operator())?;
        let q: Rational = parse_param(params, "q", DEFAULT_Q.parse().expect("default q"))?;
        let order = parse_param(params, "order", DEFAULT_ORDER)?;
        let dim = parse_param(params, "dim", id.default_dim())?;
        let ring = RingDescriptor::with_dim(dim).map_err(|e| usage("dim", e))?;
        let seed = parse_param(params, "seed", DEFAULT_SEED)?;
        let samples = parse_param(params, "samples", DEFAULT_SAMPLES)?;
        if samples == 0 {
            return Err(usage("samples", "must be at least 1"));
        }
        let bound = parse_param(params, "bound", DEFAULT_BOUND)?;
        if bound == 0 {
            return Err(usage("bound", "must be at least 1"));
        }
        let op = match id {
            IdentityId::Eulerian(_) => {
                crate::operator::check_q(&q).map_err(|e| usage("q", e))?;
                None
            }
            _ => Some(
                OperatorSpec::new(kind, kind.needs_q().then(|| q.clone()))
                    .map_err(|e| usage("q", e))?,
            ),
        };
        let series = |key: &str| -> Result<Option<TruncatedSeries>> {
            params
                .get(key)
                .map(|text| TruncatedSeries::parse(text, ring, order).map_err(|e| usage(key, e)))
                .transpose()
        };
        let (default_n, default_k) = match id {
            IdentityId::LemmaIterB => (1..=6, 0..=6),
            _ => (1..=6, 0..=8),
        };
        let range = |key: &str, default: RangeInclusive<usize>| -> Result<RangeInclusive<usize>> {
            params
                .get(key)
                .map_or(Ok(default), |t| parse_range(t).map_err(|e| usage(key, e)))
        };
        let side = match params.get("side").map(String::as_str) {
            None | Some("both") => SideChoice::Both,
            Some("left") => SideChoice::Left,
            Some("right") => SideChoice::Right,
            Some(other) => {
                return Err(usage(
                    "side",
                    format!("expected left, right or both, got '{other}'"),
                ))
            }
        };
        let pair_input = matches!(
            id,
            IdentityId::RbAxiom
                | IdentityId::GenSpitzerComm
                | IdentityId::GenSpitzerNoncomm
                | IdentityId::GenSpitzerNoncommRightPrinted
                | IdentityId::GenSpitzerWeight0
        );
        let (a0, a1) = (series("a0")?, series("a1")?);
        if pair_input && a0.is_some() != a1.is_some() {
            return Err(Error::Usage(format!(
                "{id} takes both a0 and a1, or neither"
            )));
        }
        if !pair_input && a0.is_some() {
            return Err(usage(
                "a0",
                format!("{id} takes a single input; pass it as a1"),
            ));
        }
        let mut settings = Settings {
            id,
            op,
            q,
            ring,
            order,
            seed,
            samples,
            bound,
            a0,
            a1,
            n: range("n", default_n)?,
            k: range("k", default_k)?,
            side,
            echo: Params::new(),
        };
        settings.echo = settings.echo_params(params);
        Ok(settings)
    }

    fn echo_params(&self, given: &Params) -> Params {
        let mut out = Params::new();
        for &key in self.id.relevant_params() {
            let value = match key {
                "operator" => self.op.as_ref().map(|op| op.kind().to_string()),
                "q" => match &self.op {
                    Some(op) => op.q().map(Rational::to_string),
                    None => Some(self.q.to_string()),
                },
                "order" => Some(self.order.to_string()),
                "dim" => Some(self.ring.dim().to_string()),
                "n" => Some(range_text(&self.n)),
                "k" => Some(range_text(&self.k)),
                "side" => Some(
                    match self.side {
                        SideChoice::Left => "left",
                        SideChoice::Right => "right",
                        SideChoice::Both => "both",
                    }
                    .to_string(),
                ),
                _ if self.a0.is_some() || self.a1.is_some() => None,
                "seed" => Some(self.seed.to_string()),
                "samples" => Some(self.samples.to_string()),
                "bound" => Some(self.bound.to_string()),
                _ => None,
            };
            if let Some(v) = value {
                out.insert(key.to_string(), v);
            }
        }
        for key in ["a0", "a1"] {
            if let Some(v) = given.get(key) {
                out.insert(key.to_string(), v.clone());
            }
        }
        out
    }

    fn op(&self) -> &OperatorSpec {
        self.op
            .as_ref()
            .expect("non-eulerian identity carries an operator")
    }

    /// Explicit `a1` when given, otherwise `samples` seeded random series.
    fn single_inputs(&self, min_valuation: usize) -> Vec<TruncatedSeries> {
        if let Some(a1) = &self.a1 {
            return vec![a1.clone()];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.samples)
            .map(|_| {
                TruncatedSeries::random(self.ring, self.order, min_valuation, self.bound, &mut rng)
            })
            .collect()
    }

    /// Explicit `(a0, a1)` when both are given, otherwise random pairs.
    fn pair_inputs(&self, min_valuation: usize) -> Result<Vec<(TruncatedSeries, TruncatedSeries)>> {
        if let (Some(a0), Some(a1)) = (&self.a0, &self.a1) {
            return Ok(vec![(a0.clone(), a1.clone())]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok((0..self.samples)
            .map(|_| {
                let a0 = TruncatedSeries::random(
                    self.ring,
                    self.order,
                    min_valuation,
                    self.bound,
                    &mut rng,
                );
                let a1 = TruncatedSeries::random(
                    self.ring,
                    self.order,
                    min_valuation,
                    self.bound,
                    &mut rng,
                );
                (a0, a1)
            })
            .collect())
    }

    fn verdict(&self) -> Verdict {
        let id = self.id;
        if let IdentityId::Eulerian(v) = id {
            return v.check(&self.q, self.order);
        }
        let op = self.op();
        let dv = domain_valuation(op);
        match id {
            IdentityId::RbAxiom if self.a0.is_none() => check_rb_axiom(
                op,
                self.ring,
                self.samples,
                self.order,
                self.seed,
                self.bound,
            ),
            IdentityId::RbAxiom => first_of(
                self.pair_inputs(dv)?
                    .iter()
                    .map(|(x, y)| check_rb_axiom_pair(op, x, y)),
            ),
            IdentityId::Kingman => {
                let inputs = self.single_inputs(dv);
                first_of(
                    self.n
                        .clone()
                        .flat_map(|n| inputs.iter().map(move |u| check_kingman(op, u, n))),
                )
            }
            IdentityId::LemmaIterA | IdentityId::LemmaIterB => {
                let item = if id == IdentityId::LemmaIterA {
                    LemmaItem::A
                } else {
                    LemmaItem::B
                };
                let inputs = self.single_inputs(dv);
                first_of(self.k.clone().flat_map(|k| {
                    inputs
                        .iter()
                        .map(move |a| check_lemma_iteration(item, op, a, k))
                }))
            }
            IdentityId::Spitzer => {
                first_of(self.single_inputs(1).iter().map(|a| check_spitzer(op, a)))
            }
            IdentityId::GenSpitzerComm => {
                require_commutative_ring(self.ring)?;
                first_of(self.pair_inputs(1)?.into_iter().map(|(a0, a1)| {
                    check_generalized_spitzer(&EquationSpec::left(op.clone(), a0, a1)?)
                }))
            }
            IdentityId::GenSpitzerNoncomm => {
                require_nonzero_weight(op)?;
                let pairs = self.pair_inputs(1)?;
                first_of(pairs.into_iter().flat_map(|(a0, a1)| {
                    self.side.sides().iter().map(move |side| {
                        let eq = match side {
                            Side::Left => EquationSpec::left(op.clone(), a0.clone(), a1.clone())?,
                            Side::Right => EquationSpec::right(op.clone(), a0.clone(), a1.clone())?,
                        };
                        check_generalized_spitzer(&eq)
                    })
                }))
            }
            IdentityId::GenSpitzerNoncommRightPrinted => {
                require_nonzero_weight(op)?;
                first_of(
                    self.pair_inputs(1)?
                        .iter()
                        .map(|(a0, a1)| check_right_as_printed(op, a0, a1)),
                )
            }
            IdentityId::GenSpitzerWeight0 => {
                if !op.weight().is_zero() {
                    return Err(Error::Domain(format!(
                        "{op} has nonzero weight; this identity needs weight 0"
                    )));
                }
                first_of(self.pair_inputs(1)?.into_iter().map(|(a0, a1)| {
                    check_generalized_spitzer(&EquationSpec::left(op.clone(), a0, a1)?)
                }))
            }
            IdentityId::BchChlFactorization => first_of(
                self.single_inputs(1)
                    .iter()
                    .map(|a| check_bch_chl_factorization(op, a)),
            ),
            IdentityId::SpecialEquality => first_of(
                self.single_inputs(1)
                    .iter()
                    .map(|a1| check_special_equality(op, a1)),
            ),
            IdentityId::Eulerian(_) => unreachable!(),
        }
    }
}

fn require_commutative_ring(ring: RingDescriptor) -> Result<()> {
    if ring.is_commutative() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "this identity is stated over a commutative ring, not {ring}"
        )))
    }
}

/// Runs one identity check from text parameters.
///
/// Unknown ids and malformed parameters are usage errors; anything that goes
/// wrong inside the computation becomes a `domain-error` report.
pub fn run_check(id: &str, params: &Params) -> Result<CheckReport> {
    let id: IdentityId = id.parse()?;
    let settings = Settings::resolve(id, params)?;
    Ok(CheckReport::run(id.id(), settings.echo.clone(), || {
        settings.verdict()
    }))
}
