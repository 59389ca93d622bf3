//! Exact arithmetic for complete filtered Rota-Baxter algebras realised as
//! truncated power series over ℚ or `M_d(ℚ)`, with solvers for the linear
//! Rota-Baxter equations and an executable identity suite.

pub mod cli;
pub mod error;
pub mod identities;
pub mod operator;
pub mod rational;
pub mod ring;
pub mod series;
pub mod solvers;

pub use error::{Error, Result};
pub use identities::{
    run_check, run_suite, CheckReport, CheckStatus, IdentityId, Params, SuiteManifest,
};
pub use operator::{OperatorKind, OperatorSpec};
pub use rational::Rational;
pub use ring::{Matrix, RingDescriptor, RingElement, RingKind};
pub use series::TruncatedSeries;
pub use solvers::{EquationForm, EquationSpec, Side};
