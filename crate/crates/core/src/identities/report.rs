use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::RingElement;
use crate::series::TruncatedSeries;

/// Parameter name → text value, ordered for stable output.
pub type Params = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    DomainError,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::DomainError => "domain-error",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(CheckStatus::Pass),
            "fail" => Ok(CheckStatus::Fail),
            "domain-error" => Ok(CheckStatus::DomainError),
            other => Err(Error::Parse(format!(
                "unknown status '{other}' (expected pass, fail or domain-error)"
            ))),
        }
    }
}

/// Lowest power at which the two sides of an identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub power: usize,
    pub lhs: RingElement,
    pub rhs: RingElement,
}

impl Mismatch {
    pub fn between(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Option<Mismatch> {
        lhs.first_difference(rhs)
            .map(|(power, lhs, rhs)| Mismatch { power, lhs, rhs })
    }
}

/// `Ok(None)` when the identity holds, `Ok(Some(_))` at the first difference.
pub type Verdict = Result<Option<Mismatch>>;

/// Compares two sides; a ring or cap mismatch is an error rather than a failure.
pub fn compare(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Verdict {
    lhs.check_compatible(rhs)?;
    Ok(Mismatch::between(lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub identity_id: String,
    pub params: Params,
    pub status: CheckStatus,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed: Duration,
    /// Error text for domain-error reports; not part of the JSON form.
    pub detail: Option<String>,
}

impl CheckReport {
    /// Times `check` and folds its verdict into a report.
    pub fn run(identity_id: &str, params: Params, check: impl FnOnce() -> Verdict) -> CheckReport {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let (status, first_mismatch, detail) = match verdict {
            Ok(None) => (CheckStatus::Pass, None, None),
            Ok(Some(m)) => (CheckStatus::Fail, Some(m), None),
            Err(e) => (CheckStatus::DomainError, None, Some(e.to_string())),
        };
        CheckReport {
            identity_id: identity_id.to_string(),
            params,
            status,
            first_mismatch,
            elapsed,
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CheckReport", 5)?;
        st.serialize_field("identity_id", &self.identity_id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("first_mismatch", &self.first_mismatch)?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_secs_f64() * 1000.0))?;
        st.end()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{} [{}] {}",
            self.identity_id,
            params.join(", "),
            self.status.as_str().to_uppercase()
        )?;
        if let Some(m) = &self.first_mismatch {
            write!(
                f,
                " (first mismatch at t^{}: lhs={}, rhs={})",
                m.power, m.lhs, m.rhs
            )?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}
