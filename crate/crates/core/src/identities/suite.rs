use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::report::{CheckReport, CheckStatus, Params};
use super::{run_check, IdentityId};

const DEFAULT_MANIFEST: &str = include_str!("../../data/default_manifest.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub identity_id: String,
    #[serde(default)]
    pub params: Params,
    pub expected_status: CheckStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SuiteManifest {
    pub entries: Vec<ManifestEntry>,
}

impl SuiteManifest {
    /// The manifest shipped with the crate: every identity id, with the
    /// printed q-series statements as expected failures.
    pub fn default_manifest() -> SuiteManifest {
        SuiteManifest::from_json(DEFAULT_MANIFEST).expect("bundled manifest is valid")
    }

    /// Parses a JSON array of entries and checks that every id is known.
    pub fn from_json(json: &str) -> Result<SuiteManifest> {
        let manifest: SuiteManifest =
            serde_json::from_str(json).map_err(|e| Error::Config(format!("manifest: {e}")))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        for entry in &self.entries {
            entry.identity_id.parse::<IdentityId>()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub expected: Vec<CheckStatus>,
}

impl SuiteOutcome {
    /// Every report has its expected status.
    pub fn success(&self) -> bool {
        self.reports
            .iter()
            .zip(&self.expected)
            .all(|(r, e)| r.status == *e)
    }

    /// Reports whose status differs from the manifest's expectation.
    pub fn unexpected(&self) -> impl Iterator<Item = (&CheckReport, CheckStatus)> {
        self.reports
            .iter()
            .zip(&self.expected)
            .filter(|(r, e)| r.status != **e)
            .map(|(r, e)| (r, *e))
    }
}

/// Runs every entry in manifest order. Unknown ids are rejected before any
/// check runs.
pub fn run_suite(manifest: &SuiteManifest) -> Result<SuiteOutcome> {
    manifest.validate()?;
    let mut reports = Vec::with_capacity(manifest.entries.len());
    for entry in &manifest.entries {
        reports.push(run_check(&entry.identity_id, &entry.params)?);
    }
    Ok(SuiteOutcome {
        reports,
        expected: manifest.entries.iter().map(|e| e.expected_status).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &str, params: &[(&str, &str)], expected: CheckStatus) -> ManifestEntry {
        ManifestEntry {
            identity_id: id.into(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            expected_status: expected,
        }
    }

    #[test]
    fn empty_manifest() {
        let out = run_suite(&SuiteManifest::default()).unwrap();
        assert!(out.reports.is_empty());
        assert!(out.success());
    }

    #[test]
    fn expected_pass_on_printed_identity_fails_overall() {
        let m = SuiteManifest {
            entries: vec![entry(
                "eulerian-prop-one-printed",
                &[("q", "1/2"), ("order", "4")],
                CheckStatus::Pass,
            )],
        };
        let out = run_suite(&m).unwrap();
        assert!(!out.success());
        assert_eq!(out.unexpected().count(), 1);
    }

    #[test]
    fn unknown_id_is_usage_error() {
        let m = SuiteManifest {
            entries: vec![entry("no-such-identity", &[], CheckStatus::Pass)],
        };
        assert!(matches!(run_suite(&m), Err(Error::Usage(_))));
    }

    #[test]
    fn bundled_manifest_covers_every_id() {
        let m = SuiteManifest::default_manifest();
        for id in IdentityId::all() {
            assert!(m.entries.iter().any(|e| e.identity_id == id.id()), "{id}");
        }
    }

    #[test]
    fn json_round_trip() {
        let m = SuiteManifest {
            entries: vec![entry(
                "spitzer",
                &[("order", "4")],
                CheckStatus::DomainError,
            )],
        };
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"expected_status\":\"domain-error\""));
        assert_eq!(SuiteManifest::from_json(&json).unwrap(), m);
    }
}
