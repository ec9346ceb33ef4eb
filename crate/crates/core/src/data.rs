//! Bundled reference data. Files are compiled in; `GQSCREEN_DATA_DIR`
//! points at a directory that replaces them file by file.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::action::{act, ActionSpec, OrbitalProfile};
use crate::perm::GroupSpec;
use crate::screen::ProfileData;

pub const DATA_DIR_VAR: &str = "GQSCREEN_DATA_DIR";

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../data/", $name)))),*]
    };
}

/// Every bundled file with its contents.
pub const FILES: &[(&str, &str)] = bundled![
    "sporadic_maximal_indices.tsv",
    "table4_groups.tsv",
    "expected_table5.tsv",
    "expected_smalldegree.tsv",
    "expected_screen.tsv",
    "candidates_smalldegree.tsv",
    "candidates_sporadic.tsv",
    "candidates_imprimitive.tsv",
    "profiles/asl32_a8.json",
    "profiles/m10_a10.json",
    "profiles/m11_a11.json",
    "profiles/m12_a12.json",
    "profiles/pgaml29_s10.json",
    "profiles/psl32_a7.json",
    "profiles/ru.json",
];

/// `sha256sum` output for the files above.
pub const SHA256SUMS: &str = include_str!("../data/SHA256SUMS");

#[derive(Debug, Error)]
pub enum DataError {
    #[error("unknown data file '{0}'")]
    Unknown(String),
    #[error("reading {path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
}

/// Where data files are read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    Bundled,
    /// Files present here win; missing ones fall back to the bundled copy.
    Dir(PathBuf),
}

impl DataSource {
    pub fn from_env() -> Self {
        match std::env::var_os(DATA_DIR_VAR) {
            Some(d) if !d.is_empty() => DataSource::Dir(d.into()),
            _ => DataSource::Bundled,
        }
    }

    pub fn read(&self, name: &str) -> Result<String, DataError> {
        let bundled = FILES.iter().find(|(n, _)| *n == name).map(|(_, c)| *c);
        if let DataSource::Dir(dir) = self {
            let path = dir.join(name);
            if path.exists() {
                return std::fs::read_to_string(&path).map_err(|err| DataError::Io { path, err });
            }
        }
        bundled.map(str::to_string).ok_or_else(|| DataError::Unknown(name.to_string()))
    }

    pub fn describe(&self) -> String {
        match self {
            DataSource::Bundled => "bundled".into(),
            DataSource::Dir(d) => format!("{} (bundled fallback)", d.display()),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// `(file, recorded, actual)` for each entry of the bundled checksum list.
pub fn checksum_report(src: &DataSource) -> Vec<(String, String, Result<String, String>)> {
    SHA256SUMS
        .lines()
        .filter_map(|l| l.split_once("  "))
        .map(|(sum, name)| {
            let actual = src.read(name).map(|c| sha256_hex(c.as_bytes())).map_err(|e| e.to_string());
            (name.to_string(), sum.to_string(), actual)
        })
        .collect()
}

/// Resolves a `profile_ref`: `-` is no profile, `action:<group>:<action>`
/// computes subdegrees, anything else names `profiles/<ref>.json`.
pub fn resolve_profile(src: &DataSource, reference: &str) -> Result<Option<ProfileData>, String> {
    if reference == "-" || reference.is_empty() {
        return Ok(None);
    }
    if let Some(rest) = reference.strip_prefix("action:") {
        let (group, action) = rest.split_once(':').ok_or_else(|| format!("bad action reference '{reference}'"))?;
        let group = GroupSpec::parse(group).and_then(|g| g.build()).map_err(|e| e.to_string())?;
        let spec = ActionSpec::parse(action, group.degree()).map_err(|e| e.to_string())?;
        let action = act(spec, &group).map_err(|e| e.to_string())?;
        let profile = action.subdegrees().map_err(|e| e.to_string())?;
        return Ok(Some(ProfileData::Computed { profile, action: Box::new(action) }));
    }
    let name = format!("profiles/{reference}.json");
    let body = src.read(&name).map_err(|e| e.to_string())?;
    let profile: OrbitalProfile = serde_json::from_str(&body).map_err(|e| format!("{name}: {e}"))?;
    Ok(Some(ProfileData::Transcribed(profile)))
}

/// Loads a profile file from an arbitrary path.
pub fn load_profile(path: &Path) -> Result<OrbitalProfile, String> {
    let body = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&body).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_checksums_match() {
        let report = checksum_report(&DataSource::Bundled);
        assert_eq!(report.len(), FILES.len());
        for (name, want, got) in report {
            assert_eq!(got.unwrap(), want, "{name}");
        }
    }

    #[test]
    fn profiles_sum_to_degree() {
        for (name, _) in FILES.iter().filter(|(n, _)| n.starts_with("profiles/")) {
            let stem = name.trim_start_matches("profiles/").trim_end_matches(".json");
            let p = resolve_profile(&DataSource::Bundled, stem).unwrap().unwrap();
            assert!(p.profile().sums_to_degree(), "{name}");
        }
    }

    #[test]
    fn override_dir_falls_back() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("table4_groups.tsv"), "x").unwrap();
        let src = DataSource::Dir(dir.path().into());
        assert_eq!(src.read("table4_groups.tsv").unwrap(), "x");
        assert!(src.read("expected_table5.tsv").unwrap().starts_with("group"));
        assert!(src.read("nope").is_err());
    }
}
