//! The shard directory's manifest: the spec by value plus the stripe
//! geometry, so a directory of shards is self-describing.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::specfile::SpecFile;

/// File name of the manifest inside a shard directory.
pub const MANIFEST_NAME: &str = "manifest.json";

/// Everything needed to decode or repair a shard directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    /// Layout version, for forward compatibility.
    pub format_version: u32,
    /// The code spec, embedded by value.
    pub spec: SpecFile,
    /// SHA-256 of the embedded spec's canonical JSON, hex-encoded.
    pub spec_sha256: String,
    /// Stripes in each shard file.
    pub stripe_count: u64,
    /// Input length in bytes before padding.
    pub original_len: u64,
    /// Zero bytes appended to fill the last stripe.
    pub padding: u64,
}

/// Hex SHA-256 of a spec's canonical JSON rendering.
pub fn spec_digest(spec: &SpecFile) -> String {
    let mut hasher = Sha256::new();
    hasher.update(spec.to_json().as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

impl Manifest {
    /// Builds a manifest for `spec` with its digest filled in.
    pub fn new(spec: SpecFile, stripe_count: u64, original_len: u64, padding: u64) -> Self {
        let spec_sha256 = spec_digest(&spec);
        Manifest {
            format_version: 1,
            spec,
            spec_sha256,
            stripe_count,
            original_len,
            padding,
        }
    }

    /// Path of the manifest inside `dir`.
    pub fn path_in(dir: &Path) -> PathBuf {
        dir.join(MANIFEST_NAME)
    }

    /// Writes atomically (temp file + rename) into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        let path = Self::path_in(dir);
        let json =
            serde_json::to_string_pretty(self).expect("manifests always serialize");
        crate::stripe::write_atomic(&path, json.as_bytes())
    }

    /// Reads and integrity-checks the manifest in `dir`.
    pub fn read_from(dir: &Path) -> Result<Self, CliError> {
        let path = Self::path_in(dir);
        let json = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let manifest: Manifest = serde_json::from_str(&json)
            .map_err(|e| CliError::usage(format!("malformed manifest {path:?}: {e}")))?;
        let expect = spec_digest(&manifest.spec);
        if manifest.spec_sha256 != expect {
            return Err(CliError::verification(format!(
                "manifest spec digest mismatch: recorded {}, computed {expect}",
                manifest.spec_sha256
            )));
        }
        Ok(manifest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family_spec() -> SpecFile {
        SpecFile::from_json(r#"{"family": "A1", "s": 2}"#).unwrap()
    }

    #[test]
    fn manifests_round_trip_through_a_directory() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = Manifest::new(family_spec(), 3, 100, 8);
        manifest.write_to(dir.path()).unwrap();
        let back = Manifest::read_from(dir.path()).unwrap();
        assert_eq!(back, manifest);
    }

    #[test]
    fn digest_tampering_is_a_verification_failure() {
        let dir = tempfile::tempdir().unwrap();
        let mut manifest = Manifest::new(family_spec(), 3, 100, 8);
        manifest.spec_sha256 = format!("{:064}", 0);
        manifest.write_to(dir.path()).unwrap();
        let err = Manifest::read_from(dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn missing_manifest_is_an_io_failure() {
        let dir = tempfile::tempdir().unwrap();
        let err = Manifest::read_from(dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn digests_are_stable_per_spec_and_distinct_across_specs() {
        let a = spec_digest(&family_spec());
        assert_eq!(a, spec_digest(&family_spec()));
        assert_eq!(a.len(), 64);
        let b = spec_digest(&SpecFile::from_json(r#"{"family": "A1", "s": 3}"#).unwrap());
        assert_ne!(a, b);
    }
}
