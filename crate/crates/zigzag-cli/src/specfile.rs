//! The JSON code-spec file: either an explicit parameter listing or a
//! family reference.
//!
//! Explicit form (group elements and ordering as bit strings, most
//! significant coordinate first):
//!
//! ```json
//! {
//!   "n": 7, "k": 4, "m": 2,
//!   "field": { "w": 3, "modulus_hex": "0xb" },
//!   "labels": [["00","00","00","00"],
//!              ["11","01","00","00"],
//!              ["00","00","11","01"]],
//!   "alphas": [0, 1, 2],
//!   "betas": [4, 3, 6, 7],
//!   "ordering": ["00", "01", "10", "11"]
//! }
//! ```
//!
//! Family form:
//!
//! ```json
//! { "family": "A2", "s": 2, "drop": 0 }
//! ```
//!
//! Family specs resolve through the construction catalog and carry the
//! per-node repair assignments with them; explicit specs repair via the
//! generic planner scan.

use serde::{Deserialize, Serialize};
use zigzag_core::code::ZigzagCodeSpec;
use zigzag_core::families::{build_family, ConstructedCode, FamilyId, FamilyParams};
use zigzag_core::gf2w::FieldSpec;
use zigzag_core::group::{GroupElem, RowOrder};

use crate::error::CliError;

/// Field parameters as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    /// Extension degree: the field is GF(2^w).
    pub w: u32,
    /// Irreducible modulus polynomial, hex-encoded with its degree-w bit.
    pub modulus_hex: String,
}

impl FieldFile {
    /// Renders a field's parameters.
    pub fn from_field(field: &FieldSpec) -> Self {
        FieldFile { w: field.w(), modulus_hex: format!("{:#x}", field.modulus()) }
    }

    /// Parses and validates into field tables.
    pub fn to_field(&self) -> Result<FieldSpec, CliError> {
        let digits = self.modulus_hex.trim_start_matches("0x").trim_start_matches("0X");
        let modulus = u32::from_str_radix(digits, 16)
            .map_err(|e| CliError::usage(format!("bad modulus {:?}: {e}", self.modulus_hex)))?;
        FieldSpec::new(self.w, modulus).map_err(CliError::usage)
    }
}

/// The explicit spec form: every parameter written out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpecFile {
    /// Total nodes (validated against the label grid).
    pub n: usize,
    /// Systematic nodes (validated against the label grid).
    pub k: usize,
    /// Row-group dimension; there are 2^m rows.
    pub m: u32,
    /// Field parameters.
    pub field: FieldFile,
    /// One label row per parity: k group elements as bit strings.
    pub labels: Vec<Vec<String>>,
    /// Cauchy parameters of the parity nodes.
    pub alphas: Vec<u16>,
    /// Cauchy parameters of the systematic nodes.
    pub betas: Vec<u16>,
    /// Physical row order: 2^m bit strings.
    pub ordering: Vec<String>,
}

fn parse_group_elem(m: u32, s: &str) -> Result<GroupElem, CliError> {
    if s.len() != m as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(CliError::usage(format!(
            "group element {s:?} is not an m={m} bit string"
        )));
    }
    let bits = u16::from_str_radix(s, 2).map_err(CliError::usage)?;
    GroupElem::new(m, bits).map_err(CliError::usage)
}

impl ExplicitSpecFile {
    /// Renders a built spec back into the file form.
    pub fn from_spec(spec: &ZigzagCodeSpec) -> Self {
        ExplicitSpecFile {
            n: spec.n(),
            k: spec.k(),
            m: spec.m(),
            field: FieldFile::from_field(spec.field()),
            labels: spec
                .labels()
                .iter()
                .map(|row| row.iter().map(|g| g.to_string()).collect())
                .collect(),
            alphas: spec.alphas().to_vec(),
            betas: spec.betas().to_vec(),
            ordering: spec.ordering().iter().map(|g| g.to_string()).collect(),
        }
    }

    /// Parses and validates into a code spec.
    pub fn to_spec(&self) -> Result<ZigzagCodeSpec, CliError> {
        let field = self.field.to_field()?;
        let labels: Vec<Vec<GroupElem>> = self
            .labels
            .iter()
            .map(|row| row.iter().map(|s| parse_group_elem(self.m, s)).collect())
            .collect::<Result<_, _>>()?;
        let order_elems: Vec<u16> = self
            .ordering
            .iter()
            .map(|s| parse_group_elem(self.m, s).map(|g| g.bits()))
            .collect::<Result<_, _>>()?;
        let ordering = RowOrder::new(self.m, order_elems).map_err(CliError::usage)?;
        let spec = ZigzagCodeSpec::new(
            field,
            self.m,
            labels,
            self.alphas.clone(),
            self.betas.clone(),
            ordering,
        )
        .map_err(CliError::usage)?;
        if spec.n() != self.n || spec.k() != self.k {
            return Err(CliError::usage(format!(
                "declared (n, k) = ({}, {}) but the label grid implies ({}, {})",
                self.n,
                self.k,
                spec.n(),
                spec.k()
            )));
        }
        Ok(spec)
    }
}

fn default_s() -> usize {
    1
}

/// The family spec form: a catalog reference with options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpecFile {
    /// Family name: A1, A2, A3, B1, or B2.
    pub family: String,
    /// Repetition count (defaults to 1).
    #[serde(default = "default_s")]
    pub s: usize,
    /// Trailing systematic columns to drop (defaults to 0).
    #[serde(default)]
    pub drop: usize,
    /// Group dimension override (A1 only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Field override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldFile>,
}

impl FamilySpecFile {
    /// Resolves through the construction catalog.
    pub fn to_code(&self) -> Result<ConstructedCode, CliError> {
        let family = FamilyId::parse(&self.family)
            .ok_or_else(|| CliError::usage(format!("unknown family {:?}", self.family)))?;
        let mut params = FamilyParams::new(family, self.s);
        params.drop = self.drop;
        params.m = self.m;
        params.field = self.field.as_ref().map(FieldFile::to_field).transpose()?;
        build_family(&params).map_err(CliError::usage)
    }
}

/// Either spec form; the discriminating key is `family`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    /// A catalog reference.
    Family(FamilySpecFile),
    /// Every parameter written out.
    Explicit(ExplicitSpecFile),
}

/// A spec file resolved into usable form. Family specs keep their
/// construction (with its baked per-node repair assignments).
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    /// The on-disk form, for embedding into manifests.
    pub file: SpecFile,
    /// The validated code spec.
    pub spec: ZigzagCodeSpec,
    /// The catalog construction, when the file named a family.
    pub construction: Option<ConstructedCode>,
}

impl SpecFile {
    /// Parses a spec file's JSON content.
    pub fn from_json(json: &str) -> Result<Self, CliError> {
        serde_json::from_str(json)
            .map_err(|e| CliError::usage(format!("malformed spec file: {e}")))
    }

    /// Canonical JSON rendering.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files always serialize")
    }

    /// Validates and builds the code.
    pub fn resolve(&self) -> Result<LoadedSpec, CliError> {
        match self {
            SpecFile::Family(f) => {
                let code = f.to_code()?;
                Ok(LoadedSpec {
                    file: self.clone(),
                    spec: code.spec().clone(),
                    construction: Some(code),
                })
            }
            SpecFile::Explicit(e) => Ok(LoadedSpec {
                file: self.clone(),
                spec: e.to_spec()?,
                construction: None,
            }),
        }
    }
}

/// Parses a `FAMILY[:s[:drop]]` token, e.g. `A3:5:3`.
pub fn parse_family_token(token: &str) -> Result<FamilySpecFile, CliError> {
    let mut parts = token.split(':');
    let family = parts.next().unwrap_or_default().to_string();
    let s = match parts.next() {
        Some(v) => v
            .parse::<usize>()
            .map_err(|e| CliError::usage(format!("bad s in {token:?}: {e}")))?,
        None => 1,
    };
    let drop = match parts.next() {
        Some(v) => v
            .parse::<usize>()
            .map_err(|e| CliError::usage(format!("bad drop in {token:?}: {e}")))?,
        None => 0,
    };
    if parts.next().is_some() {
        return Err(CliError::usage(format!(
            "family token {token:?} has too many fields (want FAMILY[:s[:drop]])"
        )));
    }
    Ok(FamilySpecFile { family, s, drop, m: None, field: None })
}
