//! JSON curve description files.
//!
//! ```json
//! { "type": "kummer", "p": 5, "n": 2,
//!   "branch": [{ "rho": 1, "l": 1 }, { "rho": 2, "l": 1 }, { "rho": 3, "l": 1 }, { "rho": 4, "l": 1 }] }
//! { "type": "artin-schreier", "p": 3, "f": [1, 0, 1],
//!   "branch": [{ "rho": 1, "l": 1 }, { "rho": 2, "l": 1 }] }
//! ```
//!
//! Extension fields take `"ext_modulus": [c0, c1, ..., 1]`; their elements
//! are written as coordinate lists `[a0, a1, ...]` in the basis `1, z, ...`,
//! and a bare integer denotes a prime-field constant.

use serde::{Deserialize, Serialize};

use crate::curve::{BranchPoint, Curve, Family};
use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::polyrat::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveType {
    Kummer,
    ArtinSchreier,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldValue {
    Int(i64),
    Coords(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub rho: FieldValue,
    pub l: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpecFile {
    #[serde(rename = "type")]
    pub kind: CurveType,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub branch: Vec<BranchSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<FieldValue>>,
}

fn decode(field: &Field, v: &FieldValue, at: &str) -> Result<Fq> {
    match v {
        FieldValue::Int(k) => Ok(field.from_i64(*k)),
        FieldValue::Coords(c) => field.from_coeffs(c).map_err(|e| Error::Parse(format!("{at}: {e}"))),
    }
}

fn encode(field: &Field, a: Fq) -> FieldValue {
    if field.is_prime_field() {
        FieldValue::Int(a.0 as i64)
    } else {
        FieldValue::Coords(field.coeffs(a).into_iter().map(|c| c as i64).collect())
    }
}

impl CurveSpecFile {
    pub fn parse(text: &str) -> Result<CurveSpecFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn field(&self) -> Result<Field> {
        let modulus = match &self.ext_modulus {
            None => None,
            Some(m) => {
                let p = self.p as i64;
                if p < 2 {
                    return Err(Error::Parse(format!("p = {} is not prime", self.p)));
                }
                Some(m.iter().map(|c| c.rem_euclid(p) as u64).collect())
            }
        };
        Field::new(self.p, modulus).map_err(|e| Error::Parse(format!("field: {e}")))
    }

    /// Decodes into an unvalidated curve; structural errors are reported
    /// with the offending path.
    pub fn to_curve(&self) -> Result<Curve> {
        let field = self.field()?;
        let mut branch = Vec::with_capacity(self.branch.len());
        for (i, b) in self.branch.iter().enumerate() {
            let rho = decode(&field, &b.rho, &format!("branch[{i}].rho"))?;
            branch.push(BranchPoint { rho, l: b.l });
        }
        match self.kind {
            CurveType::Kummer => {
                if self.f.is_some() {
                    return Err(Error::Parse("f: only allowed for artin-schreier curves".into()));
                }
                let n = self.n.ok_or_else(|| Error::Parse("n: required for kummer curves".into()))?;
                Ok(Curve::kummer(&field, n, branch))
            }
            CurveType::ArtinSchreier => {
                if self.n.is_some() {
                    return Err(Error::Parse("n: only allowed for kummer curves".into()));
                }
                let f = self.f.as_ref().ok_or_else(|| Error::Parse("f: required for artin-schreier curves".into()))?;
                let coeffs = f
                    .iter()
                    .enumerate()
                    .map(|(i, c)| decode(&field, c, &format!("f[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Curve::artin_schreier(&field, Poly::from_coeffs(&field, coeffs), branch))
            }
        }
    }

    pub fn from_curve(curve: &Curve) -> CurveSpecFile {
        let field = curve.field();
        let branch = curve.branch().iter().map(|b| BranchSpec { rho: encode(field, b.rho), l: b.l }).collect();
        let ext_modulus = field.modulus().map(|m| m.iter().map(|&c| c as i64).collect());
        let (kind, n, f) = match curve.family() {
            Family::Kummer { n } => (CurveType::Kummer, Some(*n), None),
            Family::ArtinSchreier { f } => {
                let coeffs = f.coeffs().iter().map(|&c| encode(field, c)).collect();
                (CurveType::ArtinSchreier, None, Some(coeffs))
            }
        };
        CurveSpecFile { kind, p: field.characteristic(), ext_modulus, n, branch, f }
    }
}

/// Parses a curve description and decodes it.
pub fn parse_curve(text: &str) -> Result<Curve> {
    CurveSpecFile::parse(text)?.to_curve()
}
