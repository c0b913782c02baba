//! Certificate files: a serialized arc with optional, machine-checkable claims.
//!
//! ```json
//! {
//!   "n": 6,
//!   "points": [
//!     [0, 0],
//!     [0, 1]
//!   ],
//!   "claims": {
//!     "arc": true
//!   }
//! }
//! ```
//!
//! Points are written in lexicographic order; the writer is byte-stable.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arc::ArcSet;
use crate::bounds::KnownTau;
use crate::error::{Error, Result};
use crate::modular::Modulus;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claims {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximum: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub n: u32,
    pub points: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claims: Option<Claims>,
}

/// Outcome of checking a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verification {
    pub arc: bool,
    /// `None` when the set is not an arc.
    pub complete: Option<bool>,
    /// `None` when `tau(n)` is not known, so maximality cannot be checked.
    pub maximum: Option<bool>,
    /// Every claim present in the file agrees with the checks above.
    pub claims_hold: bool,
}

impl Certificate {
    pub fn from_arc(arc: &ArcSet, claims: Option<Claims>) -> Self {
        Certificate { n: arc.modulus().get(), points: arc.points().iter().map(|p| [p.x, p.y]).collect(), claims }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cert: Certificate = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        cert.points.sort_unstable();
        Ok(cert)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_arc(&self) -> Result<ArcSet> {
        let n = Modulus::new(self.n as i64).map_err(|e| Error::Malformed(e.to_string()))?;
        if let Some([x, y]) = self.points.iter().find(|[x, y]| *x >= self.n || *y >= self.n) {
            return Err(Error::Malformed(format!("point ({x},{y}) outside Z_{}", self.n)));
        }
        ArcSet::new(n, self.points.iter().map(|&[x, y]| n.point(x as i64, y as i64)))
            .map_err(|e| Error::Malformed(e.to_string()))
    }

    /// Pretty JSON with one point per line, sorted lexicographically.
    pub fn to_json(&self) -> String {
        let mut points = self.points.clone();
        points.sort_unstable();
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"n\": {},", self.n);
        if points.is_empty() {
            out.push_str("  \"points\": []");
        } else {
            out.push_str("  \"points\": [\n");
            for (i, [x, y]) in points.iter().enumerate() {
                let sep = if i + 1 < points.len() { "," } else { "" };
                let _ = writeln!(out, "    [{x}, {y}]{sep}");
            }
            out.push_str("  ]");
        }
        if let Some(c) = &self.claims {
            let fields: Vec<String> = [("arc", c.arc), ("complete", c.complete), ("maximum", c.maximum)]
                .into_iter()
                .filter_map(|(k, v)| v.map(|v| format!("    \"{k}\": {v}")))
                .collect();
            if fields.is_empty() {
                out.push_str(",\n  \"claims\": {}");
            } else {
                out.push_str(",\n  \"claims\": {\n");
                out.push_str(&fields.join(",\n"));
                out.push_str("\n  }");
            }
        }
        out.push_str("\n}\n");
        out
    }

    /// Checks the point set and compares with the stated claims. Maximality is
    /// checked against the exact values in `known`; it fails when `tau(n)` is
    /// not among them.
    pub fn verify(&self, known: &KnownTau) -> Result<Verification> {
        let arc = self.to_arc()?;
        let is_arc = arc.is_arc();
        let complete = if is_arc { Some(arc.is_complete()?) } else { None };
        let maximum = known.get(self.n).map(|tau| is_arc && arc.len() == tau);
        let claims = self.claims.unwrap_or_default();
        let agrees = |claim: Option<bool>, actual: Option<bool>| match claim {
            None => true,
            Some(c) => actual == Some(c),
        };
        // `maximum: false` only withholds the claim; a budget-cut search may
        // still have found a maximum arc.
        let claims_hold = agrees(claims.arc, Some(is_arc))
            && agrees(claims.complete, Some(complete.unwrap_or(false)))
            && (claims.maximum != Some(true) || maximum == Some(true));
        Ok(Verification { arc: is_arc, complete, maximum, claims_hold })
    }
}
