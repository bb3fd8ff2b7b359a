//! One output line per evaluated tuple or identity instance.

use apery_core::congruences::{CheckId, CongruenceError, CongruenceReport, Tuple};
use apery_core::identities::IdentityVerdict;
use apery_core::primes::PrimeRep;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Flag set on a record whose exact and fast evaluations disagree.
pub const PATH_DIVERGENCE: &str = "PATH_DIVERGENCE";

/// Field names and order are fixed; big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub params: Map<String, Value>,
    pub modulus: Option<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    /// `None` when the tuple was skipped.
    pub pass: Option<bool>,
    pub path: String,
    pub extra: Extra,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Extra {
    /// `"x,y"` with `p = x^2 + 2y^2`, or `"none"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub residues: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Integers become JSON numbers, anything else stays a string.
fn param_map(params: &[(&str, String)]) -> Map<String, Value> {
    params
        .iter()
        .map(|(k, v)| {
            let value = v.parse::<i64>().map_or_else(|_| Value::String(v.clone()), Value::from);
            (k.to_string(), value)
        })
        .collect()
}

pub fn rep_string(rep: &PrimeRep) -> String {
    match rep.xy() {
        Some((x, y)) => format!("{x},{y}"),
        None => "none".to_string(),
    }
}

impl Record {
    pub fn from_report(r: &CongruenceReport, path: &str) -> Self {
        Self {
            check: r.check.as_str().to_string(),
            params: param_map(&r.params()),
            modulus: Some(r.modulus.to_string()),
            lhs: Some(r.lhs.to_string()),
            rhs: Some(r.rhs.to_string()),
            pass: Some(r.pass),
            path: path.to_string(),
            extra: Extra {
                rep: r.rep.as_ref().map(rep_string),
                flags: r.flags.clone(),
                residues: r
                    .extra
                    .iter()
                    .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
                    .collect(),
                reason: None,
            },
        }
    }

    /// A tuple that could not be evaluated. A failed divisibility
    /// precondition counts as a failure; anything else is a skip.
    pub fn from_error(check: CheckId, t: &Tuple, e: &CongruenceError, path: &str) -> Self {
        let (pass, modulus, lhs) = match e {
            CongruenceError::DivisibilityFailure {
                residue, modulus, ..
            } => (Some(false), Some(modulus.to_string()), Some(residue.to_string())),
            _ => (None, None, None),
        };
        Self {
            check: check.as_str().to_string(),
            params: param_map(&t.params(check)),
            modulus,
            lhs,
            rhs: None,
            pass,
            path: path.to_string(),
            extra: Extra {
                flags: vec![e.tag().to_string()],
                reason: Some(e.to_string()),
                ..Extra::default()
            },
        }
    }

    pub fn from_verdict(v: &IdentityVerdict) -> Self {
        Self {
            check: v.id.to_string(),
            params: param_map(&v.params),
            modulus: None,
            lhs: Some(v.lhs.to_string()),
            rhs: Some(v.rhs.to_string()),
            pass: Some(v.pass),
            path: "exact".to_string(),
            extra: Extra::default(),
        }
    }

    /// A record built from parts, for identity checks without a verdict.
    pub fn identity(
        check: &str,
        params: &[(&str, String)],
        lhs: Option<String>,
        rhs: Option<String>,
        pass: bool,
        flags: Vec<String>,
        reason: Option<String>,
    ) -> Self {
        Self {
            check: check.to_string(),
            params: param_map(params),
            modulus: None,
            lhs,
            rhs,
            pass: Some(pass),
            path: "exact".to_string(),
            extra: Extra {
                flags,
                reason,
                ..Extra::default()
            },
        }
    }

    pub fn to_json_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("records serialize");
        s.push('\n');
        s
    }

    pub const CSV_HEADER: [&'static str; 8] =
        ["check", "params", "modulus", "lhs", "rhs", "pass", "path", "extra"];

    /// The CSV form; nested maps are compact JSON.
    pub fn csv_row(&self) -> [String; 8] {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        [
            self.check.clone(),
            Value::Object(self.params.clone()).to_string(),
            opt(&self.modulus),
            opt(&self.lhs),
            opt(&self.rhs),
            self.pass.map_or_else(String::new, |p| p.to_string()),
            self.path.clone(),
            serde_json::to_string(&self.extra).expect("records serialize"),
        ]
    }

    pub fn from_csv_row(row: &[String]) -> Option<Self> {
        let opt = |s: &String| (!s.is_empty()).then(|| s.clone());
        let [check, params, modulus, lhs, rhs, pass, path, extra] = row else {
            return None;
        };
        Some(Self {
            check: check.clone(),
            params: serde_json::from_str(params).ok()?,
            modulus: opt(modulus),
            lhs: opt(lhs),
            rhs: opt(rhs),
            pass: match pass.as_str() {
                "" => None,
                p => Some(p.parse().ok()?),
            },
            path: path.clone(),
            extra: serde_json::from_str(extra).ok()?,
        })
    }
}
