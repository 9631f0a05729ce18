//! The JSON algebra file: 1-based indices, exact `p/q` coefficients.

use nilext::scalar;
use nilext::LieAlgebra;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<usize>>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub coeff: String,
}

/// Where a file went wrong: a JSON syntax position or a path to the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FileError {
    Syntax { line: usize, column: usize, message: String },
    Field { path: String, message: String },
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Syntax { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            FileError::Field { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl AlgebraFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let brackets = g
            .brackets()
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                i: i + 1,
                j: j + 1,
                terms: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num::Zero::is_zero(*c))
                    .map(|(k, c)| Term { k: k + 1, coeff: scalar::format(c) })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            format_version: FORMAT_VERSION,
            dim: g.dim(),
            basis: g.names().to_vec(),
            weights: g.weights().map(|w| w.to_vec()),
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, FileError> {
        let field = |path: String, message: &str| FileError::Field { path, message: message.into() };
        if self.format_version != FORMAT_VERSION {
            return Err(field("format_version".into(), "unsupported version"));
        }
        let n = self.dim;
        if self.basis.len() != n {
            return Err(field("basis".into(), "length differs from dim"));
        }
        let mut seen = std::collections::HashSet::new();
        for (i, name) in self.basis.iter().enumerate() {
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') || !seen.insert(name) {
                return Err(field(format!("basis[{i}]"), "names must be distinct identifiers"));
            }
        }
        let mut g = LieAlgebra::abelian(n).with_names(self.basis.clone());
        let mut pairs = std::collections::HashSet::new();
        for (e, b) in self.brackets.iter().enumerate() {
            if !(1..=n).contains(&b.i) || !(1..=n).contains(&b.j) || b.i >= b.j {
                return Err(field(format!("brackets[{e}]"), "need 1 <= i < j <= dim"));
            }
            if !pairs.insert((b.i, b.j)) {
                return Err(field(format!("brackets[{e}]"), "duplicate pair"));
            }
            let mut v = vec![scalar::zero(); n];
            for (t, term) in b.terms.iter().enumerate() {
                if !(1..=n).contains(&term.k) {
                    return Err(field(format!("brackets[{e}].terms[{t}].k"), "index out of range"));
                }
                let c = scalar::parse(&term.coeff)
                    .ok_or_else(|| field(format!("brackets[{e}].terms[{t}].coeff"), "not a rational p/q"))?;
                v[term.k - 1] += c;
            }
            g.set_bracket(b.i - 1, b.j - 1, v);
        }
        if let Some(w) = &self.weights {
            if w.len() != n || w.contains(&0) {
                return Err(field("weights".into(), "need dim positive weights"));
            }
            g = g.with_weights(w.clone());
        }
        Ok(g)
    }

    /// Accepts a bare algebra file or a report that carries one under `results.algebra`.
    pub fn parse(text: &str) -> Result<LieAlgebra, FileError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| FileError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
        let inner = match value.pointer("/results/algebra") {
            Some(a) => a.clone(),
            None => value,
        };
        let file: AlgebraFile =
            serde_json::from_value(inner).map_err(|e| FileError::Field { path: "$".into(), message: e.to_string() })?;
        file.to_algebra()
    }
}
