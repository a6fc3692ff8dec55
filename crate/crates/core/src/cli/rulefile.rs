//! JSON rule files.
//!
//! ```json
//! {"n": 2, "field": "Q", "vars": ["x", "y"], "params": {"q": "1/2"},
//!  "A": [[["q*x", "0"], ["0", "x"]], [["y", "0"], ["0", "y"]]]}
//! ```
//!
//! `A[j][k][i]` is the entry of the image of generator `j` in row `k` and
//! column `i`, so each grid reads like the printed matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::expr::{is_identifier, parse_expr, ParseError};
use crate::commrule::CommRule;
use crate::freealg::{parse_rational, Field, MatrixPoly, NCPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Text(String),
    Int(i64),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Text(s) => f.write_str(s),
            ParamValue::Int(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub n: usize,
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<String>>>,
}

/// A rule-file problem, located by JSON position or by entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFileError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for RuleFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for RuleFileError {}

fn err(location: impl Into<String>, message: impl Into<String>) -> RuleFileError {
    RuleFileError { location: location.into(), message: message.into() }
}

/// A parsed rule together with its generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedRule {
    pub rule: CommRule,
    pub vars: Vec<String>,
    pub params: BTreeMap<String, Scalar>,
    pub file: RuleFile,
}

impl RuleFile {
    pub fn from_json(text: &str) -> Result<RuleFile, RuleFileError> {
        serde_json::from_str(text)
            .map_err(|e| err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule files serialize")
    }

    /// Rule file for `rule` with the given generator names and no params.
    pub fn from_rule(rule: &CommRule, vars: &[String]) -> RuleFile {
        let n = rule.n();
        let a = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| (0..n).map(|i| rule.entry(j, k, i).to_expr(vars)).collect())
                    .collect()
            })
            .collect();
        RuleFile {
            n,
            field: rule.field().tag(),
            vars: vars.to_vec(),
            params: BTreeMap::new(),
            a,
        }
    }

    pub fn load(&self) -> Result<LoadedRule, RuleFileError> {
        let field = Field::parse_tag(&self.field).map_err(|e| err("field", e.to_string()))?;
        let n = self.n;
        if n == 0 || n > crate::freealg::MAX_GENERATORS {
            return Err(err("n", format!("generator count must be between 1 and {}", crate::freealg::MAX_GENERATORS)));
        }
        if self.vars.len() != n {
            return Err(err("vars", format!("expected {n} names, got {}", self.vars.len())));
        }
        let mut seen = BTreeSet::new();
        for v in &self.vars {
            if !is_identifier(v) {
                return Err(err("vars", format!("`{v}` is not an identifier")));
            }
            if !seen.insert(v) {
                return Err(err("vars", format!("duplicate name `{v}`")));
            }
        }
        let mut params = BTreeMap::new();
        for (name, value) in &self.params {
            let loc = format!("params.{name}");
            if !is_identifier(name) {
                return Err(err(loc, "parameter names must be identifiers"));
            }
            let q = parse_rational(&value.to_string()).map_err(|e| err(&loc, e.to_string()))?;
            let s = field.from_rational(&q).map_err(|e| err(&loc, e.to_string()))?;
            params.insert(name.clone(), s);
        }
        if self.a.len() != n {
            return Err(err("A", format!("expected {n} matrices, got {}", self.a.len())));
        }
        let mut images = Vec::with_capacity(n);
        for (j, grid) in self.a.iter().enumerate() {
            let gen = &self.vars[j];
            if grid.len() != n || grid.iter().any(|row| row.len() != n) {
                return Err(err(format!("A[{}]", j + 1), format!("image of {gen} must be {n}x{n}")));
            }
            let mut rows = Vec::with_capacity(n);
            for (k, row) in grid.iter().enumerate() {
                let mut cells = Vec::with_capacity(n);
                for (i, text) in row.iter().enumerate() {
                    let p = parse_expr(text, &self.vars, &params, field).map_err(|ParseError { column, message }| {
                        err(
                            format!("image of {gen}, row {}, column {}: character {column}", k + 1, i + 1),
                            message,
                        )
                    })?;
                    cells.push(p);
                }
                rows.push(cells);
            }
            images.push(MatrixPoly::from_grid(field, rows).map_err(|e| err(format!("A[{}]", j + 1), e.to_string()))?);
        }
        let rule = CommRule::from_matrices(field, images).map_err(|e| err("A", e.to_string()))?;
        Ok(LoadedRule { rule, vars: self.vars.clone(), params, file: self.clone() })
    }
}

impl LoadedRule {
    pub fn parse(&self, text: &str) -> Result<NCPoly, ParseError> {
        parse_expr(text, &self.vars, &self.params, self.rule.field())
    }
}
