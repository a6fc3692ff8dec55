//! Text and JSON reports for the `ideal` command.

use serde::Serialize;

use super::rulefile::RuleFile;
use crate::optimal::IdealFiltration;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub s: usize,
    pub dim_ideal: usize,
    pub dim_quotient: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub rule: RuleFile,
    pub degrees: Vec<DegreeEntry>,
}

impl IdealReport {
    /// Report for `filtration`; basis elements are printed in `rule.vars`.
    pub fn new(rule: RuleFile, filtration: &IdealFiltration, with_basis: bool) -> IdealReport {
        let degrees = filtration
            .components()
            .iter()
            .map(|c| DegreeEntry {
                s: c.degree(),
                dim_ideal: c.dim(),
                dim_quotient: c.codim(),
                basis: with_basis.then(|| c.basis().iter().map(|b| b.to_expr(&rule.vars)).collect()),
            })
            .collect();
        IdealReport { rule, degrees }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.degrees {
            out.push_str(&format!("s={} dim_ideal={} dim_quotient={}\n", d.s, d.dim_ideal, d.dim_quotient));
            for b in d.basis.iter().flatten() {
                out.push_str(&format!("  {b}\n"));
            }
        }
        out
    }
}
