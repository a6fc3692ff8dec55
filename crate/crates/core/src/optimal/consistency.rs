//! Whether a presented ideal is closed under the partial derivatives and the
//! matrix entries of `A`.

use std::fmt;

use super::engine::Engine;
use super::{homogeneous_degree_of, ideal_components};
use crate::commrule::CommRule;
use crate::error::{Error, Result};
use crate::freealg::{NCPoly, Subspace};

/// One element that escapes the ideal. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// `D_k(element) = image` is not in the ideal.
    Derivative { degree: usize, k: usize, element: NCPoly, image: NCPoly },
    /// `A(element)^i_k = image` is not in the ideal.
    MatrixEntry { degree: usize, k: usize, i: usize, element: NCPoly, image: NCPoly },
}

impl Diagnostic {
    pub fn degree(&self) -> usize {
        match self {
            Diagnostic::Derivative { degree, .. } | Diagnostic::MatrixEntry { degree, .. } => *degree,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Derivative { degree, k, element, image } => write!(
                f,
                "degree {degree}: D_{}({element}) = {image} is not in the ideal",
                k + 1
            ),
            Diagnostic::MatrixEntry { degree, k, i, element, image } => write!(
                f,
                "degree {degree}: A({element})^{}_{} = {image} is not in the ideal",
                i + 1,
                k + 1
            ),
        }
    }
}

/// Outcome of a consistency check up to `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub max_degree: usize,
    pub diagnostics: Vec<Diagnostic>,
}

impl ConsistencyReport {
    pub fn verdict(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Relations `f_m` of one common degree: every `D_k(f_m)` must vanish and
/// every entry of `A(f_m)` must lie in the span of the relations.
pub fn check_same_degree_consistency(rule: &CommRule, relations: &[NCPoly]) -> Result<ConsistencyReport> {
    let mut eng = Engine::new(rule)?;
    let (n, field) = (rule.n(), rule.field());
    let mut degree = None;
    for f in relations {
        if let Some(s) = homogeneous_degree_of(f)? {
            match degree {
                None => degree = Some(s),
                Some(d) if d != s => return Err(Error::DegreeMismatch { expected: d, found: s }),
                Some(_) => {}
            }
        }
    }
    let Some(d) = degree else {
        return Ok(ConsistencyReport { max_degree: 0, diagnostics: Vec::new() });
    };
    let span = Subspace::span(n, field, d, relations)?.echelon();
    let mut diagnostics = Vec::new();
    for f in relations.iter().filter(|f| !f.is_zero()) {
        let v = eng.to_sparse(f, d)?;
        if d >= 1 {
            for (k, dk) in eng.derivatives(d, &v)?.iter().enumerate() {
                if !dk.is_zero() {
                    diagnostics.push(Diagnostic::Derivative {
                        degree: d,
                        k,
                        element: f.clone(),
                        image: eng.to_poly(dk, d - 1),
                    });
                }
            }
        }
        for (ki, e) in eng.apply_entries(d, &v)?.iter().enumerate() {
            if !span.contains(e) {
                diagnostics.push(Diagnostic::MatrixEntry {
                    degree: d,
                    k: ki / n,
                    i: ki % n,
                    element: f.clone(),
                    image: eng.to_poly(e, d),
                });
            }
        }
    }
    Ok(ConsistencyReport { max_degree: d, diagnostics })
}

/// Degree-bounded check of the ideal `J` generated by `generators`: for
/// every `d ≤ max_degree`, `D_k(J_d) ⊆ J_{d-1}` and `A(J_d)^i_k ⊆ J_d`.
///
/// Each failing echelon basis element of `J_d` is reported.
pub fn check_consistent_ideal(rule: &CommRule, generators: &[NCPoly], max_degree: usize) -> Result<ConsistencyReport> {
    let mut eng = Engine::new(rule)?;
    let (n, field) = (rule.n(), rule.field());
    let comps = ideal_components(n, field, generators, max_degree)?;
    let mut diagnostics = Vec::new();
    for d in 1..=max_degree {
        let lower = comps[d - 1].echelon();
        let same = comps[d].echelon();
        for b in comps[d].rows() {
            let element = eng.to_poly(b, d);
            for (k, dk) in eng.derivatives(d, b)?.iter().enumerate() {
                if !lower.contains(dk) {
                    diagnostics.push(Diagnostic::Derivative {
                        degree: d,
                        k,
                        element: element.clone(),
                        image: eng.to_poly(dk, d - 1),
                    });
                }
            }
            for (ki, e) in eng.apply_entries(d, b)?.iter().enumerate() {
                if !same.contains(e) {
                    diagnostics.push(Diagnostic::MatrixEntry {
                        degree: d,
                        k: ki / n,
                        i: ki % n,
                        element: element.clone(),
                        image: eng.to_poly(e, d),
                    });
                }
            }
        }
    }
    Ok(ConsistencyReport { max_degree, diagnostics })
}
