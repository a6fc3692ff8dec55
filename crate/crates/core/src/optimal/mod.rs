//! The optimal ideal `I(A)` of a homogeneous rule, built degree by degree,
//! and consistency checks for presented ideals.
//!
//! `I_1 = 0` and for `s ≥ 2`, `I_s` is the largest `A`-invariant subspace of
//! `U_s = {m : D_k(m) ∈ I_{s-1} for all k}`.

mod consistency;
mod engine;

use std::fmt;

pub use consistency::{check_consistent_ideal, check_same_degree_consistency, ConsistencyReport, Diagnostic};

use crate::commrule::CommRule;
use crate::error::{Error, Result};
use crate::freealg::linalg::SparseVec;
use crate::freealg::{ambient_dim, Field, NCPoly, Subspace, Word};
use engine::Engine;

/// Homogeneous components `I_1, …, I_N` of the optimal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFiltration {
    rule: CommRule,
    components: Vec<Subspace>,
}

impl IdealFiltration {
    pub fn rule(&self) -> &CommRule {
        &self.rule
    }

    pub fn max_degree(&self) -> usize {
        self.components.len()
    }

    /// `I_s` for `1 ≤ s ≤ N`.
    pub fn component(&self, s: usize) -> Option<&Subspace> {
        s.checked_sub(1).and_then(|i| self.components.get(i))
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    /// `(s, dim I_s)` for every computed degree.
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.degree(), c.dim())).collect()
    }

    /// `(s, n^s - dim I_s)`: graded dimensions of the optimal algebra.
    pub fn quotient_dims(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.degree(), c.codim())).collect()
    }
}

impl fmt::Display for IdealFiltration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "s={} dim_ideal={} dim_quotient={}", c.degree(), c.dim(), c.codim())?;
        }
        Ok(())
    }
}

/// `(s, n^s - dim I_s)` for every computed degree.
pub fn quotient_dims(filtration: &IdealFiltration) -> Vec<(usize, usize)> {
    filtration.quotient_dims()
}

/// Optimal ideal components up to degree `max_degree`.
///
/// Fails with `IdealPropertyViolated` if a constructed component is not
/// closed under multiplication by generators on either side.
pub fn optimal_ideal(rule: &CommRule, max_degree: usize) -> Result<IdealFiltration> {
    if max_degree < 1 {
        return Err(Error::InvalidDegree { min: 1, got: max_degree });
    }
    let mut eng = Engine::new(rule)?;
    let (n, field) = (rule.n(), rule.field());
    ambient_dim(n, max_degree)?;
    let mut components = vec![Subspace::zero(n, field, 1)?];
    for s in 2..=max_degree {
        let prev = &components[s - 2];
        let u = eng.compute_u(s, prev)?;
        let next = eng.largest_invariant(&u)?;
        if !eng.closed_under_generators(prev, &next)? {
            return Err(Error::IdealPropertyViolated(s));
        }
        components.push(next);
    }
    Ok(IdealFiltration { rule: rule.clone(), components })
}

/// `U_s = {m of degree s : D_k(m) ∈ prev for every k}`.
pub fn compute_u(rule: &CommRule, s: usize, prev: &Subspace) -> Result<Subspace> {
    Engine::new(rule)?.compute_u(s, prev)
}

/// Largest subspace of `u` that every entry of `A` maps into itself.
pub fn largest_invariant(rule: &CommRule, u: &Subspace) -> Result<Subspace> {
    Engine::new(rule)?.largest_invariant(u)
}

/// Smallest `A`-invariant subspace containing the homogeneous `v`.
pub fn invariant_closure(rule: &CommRule, v: &NCPoly) -> Result<Subspace> {
    let mut eng = Engine::new(rule)?;
    let s = homogeneous_degree_of(v)?.unwrap_or(0);
    let sv = eng.to_sparse(v, s)?;
    eng.invariant_closure(s, &sv)
}

fn homogeneous_degree_of(p: &NCPoly) -> Result<Option<usize>> {
    if p.is_zero() {
        return Ok(None);
    }
    p.homogeneous_degree()
        .map(Some)
        .ok_or_else(|| Error::InhomogeneousPolynomial(p.to_string()))
}

/// Degree-`d` component of the two-sided ideal generated by homogeneous
/// polynomials: the span of all `u·g·v` with `u, v` words.
pub fn ideal_component(n: usize, field: Field, generators: &[NCPoly], d: usize) -> Result<Subspace> {
    Ok(ideal_components(n, field, generators, d)?.pop().expect("degree 0 is always present"))
}

/// Components `J_0, …, J_max` of the ideal generated by `generators`.
pub fn ideal_components(n: usize, field: Field, generators: &[NCPoly], max_degree: usize) -> Result<Vec<Subspace>> {
    ambient_dim(n, max_degree)?;
    let mut by_degree: Vec<Vec<NCPoly>> = vec![Vec::new(); max_degree + 1];
    for g in generators {
        if g.n() != n {
            return Err(Error::GeneratorMismatch(n, g.n()));
        }
        if g.field() != field {
            return Err(Error::FieldMismatch(field.tag(), g.field().tag()));
        }
        if let Some(s) = homogeneous_degree_of(g)? {
            if s <= max_degree {
                by_degree[s].push(g.clone());
            }
        }
    }
    // J_d = span(generators of degree d) + Σ_i (x^i J_{d-1} + J_{d-1} x^i).
    let mut out: Vec<Subspace> = Vec::with_capacity(max_degree + 1);
    for (d, gens) in by_degree.iter().enumerate() {
        let mut ech = Subspace::span(n, field, d, gens)?.echelon();
        if let Some(prev) = out.last() {
            let block = ambient_dim(n, d - 1)?;
            for b in prev.rows() {
                for i in 0..n {
                    ech.insert(&b.offset(i * block));
                    ech.insert(&SparseVec::from_sorted(
                        b.iter().map(|(j, c)| (j * n + i, c.clone())).collect(),
                    ));
                }
            }
        }
        out.push(Subspace::from_echelon(n, field, d, ech));
    }
    Ok(out)
}

/// A two-generator rule is regular when `I_2` is spanned by `x1x2 - x2x1`.
pub fn is_regular(rule: &CommRule) -> Result<bool> {
    if rule.n() != 2 {
        return Err(Error::NotTwoVariables(rule.n()));
    }
    let filt = optimal_ideal(rule, 2)?;
    let i2 = filt.component(2).expect("degree 2 computed");
    Ok(i2.dim() == 1 && i2.contains(&commutator(rule.field()))?)
}

/// `x1x2 - x2x1` on two generators.
pub fn commutator(field: Field) -> NCPoly {
    let w = |a: usize, b: usize| Word::from_letters([a, b]);
    NCPoly::from_terms(2, field, [(w(0, 1), field.one()), (w(1, 0), -field.one())])
        .expect("well-formed terms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commrule::{diagonal_rule, minus_rule, single_power_rule, split_rule, zero_rule};
    use crate::freealg::{Scalar, ScalarMatrix};

    fn q() -> Field {
        Field::Rational
    }

    fn c(v: i64) -> Scalar {
        q().from_i64(v)
    }

    fn word(letters: &[usize]) -> NCPoly {
        NCPoly::monomial(2, q().one(), Word::from_letters(letters.iter().copied()))
    }

    #[test]
    fn zero_rule_ideal_is_trivial() {
        let f = optimal_ideal(&zero_rule(2, q()), 6).unwrap();
        assert!(f.dims().iter().all(|(_, d)| *d == 0));
        assert_eq!(f.quotient_dims()[..3], [(1, 2), (2, 4), (3, 8)]);
    }

    #[test]
    fn minus_rule_kills_everything_above_degree_one() {
        let f = optimal_ideal(&minus_rule(2, q()), 4).unwrap();
        assert_eq!(f.dims(), vec![(1, 0), (2, 4), (3, 8), (4, 16)]);
    }

    #[test]
    fn u_for_the_single_power_rule() {
        let rule = single_power_rule(&[c(1)]).unwrap();
        let u = compute_u(&rule, 2, &Subspace::zero(2, q(), 1).unwrap()).unwrap();
        let expected = Subspace::span(2, q(), 2, &[word(&[0, 1]), word(&[1, 0]), word(&[1, 1])]).unwrap();
        assert_eq!(u, expected);
        assert_eq!(largest_invariant(&rule, &u).unwrap(), expected);
    }

    #[test]
    fn u_for_zero_and_minus_rules() {
        let zero1 = Subspace::zero(2, q(), 1).unwrap();
        assert!(compute_u(&zero_rule(2, q()), 2, &zero1).unwrap().is_zero());
        assert!(compute_u(&minus_rule(2, q()), 2, &zero1).unwrap().is_full());
    }

    #[test]
    fn largest_invariant_trivial_cases() {
        let rule = split_rule(c(1), c(1)).unwrap();
        for s in 1..4 {
            let z = Subspace::zero(2, q(), s).unwrap();
            let full = Subspace::full(2, q(), s).unwrap();
            assert_eq!(largest_invariant(&rule, &z).unwrap(), z);
            assert_eq!(largest_invariant(&rule, &full).unwrap(), full);
        }
    }

    #[test]
    fn split_rule_quotient_is_two_lines() {
        let f = optimal_ideal(&split_rule(c(1), c(1)).unwrap(), 5).unwrap();
        let dims: Vec<usize> = f.dims().iter().map(|p| p.1).collect();
        assert_eq!(dims, vec![0, 2, 6, 14, 30]);
    }

    #[test]
    fn ideal_component_of_quantum_plane_relation() {
        let g = &word(&[0, 1]).scale(&c(2)).unwrap() - &word(&[1, 0]);
        assert_eq!(ideal_component(2, q(), std::slice::from_ref(&g), 3).unwrap().dim(), 4);
        assert!(ideal_component(2, q(), &[g], 1).unwrap().is_zero());
        let all: Vec<NCPoly> = (0..4).map(|i| word(&[i / 2, i % 2])).collect();
        assert!(ideal_component(2, q(), &all, 2).unwrap().is_full());
    }

    #[test]
    fn ideal_component_rejects_inhomogeneous_generators() {
        let g = &word(&[0]) + &word(&[0, 1]);
        assert!(matches!(
            ideal_component(2, q(), &[g], 3),
            Err(Error::InhomogeneousPolynomial(_))
        ));
    }

    #[test]
    fn regularity() {
        let classical = crate::classify2::build_family(&crate::classify2::FamilyParams::iii(
            [c(1), c(0)],
            [c(0), c(1)],
        ))
        .unwrap();
        assert!(is_regular(&classical).unwrap());
        assert!(!is_regular(&split_rule(c(1), c(1)).unwrap()).unwrap());
        assert!(!is_regular(&minus_rule(2, q())).unwrap());
        assert_eq!(is_regular(&zero_rule(3, q())), Err(Error::NotTwoVariables(3)));
    }

    #[test]
    fn max_degree_must_be_positive() {
        assert_eq!(
            optimal_ideal(&zero_rule(2, q()), 0),
            Err(Error::InvalidDegree { min: 1, got: 0 })
        );
    }

    #[test]
    fn generic_diagonal_rule_gives_quantum_plane() {
        let qm = ScalarMatrix::from_rows(
            q(),
            vec![vec![c(3), c(2)], vec![q().from_ratio(1, 2).unwrap(), c(3)]],
        )
        .unwrap();
        let f = optimal_ideal(&diagonal_rule(&qm).unwrap(), 5).unwrap();
        for (s, d) in f.quotient_dims() {
            assert_eq!(d, s + 1);
        }
    }
}
