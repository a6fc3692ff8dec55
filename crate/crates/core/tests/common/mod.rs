//! Shared proptest strategies.
#![allow(dead_code)]

use optcalc::commrule::CommRule;
use optcalc::freealg::{Field, MatrixPoly, NCPoly, ScalarMatrix, Word};
use proptest::collection::vec;
use proptest::prelude::*;

pub fn q() -> Field {
    Field::Rational
}

pub fn terms_to_poly(n: usize, field: Field, terms: &[(Vec<usize>, i64)]) -> NCPoly {
    let mut p = NCPoly::zero(n, field);
    for (letters, c) in terms {
        let m = NCPoly::monomial(n, field.from_i64(*c), Word::from_letters(letters.iter().copied()));
        p = &p + &m;
    }
    p
}

/// Polynomials with up to `max_terms` words of degree at most `max_degree`.
pub fn poly(n: usize, max_degree: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    vec((vec(0..n, 0..=max_degree), -3i64..=3), 0..=max_terms)
        .prop_map(move |terms| terms_to_poly(n, q(), &terms))
}

/// Homogeneous polynomials of degree `s`.
pub fn homogeneous_poly(n: usize, s: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    vec((vec(0..n, s..=s), -3i64..=3), 0..=max_terms).prop_map(move |terms| terms_to_poly(n, q(), &terms))
}

/// Linear-form entries `coeffs[((j*n + k)*n + i)*n + l]` on `x^l`.
pub fn rule_from_coeffs(n: usize, field: Field, coeffs: &[i64]) -> CommRule {
    let images = (0..n)
        .map(|j| {
            let grid = (0..n)
                .map(|k| {
                    (0..n)
                        .map(|i| {
                            let base = ((j * n + k) * n + i) * n;
                            let terms: Vec<(Vec<usize>, i64)> =
                                (0..n).map(|l| (vec![l], coeffs[base + l])).collect();
                            terms_to_poly(n, field, &terms)
                        })
                        .collect()
                })
                .collect();
            MatrixPoly::from_grid(field, grid).unwrap()
        })
        .collect();
    CommRule::from_matrices(field, images).unwrap()
}

/// Homogeneous rules with small integer coefficients; sparse so that the
/// optimal ideal is often nontrivial.
pub fn homogeneous_rule(n: usize) -> impl Strategy<Value = CommRule> {
    let weighted = prop_oneof![3 => Just(0i64), 1 => -2i64..=2];
    vec(weighted, n.pow(4)).prop_map(move |c| rule_from_coeffs(n, q(), &c))
}

/// Rules whose images may carry constant and quadratic parts.
pub fn general_rule(n: usize) -> impl Strategy<Value = CommRule> {
    let extra = vec((0..n, 0..n, 0..n, poly(n, 2, 2)), 0..=3);
    (homogeneous_rule(n), extra).prop_map(move |(rule, extra)| {
        let mut images = rule.images().to_vec();
        for (j, k, i, p) in extra {
            let entry = images[j].get(k, i) + &p;
            images[j].set(k, i, entry);
        }
        CommRule::from_matrices(q(), images).unwrap()
    })
}

/// Invertible integer matrices.
pub fn invertible(n: usize) -> impl Strategy<Value = ScalarMatrix> {
    vec(-3i64..=3, n * n)
        .prop_map(move |c| {
            let rows = (0..n).map(|r| (0..n).map(|col| q().from_i64(c[r * n + col])).collect()).collect();
            ScalarMatrix::from_rows(q(), rows).unwrap()
        })
        .prop_filter("invertible", |m| m.inverse().is_ok())
}
