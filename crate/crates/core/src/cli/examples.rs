//! Built-in example rules.

use crate::classify2::{build_family, FamilyParams};
use crate::commrule::{diagonal_rule, minus_rule, single_power_rule, split_rule, zero_rule, CommRule};
use crate::error::Result;
use crate::freealg::{Field, Scalar, ScalarMatrix};

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    build: fn() -> Result<CommRule>,
}

impl Example {
    pub fn rule(&self) -> Result<CommRule> {
        (self.build)()
    }
}

fn q() -> Field {
    Field::Rational
}

fn c(v: i64) -> Scalar {
    q().from_i64(v)
}

fn form(a: i64, b: i64) -> [Scalar; 2] {
    [c(a), c(b)]
}

fn diag() -> Result<CommRule> {
    let half = q().from_ratio(1, 2)?;
    diagonal_rule(&ScalarMatrix::from_rows(q(), vec![vec![c(3), c(2)], vec![half, c(3)]])?)
}

pub const EXAMPLES: &[Example] = &[
    Example {
        name: "ex3.1-diag",
        summary: "diagonal rule x^i dx^j = q^{ij} dx^j x^i with q12 = 2, q21 = 1/2, q11 = q22 = 3",
        build: diag,
    },
    Example { name: "ex3.2-zero", summary: "zero rule on two generators", build: || Ok(zero_rule(2, q())) },
    Example {
        name: "ex3.3-minus",
        summary: "x^i dx^j = -dx^i x^j on two generators",
        build: || Ok(minus_rule(2, q())),
    },
    Example {
        name: "ex3.4",
        summary: "x1 dx1 = dx1 x2 and x^i dx^j = -dx^i x^j for every other pair",
        build: || single_power_rule(&[c(1)]),
    },
    Example { name: "ex3.5", summary: "x1 dx1 = dx1 x2, x2 dx2 = dx2 x1, x1 dx2 = -dx1 x2, x2 dx1 = -dx2 x1", build: || split_rule(c(1), c(1)) },
    Example {
        name: "thm4.1-I",
        summary: "family I with u = x1 + 2x2, v = x1 - x2, w = x2, lambda = 2",
        build: || build_family(&FamilyParams::i(form(1, 2), form(1, -1), form(0, 1), c(2))),
    },
    Example {
        name: "thm4.1-II",
        summary: "family II with v = x1, v1 = x2, lambda = 1, mu = 2",
        build: || build_family(&FamilyParams::ii(form(1, 0), form(0, 1), c(1), c(2))),
    },
    Example {
        name: "thm4.1-III",
        summary: "family III with u = 2x1 + x2, v = x1 + 3x2",
        build: || build_family(&FamilyParams::iii(form(2, 1), form(1, 3))),
    },
    Example {
        name: "thm4.1-IV",
        summary: "family IV with u = x1 + x2, v = 2x2, w = x1",
        build: || build_family(&FamilyParams::iv(form(1, 1), form(0, 2), form(1, 0))),
    },
];

pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}
