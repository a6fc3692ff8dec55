//! Two-generator homogeneous rules whose optimal algebra is commutative.
//!
//! Families I to IV are parametrized by linear forms `u, v, w, v1` in
//! `span(x1, x2)` and scalars `λ, μ`. A rule belongs to the classification
//! when it equals a family member, possibly after renaming `x1 ↔ x2`.

use std::fmt;

use crate::commrule::CommRule;
use crate::error::{Error, Result};
use crate::freealg::{Field, MatrixPoly, NCPoly, Scalar, Word};
use crate::optimal::{commutator, optimal_ideal};

/// Coefficients `[a, b]` of the linear form `a·x1 + b·x2`.
pub type LinearForm = [Scalar; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    I,
    II,
    III,
    IV,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::I, Family::II, Family::III, Family::IV];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
        })
    }
}

/// Parameters of one family member. Slots a family does not use are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub u: Option<LinearForm>,
    pub v: Option<LinearForm>,
    pub w: Option<LinearForm>,
    pub v1: Option<LinearForm>,
    pub lambda: Option<Scalar>,
    pub mu: Option<Scalar>,
    /// Whether `x1 ↔ x2` is applied after building.
    pub swapped: bool,
    /// Parameters the rule does not determine; they were set to zero.
    pub unconstrained: Vec<&'static str>,
}

impl FamilyParams {
    fn bare(family: Family) -> FamilyParams {
        FamilyParams {
            family,
            u: None,
            v: None,
            w: None,
            v1: None,
            lambda: None,
            mu: None,
            swapped: false,
            unconstrained: Vec::new(),
        }
    }

    pub fn i(u: LinearForm, v: LinearForm, w: LinearForm, lambda: Scalar) -> FamilyParams {
        FamilyParams { u: Some(u), v: Some(v), w: Some(w), lambda: Some(lambda), ..Self::bare(Family::I) }
    }

    pub fn ii(v: LinearForm, v1: LinearForm, lambda: Scalar, mu: Scalar) -> FamilyParams {
        FamilyParams { v: Some(v), v1: Some(v1), lambda: Some(lambda), mu: Some(mu), ..Self::bare(Family::II) }
    }

    pub fn iii(u: LinearForm, v: LinearForm) -> FamilyParams {
        FamilyParams { u: Some(u), v: Some(v), ..Self::bare(Family::III) }
    }

    pub fn iv(u: LinearForm, v: LinearForm, w: LinearForm) -> FamilyParams {
        FamilyParams { u: Some(u), v: Some(v), w: Some(w), ..Self::bare(Family::IV) }
    }

    pub fn with_swap(mut self, swapped: bool) -> FamilyParams {
        self.swapped = swapped;
        self
    }

    fn field(&self) -> Result<Field> {
        [&self.u, &self.v, &self.w, &self.v1]
            .into_iter()
            .flatten()
            .map(|f| f[0].field())
            .chain([&self.lambda, &self.mu].into_iter().flatten().map(Scalar::field))
            .next()
            .ok_or(Error::MissingParameter("u"))
    }

    /// Human-readable parameter list using the given generator names.
    pub fn describe(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        let forms = [("u", &self.u), ("v", &self.v), ("w", &self.w), ("v1", &self.v1)];
        for (name, form) in forms {
            if let Some(f) = form {
                parts.push(format!("{name} = {}", linear_poly(f).to_expr(names)));
            }
        }
        for (name, s) in [("lambda", &self.lambda), ("mu", &self.mu)] {
            if let Some(s) = s {
                parts.push(format!("{name} = {s}"));
            }
        }
        let mut out = format!("{} ({})", self.family, parts.join(", "));
        if self.swapped {
            out.push_str(" after swapping the generators");
        }
        if !self.unconstrained.is_empty() {
            out.push_str(&format!("; unconstrained: {}", self.unconstrained.join(", ")));
        }
        out
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&NCPoly::default_names(2)))
    }
}

fn linear_poly(f: &LinearForm) -> NCPoly {
    let field = f[0].field();
    NCPoly::from_terms(2, field, [(Word::letter(0), f[0].clone()), (Word::letter(1), f[1].clone())])
        .expect("same field")
}

fn linear_form(p: &NCPoly) -> Result<LinearForm> {
    if !p.is_homogeneous_of(1) {
        return Err(Error::NonHomogeneousRule);
    }
    Ok([p.coeff(&Word::letter(0)), p.coeff(&Word::letter(1))])
}

fn need<T: Clone>(slot: &Option<T>, name: &'static str) -> Result<T> {
    slot.clone().ok_or(Error::MissingParameter(name))
}

/// The family member described by `p`.
pub fn build_family(p: &FamilyParams) -> Result<CommRule> {
    let field = p.field()?;
    let x1 = NCPoly::var(2, field, 0);
    let x2 = NCPoly::var(2, field, 1);
    let lf = |slot: &Option<LinearForm>, name| need(slot, name).map(|f| linear_poly(&f));
    let sc = |a: &Scalar, q: &NCPoly| q.scale(a);
    let zero = NCPoly::zero(2, field);
    let (a1, a2) = match p.family {
        Family::I => {
            let (u, v, w) = (lf(&p.u, "u")?, lf(&p.v, "v")?, lf(&p.w, "w")?);
            let l = need(&p.lambda, "lambda")?;
            let a1 = [[u.clone(), w.clone()], [v.clone(), &sc(&l, &v)? + &x1]];
            let corner = &(&(&(&sc(&(&l * &l), &v)? - &sc(&l, &u)?) + &w) + &sc(&l, &x1)?) + &x2;
            let a2 = [[&w + &x2, sc(&l, &w)?], [sc(&l, &v)?, corner]];
            (a1, a2)
        }
        Family::II => {
            let (v, v1) = (lf(&p.v, "v")?, lf(&p.v1, "v1")?);
            let l = need(&p.lambda, "lambda")?;
            let m = need(&p.mu, "mu")?;
            let a1 = [[&(&x1 + &sc(&m, &v)?) + &v1, sc(&l, &v)?], [v.clone(), &x1 + &v1]];
            let a2 = [
                [&x2 + &sc(&l, &v)?, sc(&l, &v1)?],
                [v1.clone(), &(&x2 + &sc(&l, &v)?) - &sc(&m, &v1)?],
            ];
            (a1, a2)
        }
        Family::III => {
            let (u, v) = (lf(&p.u, "u")?, lf(&p.v, "v")?);
            ([[u, zero.clone()], [zero.clone(), x1.clone()]], [[x2.clone(), zero.clone()], [zero, v]])
        }
        Family::IV => {
            let (u, v, w) = (lf(&p.u, "u")?, lf(&p.v, "v")?, lf(&p.w, "w")?);
            let a1 = [[u.clone(), zero.clone()], [zero, u.clone()]];
            let a2 = [[x2.clone(), w], [&u - &x1, v]];
            (a1, a2)
        }
    };
    let grid = |m: [[NCPoly; 2]; 2]| MatrixPoly::from_grid(field, m.into_iter().map(Vec::from).collect());
    let rule = CommRule::from_matrices(field, vec![grid(a1)?, grid(a2)?])?;
    if p.swapped {
        rule.swap_generators(0, 1)
    } else {
        Ok(rule)
    }
}

/// A failed instance of `A^{ij}_k = A^{ji}_k` (`k ∉ {i, j}`) or
/// `A^{ij}_j = x^i + A^{ji}_j`, where `A^{ij}_k = A(x^i)^j_k`. 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub lhs: NCPoly,
    pub rhs: NCPoly,
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A^{{{}{}}}_{} = {} but {} is required",
            self.i + 1,
            self.j + 1,
            self.k + 1,
            self.lhs,
            self.rhs
        )
    }
}

/// Conditions forced by `D_k(x^i x^j - x^j x^i) = 0`; returns every
/// violation, so an empty list means they all hold.
pub fn necessary_conditions(rule: &CommRule) -> Vec<ConditionViolation> {
    let n = rule.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                let lhs = rule.entry(i, k, j).clone();
                let rhs = if k == j {
                    &NCPoly::var(n, rule.field(), i) + rule.entry(j, k, i)
                } else if k == i {
                    continue;
                } else {
                    rule.entry(j, k, i).clone()
                };
                if lhs != rhs {
                    out.push(ConditionViolation { i, j, k, lhs, rhs });
                }
            }
        }
    }
    out
}

/// Whether `A(x1)A(x2) - A(x2)A(x1)` vanishes after imposing `x1x2 = x2x1`.
pub fn commutes_mod_commutative(rule: &CommRule) -> Result<bool> {
    require_two(rule)?;
    let (a1, a2) = (rule.image(0), rule.image(1));
    let diff = a1.checked_mul(a2)?.checked_sub(&a2.checked_mul(a1)?)?;
    let vanishes = diff.entries().all(|p| p.abelianize().is_zero());
    Ok(vanishes)
}

/// Whether `x1x2 - x2x1` lies in the degree-2 component of the optimal ideal.
pub fn commutator_in_i2(rule: &CommRule) -> Result<bool> {
    require_two(rule)?;
    let filt = optimal_ideal(rule, 2)?;
    filt.component(2).expect("degree 2 computed").contains(&commutator(rule.field()))
}

fn require_two(rule: &CommRule) -> Result<()> {
    if rule.n() != 2 {
        return Err(Error::NotTwoVariables(rule.n()));
    }
    Ok(())
}

/// Outcome of solving `target = λ·base` over a list of equations.
enum Solve {
    Infeasible,
    Free,
    Unique(Scalar),
}

fn solve_multiple(eqs: &[(LinearForm, LinearForm)]) -> Solve {
    let mut found: Option<Scalar> = None;
    for (target, base) in eqs {
        let Some(idx) = (0..2).find(|&i| !base[i].is_zero()) else {
            if target.iter().any(|c| !c.is_zero()) {
                return Solve::Infeasible;
            }
            continue;
        };
        let l = target[idx].checked_div(&base[idx]).expect("nonzero pivot");
        if (0..2).any(|i| target[i] != &l * &base[i]) {
            return Solve::Infeasible;
        }
        match &found {
            Some(prev) if *prev != l => return Solve::Infeasible,
            _ => found = Some(l),
        }
    }
    match found {
        Some(l) => Solve::Unique(l),
        None => Solve::Free,
    }
}

fn sub(a: &LinearForm, b: &LinearForm) -> LinearForm {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn add(a: &LinearForm, b: &LinearForm) -> LinearForm {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

fn scaled(c: &Scalar, a: &LinearForm) -> LinearForm {
    [c * &a[0], c * &a[1]]
}

/// Resolves a scalar, recording it as unconstrained (and zero) when free.
fn settle(s: Solve, name: &'static str, field: Field, free: &mut Vec<&'static str>) -> Option<Scalar> {
    match s {
        Solve::Infeasible => None,
        Solve::Free => {
            free.push(name);
            Some(field.zero())
        }
        Solve::Unique(l) => Some(l),
    }
}

fn candidate(family: Family, rule: &CommRule) -> Result<Option<FamilyParams>> {
    let field = rule.field();
    let e = |j: usize, k: usize, i: usize| linear_form(rule.entry(j, k, i));
    let x1 = [field.one(), field.zero()];
    let x2 = [field.zero(), field.one()];
    let mut free = Vec::new();
    let params = match family {
        Family::I => {
            let (u, w, v) = (e(0, 0, 0)?, e(0, 0, 1)?, e(0, 1, 0)?);
            let eqs = [(sub(&e(0, 1, 1)?, &x1), v.clone()), (e(1, 0, 1)?, w.clone()), (e(1, 1, 0)?, v.clone())];
            let mut solved = solve_multiple(&eqs);
            if matches!(solved, Solve::Free) {
                // v = w = 0 here, so the corner entry reads λ(x1 - u) + x2.
                solved = solve_multiple(&[(sub(&e(1, 1, 1)?, &add(&w, &x2)), sub(&x1, &u))]);
            }
            let Some(l) = settle(solved, "lambda", field, &mut free) else {
                return Ok(None);
            };
            FamilyParams::i(u, v, w, l)
        }
        Family::II => {
            let (v, v1) = (e(0, 1, 0)?, e(1, 1, 0)?);
            let eqs = [(e(0, 0, 1)?, v.clone()), (e(1, 0, 1)?, v1.clone()), (sub(&e(1, 0, 0)?, &x2), v.clone())];
            let Some(l) = settle(solve_multiple(&eqs), "lambda", field, &mut free) else {
                return Ok(None);
            };
            let eqs = [
                (sub(&sub(&e(0, 0, 0)?, &x1), &v1), v.clone()),
                (sub(&add(&x2, &scaled(&l, &v)), &e(1, 1, 1)?), v1.clone()),
            ];
            let Some(m) = settle(solve_multiple(&eqs), "mu", field, &mut free) else {
                return Ok(None);
            };
            FamilyParams::ii(v, v1, l, m)
        }
        Family::III => FamilyParams::iii(e(0, 0, 0)?, e(1, 1, 1)?),
        Family::IV => FamilyParams::iv(e(0, 0, 0)?, e(1, 1, 1)?, e(1, 0, 1)?),
    };
    Ok(Some(FamilyParams { unconstrained: free, ..params }))
}

/// Every family member (with or without the generator swap) equal to
/// `rule`, ordered I, II, III, IV and unswapped before swapped.
pub fn match_family(rule: &CommRule) -> Result<Vec<FamilyParams>> {
    require_two(rule)?;
    rule.require_homogeneous()?;
    let swapped_rule = rule.swap_generators(0, 1)?;
    let mut out = Vec::new();
    for family in Family::ALL {
        for (swapped, target) in [(false, rule), (true, &swapped_rule)] {
            if let Some(p) = candidate(family, target)? {
                let p = p.with_swap(swapped);
                if build_family(&p)? == *rule {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}
