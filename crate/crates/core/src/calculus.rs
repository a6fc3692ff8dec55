//! The differential on the free algebra determined by a commutation rule:
//! twisted partial derivatives, one-forms `dx^i·ω_i` and vector fields
//! `Y^i D_i`.
//!
//! Partials follow `D_k(x^i w) = δ^i_k w + A(x^i)^j_k D_j(w)`, peeling the
//! leftmost letter and memoizing the derivative vector of every suffix.

use std::collections::HashMap;

use crate::commrule::CommRule;
use crate::error::{Error, Result};
use crate::freealg::{Field, NCPoly, Word};

/// Evaluates partial derivatives for one rule, caching per-word results.
///
/// The cache lives as long as the value, so reuse one `Differentiator` for
/// many polynomials of the same rule.
pub struct Differentiator<'a> {
    rule: &'a CommRule,
    memo: HashMap<Word, Vec<NCPoly>>,
}

impl<'a> Differentiator<'a> {
    pub fn new(rule: &'a CommRule) -> Self {
        Differentiator { rule, memo: HashMap::new() }
    }

    pub fn rule(&self) -> &'a CommRule {
        self.rule
    }

    /// `(D_1 f, …, D_n f)`.
    pub fn gradient(&mut self, f: &NCPoly) -> Result<Vec<NCPoly>> {
        check_poly(self.rule, f)?;
        let (n, field) = (self.rule.n(), self.rule.field());
        let mut out = vec![NCPoly::zero(n, field); n];
        for (w, c) in f.terms() {
            let dw = self.word_gradient(w)?;
            for (slot, d) in out.iter_mut().zip(dw) {
                *slot = slot.checked_add(&d.scale(c)?)?;
            }
        }
        Ok(out)
    }

    /// `D_k f` with a 0-based index `k`.
    pub fn partial(&mut self, k: usize, f: &NCPoly) -> Result<NCPoly> {
        check_index(self.rule, k)?;
        check_poly(self.rule, f)?;
        let mut out = NCPoly::zero(self.rule.n(), self.rule.field());
        for (w, c) in f.terms() {
            let dw = &self.word_gradient(w)?[k];
            out = out.checked_add(&dw.scale(c)?)?;
        }
        Ok(out)
    }

    fn word_gradient(&mut self, w: &Word) -> Result<Vec<NCPoly>> {
        if let Some(d) = self.memo.get(w) {
            return Ok(d.clone());
        }
        let (n, field) = (self.rule.n(), self.rule.field());
        let letters: Vec<usize> = w.letters().collect();
        // Walk suffixes from the right, reusing any cached ones.
        let mut start = letters.len();
        let mut acc = vec![NCPoly::zero(n, field); n];
        for t in (0..letters.len()).rev() {
            let suffix = Word::from_letters(letters[t..].iter().copied());
            if let Some(d) = self.memo.get(&suffix) {
                acc = d.clone();
                start = t;
                break;
            }
        }
        for t in (0..start).rev() {
            let i = letters[t];
            let rest = Word::from_letters(letters[t + 1..].iter().copied());
            let a = self.rule.image(i);
            let mut next = Vec::with_capacity(n);
            for k in 0..n {
                let mut d = if k == i {
                    NCPoly::monomial(n, field.one(), rest.clone())
                } else {
                    NCPoly::zero(n, field)
                };
                for (j, dj) in acc.iter().enumerate() {
                    let coeff = a.get(k, j);
                    if !coeff.is_zero() && !dj.is_zero() {
                        d = d.checked_add(&coeff.checked_mul(dj)?)?;
                    }
                }
                next.push(d);
            }
            acc = next;
            self.memo
                .insert(Word::from_letters(letters[t..].iter().copied()), acc.clone());
        }
        Ok(acc)
    }
}

fn check_index(rule: &CommRule, k: usize) -> Result<()> {
    if k >= rule.n() {
        return Err(Error::IndexOutOfRange { index: k, bound: rule.n() });
    }
    Ok(())
}

fn check_poly(rule: &CommRule, f: &NCPoly) -> Result<()> {
    if f.n() != rule.n() {
        return Err(Error::GeneratorMismatch(rule.n(), f.n()));
    }
    if f.field() != rule.field() {
        return Err(Error::FieldMismatch(rule.field().tag(), f.field().tag()));
    }
    Ok(())
}

fn check_len(rule: &CommRule, len: usize) -> Result<()> {
    if len != rule.n() {
        return Err(Error::Shape(format!("expected {} components, got {len}", rule.n())));
    }
    Ok(())
}

/// `D_k f` (0-based `k`).
pub fn partial(rule: &CommRule, k: usize, f: &NCPoly) -> Result<NCPoly> {
    Differentiator::new(rule).partial(k, f)
}

/// `df = dx^k·D_k(f)`.
pub fn differential(rule: &CommRule, f: &NCPoly) -> Result<OneForm> {
    Ok(OneForm { components: Differentiator::new(rule).gradient(f)? })
}

/// The one-form `ω = dx^i·ω_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    components: Vec<NCPoly>,
}

impl OneForm {
    pub fn new(components: Vec<NCPoly>) -> Result<OneForm> {
        check_components(&components)?;
        Ok(OneForm { components })
    }

    pub fn zero(n: usize, field: Field) -> OneForm {
        OneForm { components: vec![NCPoly::zero(n, field); n] }
    }

    /// `dx^i`.
    pub fn basis(n: usize, field: Field, i: usize) -> OneForm {
        let mut f = OneForm::zero(n, field);
        f.components[i] = NCPoly::one(n, field);
        f
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &NCPoly {
        &self.components[i]
    }

    pub fn components(&self) -> &[NCPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(NCPoly::is_zero)
    }

    pub fn checked_add(&self, other: &OneForm) -> Result<OneForm> {
        OneForm::new(zip_with(&self.components, &other.components, NCPoly::checked_add)?)
    }

    /// `ω·g`, the right module action.
    pub fn mul_right(&self, g: &NCPoly) -> Result<OneForm> {
        let components = self
            .components
            .iter()
            .map(|c| c.checked_mul(g))
            .collect::<Result<_>>()?;
        Ok(OneForm { components })
    }
}

/// The vector field `Y = Y^i D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<NCPoly>,
}

impl VectorField {
    pub fn new(components: Vec<NCPoly>) -> Result<VectorField> {
        check_components(&components)?;
        Ok(VectorField { components })
    }

    pub fn zero(n: usize, field: Field) -> VectorField {
        VectorField { components: vec![NCPoly::zero(n, field); n] }
    }

    /// `D_k`.
    pub fn basis(n: usize, field: Field, k: usize) -> VectorField {
        let mut y = VectorField::zero(n, field);
        y.components[k] = NCPoly::one(n, field);
        y
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &NCPoly {
        &self.components[i]
    }

    pub fn components(&self) -> &[NCPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(NCPoly::is_zero)
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        VectorField::new(zip_with(&self.components, &other.components, NCPoly::checked_add)?)
    }
}

fn check_components(components: &[NCPoly]) -> Result<()> {
    let n = components.len();
    for c in components {
        if c.n() != n {
            return Err(Error::GeneratorMismatch(n, c.n()));
        }
    }
    if let Some(first) = components.first() {
        if let Some(bad) = components.iter().find(|c| c.field() != first.field()) {
            return Err(Error::FieldMismatch(first.field().tag(), bad.field().tag()));
        }
    }
    Ok(())
}

fn zip_with<F>(a: &[NCPoly], b: &[NCPoly], f: F) -> Result<Vec<NCPoly>>
where
    F: Fn(&NCPoly, &NCPoly) -> Result<NCPoly>,
{
    if a.len() != b.len() {
        return Err(Error::Shape(format!("component counts differ: {} vs {}", a.len(), b.len())));
    }
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// `f·ω`, with `(fω)_k = A(f)^i_k ω_i`.
pub fn left_mul_form(rule: &CommRule, f: &NCPoly, omega: &OneForm) -> Result<OneForm> {
    check_len(rule, omega.n())?;
    let a = rule.apply(f)?;
    let n = rule.n();
    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = NCPoly::zero(n, rule.field());
        for (i, w) in omega.components.iter().enumerate() {
            acc = acc.checked_add(&a.get(k, i).checked_mul(w)?)?;
        }
        components.push(acc);
    }
    Ok(OneForm { components })
}

/// `Y(u) = Y^i D_i(u)`.
pub fn vf_apply(rule: &CommRule, y: &VectorField, u: &NCPoly) -> Result<NCPoly> {
    check_len(rule, y.n())?;
    let grad = Differentiator::new(rule).gradient(u)?;
    let mut acc = NCPoly::zero(rule.n(), rule.field());
    for (yi, di) in y.components.iter().zip(&grad) {
        acc = acc.checked_add(&yi.checked_mul(di)?)?;
    }
    Ok(acc)
}

/// `Y.v`, with `(Y.v)^k = Y^i A(v)^k_i`.
pub fn vf_right_action(rule: &CommRule, y: &VectorField, v: &NCPoly) -> Result<VectorField> {
    check_len(rule, y.n())?;
    let a = rule.apply(v)?;
    let n = rule.n();
    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = NCPoly::zero(n, rule.field());
        for (i, yi) in y.components.iter().enumerate() {
            acc = acc.checked_add(&yi.checked_mul(a.get(i, k))?)?;
        }
        components.push(acc);
    }
    Ok(VectorField { components })
}

/// `<Y, ω> = Y^i ω_i`.
pub fn pairing(y: &VectorField, omega: &OneForm) -> Result<NCPoly> {
    let terms = zip_with(&y.components, &omega.components, NCPoly::checked_mul)?;
    let first = terms
        .first()
        .ok_or_else(|| Error::Shape("empty pairing".into()))?;
    let mut acc = NCPoly::zero(first.n(), first.field());
    for t in &terms {
        acc = acc.checked_add(t)?;
    }
    Ok(acc)
}
