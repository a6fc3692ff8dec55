use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::linalg::SparseVec;
use super::matrix::ScalarMatrix;
use super::scalar::{Field, Scalar};
use super::word::{ambient_dim, Word};
use crate::error::{Error, Result};

/// A noncommutative polynomial: a finite linear combination of words in `n`
/// generators with nonzero coefficients, kept in canonical (degree, lex)
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    n: usize,
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(n: usize, field: Field) -> NCPoly {
        NCPoly { n, field, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, field: Field) -> NCPoly {
        NCPoly::monomial(n, field.one(), Word::empty())
    }

    pub fn constant(n: usize, c: Scalar) -> NCPoly {
        NCPoly::monomial(n, c, Word::empty())
    }

    /// The generator with 0-based index `i`.
    ///
    /// Panics if `i >= n`.
    pub fn var(n: usize, field: Field, i: usize) -> NCPoly {
        assert!(i < n, "generator {i} out of range for n = {n}");
        NCPoly::monomial(n, field.one(), Word::letter(i))
    }

    pub fn monomial(n: usize, c: Scalar, w: Word) -> NCPoly {
        let field = c.field();
        let mut p = NCPoly::zero(n, field);
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    /// Builds a polynomial from (word, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(n: usize, field: Field, terms: I) -> Result<NCPoly>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut p = NCPoly::zero(n, field);
        for (w, c) in terms {
            if let Some(m) = w.max_letter() {
                if m >= n {
                    return Err(Error::IndexOutOfRange { index: m, bound: n });
                }
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field.tag(), c.field().tag()));
            }
            p.add_term(w, &c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    /// `Some(s)` when the polynomial is nonzero and every term has length `s`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let lo = self.terms.keys().next()?.degree();
        (self.degree() == Some(lo)).then_some(lo)
    }

    /// True when every term has length `s`; the zero polynomial qualifies
    /// for every `s`.
    pub fn is_homogeneous_of(&self, s: usize) -> bool {
        self.terms.keys().all(|w| w.degree() == s)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &NCPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.tag(), other.field.tag()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    /// Product in the free algebra: the bilinear extension of concatenation.
    pub fn checked_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_compatible(other)?;
        let mut out = NCPoly::zero(self.n, self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<NCPoly> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field.tag(), c.field().tag()));
        }
        if c.is_zero() {
            return Ok(NCPoly::zero(self.n, self.field));
        }
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect();
        Ok(NCPoly { n: self.n, field: self.field, terms })
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.n, self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of the terms of length exactly `s`.
    pub fn homogeneous_component(&self, s: usize) -> NCPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.degree() == s)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        NCPoly { n: self.n, field: self.field, terms }
    }

    /// Image under the map to the commutative polynomial ring: every word is
    /// replaced by its sorted letter sequence.
    pub fn abelianize(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.n, self.field);
        for (w, c) in &self.terms {
            out.add_term(w.sorted(), c);
        }
        out
    }

    /// Substitutes every generator `x^i` by the linear form `Σ_k m[i][k] x^k`.
    pub fn substitute_linear(&self, m: &ScalarMatrix) -> Result<NCPoly> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Shape(format!(
                "substitution matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.n,
                self.n
            )));
        }
        let images: Vec<NCPoly> = (0..self.n)
            .map(|i| {
                let terms = (0..self.n).map(|k| (Word::letter(k), m.get(i, k).clone()));
                NCPoly::from_terms(self.n, self.field, terms)
            })
            .collect::<Result<_>>()?;
        let mut out = NCPoly::zero(self.n, self.field);
        for (w, c) in &self.terms {
            let mut prod = NCPoly::constant(self.n, c.clone());
            for letter in w.letters() {
                prod = prod.checked_mul(&images[letter])?;
            }
            out = out.checked_add(&prod)?;
        }
        Ok(out)
    }

    /// Dense coordinates in the canonical basis of degree-`s` words.
    pub fn to_coords(&self, s: usize) -> Result<Vec<Scalar>> {
        let dim = ambient_dim(self.n, s)?;
        let mut out = vec![self.field.zero(); dim];
        for (idx, c) in self.to_sparse(s)?.iter() {
            out[*idx] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coords(n: usize, field: Field, s: usize, coords: &[Scalar]) -> Result<NCPoly> {
        let dim = ambient_dim(n, s)?;
        if coords.len() != dim {
            return Err(Error::Shape(format!("expected {dim} coordinates, got {}", coords.len())));
        }
        let terms = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Word::from_index(i, n, s), c.clone()));
        NCPoly::from_terms(n, field, terms)
    }

    pub(crate) fn to_sparse(&self, s: usize) -> Result<SparseVec> {
        if let Some((w, _)) = self.terms.iter().find(|(w, _)| w.degree() != s) {
            return Err(Error::DegreeMismatch { expected: s, found: w.degree() });
        }
        // Same-length words are stored in lexicographic = index order.
        Ok(SparseVec::from_sorted(
            self.terms.iter().map(|(w, c)| (w.index(self.n), c.clone())).collect(),
        ))
    }

    pub(crate) fn from_sparse(n: usize, field: Field, s: usize, v: &SparseVec) -> NCPoly {
        let terms = v
            .iter()
            .map(|(i, c)| (Word::from_index(*i, n, s), c.clone()))
            .collect();
        NCPoly { n, field, terms }
    }

    /// Renders the polynomial with the given generator names, in the
    /// expression syntax accepted by the command-line parser.
    pub fn to_expr(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            let word = format_word(w, names);
            if w.degree() == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{mag}*{word}"));
            }
        }
        out
    }

    /// Default generator names `x1, …, xn`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn format_word(w: &Word, names: &[String]) -> String {
    let letters: Vec<usize> = w.letters().collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = names
            .get(letters[i])
            .cloned()
            .unwrap_or_else(|| format!("x{}", letters[i] + 1));
        if j - i == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr(&NCPoly::default_names(self.n)))
    }
}

// Operator forms panic on generator-count or field mismatch; use the
// `checked_*` methods on untrusted input.
impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect();
        NCPoly { n: self.n, field: self.field, terms }
    }
}
