//! Commutation rules `x^j dx^i = dx^k · A(x^j)^i_k` and the algebra
//! homomorphism `A` they induce on the free algebra.

mod builtin;

use std::collections::HashMap;

pub use builtin::{diagonal_rule, minus_rule, single_power_rule, split_rule, zero_rule};

use crate::error::{Error, Result};
use crate::freealg::{Field, MatrixPoly, NCPoly, Scalar, ScalarMatrix, Word, MAX_GENERATORS};

/// A commutation rule on `n` generators: for every generator `x^j` the
/// matrix `A(x^j)`, stored with row = lower index `k` and column = upper
/// index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommRule {
    n: usize,
    field: Field,
    images: Vec<MatrixPoly>,
    homogeneous: bool,
}

impl CommRule {
    /// Rule with the given generator images `A(x^1), …, A(x^n)`.
    pub fn from_matrices(field: Field, images: Vec<MatrixPoly>) -> Result<CommRule> {
        let n = images.len();
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::Shape(format!("unsupported generator count {n}")));
        }
        for m in &images {
            if m.n() != n {
                return Err(Error::Shape(format!("generator image is {0}x{0}, expected {n}x{n}", m.n())));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(field.tag(), m.field().tag()));
            }
        }
        let homogeneous = images
            .iter()
            .flat_map(MatrixPoly::entries)
            .all(|p| p.is_homogeneous_of(1));
        Ok(CommRule { n, field, images, homogeneous })
    }

    /// Homogeneous rule from tensor coefficients: each `(i, j, k, l, c)`
    /// contributes `c·x^l` to `A(x^j)^i_k` (0-based indices, repeats add up).
    pub fn from_tensor(n: usize, field: Field, entries: &[(usize, usize, usize, usize, Scalar)]) -> Result<CommRule> {
        let mut images = vec![MatrixPoly::zero(n, field); n];
        for (i, j, k, l, c) in entries {
            for idx in [i, j, k, l] {
                if *idx >= n {
                    return Err(Error::IndexOutOfRange { index: *idx, bound: n });
                }
            }
            let term = NCPoly::monomial(n, c.clone(), Word::letter(*l));
            let updated = images[*j].get(*k, *i).checked_add(&term)?;
            images[*j].set(*k, *i, updated);
        }
        CommRule::from_matrices(field, images)
    }

    pub fn zero(n: usize, field: Field) -> CommRule {
        CommRule::from_matrices(field, vec![MatrixPoly::zero(n, field); n]).expect("valid shape")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Whether every entry of every generator image is a linear form.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn image(&self, j: usize) -> &MatrixPoly {
        &self.images[j]
    }

    pub fn images(&self) -> &[MatrixPoly] {
        &self.images
    }

    /// `A(x^j)^i_k`.
    pub fn entry(&self, j: usize, k: usize, i: usize) -> &NCPoly {
        self.images[j].get(k, i)
    }

    /// Coefficient of `x^l` in `A(x^j)^i_k`; `None` for non-homogeneous rules.
    pub fn tensor_coefficient(&self, i: usize, j: usize, k: usize, l: usize) -> Option<Scalar> {
        self.homogeneous
            .then(|| self.entry(j, k, i).coeff(&Word::letter(l)))
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        if self.homogeneous {
            Ok(())
        } else {
            Err(Error::NonHomogeneousRule)
        }
    }

    fn check_poly(&self, f: &NCPoly) -> Result<()> {
        if f.n() != self.n {
            return Err(Error::GeneratorMismatch(self.n, f.n()));
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field.tag(), f.field().tag()));
        }
        Ok(())
    }

    /// The unital homomorphism `A` evaluated on `f`.
    pub fn apply(&self, f: &NCPoly) -> Result<MatrixPoly> {
        self.check_poly(f)?;
        let mut cache = WordImages::new(self);
        let mut out = MatrixPoly::zero(self.n, self.field);
        for (w, c) in f.terms() {
            out = out.checked_add(&cache.get(w).scale(c)?)?;
        }
        Ok(out)
    }

    /// Rule in the generators `z^k = α^k_i x^i`; `alpha[k][i] = α^k_i`.
    pub fn change_basis(&self, alpha: &ScalarMatrix) -> Result<CommRule> {
        if alpha.rows() != self.n || alpha.cols() != self.n {
            return Err(Error::Shape(format!("basis change must be {0}x{0}", self.n)));
        }
        if alpha.field() != self.field {
            return Err(Error::FieldMismatch(self.field.tag(), alpha.field().tag()));
        }
        let beta = alpha.inverse()?;
        let n = self.n;
        // σ(A(x^q)) rewritten in z, then conjugated: β^l_m · σ(A)^j_l · α^i_j.
        let conjugated: Vec<MatrixPoly> = self
            .images
            .iter()
            .map(|m| {
                let sub = m.map_entries(|p| p.substitute_linear(&beta))?;
                let mut out = MatrixPoly::zero(n, self.field);
                for row in 0..n {
                    for col in 0..n {
                        let mut acc = NCPoly::zero(n, self.field);
                        for l in 0..n {
                            for j in 0..n {
                                let c = beta.get(l, row) * alpha.get(col, j);
                                if !c.is_zero() {
                                    acc = &acc + &sub.get(l, j).scale(&c)?;
                                }
                            }
                        }
                        out.set(row, col, acc);
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut images = Vec::with_capacity(n);
        for p in 0..n {
            let mut acc = MatrixPoly::zero(n, self.field);
            for (q, m) in conjugated.iter().enumerate() {
                let c = alpha.get(p, q);
                if !c.is_zero() {
                    acc = acc.checked_add(&m.scale(c)?)?;
                }
            }
            images.push(acc);
        }
        CommRule::from_matrices(self.field, images)
    }

    /// Rule obtained by exchanging the roles of two generators.
    pub fn swap_generators(&self, a: usize, b: usize) -> Result<CommRule> {
        for idx in [a, b] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange { index: idx, bound: self.n });
            }
        }
        let rows: Vec<Vec<Scalar>> = (0..self.n)
            .map(|r| {
                let src = if r == a { b } else if r == b { a } else { r };
                (0..self.n)
                    .map(|c| if c == src { self.field.one() } else { self.field.zero() })
                    .collect()
            })
            .collect();
        self.change_basis(&ScalarMatrix::from_rows(self.field, rows)?)
    }
}

/// Per-computation memo of `A(w)` for words, built from the left:
/// `A(x^i w) = A(x^i) · A(w)`.
pub(crate) struct WordImages<'a> {
    rule: &'a CommRule,
    memo: HashMap<Word, MatrixPoly>,
}

impl<'a> WordImages<'a> {
    pub fn new(rule: &'a CommRule) -> Self {
        WordImages { rule, memo: HashMap::new() }
    }

    pub fn get(&mut self, w: &Word) -> &MatrixPoly {
        if !self.memo.contains_key(w) {
            let letters: Vec<usize> = w.letters().collect();
            // Find the longest memoized suffix, then extend leftwards.
            let mut start = letters.len();
            let mut acc = MatrixPoly::identity(self.rule.n, self.rule.field);
            for t in (0..letters.len()).rev() {
                let suffix = Word::from_letters(letters[t..].iter().copied());
                if let Some(m) = self.memo.get(&suffix) {
                    acc = m.clone();
                    start = t;
                    break;
                }
            }
            for t in (0..start).rev() {
                acc = self.rule.images[letters[t]]
                    .checked_mul(&acc)
                    .expect("shapes fixed by the rule");
                self.memo
                    .insert(Word::from_letters(letters[t..].iter().copied()), acc.clone());
            }
            self.memo.entry(w.clone()).or_insert(acc);
        }
        &self.memo[w]
    }
}
