//! Coordinate tables for a homogeneous rule.
//!
//! For every degree `s` the engine stores, per basis word `w` of length `s`,
//! the coordinates of `D_k(w)` and of every entry of `A(w)`. Both are filled
//! by peeling the leftmost letter: left multiplication by `x^m` on degree-`t`
//! coordinates is a shift by `m·n^t`.

use crate::commrule::CommRule;
use crate::error::{Error, Result};
use crate::freealg::linalg::{kernel, Echelon, SparseVec};
use crate::freealg::{ambient_dim, preimage_of_residues, Field, NCPoly, Scalar, Subspace};

type LinearForm = Vec<(usize, Scalar)>;

pub(crate) struct Engine {
    n: usize,
    field: Field,
    /// `lin[l][k][j]`: the linear form `A(x^l)^j_k` as `(letter, coeff)`.
    lin: Vec<Vec<Vec<LinearForm>>>,
    /// `deriv[s][k][word]`: coordinates of `D_k(word)` in degree `s-1`.
    deriv: Vec<Vec<Vec<SparseVec>>>,
    /// `amat[s][k*n+i][word]`: coordinates of `A(word)^i_k` in degree `s`.
    amat: Vec<Vec<Vec<SparseVec>>>,
}

impl Engine {
    pub fn new(rule: &CommRule) -> Result<Engine> {
        rule.require_homogeneous()?;
        let (n, field) = (rule.n(), rule.field());
        let lin = (0..n)
            .map(|l| {
                (0..n)
                    .map(|k| {
                        (0..n)
                            .map(|j| {
                                rule.entry(l, k, j)
                                    .terms()
                                    .map(|(w, c)| (w.first().expect("linear entry"), c.clone()))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let deriv0 = vec![vec![SparseVec::new()]; n];
        let amat0 = (0..n * n)
            .map(|ki| {
                let e = if ki / n == ki % n { SparseVec::unit(0, field) } else { SparseVec::new() };
                vec![e]
            })
            .collect();
        Ok(Engine { n, field, lin, deriv: vec![deriv0], amat: vec![amat0] })
    }

    pub fn dim(&self, s: usize) -> Result<usize> {
        ambient_dim(self.n, s)
    }

    /// `Σ_m c_m · x^m · v` where `v` has degree `t` (block size `n^t`).
    fn left_mul(&self, form: &LinearForm, v: &SparseVec, block: usize) -> SparseVec {
        let mut out = Vec::new();
        for (m, c) in form {
            out.extend(v.iter().map(|(i, x)| (m * block + i, c * x)));
        }
        SparseVec::from_sorted(out)
    }

    fn ensure_deriv(&mut self, s: usize) -> Result<()> {
        while self.deriv.len() <= s {
            let t = self.deriv.len();
            let dim = self.dim(t)?;
            let sub = self.dim(t - 1)?;
            let block = if t >= 2 { self.dim(t - 2)? } else { 1 };
            let prev = &self.deriv[t - 1];
            let mut table = vec![Vec::with_capacity(dim); self.n];
            for idx in 0..dim {
                let (l, r) = (idx / sub, idx % sub);
                for (k, slot) in table.iter_mut().enumerate() {
                    let mut d = if k == l { SparseVec::unit(r, self.field) } else { SparseVec::new() };
                    for (j, dj) in prev.iter().enumerate() {
                        let form = &self.lin[l][k][j];
                        if !form.is_empty() && !dj[r].is_zero() {
                            d = d.add(&self.left_mul(form, &dj[r], block), self.field);
                        }
                    }
                    slot.push(d);
                }
            }
            self.deriv.push(table);
        }
        Ok(())
    }

    fn ensure_amat(&mut self, s: usize) -> Result<()> {
        let n = self.n;
        while self.amat.len() <= s {
            let t = self.amat.len();
            let dim = self.dim(t)?;
            let sub = self.dim(t - 1)?;
            let prev = &self.amat[t - 1];
            let mut table = vec![Vec::with_capacity(dim); n * n];
            for idx in 0..dim {
                let (l, r) = (idx / sub, idx % sub);
                for k in 0..n {
                    for i in 0..n {
                        let mut e = SparseVec::new();
                        for j in 0..n {
                            let form = &self.lin[l][k][j];
                            let inner = &prev[j * n + i][r];
                            if !form.is_empty() && !inner.is_zero() {
                                e = e.add(&self.left_mul(form, inner, sub), self.field);
                            }
                        }
                        table[k * n + i].push(e);
                    }
                }
            }
            self.amat.push(table);
        }
        Ok(())
    }

    /// `D_k(v)` for `v` of degree `s ≥ 1`, one vector per `k`.
    pub fn derivatives(&mut self, s: usize, v: &SparseVec) -> Result<Vec<SparseVec>> {
        self.ensure_deriv(s)?;
        let sub = self.dim(s - 1)?;
        Ok(self.deriv[s]
            .iter()
            .map(|table| SparseVec::combine(v, table, sub, self.field))
            .collect())
    }

    /// Entries of `A(v)` for `v` of degree `s`, indexed `k*n + i`.
    pub fn apply_entries(&mut self, s: usize, v: &SparseVec) -> Result<Vec<SparseVec>> {
        self.ensure_amat(s)?;
        let dim = self.dim(s)?;
        Ok(self.amat[s]
            .iter()
            .map(|table| SparseVec::combine(v, table, dim, self.field))
            .collect())
    }

    /// `U_s = {m : D_k(m) ∈ prev for all k}`.
    pub fn compute_u(&mut self, s: usize, prev: &Subspace) -> Result<Subspace> {
        if s < 1 {
            return Err(Error::InvalidDegree { min: 1, got: s });
        }
        self.check_subspace(prev, s - 1)?;
        if prev.is_full() {
            return Subspace::full(self.n, self.field, s);
        }
        self.ensure_deriv(s)?;
        let sub = self.dim(s - 1)?;
        let ech = prev.echelon();
        let dim = self.dim(s)?;
        let residues: Vec<SparseVec> = (0..dim)
            .map(|w| {
                let mut stacked = SparseVec::new();
                for (k, table) in self.deriv[s].iter().enumerate() {
                    stacked = stacked.concat(&ech.reduce(&table[w]), k * sub);
                }
                stacked
            })
            .collect();
        Ok(preimage_of_residues(self.n, self.field, s, &residues))
    }

    /// Largest subspace of `u` mapped into itself by every entry of `A`.
    pub fn largest_invariant(&mut self, u: &Subspace) -> Result<Subspace> {
        let s = u.degree();
        self.check_subspace(u, s)?;
        let mut w = u.clone();
        loop {
            if w.is_zero() || w.is_full() {
                return Ok(w);
            }
            let next = self.invariance_step(&w)?;
            if next.dim() == w.dim() {
                return Ok(w);
            }
            w = next;
        }
    }

    /// `{v ∈ W : every entry of A(v) lies in W}`.
    fn invariance_step(&mut self, w: &Subspace) -> Result<Subspace> {
        let s = w.degree();
        self.ensure_amat(s)?;
        let dim = self.dim(s)?;
        let ech = w.echelon();
        let residues: Vec<SparseVec> = w
            .rows()
            .iter()
            .map(|b| {
                let mut stacked = SparseVec::new();
                for (ki, table) in self.amat[s].iter().enumerate() {
                    let e = SparseVec::combine(b, table, dim, self.field);
                    stacked = stacked.concat(&ech.reduce(&e), ki * dim);
                }
                stacked
            })
            .collect();
        let combos = kernel(&residues, self.n * self.n * dim, self.field);
        let vectors: Vec<SparseVec> = combos
            .iter()
            .map(|c| SparseVec::combine(c, w.rows(), dim, self.field))
            .collect();
        Ok(Subspace::from_vectors(self.n, self.field, s, &vectors))
    }

    /// Smallest `A`-invariant subspace containing `v` (degree `s`).
    pub fn invariant_closure(&mut self, s: usize, v: &SparseVec) -> Result<Subspace> {
        let mut ech = Echelon::new(self.field);
        let mut queue = vec![v.clone()];
        while let Some(x) = queue.pop() {
            if ech.insert(&x) {
                queue.extend(self.apply_entries(s, &x)?);
            }
        }
        Ok(Subspace::from_echelon(self.n, self.field, s, ech))
    }

    /// Whether `x^i·lower + lower·x^i ⊆ upper` for every generator.
    pub fn closed_under_generators(&self, lower: &Subspace, upper: &Subspace) -> Result<bool> {
        let t = lower.degree();
        let block = self.dim(t)?;
        let ech = upper.echelon();
        for b in lower.rows() {
            for i in 0..self.n {
                let left = b.offset(i * block);
                let right = SparseVec::from_sorted(b.iter().map(|(j, c)| (j * self.n + i, c.clone())).collect());
                if !ech.contains(&left) || !ech.contains(&right) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_sparse(&self, p: &NCPoly, s: usize) -> Result<SparseVec> {
        if p.n() != self.n {
            return Err(Error::GeneratorMismatch(self.n, p.n()));
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field.tag(), p.field().tag()));
        }
        p.to_sparse(s)
    }

    pub fn to_poly(&self, v: &SparseVec, s: usize) -> NCPoly {
        NCPoly::from_sparse(self.n, self.field, s, v)
    }

    fn check_subspace(&self, w: &Subspace, s: usize) -> Result<()> {
        if w.n() != self.n {
            return Err(Error::GeneratorMismatch(self.n, w.n()));
        }
        if w.field() != self.field {
            return Err(Error::FieldMismatch(self.field.tag(), w.field().tag()));
        }
        if w.degree() != s {
            return Err(Error::DegreeMismatch { expected: s, found: w.degree() });
        }
        Ok(())
    }
}
