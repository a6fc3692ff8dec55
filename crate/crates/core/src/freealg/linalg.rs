//! Sparse exact row reduction.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// A sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct SparseVec(Vec<(usize, Scalar)>);

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec(Vec::new())
    }

    /// `entries` must be sorted by index; zeros are dropped.
    pub fn from_sorted(mut entries: Vec<(usize, Scalar)>) -> SparseVec {
        entries.retain(|(_, c)| !c.is_zero());
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec(entries)
    }

    pub fn unit(i: usize, field: Field) -> SparseVec {
        SparseVec(vec![(i, field.one())])
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, Scalar)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.0.first()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.0
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.0[k].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, a)| (*i, a * c)).collect())
    }

    /// `self - c * other`.
    pub fn sub_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, -&(c * y)));
                        b.next();
                    } else {
                        let v = x - &(c * y);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, -&(c * y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec, field: Field) -> SparseVec {
        self.sub_scaled(&-field.one(), other)
    }

    /// Shifts every index by `offset`.
    pub fn offset(&self, offset: usize) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, c)| (i + offset, c.clone())).collect())
    }

    pub fn concat(&self, other: &SparseVec, offset: usize) -> SparseVec {
        debug_assert!(self.0.last().is_none_or(|(i, _)| *i < offset));
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|(i, c)| (i + offset, c.clone())));
        SparseVec(v)
    }

    /// Linear combination `Σ coeffs[j] * vectors[j]`, accumulated densely.
    pub fn combine(coeffs: &SparseVec, vectors: &[SparseVec], dim: usize, field: Field) -> SparseVec {
        let mut acc: Vec<Scalar> = vec![field.zero(); dim];
        for (j, c) in coeffs.iter() {
            for (i, x) in vectors[*j].iter() {
                acc[*i] = &acc[*i] + &(c * x);
            }
        }
        SparseVec(
            acc.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }
}

/// Incrementally maintained reduced row echelon form: pivot entries are 1
/// and every pivot column is zero in all other rows.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn from_rref(field: Field, rows: impl IntoIterator<Item = SparseVec>) -> Echelon {
        let rows = rows
            .into_iter()
            .map(|r| (r.leading().expect("nonzero echelon row").0, r))
            .collect();
        Echelon { field, rows }
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        // Rows vanish on each other's pivots, so the coefficients can be
        // read off `v` up front.
        let coeffs: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .cloned()
            .collect();
        if coeffs.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        for (p, c) in &coeffs {
            for (i, x) in self.rows[p].iter() {
                let entry = acc.entry(*i).or_insert_with(|| self.field.zero());
                *entry = &*entry - &(c * x);
            }
        }
        SparseVec::from_sorted(acc.into_iter().collect())
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&lead.inv().expect("nonzero leading entry"));
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(pivot).cloned() {
                *row = row.sub_scaled(&c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Rows in order of increasing pivot column.
    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_values().collect()
    }
}

/// Basis of `{c : Σ_j c_j images[j] = 0}`, as coefficient vectors of length
/// `images.len()`. `codomain_dim` bounds the indices used by the images.
pub(crate) fn kernel(images: &[SparseVec], codomain_dim: usize, field: Field) -> Vec<SparseVec> {
    if field == Field::Rational {
        if let Some(k) = super::modular::rational_kernel(images, codomain_dim) {
            return k;
        }
    }
    // One equation per codomain coordinate; the free columns of the reduced
    // system index the kernel basis.
    let k = images.len();
    let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); codomain_dim];
    for (j, img) in images.iter().enumerate() {
        for (c, x) in img.iter() {
            eqs[*c].push((j, x.clone()));
        }
    }
    let mut ech = Echelon::new(field);
    let mut rank = 0;
    for e in eqs.into_iter().filter(|e| !e.is_empty()) {
        if rank == k {
            break;
        }
        if ech.insert(&SparseVec(e)) {
            rank += 1;
        }
    }
    let rows = ech.rows;
    (0..k)
        .filter(|f| !rows.contains_key(f))
        .map(|f| {
            let mut v: Vec<(usize, Scalar)> = rows
                .iter()
                .filter_map(|(p, row)| row.get(f).map(|c| (*p, -c)))
                .collect();
            v.push((f, field.one()));
            v.sort_by_key(|(i, _)| *i);
            SparseVec(v)
        })
        .collect()
}
