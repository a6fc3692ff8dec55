use super::linalg::{kernel, Echelon, SparseVec};
use super::poly::NCPoly;
use super::scalar::{Field, Scalar};
use super::word::ambient_dim;
use crate::error::{Error, Result};

/// A linear subspace of the degree-`s` homogeneous component of the free
/// algebra on `n` generators, stored as its unique reduced row echelon basis
/// over the canonical word enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    field: Field,
    degree: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(n: usize, field: Field, degree: usize) -> Result<Subspace> {
        ambient_dim(n, degree)?;
        Ok(Subspace { n, field, degree, rows: Vec::new() })
    }

    pub fn full(n: usize, field: Field, degree: usize) -> Result<Subspace> {
        let dim = ambient_dim(n, degree)?;
        let rows = (0..dim).map(|i| SparseVec::unit(i, field)).collect();
        Ok(Subspace { n, field, degree, rows })
    }

    /// Linear span of homogeneous degree-`s` polynomials.
    pub fn span(n: usize, field: Field, s: usize, vectors: &[NCPoly]) -> Result<Subspace> {
        ambient_dim(n, s)?;
        let mut ech = Echelon::new(field);
        for v in vectors {
            check_poly(v, n, field)?;
            if !v.is_homogeneous_of(s) {
                return Err(Error::NotHomogeneous(s));
            }
            ech.insert(&v.to_sparse(s)?);
        }
        Ok(Subspace::from_echelon(n, field, s, ech))
    }

    pub(crate) fn from_echelon(n: usize, field: Field, degree: usize, ech: Echelon) -> Subspace {
        Subspace { n, field, degree, rows: ech.into_rows() }
    }

    pub(crate) fn from_vectors<'a, I>(n: usize, field: Field, degree: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut ech = Echelon::new(field);
        for v in vectors {
            ech.insert(v);
        }
        Subspace::from_echelon(n, field, degree, ech)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        ambient_dim(self.n, self.degree).expect("checked at construction")
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Pivot columns, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0).collect()
    }

    /// Echelon basis as polynomials.
    pub fn basis(&self) -> Vec<NCPoly> {
        self.rows
            .iter()
            .map(|r| NCPoly::from_sparse(self.n, self.field, self.degree, r))
            .collect()
    }

    /// Echelon basis as dense coordinate rows.
    pub fn basis_matrix(&self) -> Vec<Vec<Scalar>> {
        let dim = self.ambient_dim();
        self.rows
            .iter()
            .map(|r| {
                let mut row = vec![self.field.zero(); dim];
                for (i, c) in r.iter() {
                    row[*i] = c.clone();
                }
                row
            })
            .collect()
    }

    pub(crate) fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub(crate) fn echelon(&self) -> Echelon {
        Echelon::from_rref(self.field, self.rows.iter().cloned())
    }

    /// Membership test; the zero polynomial is always contained.
    pub fn contains(&self, v: &NCPoly) -> Result<bool> {
        check_poly(v, self.n, self.field)?;
        if v.is_zero() {
            return Ok(true);
        }
        if !v.is_homogeneous_of(self.degree) {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: v.degree().unwrap_or(0),
            });
        }
        Ok(self.echelon().contains(&v.to_sparse(self.degree)?))
    }

    fn check_same_space(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.tag(), other.field.tag()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_space(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        // c·B1 lies in W2 iff its residue modulo W2 vanishes.
        let ech = other.echelon();
        let residues: Vec<SparseVec> = self.rows.iter().map(|r| ech.reduce(r)).collect();
        let dim = self.ambient_dim();
        let combos = kernel(&residues, dim, self.field);
        let vectors: Vec<SparseVec> = combos
            .iter()
            .map(|c| SparseVec::combine(c, &self.rows, dim, self.field))
            .collect();
        Ok(Subspace::from_vectors(self.n, self.field, self.degree, &vectors))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_space(other)?;
        let mut ech = self.echelon();
        for r in &other.rows {
            ech.insert(r);
        }
        Ok(Subspace::from_echelon(self.n, self.field, self.degree, ech))
    }

    /// Equality of subspaces, i.e. of their reduced echelon bases.
    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.rows == other.rows)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_space(other)?;
        let ech = other.echelon();
        Ok(self.rows.iter().all(|r| ech.contains(r)))
    }
}

fn check_poly(v: &NCPoly, n: usize, field: Field) -> Result<()> {
    if v.n() != n {
        return Err(Error::GeneratorMismatch(n, v.n()));
    }
    if v.field() != field {
        return Err(Error::FieldMismatch(field.tag(), v.field().tag()));
    }
    Ok(())
}

/// Full preimage `{m : map(m) ∈ targets}` of a block linear map defined on
/// the degree-`domain_degree` basis words.
///
/// `images[j][b]` is block `b` of the image of the `j`-th basis word and must
/// be homogeneous of `targets[b].degree()`. The result is the kernel of the
/// composite into the product of the quotients by the targets.
pub fn preimage(domain_degree: usize, images: &[Vec<NCPoly>], targets: &[Subspace]) -> Result<Subspace> {
    let first = targets
        .first()
        .ok_or_else(|| Error::Shape("preimage needs at least one target block".into()))?;
    let (n, field) = (first.n, first.field);
    let dim = ambient_dim(n, domain_degree)?;
    if images.len() != dim {
        return Err(Error::Shape(format!("expected {dim} basis images, got {}", images.len())));
    }
    for t in targets {
        if t.n != n {
            return Err(Error::GeneratorMismatch(n, t.n));
        }
        if t.field != field {
            return Err(Error::FieldMismatch(field.tag(), t.field.tag()));
        }
    }
    let echelons: Vec<Echelon> = targets.iter().map(Subspace::echelon).collect();
    let mut residues = Vec::with_capacity(dim);
    for blocks in images {
        if blocks.len() != targets.len() {
            return Err(Error::Shape(format!(
                "expected {} image blocks, got {}",
                targets.len(),
                blocks.len()
            )));
        }
        let mut stacked = SparseVec::new();
        let mut offset = 0;
        for ((p, t), ech) in blocks.iter().zip(targets).zip(&echelons) {
            check_poly(p, n, field)?;
            if !p.is_homogeneous_of(t.degree) {
                return Err(Error::NotHomogeneous(t.degree));
            }
            stacked = stacked.concat(&ech.reduce(&p.to_sparse(t.degree)?), offset);
            offset += t.ambient_dim();
        }
        residues.push(stacked);
    }
    Ok(preimage_of_residues(n, field, domain_degree, &residues))
}

/// Kernel of the map sending basis word `j` to `residues[j]`.
pub(crate) fn preimage_of_residues(n: usize, field: Field, degree: usize, residues: &[SparseVec]) -> Subspace {
    let codomain = residues
        .iter()
        .filter_map(|r| r.iter().last().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let combos = kernel(residues, codomain, field);
    Subspace::from_vectors(n, field, degree, &combos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::word::Word;

    fn q() -> Field {
        Field::Rational
    }

    fn w(letters: &[usize]) -> NCPoly {
        NCPoly::monomial(2, q().one(), Word::from_letters(letters.iter().copied()))
    }

    fn lin(a: i64, p: &NCPoly, b: i64, r: &NCPoly) -> NCPoly {
        &p.scale(&q().from_i64(a)).unwrap() + &r.scale(&q().from_i64(b)).unwrap()
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let s = Subspace::span(2, q(), 2, &[w(&[0, 1]), w(&[1, 0]), &w(&[0, 1]) + &w(&[1, 0])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(Subspace::span(2, q(), 2, &[]).unwrap().dim(), 0);
        let g = lin(2, &w(&[0, 1]), -1, &w(&[1, 0]));
        assert_eq!(Subspace::span(2, q(), 2, &[g]).unwrap().dim(), 1);
    }

    #[test]
    fn span_rejects_mixed_degrees() {
        let bad = &w(&[0]) + &w(&[0, 1]);
        assert_eq!(Subspace::span(2, q(), 2, &[bad]), Err(Error::NotHomogeneous(2)));
    }

    #[test]
    fn membership() {
        let g = lin(2, &w(&[0, 1]), -1, &w(&[1, 0]));
        let s = Subspace::span(2, q(), 2, &[g]).unwrap();
        assert!(s.contains(&lin(4, &w(&[0, 1]), -2, &w(&[1, 0]))).unwrap());
        assert!(!s.contains(&w(&[0, 1])).unwrap());
        assert!(s.contains(&NCPoly::zero(2, q())).unwrap());
        assert!(s.contains(&w(&[0])).is_err());
    }

    #[test]
    fn intersections() {
        let a = Subspace::span(2, q(), 2, &[w(&[0, 0]), w(&[0, 1])]).unwrap();
        let b = Subspace::span(2, q(), 2, &[w(&[0, 1]), w(&[1, 1])]).unwrap();
        let expected = Subspace::span(2, q(), 2, &[w(&[0, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), expected);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let z = Subspace::zero(2, q(), 2).unwrap();
        assert_eq!(a.intersect(&z).unwrap(), z);
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(2, q(), 2, &[w(&[0, 1]), lin(1, &w(&[0, 1]), 3, &w(&[1, 1]))]).unwrap();
        let b = Subspace::span(2, q(), 2, &[lin(5, &w(&[1, 1]), 1, &w(&[0, 1])), w(&[1, 1])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), vec![1, 3]);
    }

    #[test]
    fn preimage_of_identity_and_zero_maps() {
        let target = Subspace::span(2, q(), 2, &[w(&[1, 0])]).unwrap();
        let identity: Vec<Vec<NCPoly>> = (0..4).map(|i| vec![NCPoly::from_sparse(2, q(), 2, &SparseVec::unit(i, q()))]).collect();
        assert_eq!(preimage(2, &identity, std::slice::from_ref(&target)).unwrap(), target);
        let zero: Vec<Vec<NCPoly>> = (0..4).map(|_| vec![NCPoly::zero(2, q())]).collect();
        assert!(preimage(2, &zero, &[target]).unwrap().is_full());
    }
}
