//! Kernels of rational systems by reduction modulo word-size primes.
//!
//! Each prime gives a reduced echelon form over `F_p`; the kernel basis read
//! off its free columns is lifted by Chinese remaindering and rational
//! reconstruction, then verified exactly. Verification makes the result
//! independent of prime luck: `dim ker_Q ≤ dim ker_p` for every prime, so
//! `dim ker_p` independent exact kernel vectors span `ker_Q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::SparseVec;
use super::scalar::{is_prime, Field, Scalar};

/// Primes tried before giving up.
const MAX_PRIMES: usize = 64;

type Row = Vec<(usize, u64)>;

/// Descending primes below `2^32`, so products of residues fit in `u64`.
fn primes() -> impl Iterator<Item = u64> {
    (3..1u64 << 32).rev().step_by(2).filter(|&p| is_prime(p)).take(MAX_PRIMES)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// Reduced row echelon form over `F_p` with sparse rows.
struct ModEchelon {
    p: u64,
    rows: BTreeMap<usize, Row>,
    scratch: Vec<u64>,
}

impl ModEchelon {
    fn new(p: u64, width: usize) -> ModEchelon {
        ModEchelon { p, rows: BTreeMap::new(), scratch: vec![0; width] }
    }

    fn reduce(&mut self, v: &Row) -> Row {
        let p = self.p;
        let mut touched: Vec<usize> = Vec::with_capacity(v.len());
        for &(i, x) in v {
            self.scratch[i] = x;
            touched.push(i);
        }
        for &(i, c) in v {
            if let Some(row) = self.rows.get(&i) {
                for &(j, y) in row {
                    touched.push(j);
                    self.scratch[j] = (self.scratch[j] + p - c * y % p) % p;
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::new();
        for j in touched {
            let x = std::mem::take(&mut self.scratch[j]);
            if x != 0 {
                out.push((j, x));
            }
        }
        out
    }

    fn insert(&mut self, v: &Row) -> bool {
        let r = self.reduce(v);
        let Some(&(pivot, lead)) = r.first() else {
            return false;
        };
        let p = self.p;
        let scale = inv_mod(lead, p);
        let r: Row = r.into_iter().map(|(j, x)| (j, x * scale % p)).collect();
        for row in self.rows.values_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |e| e.0) {
                let c = row[pos].1;
                *row = sub_scaled(row, c, &r, p);
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}

/// `a - c·b` over `F_p`.
fn sub_scaled(a: &Row, c: u64, b: &Row, p: u64) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (ia, ib) = (a.get(i).map(|e| e.0), b.get(j).map(|e| e.0));
        let entry = match (ia, ib) {
            (Some(x), Some(y)) if x == y => {
                let v = (a[i].1 + p - c * b[j].1 % p) % p;
                i += 1;
                j += 1;
                (x, v)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, a[i - 1].1)
            }
            (Some(x), None) => {
                i += 1;
                (x, a[i - 1].1)
            }
            (_, Some(y)) => {
                j += 1;
                (y, (p - c * b[j - 1].1 % p) % p)
            }
            (None, None) => unreachable!(),
        };
        if entry.1 != 0 {
            out.push(entry);
        }
    }
    out
}

/// `a/b` with `|a|, b ≤ sqrt(m/2)` congruent to `x` mod `m`, if one exists.
fn reconstruct(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Kernel data lifted so far: pivot pattern plus CRT residues of the
/// pivot-row entries in every free column.
struct Lift {
    pivots: Vec<usize>,
    free: Vec<usize>,
    modulus: BigInt,
    /// `values[f][r]`: entry of pivot row `r` in free column `free[f]`.
    values: Vec<Vec<BigInt>>,
}

/// Kernel of `images` over the rationals, or `None` if the primes ran out.
pub(crate) fn rational_kernel(images: &[SparseVec], codomain_dim: usize) -> Option<Vec<SparseVec>> {
    let k = images.len();
    let mut eqs: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); codomain_dim];
    for (j, img) in images.iter().enumerate() {
        for (c, x) in img.iter() {
            let Scalar::Rational(q) = x else { return None };
            eqs[*c].push((j, q));
        }
    }
    eqs.retain(|e| !e.is_empty());
    let mut lift: Option<Lift> = None;
    let mut last: Option<Vec<SparseVec>> = None;
    'primes: for p in primes() {
        let mut ech = ModEchelon::new(p, k);
        let mut rank = 0;
        for e in &eqs {
            if rank == k {
                break;
            }
            let mut row = Vec::with_capacity(e.len());
            for (j, q) in e {
                let den = residue(q.denom(), p);
                if den == 0 {
                    continue 'primes;
                }
                let v = residue(q.numer(), p) * inv_mod(den, p) % p;
                if v != 0 {
                    row.push((*j, v));
                }
            }
            if ech.insert(&row) {
                rank += 1;
            }
        }
        if rank == k {
            return Some(Vec::new());
        }
        let pivots: Vec<usize> = ech.rows.keys().copied().collect();
        let residues = |f: usize| -> Vec<u64> {
            ech.rows
                .values()
                .map(|row| row.binary_search_by_key(&f, |e| e.0).map_or(0, |pos| row[pos].1))
                .collect()
        };
        // Larger rank, then lexicographically smaller pivots, wins; unlucky
        // primes lose on one of the two.
        let better = match &lift {
            None => true,
            Some(l) => pivots.len() > l.pivots.len() || (pivots.len() == l.pivots.len() && pivots < l.pivots),
        };
        if better {
            let free: Vec<usize> = (0..k).filter(|f| !ech.rows.contains_key(f)).collect();
            let values = free
                .iter()
                .map(|&f| residues(f).into_iter().map(BigInt::from).collect())
                .collect();
            lift = Some(Lift { pivots, free, modulus: BigInt::from(p), values });
            last = None;
        } else {
            let l = lift.as_mut().expect("lift present");
            if pivots != l.pivots {
                continue;
            }
            let m_inv = inv_mod(residue(&l.modulus, p), p);
            for (f, column) in l.free.iter().zip(l.values.iter_mut()) {
                for (x, b) in column.iter_mut().zip(residues(*f)) {
                    let a = residue(x, p);
                    let t = (b + p - a) % p * m_inv % p;
                    *x += &l.modulus * t;
                }
            }
            l.modulus *= p;
        }
        let l = lift.as_ref().expect("lift present");
        let Some(candidate) = lift_candidate(l) else { continue };
        // Verify once two successive lifts agree.
        if last.as_ref() == Some(&candidate) && verify(&candidate, images, codomain_dim) {
            return Some(candidate);
        }
        last = Some(candidate);
    }
    None
}

fn lift_candidate(l: &Lift) -> Option<Vec<SparseVec>> {
    l.free
        .iter()
        .zip(&l.values)
        .map(|(&f, column)| {
            let mut v = Vec::with_capacity(column.len() + 1);
            for (&p, x) in l.pivots.iter().zip(column) {
                if !x.is_zero() {
                    v.push((p, Scalar::Rational(-reconstruct(x, &l.modulus)?)));
                }
            }
            v.push((f, Field::Rational.one()));
            v.sort_by_key(|e| e.0);
            Some(SparseVec::from_sorted(v))
        })
        .collect()
}

fn verify(kernel: &[SparseVec], images: &[SparseVec], codomain_dim: usize) -> bool {
    kernel
        .iter()
        .all(|c| SparseVec::combine(c, images, codomain_dim, Field::Rational).is_zero())
}
