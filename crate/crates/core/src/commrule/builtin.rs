//! Constructors for a few classical rules.

use super::CommRule;
use crate::error::{Error, Result};
use crate::freealg::{Field, MatrixPoly, NCPoly, Scalar, ScalarMatrix};

/// `x^i dx^j = 0`: every generator image vanishes.
pub fn zero_rule(n: usize, field: Field) -> CommRule {
    CommRule::zero(n, field)
}

/// Diagonal rule `x^j dx^i = dx^i · q^{ij} x^j`, requiring
/// `q^{ij} q^{ji} = 1` for `i ≠ j`.
pub fn diagonal_rule(q: &ScalarMatrix) -> Result<CommRule> {
    let n = q.rows();
    if q.cols() != n {
        return Err(Error::Shape("q must be square".into()));
    }
    let field = q.field();
    for i in 0..n {
        for j in (i + 1)..n {
            if !(q.get(i, j) * q.get(j, i)).is_one() {
                return Err(Error::Constraint(format!(
                    "q[{a}][{b}]·q[{b}][{a}] = {} must equal 1",
                    q.get(i, j) * q.get(j, i),
                    a = i + 1,
                    b = j + 1
                )));
            }
        }
    }
    let images = (0..n)
        .map(|j| {
            let mut m = MatrixPoly::zero(n, field);
            for i in 0..n {
                m.set(i, i, NCPoly::var(n, field, j).scale(q.get(i, j))?);
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    CommRule::from_matrices(field, images)
}

/// `x^i dx^j = -dx^i · x^j`.
pub fn minus_rule(n: usize, field: Field) -> CommRule {
    let images = (0..n)
        .map(|i| {
            let mut m = MatrixPoly::zero(n, field);
            for j in 0..n {
                m.set(i, j, -&NCPoly::var(n, field, j));
            }
            m
        })
        .collect();
    CommRule::from_matrices(field, images).expect("valid shape")
}

/// `x^1 dx^1 = dx^1 · (α_2 x^2 + … + α_n x^n)` and `x^i dx^j = -dx^i · x^j`
/// for every other pair; `alphas = [α_2, …, α_n]`.
pub fn single_power_rule(alphas: &[Scalar]) -> Result<CommRule> {
    let n = alphas.len() + 1;
    if n < 2 {
        return Err(Error::Shape("need at least two generators".into()));
    }
    let field = alphas[0].field();
    let mut tail = NCPoly::zero(n, field);
    for (offset, a) in alphas.iter().enumerate() {
        tail = tail.checked_add(&NCPoly::var(n, field, offset + 1).scale(a)?)?;
    }
    let mut images = vec![MatrixPoly::zero(n, field); n];
    for (i, m) in images.iter_mut().enumerate() {
        for j in 0..n {
            let entry = if i == 0 && j == 0 {
                tail.clone()
            } else {
                -&NCPoly::var(n, field, j)
            };
            m.set(i, j, entry);
        }
    }
    CommRule::from_matrices(field, images)
}

/// Two-generator rule
/// `x^1dx^1 = dx^1·μx^2, x^1dx^2 = -dx^1·x^2, x^2dx^1 = -dx^2·x^1, x^2dx^2 = dx^2·λx^1`.
pub fn split_rule(mu: Scalar, lambda: Scalar) -> Result<CommRule> {
    let field = mu.field();
    if lambda.field() != field {
        return Err(Error::FieldMismatch(field.tag(), lambda.field().tag()));
    }
    let x1 = NCPoly::var(2, field, 0);
    let x2 = NCPoly::var(2, field, 1);
    let mut a1 = MatrixPoly::zero(2, field);
    a1.set(0, 0, x2.scale(&mu)?);
    a1.set(0, 1, -&x2);
    let mut a2 = MatrixPoly::zero(2, field);
    a2.set(1, 0, -&x1);
    a2.set(1, 1, x1.scale(&lambda)?);
    CommRule::from_matrices(field, vec![a1, a2])
}
