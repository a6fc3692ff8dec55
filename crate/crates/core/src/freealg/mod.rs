//! Exact scalars, words and noncommutative polynomials over the free
//! algebra `F<x1, …, xn>`, plus exact linear algebra on its homogeneous
//! components.

pub(crate) mod linalg;
mod matrix;
mod modular;
mod poly;
mod scalar;
mod subspace;
mod word;

pub use matrix::{MatrixPoly, ScalarMatrix};
pub use poly::NCPoly;
pub use scalar::{parse_rational, Field, Scalar};
pub use subspace::{preimage, Subspace};
pub use word::{ambient_dim, index_word, word_index, Word, MAX_AMBIENT_DIM, MAX_GENERATORS};

pub(crate) use subspace::preimage_of_residues;
