//! Workbench for first-order noncommutative differential calculi on free
//! associative algebras.
//!
//! A commutation rule `x^j dx^i = dx^k · A(x^j)^i_k` determines a unique
//! differential on the free algebra `F<x1, …, xn>`. This crate computes its
//! twisted partial derivatives, builds the largest consistent ideal degree
//! by degree for homogeneous rules, checks consistency of presented
//! algebras and recognizes the two-variable rules whose optimal algebra is
//! commutative.

pub mod calculus;
pub mod classify2;
pub mod cli;
pub mod commrule;
mod error;
pub mod freealg;
pub mod optimal;

pub use error::{Error, Result};
