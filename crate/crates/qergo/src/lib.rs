//! Verification kernels for finite-dimensional models of quantum-symmetry
//! actions on operator algebras.
//!
//! The crate checks, at desk scale and mostly in exact rational arithmetic:
//!
//! * Jones projections inside tensor powers of M_n(ℂ), their Temperley-Lieb
//!   relations, the Markov trace identity τ(w e) = τ(w)/β with β = n², and
//!   span dimensions against Catalan numbers ([`tl`]);
//! * invariant functionals φ_Q(b) = Tr(Qᵗb), product states on tensor powers,
//!   adjoint actions evaluated at classical points, and Monte Carlo Haar
//!   averaging onto classical fixed subspaces ([`tensor`], [`haar`]);
//! * a symbolic word calculus for the Cuntz relations with the quasi-free
//!   state ω_Q and its invariance at classical points ([`cuntz`]);
//! * modular spectra of product states and factor-type classification from
//!   eigenvalue ratio groups ([`modular`]);
//! * the angle-parametrized 4×4 magic unitary over two reflection projections,
//!   quantum-permutation axioms, and a word-independence rank witness
//!   ([`magic`]);
//! * coset quotient spaces of finite groups: the subgroup coaction, the
//!   conditional expectation E, ergodicity, and the exact integration formula
//!   ([`quotient`]).

pub mod cuntz;
pub mod error;
pub mod haar;
pub mod magic;
pub mod mat;
pub mod modular;
pub mod quotient;
pub mod rat;
pub mod scalar;
pub mod tensor;
pub mod tl;

pub use error::{Error, Result};
pub use mat::Mat;
pub use rat::Rat;
pub use scalar::{C64, CRational, Rational, Scalar};
pub use tensor::{DensityFunctional, TensorOperator, UnitaryPoint};
