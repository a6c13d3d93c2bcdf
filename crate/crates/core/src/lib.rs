//! Exact equivariant localization for Hamiltonian torus actions with
//! isolated fixed points.
//!
//! Everything in this crate works from fixed-point data alone: for each
//! fixed point its moment value and its tangent weights, together with
//! equivariant classes given by their restrictions to the fixed points.
//! On top of that data the crate provides
//!
//! * exact multivariate polynomial and hyperplane-factored rational
//!   arithmetic over the rationals ([`algebra`]),
//! * the one-variable residue operator `Res_X^+` in two independent forms,
//!   localization sums and reduction pairings ([`localization`]),
//! * canonical Morse bases, the rational decomposition `η = η₋ + η₊` and
//!   the constructive kernel decision with witnesses ([`morse`]),
//! * verified toric example spaces and generic circle selection
//!   ([`toric`]),
//! * the staged one-variable residue criterion for reduction in stages
//!   ([`stages`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub mod localization;
pub mod morse;
pub mod stages;
pub mod toric;

pub use algebra::{FactoredRational, LinForm, Monomial, Poly, Rational};
pub use error::{Error, Result};
pub use localization::{EquivClass, FixedPoint, Space, SpaceOptions};
pub use morse::{CanonicalBasis, Decomposition, KernelVerdict};
pub use stages::{StageChain, StageSpace};
pub use toric::{CircleChoice, ToricModel, TorusSpace};
