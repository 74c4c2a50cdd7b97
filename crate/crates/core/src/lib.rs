//! Exact arithmetic for the central-difference deformation of the
//! Heisenberg algebra, the finite deformed Fock space it generates, and the
//! deformed Hermite polynomials that appear as its wavefunctions.
//!
//! Every algebraic identity is represented so that it can be checked with
//! zero tolerance: scalars are arbitrary-precision rationals, square roots of
//! rationals, or rational multiples of the single irrational unit
//! `sqrt(s_max / pi)`. Floating point appears only in transforms, sampled
//! wavefunctions and convergence tables.
//!
//! Module map:
//!
//! * [`numerics`]: rationals, square roots of rationals, dense polynomials,
//!   trigonometric moments.
//! * [`hermite`]: deformed Hermite polynomials (recurrence, closed form,
//!   symbolic in the deformation parameter) and their contraction.
//! * [`lattice`]: position, central difference, average and shift operators
//!   on finite lattice windows, the lattice/phase transform and parity.
//! * [`fock`]: ladder operators, the deformed number states, the Gram matrix
//!   by two routes and the commutation-relation suite.
//! * [`limits`]: floating-point convergence studies as the spacing shrinks.
//! * [`report`] and [`cli`]: verification reports and the command-line front end.

pub mod cli;
pub mod error;
pub mod fock;
pub mod hermite;
pub mod lattice;
pub mod limits;
pub mod numerics;
pub mod params;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use params::DeformationParam;
