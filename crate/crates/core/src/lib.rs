//! strata-core: exact-arithmetic engine for orbit Cartan type stratifications
//! of loop spaces and inertia spaces of translation groupoids, a finite
//! groupoid calculus, and polynomial de Rham machinery for basic forms.
//!
//! All symbolic computation is done over arbitrary-precision rationals;
//! floating point is quarantined to the [`probe`] module.

pub mod error;
pub mod forms;
pub mod linalg;

pub mod group;
pub mod groupoid;
pub mod probe;
pub mod strata;

pub use group::{Angle, CircleSubgroup, CircleWeightAction, FiniteMatrixGroup, Subgroup};
pub use linalg::{Rational, RationalMatrix, RationalSubspace};
