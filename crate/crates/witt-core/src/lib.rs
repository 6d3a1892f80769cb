//! Exact-arithmetic quadratic form theory over Q, R, F_q, Q_p and rational
//! function fields k(T): square classes and symbols, diagonal forms and their
//! invariants, Witt and Grothendieck-Witt ring arithmetic, unit groups,
//! residue and specialization maps, finite-support Gersten complexes over
//! curves, and Bezout forms of rational self-maps of P^1.
//!
//! All arithmetic is exact: rationals are arbitrary-precision fractions,
//! finite fields are represented explicitly, p-adic predicates are decided
//! from rational representatives, and function-field elements are kept in
//! factored form.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bezout;
pub mod elem;
pub mod error;
pub mod field;
pub mod forms;
pub mod funcfield;
pub mod gersten;
pub mod intarith;
pub mod poly;
pub mod residue;
pub mod units;
pub mod witt;

pub use elem::{FieldElement, SquareClass};
pub use error::WittError;
pub use field::{BaseCtx, BaseElem, FieldDescriptor, FqCtx};
pub use forms::{DiagonalForm, FormInvariants};
pub use poly::Poly;
pub use witt::{GwClass, TorsionLevelElement, WittClass};

/// Convenience alias for arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;
/// Convenience alias for arbitrary-precision integers.
pub type Int = num_bigint::BigInt;

pub type Result<T> = core::result::Result<T, WittError>;
