//! Exact arithmetic for trace-zero quadratic forms of totally real number fields.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed with
//! arbitrary-precision integers and rationals: no floating point touches a
//! determinant, a Gram matrix, or a theta coefficient.
//!
//! Modules, bottom-up:
//!
//! * [`linalg`]: integer and rational matrices, Bareiss determinant and rank,
//!   Hermite normal form, saturated kernels, exact LDLᵀ and Gram-matrix LLL.
//! * [`numfield`]: monic integer polynomials, discriminants, Sturm counts,
//!   Newton power sums, Dedekind's criterion and the trace-zero lattice.
//! * [`qform`]: even integral quadratic forms, level, lattice-point
//!   enumeration, theta series and small-rank isometry search.
//! * [`modular`]: Kronecker symbols, quadratic characters, theta-series
//!   metadata and the weight-2 dimension lower bound.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod linalg;
pub mod modular;
pub mod numfield;
pub mod qform;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, RatMatrix};
pub use modular::{CharacterSpec, DimBound, DimBoundMode, ThetaMetadata};
pub use numfield::{FieldRecord, OrderBasis, Polynomial, TraceZeroLattice};
pub use qform::{FormInvariants, QuadraticForm, ThetaSeries};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
