//! Operator classes and norm-attainment decision procedures.
//!
//! An operator `T` attains its norm when `‖Tf‖ = ‖T‖‖f‖` for some nonzero `f`;
//! equivalently `‖T‖²` is an eigenvalue of `T T*`. This crate builds concrete
//! operator families and decides attainment with verifiable certificates:
//!
//! * [`idempotent`]: idempotents in block form `[[I, X], [0, 0]]` and the
//!   self-adjoint operator `T + T* − I`.
//! * [`modelspace`]: compressed shifts on model spaces of finite Blaschke products.
//! * [`toeplitz`]: Toeplitz, analytic Toeplitz and Laurent operators.
//! * [`structured`]: infinite diagonal, block-diagonal and shift operators whose
//!   norm profile is validated on a finite prefix.
//!
//! [`numkit`] supplies the dense complex linear algebra and [`symbols`] the
//! functions on the circle.

pub mod error;
pub mod idempotent;
pub mod modelspace;
pub mod numkit;
pub mod structured;
pub mod symbols;
pub mod toeplitz;
pub mod verdict;

pub use error::{Error, Result};
pub use numkit::{Complex, ComplexMatrix, TolerancePolicy};
pub use verdict::{Verdict, VerdictKind, Witness};
