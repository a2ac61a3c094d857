//! Exact computation of quadratic invariants of isolated hypersurface
//! singularities.
//!
//! The crate is organised around a handful of layers:
//!
//! * [`gw`]: arithmetic in the Grothendieck–Witt ring of ℚ, 𝔽_p and ℚ(t),
//!   with an equality decision procedure, trace transfer and specialization.
//! * [`poly`]: sparse multivariate polynomials over ℚ, a text parser and a
//!   Buchberger engine for zero-dimensional quotients.
//! * [`ekl`]: the quadratic Milnor number as the class of the Scheja–Storch
//!   form, built from the Bezoutian of the partial derivatives.
//! * [`euler`]: Euler characteristic data of smooth projective hypersurfaces.
//! * [`conductor`]: both sides of the quadratic conductor formula and the
//!   verification report comparing them.
//! * [`tate`]: a symbolic calculus of pure Tate motives used to describe the
//!   Picard–Lefschetz monodromy of quadratic singularities.
//! * [`batch`]: multi-point aggregation with optional trace transfer.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod batch;
pub mod conductor;
pub mod ekl;
mod error;
pub mod euler;
pub mod gw;
pub mod poly;
pub mod tate;

pub use error::{Error, Result};
pub use gw::{Field, GwElement, SquareClass};
pub use poly::{Monomial, MonomialOrder, Polynomial};
