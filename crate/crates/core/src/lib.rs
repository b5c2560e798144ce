//! Numerical toolkit for parabolic representations of the rank-two free
//! group into SU(2,1) and their three-fold symmetric (3,3,∞) extensions.
//!
//! Everything works over the signature-(2,1) Hermitian form
//!
//! ```text
//!     ⟨v, w⟩ = v₀·w̄₂ + v₁·w̄₁ + v₂·w̄₀
//! ```
//!
//! on ℂ³. Boundary points of complex hyperbolic 2-space are projective null
//! vectors of this form; isometries are unit-determinant matrices preserving
//! it.
//!
//! Module map:
//!
//! - [`hermitian`]: vectors, matrices, the form, lifts, projections.
//! - [`invariants`]: Cartan angular invariant, Korányi–Riemann cross-ratio,
//!   bending parameter.
//! - [`classify`]: trace polynomial, deltoid, isometry-type decision.
//! - [`tetrahedra`]: ideal tetrahedra in normal form, balanced tests,
//!   parameter extraction.
//! - [`representations`]: neutral-fixed-point maps and parabolic
//!   representations built from balanced tetrahedra.
//! - [`symmetry`]: the order-three generators `J₁`, `J₂` and the `(x, y, z)`
//!   coordinates.
//! - [`pinch`]: the polynomial `P(X, Y)`, curve tracing of its zero set and
//!   certification of super-pinched groups.
//! - [`families`]: the special one-parameter families and their thresholds.

pub mod classify;
pub mod error;
pub mod families;
pub mod hermitian;
pub mod invariants;
pub mod pinch;
pub mod representations;
pub mod sampling;
pub mod symmetry;
pub mod tetrahedra;
pub mod tolerances;

pub use error::{Error, Result};
pub use tolerances::Tolerances;

/// Double precision complex scalar used throughout.
pub type C64 = num_complex::Complex64;
