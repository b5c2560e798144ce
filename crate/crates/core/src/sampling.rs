//! Random elements for property sweeps: isometries, tetrahedron and group
//! parameters. All draws go through a caller-provided RNG so that sweeps are
//! reproducible from a seed.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use rand::Rng;

use crate::hermitian::{cis, CMat3, Isometry};
use crate::symmetry::SymGroupParams;
use crate::tetrahedra::TetraParams;
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Heisenberg translation fixing `(1,0,0)`:
/// `[[1, a, −|a|²/2 + i·s], [0, 1, −ā], [0, 0, 1]]`.
pub fn heisenberg_translation(a: C64, s: f64) -> Isometry {
    Isometry::from_matrix_unchecked(CMat3::new(
        ONE,
        a,
        C64::new(-a.norm_sqr() / 2.0, s),
        ZERO,
        ONE,
        -a.conj(),
        ZERO,
        ZERO,
        ONE,
    ))
}

/// Loxodromic (for `r ≠ 1`) diagonal element `diag(r·e^{iβ}, e^{−2iβ}, e^{iβ}/r)`.
pub fn diagonal_loxodromic(r: f64, beta: f64) -> Isometry {
    Isometry::from_matrix_unchecked(CMat3::from_diagonal(&nalgebra::Vector3::new(
        cis(beta) * r,
        cis(-2.0 * beta),
        cis(beta) / r,
    )))
}

/// Involution swapping `(1,0,0)` and `(0,0,1)`.
pub fn swap_involution() -> Isometry {
    Isometry::from_matrix_unchecked(CMat3::new(ZERO, ZERO, ONE, ZERO, -ONE, ZERO, ONE, ZERO, ZERO))
}

/// A random element of SU(2,1) of moderate size (entries of order ten at most).
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R) -> Isometry {
    let mut c = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let (a1, a2) = (c(), c());
    let t1 = heisenberg_translation(a1, rng.gen_range(-1.0..1.0));
    let t2 = heisenberg_translation(a2, rng.gen_range(-1.0..1.0));
    let d = diagonal_loxodromic(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
    t1 * d * swap_involution() * t2
}

/// A random loxodromic element: a diagonal loxodromic conjugated by a random
/// isometry. `|log r|` is kept at least `0.1` so that `f(tr)` is clearly
/// positive.
pub fn random_loxodromic<R: Rng + ?Sized>(rng: &mut R) -> Isometry {
    let mut log_r: f64 = rng.gen_range(0.1..1.5);
    if rng.gen_bool(0.5) {
        log_r = -log_r;
    }
    let d = diagonal_loxodromic(log_r.exp(), rng.gen_range(0.0..TAU));
    let s = random_isometry(rng);
    s * d * s.inverse()
}

/// Uniform draw from the open parameter box, keeping `margin` away from
/// the boundary of `θ, φ ∈ [−π/4, π/4]`, `ψ ∈ [0, π/2)`.
pub fn random_sym_params<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> SymGroupParams {
    SymGroupParams {
        theta: rng.gen_range(-FRAC_PI_4 + margin..FRAC_PI_4 - margin),
        phi: rng.gen_range(-FRAC_PI_4 + margin..FRAC_PI_4 - margin),
        psi: rng.gen_range(margin..FRAC_PI_2 - margin),
    }
}

/// Random tetrahedron parameters with the given `r`.
pub fn random_tetra_params<R: Rng + ?Sized>(rng: &mut R, margin: f64, r: f64) -> TetraParams {
    let s = random_sym_params(rng, margin);
    TetraParams { theta: s.theta, phi: s.phi, psi: s.psi, r }
}

/// Random unit complex number.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    cis(rng.gen_range(0.0..TAU))
}
