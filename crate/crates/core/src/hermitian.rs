//! Linear algebra over the fixed signature-(2,1) Hermitian form.
//!
//! The form matrix is
//!
//! ```text
//!       ⎡0 0 1⎤
//!   H = ⎢0 1 0⎥
//!       ⎣1 0 0⎦
//! ```
//!
//! and `⟨v, w⟩ = w* H v` is linear in the first slot.

use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Tolerances, C64};

pub type CVec3 = Vector3<C64>;
pub type CMat3 = Matrix3<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// `e^{iα}`.
#[inline]
pub fn cis(alpha: f64) -> C64 {
    C64::from_polar(1.0, alpha)
}

/// The form matrix `H`.
pub fn form_matrix() -> CMat3 {
    CMat3::new(ZERO, ZERO, ONE, ZERO, ONE, ZERO, ONE, ZERO, ZERO)
}

/// `⟨v, w⟩ = w* H v`.
#[inline]
pub fn herm(v: &CVec3, w: &CVec3) -> C64 {
    v[0] * w[2].conj() + v[1] * w[1].conj() + v[2] * w[0].conj()
}

/// Infinity norm (largest absolute row sum).
pub fn norm_inf(m: &CMat3) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat3) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖M* H M − H‖∞`.
pub fn form_deviation(m: &CMat3) -> f64 {
    let h = form_matrix();
    norm_inf(&(m.adjoint() * h * m - h))
}

/// Distance between two matrices as projective (scalar-class) elements:
/// `min_c ‖b − c·a‖_F / ‖b‖_F`.
pub fn projective_residual(a: &CMat3, b: &CMat3) -> f64 {
    let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if aa == 0.0 || bb == 0.0 {
        return if aa == bb { 0.0 } else { 1.0 };
    }
    let ab: C64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    let c = ab / aa;
    (b - a * c).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / bb.sqrt()
}

/// Distance between two vectors as projective points of ℂP²:
/// `min_c |w − c·v| / |w|`.
pub fn projective_vec_residual(v: &CVec3, w: &CVec3) -> f64 {
    let vv = v.norm_squared();
    let ww = w.norm_squared();
    if vv == 0.0 || ww == 0.0 {
        return if vv == ww { 0.0 } else { 1.0 };
    }
    let c = v.dotc(w) / vv;
    (w - v * c).norm() / ww.sqrt()
}

/// An ideal point of complex hyperbolic 2-space, carried by one of its lifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    lift: CVec3,
}

impl BoundaryPoint {
    /// Wraps a lift after checking that it is non-zero and null.
    pub fn new(lift: CVec3, tol: &Tolerances) -> Result<Self> {
        let n2 = lift.norm_squared();
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::NotNull { value: f64::NAN });
        }
        let value = herm(&lift, &lift).norm();
        if value > tol.null * n2 {
            return Err(Error::NotNull { value });
        }
        Ok(Self { lift })
    }

    /// Wraps a lift without the null check. Used for values produced by
    /// exact formulas or by isometries applied to boundary points.
    pub fn from_lift(lift: CVec3) -> Self {
        Self { lift }
    }

    pub fn lift(&self) -> &CVec3 {
        &self.lift
    }

    /// Same projective point with the lift multiplied by `c`.
    pub fn rescaled(&self, c: C64) -> Self {
        Self { lift: self.lift * c }
    }

    /// Image under an isometry.
    pub fn image(&self, a: &Isometry) -> Self {
        Self { lift: a.matrix() * self.lift }
    }

    /// Whether `self` and `other` are the same point of ℂP², relative to `tol`.
    pub fn same_point(&self, other: &Self, tol: f64) -> bool {
        projective_vec_residual(&self.lift, &other.lift) <= tol
    }
}

/// An element of SU(2,1): form-preserving, unit determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    matrix: CMat3,
    trace: C64,
}

impl Isometry {
    /// Validates that `m` preserves the form and has determinant one.
    pub fn new(m: CMat3, tol: &Tolerances) -> Result<Self> {
        let scale = max_abs(&m).max(1.0);
        let deviation = form_deviation(&m);
        if !(deviation <= tol.form * scale * scale) {
            return Err(Error::FormViolation { deviation });
        }
        let det = m.determinant();
        if !((det - ONE).norm() <= tol.det * scale.powi(3)) {
            return Err(Error::FormViolation { deviation: (det - ONE).norm() });
        }
        Ok(Self::from_matrix_unchecked(m))
    }

    /// Skips validation. For closed-form matrices and products of isometries.
    pub fn from_matrix_unchecked(m: CMat3) -> Self {
        Self { matrix: m, trace: m.trace() }
    }

    pub fn identity() -> Self {
        Self::from_matrix_unchecked(CMat3::identity())
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.trace
    }

    /// `M⁻¹ = H M* H`, exact for form-preserving matrices.
    pub fn inverse(&self) -> Self {
        let h = form_matrix();
        Self::from_matrix_unchecked(h * self.matrix.adjoint() * h)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc * *self)
    }

    /// `[A, B] = A B A⁻¹ B⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    /// Projective distance to `other` (see [`projective_residual`]).
    pub fn projective_residual(&self, other: &Self) -> f64 {
        projective_residual(&self.matrix, &other.matrix)
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, rhs: Isometry) -> Isometry {
        Isometry::from_matrix_unchecked(self.matrix * rhs.matrix)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            let row: Vec<String> = (0..3)
                .map(|c| {
                    let z = self.matrix[(r, c)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rescales a form-preserving matrix into SU(2,1) by the principal cube root
/// of its determinant. Central elements `ωᵏ·I` are mapped to `I`.
pub fn su21_normalize(m: &CMat3, tol: &Tolerances) -> Result<Isometry> {
    let det = m.determinant();
    if !(det.norm() > 0.0) || !det.is_finite() {
        return Err(Error::Singular { det: det.norm() });
    }
    let scaled = m / det.cbrt();
    // the scalar kernel of SU(2,1) → PU(2,1)
    let c = scaled[(0, 0)];
    let off_scalar = (scaled - CMat3::identity() * c).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if off_scalar <= tol.form && (c.powu(3) - ONE).norm() <= tol.det {
        return Ok(Isometry::identity());
    }
    let scale = max_abs(&scaled).max(1.0);
    let deviation = form_deviation(&scaled);
    if !(deviation <= tol.form * scale * scale) {
        return Err(Error::FormViolation { deviation });
    }
    Ok(Isometry::from_matrix_unchecked(scaled))
}

/// Eigenvalue of `a` at a projectively fixed boundary point `p`.
pub fn eigenvalue_at(a: &Isometry, p: &BoundaryPoint, tol: &Tolerances) -> Result<C64> {
    let v = p.lift();
    let av = a.matrix() * v;
    let i = (0..3)
        .max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm()))
        .unwrap_or(0);
    let lambda = av[i] / v[i];
    let residual = (av - v * lambda).norm() / v.norm();
    if !(residual <= tol.fix * max_abs(a.matrix()).max(1.0)) {
        return Err(Error::NotFixed { residual });
    }
    Ok(lambda)
}

/// A vector polar to the complex line through `p` and `q`:
/// `⟨c, p⟩ = ⟨c, q⟩ = 0`.
pub fn polar_vector(p: &BoundaryPoint, q: &BoundaryPoint, tol: &Tolerances) -> Result<CVec3> {
    let h = form_matrix();
    let hp = h * p.lift();
    let hq = h * q.lift();
    let c = hp.cross(&hq).conjugate();
    if c.norm() <= tol.null * p.lift().norm() * q.lift().norm() {
        return Err(Error::DegeneratePair);
    }
    Ok(c)
}

/// Orthogonal projection of `z` onto the geodesic with endpoints `p1`, `p2`.
///
/// The lift of `p1` is rescaled so that `⟨p1, p2⟩ = −1`; the output is then a
/// negative vector with `⟨π, π⟩ = −2`.
pub fn geodesic_project(
    z: &BoundaryPoint,
    p1: &BoundaryPoint,
    p2: &BoundaryPoint,
    tol: &Tolerances,
) -> Result<CVec3> {
    let h12 = herm(p1.lift(), p2.lift());
    if h12.norm() <= tol.null * p1.lift().norm() * p2.lift().norm() {
        return Err(Error::DegeneratePair);
    }
    let v1 = p1.lift() * (-ONE / h12);
    let v2 = *p2.lift();
    let zn = z.lift().norm();
    let a1 = herm(z.lift(), &v1).norm();
    let a2 = herm(z.lift(), &v2).norm();
    if a1 <= tol.null * zn * v1.norm() || a2 <= tol.null * zn * v2.norm() {
        return Err(Error::OnIdealEndpoint);
    }
    Ok(v1 * C64::from((a2 / a1).sqrt()) + v2 * C64::from((a1 / a2).sqrt()))
}

/// Hyperbolic distance (curvature between −1 and −1/4 convention:
/// `cosh²(d/2) = |⟨u,v⟩|² / (⟨u,u⟩⟨v,v⟩)`) between two negative vectors.
///
/// Evaluated through the difference of normalised, phase-aligned lifts so
/// that nearby points do not suffer from cancellation.
pub fn projective_distance(u: &CVec3, v: &CVec3) -> f64 {
    let uu = herm(u, u).re;
    let vv = herm(v, v).re;
    if !(uu < 0.0 && vv < 0.0) {
        return f64::NAN;
    }
    let un = u / C64::from((-uu).sqrt());
    let mut vn = v / C64::from((-vv).sqrt());
    let uv = herm(&un, &vn);
    if uv.norm() > 0.0 {
        // make ⟨un, vn⟩ real negative
        vn *= -(uv / uv.norm()).conj();
    }
    let w = un - vn;
    let ww = herm(&w, &w).re.max(0.0);
    // ⟨w,w⟩ = 2(cosh(d/2) − 1) = 4 sinh²(d/4)
    4.0 * (ww.sqrt() / 2.0).asinh()
}
