//! Ideal tetrahedra: normal form, balanced tests and parameter extraction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use serde::{Deserialize, Serialize};

use crate::hermitian::{cis, geodesic_project, projective_distance, BoundaryPoint, CVec3};
use crate::invariants::{bending, cartan, cross_ratio, is_complex_linear};
use crate::{Error, Result, Tolerances, C64};

/// Margin from `±π/2` under which a vertex triple is treated as lying in a
/// complex line during parameter extraction.
pub const COMPLEX_LINE_MARGIN: f64 = 1e-6;

/// Slack on the parameter ranges for floating-point inputs at the boundary.
const RANGE_SLACK: f64 = 1e-12;

/// Ordered quadruple of boundary points `(p₁, p₂, p₃, p₄)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdealTetrahedron {
    pub p1: BoundaryPoint,
    pub p2: BoundaryPoint,
    pub p3: BoundaryPoint,
    pub p4: BoundaryPoint,
}

/// Normal-form parameters `(θ, φ, ψ, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetraParams {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
    pub r: f64,
}

impl TetraParams {
    /// The balanced tetrahedron `τ(θ, φ, ψ)`.
    pub fn balanced(theta: f64, phi: f64, psi: f64) -> Self {
        Self { theta, phi, psi, r: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let quarter = FRAC_PI_4 + RANGE_SLACK;
        if !(self.theta.abs() <= quarter) {
            return Err(Error::Range(format!("theta = {} outside [-pi/4, pi/4]", self.theta)));
        }
        if !(self.phi.abs() <= quarter) {
            return Err(Error::Range(format!("phi = {} outside [-pi/4, pi/4]", self.phi)));
        }
        if !(self.psi >= -RANGE_SLACK && self.psi <= FRAC_PI_2 + RANGE_SLACK) {
            return Err(Error::Range(format!("psi = {} outside [0, pi/2]", self.psi)));
        }
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(Error::Range(format!("r = {} must be positive", self.r)));
        }
        Ok(())
    }
}

/// Residuals of the two balanced tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceReport {
    /// `||𝕏(p₁,p₂,p₃,p₄)| − 1|`.
    pub cross_ratio_residual: f64,
    /// Distance between the projections of `p₃` and `p₄` onto the geodesic `(p₁p₂)`.
    pub projection_residual: f64,
    pub by_cross_ratio: bool,
    pub by_projection: bool,
}

impl BalanceReport {
    pub fn balanced(&self) -> bool {
        self.by_cross_ratio
    }

    pub fn tests_agree(&self) -> bool {
        self.by_cross_ratio == self.by_projection
    }
}

impl IdealTetrahedron {
    pub fn new(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint, p4: BoundaryPoint) -> Self {
        Self { p1, p2, p3, p4 }
    }

    pub fn vertices(&self) -> [BoundaryPoint; 4] {
        [self.p1, self.p2, self.p3, self.p4]
    }

    /// Checks that the four vertices are pairwise distinct.
    pub fn check_nondegenerate(&self, tol: &Tolerances) -> Result<()> {
        let v = self.vertices();
        for i in 0..4 {
            for j in i + 1..4 {
                if v[i].same_point(&v[j], tol.fix) {
                    return Err(Error::DegenerateTetrahedron(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// Image under an isometry.
    pub fn image(&self, g: &crate::hermitian::Isometry) -> Self {
        Self::new(self.p1.image(g), self.p2.image(g), self.p3.image(g), self.p4.image(g))
    }

    pub fn cross_ratio(&self, tol: &Tolerances) -> Result<C64> {
        cross_ratio(&self.p1, &self.p2, &self.p3, &self.p4, tol)
    }

    pub fn bending(&self, tol: &Tolerances) -> Result<C64> {
        bending(&self.p1, &self.p2, &self.p3, &self.p4, tol)
    }

    /// Runs both balanced tests: `|𝕏| = 1` and equality of the projections
    /// of `p₃`, `p₄` onto the geodesic `(p₁p₂)`.
    pub fn balance(&self, tol: &Tolerances) -> Result<BalanceReport> {
        self.check_nondegenerate(tol)?;
        let x = self.cross_ratio(tol)?;
        let cross_ratio_residual = (x.norm() - 1.0).abs();
        let q3 = geodesic_project(&self.p3, &self.p1, &self.p2, tol)?;
        let q4 = geodesic_project(&self.p4, &self.p1, &self.p2, tol)?;
        let projection_residual = projective_distance(&q3, &q4);
        Ok(BalanceReport {
            cross_ratio_residual,
            projection_residual,
            by_cross_ratio: cross_ratio_residual <= tol.balanced,
            by_projection: projection_residual <= tol.proj_dist,
        })
    }

    pub fn is_balanced(&self, tol: &Tolerances) -> Result<bool> {
        Ok(self.balance(tol)?.balanced())
    }
}

/// Lifts of the normal form:
///
/// ```text
/// p₁ = (1, 0, 0), p₂ = (0, 0, 1),
/// p₃ = (−e^{2iθ}, √(2cos2θ)·e^{iθ−iψ}, 1),
/// p₄ = (−r²e^{−2iφ}, r·√(2cos2φ)·e^{−iφ+iψ}, 1).
/// ```
pub fn standard_lifts(params: &TetraParams) -> Result<IdealTetrahedron> {
    params.validate()?;
    let TetraParams { theta, phi, psi, r } = *params;
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let c1 = (2.0 * (2.0 * theta).cos()).max(0.0).sqrt();
    let c2 = (2.0 * (2.0 * phi).cos()).max(0.0).sqrt();
    let p1 = CVec3::new(one, zero, zero);
    let p2 = CVec3::new(zero, zero, one);
    let p3 = CVec3::new(-cis(2.0 * theta), cis(theta - psi) * c1, one);
    let p4 = CVec3::new(-cis(-2.0 * phi) * (r * r), cis(-phi + psi) * (r * c2), one);
    Ok(IdealTetrahedron::new(
        BoundaryPoint::from_lift(p1),
        BoundaryPoint::from_lift(p2),
        BoundaryPoint::from_lift(p3),
        BoundaryPoint::from_lift(p4),
    ))
}

/// Recovers `(θ, φ, ψ, r)` from
/// `2θ = 𝔸(p₂,p₁,p₃)`, `2φ = 𝔸(p₁,p₂,p₄)`, `4ψ = arg 𝔹 ∈ [0, 2π)` and
/// `r = |𝕏|^{1/2}`.
pub fn extract_params(t: &IdealTetrahedron, tol: &Tolerances) -> Result<TetraParams> {
    t.check_nondegenerate(tol)?;
    let (p1, p2, p3, p4) = (&t.p1, &t.p2, &t.p3, &t.p4);
    if is_complex_linear(p1, p2, p3, COMPLEX_LINE_MARGIN, tol)?
        || is_complex_linear(p1, p2, p4, COMPLEX_LINE_MARGIN, tol)?
    {
        return Err(Error::ComplexLineDegeneracy);
    }
    let theta = cartan(p2, p1, p3, tol)? / 2.0;
    let phi = cartan(p1, p2, p4, tol)? / 2.0;
    let b = t.bending(tol)?;
    let mut four_psi = b.arg().rem_euclid(TAU);
    if four_psi >= TAU {
        four_psi = 0.0;
    }
    let r = t.cross_ratio(tol)?.norm().sqrt();
    Ok(TetraParams { theta, phi, psi: four_psi / 4.0, r })
}
