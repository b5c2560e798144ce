//! Parabolic representations of `F₂ = ⟨a, b⟩` built from balanced
//! tetrahedra and prescribed eigenvalues.

use serde::{Deserialize, Serialize};

use crate::classify::{classify, IsometryClass};
use crate::hermitian::{cis, eigenvalue_at, herm, polar_vector, su21_normalize, BoundaryPoint, CMat3, Isometry};
use crate::invariants::is_complex_linear;
use crate::tetrahedra::{standard_lifts, IdealTetrahedron, TetraParams, COMPLEX_LINE_MARGIN};
use crate::{Error, Result, Tolerances, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Smallest accepted `σ_min / σ_max` for a change-of-basis matrix.
const BASIS_CONDITION: f64 = 1e-10;

fn check_unit(lambda: C64) -> Result<()> {
    if (lambda.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnitModulus { modulus: lambda.norm() });
    }
    Ok(())
}

fn columns(a: &BoundaryPoint, b: &crate::hermitian::CVec3, c: &BoundaryPoint) -> Result<(CMat3, CMat3)> {
    let s = CMat3::from_columns(&[*a.lift(), *b, *c.lift()]);
    let sv = s.singular_values();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for v in sv.iter() {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    let condition = lo / hi;
    if !(condition > BASIS_CONDITION) {
        return Err(Error::SingularBasis { condition });
    }
    let inv = s.try_inverse().ok_or(Error::SingularBasis { condition })?;
    Ok((s, inv))
}

/// The unique isometry mapping `q` to `r` with `p` as a neutral fixed point of
/// eigenvalue `λ`.
///
/// When `(p, q, r)` spans ℂ³ the matrix is written in the basis
/// `(p, q, r)`; when the three points share a complex line the basis is
/// `(p, n, q)` with `n` polar to that line.
pub fn neutral_map(
    p: &BoundaryPoint,
    q: &BoundaryPoint,
    r: &BoundaryPoint,
    lambda: C64,
    tol: &Tolerances,
) -> Result<Isometry> {
    check_unit(lambda)?;
    if p.same_point(q, tol.fix) || p.same_point(r, tol.fix) || q.same_point(r, tol.fix) {
        return Err(Error::DegenerateTriple);
    }
    let (pv, qv, rv) = (p.lift(), q.lift(), r.lift());
    let lb2 = lambda.conj() * lambda.conj();
    if is_complex_linear(p, q, r, COMPLEX_LINE_MARGIN, tol)? {
        let n = polar_vector(p, q, tol)?;
        let (s, s_inv) = columns(p, &n, q)?;
        let corner = lambda * herm(rv, qv) * herm(qv, pv) / (herm(rv, pv) * herm(pv, qv));
        let m2 = CMat3::new(lambda, ZERO, corner, ZERO, lb2, ZERO, ZERO, ZERO, lambda);
        return su21_normalize(&(s * m2 * s_inv), tol);
    }
    let (s, s_inv) = columns(p, qv, r)?;
    let (rq, pq, rp, qr, pr, qp) = (
        herm(rv, qv),
        herm(pv, qv),
        herm(rv, pv),
        herm(qv, rv),
        herm(pv, rv),
        herm(qv, pv),
    );
    let m1 = CMat3::new(
        lambda,
        ZERO,
        lambda * rq / pq + lb2 * rp * qr / (pr * qp),
        ZERO,
        ZERO,
        -lb2 * rp / qp,
        ZERO,
        lambda * qp / rp,
        lambda + lb2,
    );
    su21_normalize(&(s * m1 * s_inv), tol)
}

/// A representation `a ↦ A`, `b ↦ B` with its fixed-point tetrahedron
/// `(p_A, p_B, p_AB, p_BA)` and the eigenvalues realised by the SU(2,1) lifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicRep {
    pub a: Isometry,
    pub b: Isometry,
    pub lambda_a: C64,
    pub lambda_b: C64,
    pub lambda_ab: C64,
    pub tetra: IdealTetrahedron,
}

/// Types of `A`, `B` and `AB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepClasses {
    pub a: IsometryClass,
    pub b: IsometryClass,
    pub ab: IsometryClass,
}

impl ParabolicRep {
    pub fn ab(&self) -> Isometry {
        self.a * self.b
    }

    pub fn ba(&self) -> Isometry {
        self.b * self.a
    }

    pub fn classes(&self, tol: &Tolerances) -> Result<RepClasses> {
        Ok(RepClasses {
            a: classify(&self.a, tol)?,
            b: classify(&self.b, tol)?,
            ab: classify(&self.ab(), tol)?,
        })
    }
}

/// Representation attached to a balanced tetrahedron `(p₁, p₂, p₃, p₄)`:
/// `A` fixes `p₁` and maps `p₄ ↦ p₃`, `B` fixes `p₂` and maps `p₃ ↦ p₄`.
pub fn rep_from_tetra(t: &IdealTetrahedron, lambda_a: C64, lambda_b: C64, tol: &Tolerances) -> Result<ParabolicRep> {
    check_unit(lambda_a)?;
    check_unit(lambda_b)?;
    t.check_nondegenerate(tol)?;
    let x = t.cross_ratio(tol)?;
    let deviation = (x.norm() - 1.0).abs();
    if deviation > tol.balanced {
        return Err(Error::NotBalanced { deviation });
    }
    let a = neutral_map(&t.p1, &t.p4, &t.p3, lambda_a, tol)?;
    let b = neutral_map(&t.p2, &t.p3, &t.p4, lambda_b, tol)?;
    let lambda_a = eigenvalue_at(&a, &t.p1, tol)?;
    let lambda_b = eigenvalue_at(&b, &t.p2, tol)?;
    let lambda_ab = lambda_a * lambda_b / x;
    Ok(ParabolicRep { a, b, lambda_a, lambda_b, lambda_ab, tetra: *t })
}

/// Upper-triangular `A` and lower-triangular `B` for `τ(θ, φ, ψ)`, with
/// `c₁ = √(2cos2θ)`, `c₂ = √(2cos2φ)`.
pub fn rep_closed_form(theta: f64, phi: f64, psi: f64, lambda_a: C64, lambda_b: C64) -> Result<ParabolicRep> {
    check_unit(lambda_a)?;
    check_unit(lambda_b)?;
    let tetra = standard_lifts(&TetraParams::balanced(theta, phi, psi))?;
    let c1 = (2.0 * (2.0 * theta).cos()).max(0.0).sqrt();
    let c2 = (2.0 * (2.0 * phi).cos()).max(0.0).sqrt();

    let la = lambda_a;
    let la2 = la.conj() * la.conj();
    let a = CMat3::new(
        la,
        -la2 * cis(-theta + psi) * c1 + la * cis(phi - psi) * c2,
        -la * cis(2.0 * theta) - la * cis(2.0 * phi) + la2 * cis(-theta - phi + 2.0 * psi) * (c1 * c2),
        ZERO,
        la2,
        la * cis(theta - psi) * c1 - la2 * cis(-phi + psi) * c2,
        ZERO,
        ZERO,
        la,
    );

    let lb = lambda_b;
    let lb2 = lb.conj() * lb.conj();
    let b = CMat3::new(
        lb,
        ZERO,
        ZERO,
        lb2 * cis(-theta - psi) * c1 - lb * cis(phi + psi) * c2,
        lb2,
        ZERO,
        -lb * cis(2.0 * theta) - lb * cis(2.0 * phi) + lb2 * cis(-theta - phi - 2.0 * psi) * (c1 * c2),
        -lb * cis(theta + psi) * c1 + lb2 * cis(-phi - psi) * c2,
        lb,
    );

    let x = cis(-2.0 * theta - 2.0 * phi);
    Ok(ParabolicRep {
        a: Isometry::from_matrix_unchecked(a),
        b: Isometry::from_matrix_unchecked(b),
        lambda_a,
        lambda_b,
        lambda_ab: lambda_a * lambda_b / x,
        tetra,
    })
}
