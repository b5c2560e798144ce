//! Three-fold symmetric groups `⟨J₁, J₂⟩`.
//!
//! For the balanced tetrahedron `τ(θ, φ, ψ) = (p_A, p_B, p_AB, p_BA)`, `J₁` is
//! the order-three map cycling `p_B → p_A → p_AB` and `J₂` cycles
//! `p_A → p_B → p_BA`. Then `A = J₁J₂` and `B = J₂J₁` give the parabolic
//! representation with `λ_A = λ_B = e^{−2i(θ+φ)/3}`.
//!
//! Most of the geometry is cleaner in the real coordinates
//!
//! ```text
//! x = 4√(cos2θ cos2φ)·cos2ψ,  y = 4√(cos2θ cos2φ)·sin2ψ,  z = 4cos(θ − φ).
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::hermitian::{cis, CMat3, Isometry};
use crate::tetrahedra::{standard_lifts, IdealTetrahedron, TetraParams};
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymGroupParams {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
}

impl SymGroupParams {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        let p = Self { theta, phi, psi };
        p.validate()?;
        Ok(p)
    }

    /// `θ, φ ∈ [−π/4, π/4]`, `ψ ∈ [0, π/2]`. The closed upper end for `ψ`
    /// is needed by the ideal triangle and second modular families.
    pub fn validate(&self) -> Result<()> {
        TetraParams::balanced(self.theta, self.phi, self.psi).validate()
    }

    pub fn in_range(&self) -> bool {
        self.theta.abs() <= FRAC_PI_4 + RANGE_SLACK
            && self.phi.abs() <= FRAC_PI_4 + RANGE_SLACK
            && self.psi >= -RANGE_SLACK
            && self.psi <= FRAC_PI_2 + RANGE_SLACK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XyzCoords {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl XyzCoords {
    /// `0 ≤ z ≤ 4`, `y ≥ 0`, `z² ≥ x² + y²`, up to `eps`.
    pub fn satisfies_invariants(&self, eps: f64) -> bool {
        self.z >= -eps
            && self.z <= 4.0 + eps
            && self.y >= -eps
            && self.z * self.z + eps >= self.x * self.x + self.y * self.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymGroup {
    pub j1: Isometry,
    pub j2: Isometry,
    pub params: SymGroupParams,
    pub coords: XyzCoords,
}

impl SymGroup {
    /// `A = J₁J₂`.
    pub fn a(&self) -> Isometry {
        self.j1 * self.j2
    }

    /// `B = J₂J₁`.
    pub fn b(&self) -> Isometry {
        self.j2 * self.j1
    }

    pub fn j1j2(&self) -> Isometry {
        self.a()
    }

    pub fn j1j2inv(&self) -> Isometry {
        self.j1 * self.j2.inverse()
    }

    /// `[J₁, J₂] = J₁J₂J₁⁻¹J₂⁻¹`.
    pub fn commutator(&self) -> Isometry {
        self.j1.commutator(&self.j2)
    }

    /// Fixed-point tetrahedron `(p_A, p_B, p_AB, p_BA)`.
    pub fn tetrahedron(&self) -> IdealTetrahedron {
        let SymGroupParams { theta, phi, psi } = self.params;
        standard_lifts(&TetraParams::balanced(theta, phi, psi)).expect("validated parameters")
    }
}

fn j1_matrix(theta: f64, psi: f64) -> CMat3 {
    let c1 = (2.0 * (2.0 * theta).cos()).max(0.0).sqrt();
    CMat3::new(
        cis(4.0 * theta / 3.0),
        cis(theta / 3.0 + psi) * c1,
        -cis(-2.0 * theta / 3.0),
        -cis(theta / 3.0 - psi) * c1,
        -cis(4.0 * theta / 3.0),
        ZERO,
        -cis(-2.0 * theta / 3.0),
        ZERO,
        ZERO,
    )
}

fn j2_matrix(phi: f64, psi: f64) -> CMat3 {
    let c2 = (2.0 * (2.0 * phi).cos()).max(0.0).sqrt();
    CMat3::new(
        ZERO,
        ZERO,
        -cis(-2.0 * phi / 3.0),
        ZERO,
        -cis(4.0 * phi / 3.0),
        cis(phi / 3.0 + psi) * c2,
        -cis(-2.0 * phi / 3.0),
        -cis(phi / 3.0 - psi) * c2,
        cis(4.0 * phi / 3.0),
    )
}

/// `J₁`, `J₂` with the principal cube roots `e^{iθ/3}`, `e^{iφ/3}`.
pub fn build_sym_group(p: &SymGroupParams) -> Result<SymGroup> {
    p.validate()?;
    Ok(SymGroup {
        j1: Isometry::from_matrix_unchecked(j1_matrix(p.theta, p.psi)),
        j2: Isometry::from_matrix_unchecked(j2_matrix(p.phi, p.psi)),
        params: *p,
        coords: to_xyz(p),
    })
}

pub fn to_xyz(p: &SymGroupParams) -> XyzCoords {
    let rho = 4.0 * ((2.0 * p.theta).cos() * (2.0 * p.phi).cos()).max(0.0).sqrt();
    XyzCoords {
        x: rho * (2.0 * p.psi).cos(),
        y: rho * (2.0 * p.psi).sin(),
        z: 4.0 * (p.theta - p.phi).cos(),
    }
}

/// All in-range `(θ, φ, ψ)` with the given coordinates.
///
/// With `d = θ − φ` and `s = θ + φ`: `cos d = z/4`,
/// `cos 2s = (x² + y²)/8 − cos 2d` and `2ψ = atan2(y, x)`. Both signs of `d`
/// and `s` are tried, so the output holds up to four parameter triples,
/// sorted and deduplicated. `ψ` is set to zero when `x = y = 0`.
pub fn from_xyz(c: &XyzCoords) -> Result<Vec<SymGroupParams>> {
    let eps = 1e-12;
    let XyzCoords { x, y, z } = *c;
    if !(z / 4.0 <= 1.0 + eps && z >= -eps) {
        return Err(Error::Infeasible(format!("z = {z} outside [0, 4]")));
    }
    if y < -eps {
        return Err(Error::Infeasible(format!("y = {y} is negative")));
    }
    let d0 = (z / 4.0).clamp(-1.0, 1.0).acos();
    let cos2s = (x * x + y * y) / 8.0 - (2.0 * d0).cos();
    if cos2s.abs() > 1.0 + eps {
        return Err(Error::Infeasible(format!("cos 2(theta+phi) = {cos2s}")));
    }
    let s0 = cos2s.clamp(-1.0, 1.0).acos() / 2.0;
    let psi = if x == 0.0 && y.max(0.0) == 0.0 { 0.0 } else { y.max(0.0).atan2(x) / 2.0 };

    let mut out: Vec<SymGroupParams> = Vec::with_capacity(4);
    for d in [d0, -d0] {
        for s in [s0, -s0] {
            let cand = SymGroupParams { theta: (s + d) / 2.0, phi: (s - d) / 2.0, psi };
            if !cand.in_range() {
                continue;
            }
            let back = to_xyz(&cand);
            let err = (back.x - x).abs().max((back.y - y).abs()).max((back.z - z).abs());
            if err > 1e-9 {
                continue;
            }
            if out
                .iter()
                .any(|q| (q.theta - cand.theta).abs() < 1e-12 && (q.phi - cand.phi).abs() < 1e-12)
            {
                continue;
            }
            out.push(cand);
        }
    }
    out.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(a.phi.total_cmp(&b.phi)));
    if out.is_empty() {
        return Err(Error::Infeasible("no in-range parameters".into()));
    }
    Ok(out)
}

/// `tr(J₁J₂) = 2e^{−2i(θ+φ)/3} + e^{4i(θ+φ)/3}`.
pub fn trace_j1j2(p: &SymGroupParams) -> C64 {
    let s = p.theta + p.phi;
    cis(-2.0 * s / 3.0) * 2.0 + cis(4.0 * s / 3.0)
}

/// `tr(J₁J₂⁻¹) = e^{i(θ−φ)/3}(z − x)`.
pub fn trace_j1j2inv(p: &SymGroupParams) -> C64 {
    let c = to_xyz(p);
    cis((p.theta - p.phi) / 3.0) * (c.z - c.x)
}

/// `f(tr(J₁J₂⁻¹)) = (x − z)²(x² − z² + 18) − 27`.
pub fn f_j1j2inv(c: &XyzCoords) -> f64 {
    let u = c.x - c.z;
    u * u * (c.x * c.x - c.z * c.z + 18.0) - 27.0
}

/// `tr[J₁, J₂] = 3 + ((x − z)(3x − z) + y² + 2i(x − z)y) / 4`.
pub fn trace_commutator(c: &XyzCoords) -> C64 {
    let u = c.x - c.z;
    C64::new(3.0 + (u * (3.0 * c.x - c.z) + c.y * c.y) / 4.0, u * c.y / 2.0)
}

/// Jacobian determinant of `(θ, φ, ψ) ↦ (x, y, z)`:
/// `128 sin(2θ + 2φ) sin(θ − φ)`.
pub fn jacobian_xyz(p: &SymGroupParams) -> f64 {
    128.0 * (2.0 * p.theta + 2.0 * p.phi).sin() * (p.theta - p.phi).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, trace_poly_f, IsometryTag};
    use crate::hermitian::{eigenvalue_at, form_deviation};
    use crate::representations::{rep_closed_form, rep_from_tetra};
    use crate::sampling::random_sym_params;
    use crate::Tolerances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(theta: f64, phi: f64, psi: f64) -> SymGroup {
        build_sym_group(&SymGroupParams::new(theta, phi, psi).unwrap()).unwrap()
    }

    #[test]
    fn generators_are_order_three_isometries() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let g = build_sym_group(&random_sym_params(&mut rng, 0.0)).unwrap();
            for j in [g.j1, g.j2] {
                assert!(form_deviation(j.matrix()) < 1e-13);
                assert!((j.matrix().determinant() - 1.0).norm() < 1e-13);
                let cube = j.pow(3);
                assert!(cube.projective_residual(&Isometry::identity()) < 1e-10);
                assert_eq!(classify(&j, &tol).unwrap().tag, IsometryTag::RegularElliptic);
            }
        }
    }

    #[test]
    fn generators_permute_vertices() {
        let g = group(0.2, -0.35, 0.9);
        let t = g.tetrahedron();
        let eps = 1e-12;
        assert!(t.p2.image(&g.j1).same_point(&t.p1, eps));
        assert!(t.p1.image(&g.j1).same_point(&t.p3, eps));
        assert!(t.p3.image(&g.j1).same_point(&t.p2, eps));
        assert!(t.p1.image(&g.j2).same_point(&t.p2, eps));
        assert!(t.p2.image(&g.j2).same_point(&t.p4, eps));
        assert!(t.p4.image(&g.j2).same_point(&t.p1, eps));
    }

    #[test]
    fn collapsed_case_gives_inverse() {
        let tol = Tolerances::default();
        let g = group(0.2, -0.2, 0.0);
        assert!((g.j2.matrix() - g.j1.inverse().matrix()).norm() < 1e-14);
        assert_eq!(classify(&g.a(), &tol).unwrap().tag, IsometryTag::Identity);
    }

    #[test]
    fn trace_of_product_on_deltoid() {
        let tol = Tolerances::default();
        let g = group(0.3, 0.1, 1.1);
        let expect = trace_j1j2(&g.params);
        assert!((g.a().trace() - expect).norm() < 1e-13);
        assert!(trace_poly_f(expect).abs() < 1e-12);
        let lam = eigenvalue_at(&g.a(), &g.tetrahedron().p1, &tol).unwrap();
        assert!((lam - cis(-2.0 * 0.4 / 3.0)).norm() < 1e-13);
    }

    #[test]
    fn xyz_examples() {
        let c = to_xyz(&SymGroupParams { theta: 0.0, phi: 0.0, psi: 0.0 });
        assert!((c.x - 4.0).abs() < 1e-15 && c.y.abs() < 1e-15 && (c.z - 4.0).abs() < 1e-15);
        let c = to_xyz(&SymGroupParams { theta: 0.0, phi: 0.0, psi: FRAC_PI_4 });
        assert!(c.x.abs() < 1e-15 && (c.y - 4.0).abs() < 1e-15 && (c.z - 4.0).abs() < 1e-15);
        let c = to_xyz(&SymGroupParams { theta: FRAC_PI_4, phi: -FRAC_PI_4, psi: 0.3 });
        assert!(c.x.abs() < 1e-7 && c.y.abs() < 1e-7 && c.z.abs() < 1e-15);
    }

    #[test]
    fn xyz_inverse() {
        let sols = from_xyz(&XyzCoords { x: 4.0, y: 0.0, z: 4.0 }).unwrap();
        assert!(sols.iter().any(|q| q.theta.abs() < 1e-7 && q.phi.abs() < 1e-7 && q.psi == 0.0));

        // equality z² = x² + y² forces φ = −θ
        let p = SymGroupParams { theta: 0.3, phi: -0.3, psi: 0.2 };
        let c = to_xyz(&p);
        for q in from_xyz(&c).unwrap() {
            assert!((q.theta + q.phi).abs() < 1e-7, "{q:?}");
        }

        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..1000 {
            let p = random_sym_params(&mut rng, 1e-3);
            if (p.theta.abs() - p.phi.abs()).abs() < 1e-3 {
                continue;
            }
            let sols = from_xyz(&to_xyz(&p)).unwrap();
            assert!(sols.iter().any(|q| (q.theta - p.theta).abs() < 1e-9
                && (q.phi - p.phi).abs() < 1e-9
                && (q.psi - p.psi).abs() < 1e-9));
        }

        assert!(matches!(from_xyz(&XyzCoords { x: 0.0, y: 0.0, z: 5.0 }), Err(Error::Infeasible(_))));
        assert!(matches!(from_xyz(&XyzCoords { x: 9.0, y: 0.0, z: 1.0 }), Err(Error::Infeasible(_))));
    }

    #[test]
    fn closed_form_traces() {
        // bending axis
        let p = SymGroupParams { theta: 0.0, phi: 0.0, psi: 0.6 };
        assert!((trace_j1j2inv(&p) - 8.0 * 0.6f64.sin().powi(2)).norm() < 1e-14);
        // ideal triangle
        let th = 0.35;
        let p = SymGroupParams { theta: th, phi: -th, psi: FRAC_PI_2 };
        let expect = cis(2.0 * th / 3.0) * (8.0 * (2.0 * th).cos());
        assert!((trace_j1j2inv(&p) - expect).norm() < 1e-14);
        // first modular family
        let p = SymGroupParams { theta: th, phi: th, psi: 0.0 };
        assert!((trace_j1j2inv(&p) - (4.0 - 4.0 * (2.0 * th).cos())).norm() < 1e-14);
    }

    #[test]
    fn f_of_j1j2inv() {
        assert!((f_j1j2inv(&XyzCoords { x: 1.3, y: 0.2, z: 1.3 }) + 27.0).abs() < 1e-15);
        // bending axis zero at sin²ψ = 3/8
        let psi = (3.0f64 / 8.0).sqrt().asin();
        let c = to_xyz(&SymGroupParams { theta: 0.0, phi: 0.0, psi });
        assert!(f_j1j2inv(&c).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let p = random_sym_params(&mut rng, 0.0);
            let a = f_j1j2inv(&to_xyz(&p));
            let b = trace_poly_f(trace_j1j2inv(&p));
            assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn commutator_trace() {
        assert!((trace_commutator(&XyzCoords { x: 2.0, y: 0.0, z: 2.0 }) - 3.0).norm() < 1e-15);
        let g = group(0.0, 0.0, FRAC_PI_2);
        assert!((g.coords.x + 4.0).abs() < 1e-14);
        let t = trace_commutator(&g.coords);
        assert!((t - 35.0).norm() < 1e-13);
        assert!((g.commutator().trace() - 35.0).norm() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let g = build_sym_group(&random_sym_params(&mut rng, 0.0)).unwrap();
            assert!((g.commutator().trace() - trace_commutator(&g.coords)).norm() < 1e-10);
            assert!((g.j1j2inv().trace() - trace_j1j2inv(&g.params)).norm() < 1e-12);
        }
    }

    #[test]
    fn jacobian_against_finite_differences() {
        let p = SymGroupParams { theta: 0.3, phi: 0.1, psi: 0.7 };
        let h = 1e-6;
        let col = |dt: f64, dp: f64, ds: f64| {
            let plus = to_xyz(&SymGroupParams { theta: p.theta + dt, phi: p.phi + dp, psi: p.psi + ds });
            let minus = to_xyz(&SymGroupParams { theta: p.theta - dt, phi: p.phi - dp, psi: p.psi - ds });
            [(plus.x - minus.x) / (2.0 * h), (plus.y - minus.y) / (2.0 * h), (plus.z - minus.z) / (2.0 * h)]
        };
        let (a, b, c) = (col(h, 0.0, 0.0), col(0.0, h, 0.0), col(0.0, 0.0, h));
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1])
            + c[0] * (a[1] * b[2] - a[2] * b[1]);
        let j = jacobian_xyz(&p);
        assert!((det.abs() - j.abs()).abs() < 1e-5 * j.abs(), "{det} vs {j}");
        assert_eq!(jacobian_xyz(&SymGroupParams { theta: 0.2, phi: 0.2, psi: 0.1 }), 0.0);
        assert!(jacobian_xyz(&SymGroupParams { theta: 0.2, phi: -0.2, psi: 0.1 }).abs() < 1e-15);
    }

    #[test]
    fn structural_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let g = build_sym_group(&random_sym_params(&mut rng, 0.0)).unwrap();
            let (a, b) = (g.a(), g.b());
            assert!((a * b.inverse()).projective_residual(&g.commutator()) < 1e-9);
            assert!(a.commutator(&b).projective_residual(&g.j1j2inv().pow(3)) < 1e-9);
        }
    }

    #[test]
    fn symmetric_representation_matches() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..100 {
            let p = random_sym_params(&mut rng, 0.01);
            let g = build_sym_group(&p).unwrap();
            let lam = cis(-2.0 * (p.theta + p.phi) / 3.0);
            let cf = rep_closed_form(p.theta, p.phi, p.psi, lam, lam).unwrap();
            assert!(cf.a.projective_residual(&g.a()) < 1e-9);
            assert!(cf.b.projective_residual(&g.b()) < 1e-9);
            let built = rep_from_tetra(&g.tetrahedron(), lam, lam, &tol).unwrap();
            assert!(built.a.projective_residual(&g.a()) < 1e-9);
            assert!(built.b.projective_residual(&g.b()) < 1e-9);
        }
    }

    #[test]
    fn product_never_reflection() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..300 {
            let g = build_sym_group(&random_sym_params(&mut rng, 1e-3)).unwrap();
            let c = classify(&g.a(), &tol).unwrap();
            assert!(c.tag.is_parabolic(), "{:?} {:?}", g.params, c);
            if let Ok(ci) = classify(&g.j1j2inv(), &tol) {
                if ci.tag.is_parabolic() {
                    assert!(c.tag.is_parabolic());
                }
            }
        }
    }
}
