//! Projective invariants of boundary configurations.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::hermitian::{herm, polar_vector, BoundaryPoint, CVec3};
use crate::{Error, Result, Tolerances, C64};

/// Reduces an angle to `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// `|a − b|` measured modulo `2π`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Relative size below which a Hermitian product counts as zero.
fn vanishes(h: C64, v: &CVec3, w: &CVec3, tol: &Tolerances) -> bool {
    h.norm() <= tol.null * v.norm() * w.norm()
}

/// Cartan angular invariant `arg(−⟨p₃,p₁⟩⟨p₁,p₂⟩⟨p₂,p₃⟩)`, in `[−π/2, π/2]`.
pub fn cartan(p1: &BoundaryPoint, p2: &BoundaryPoint, p3: &BoundaryPoint, tol: &Tolerances) -> Result<f64> {
    let (a, b, c) = (p1.lift(), p2.lift(), p3.lift());
    let h31 = herm(c, a);
    let h12 = herm(a, b);
    let h23 = herm(b, c);
    if vanishes(h31, c, a, tol) || vanishes(h12, a, b, tol) || vanishes(h23, b, c, tol) {
        return Err(Error::DegenerateTriple);
    }
    let v = (-(h31 * h12 * h23)).arg();
    // rounding can push a complex-line triple marginally past ±π/2
    Ok(v.clamp(-FRAC_PI_2, FRAC_PI_2))
}

/// Whether `(p1, p2, p3)` lies in a complex line, i.e. `|𝔸| ≥ π/2 − margin`.
pub fn is_complex_linear(
    p1: &BoundaryPoint,
    p2: &BoundaryPoint,
    p3: &BoundaryPoint,
    margin: f64,
    tol: &Tolerances,
) -> Result<bool> {
    Ok(cartan(p1, p2, p3, tol)?.abs() >= FRAC_PI_2 - margin)
}

/// Korányi–Riemann cross-ratio on raw lifts,
/// `⟨v₃,v₁⟩⟨v₄,v₂⟩ / (⟨v₃,v₂⟩⟨v₄,v₁⟩)`. The arguments need not be null,
/// which lets polar vectors enter the bending parameter.
pub fn cross_ratio_lifts(v1: &CVec3, v2: &CVec3, v3: &CVec3, v4: &CVec3, tol: &Tolerances) -> Result<C64> {
    let h32 = herm(v3, v2);
    let h41 = herm(v4, v1);
    if vanishes(h32, v3, v2, tol) || vanishes(h41, v4, v1, tol) {
        return Err(Error::DegenerateConfiguration);
    }
    Ok(herm(v3, v1) * herm(v4, v2) / (h32 * h41))
}

/// Korányi–Riemann cross-ratio `𝕏(p₁, p₂, p₃, p₄)`.
pub fn cross_ratio(
    p1: &BoundaryPoint,
    p2: &BoundaryPoint,
    p3: &BoundaryPoint,
    p4: &BoundaryPoint,
    tol: &Tolerances,
) -> Result<C64> {
    cross_ratio_lifts(p1.lift(), p2.lift(), p3.lift(), p4.lift(), tol)
}

/// Bending parameter `𝔹 = 𝕏(p₄,p₃,p₁,c₁₂)·𝕏(p₄,p₃,p₂,c₁₂)` where `c₁₂` is
/// polar to the complex line through `p₁` and `p₂`.
pub fn bending(
    p1: &BoundaryPoint,
    p2: &BoundaryPoint,
    p3: &BoundaryPoint,
    p4: &BoundaryPoint,
    tol: &Tolerances,
) -> Result<C64> {
    if is_complex_linear(p1, p2, p3, tol.angle, tol)? || is_complex_linear(p1, p2, p4, tol.angle, tol)? {
        return Err(Error::ComplexLineDegeneracy);
    }
    let c = polar_vector(p1, p2, tol)?;
    let x1 = cross_ratio_lifts(p4.lift(), p3.lift(), p1.lift(), &c, tol)?;
    let x2 = cross_ratio_lifts(p4.lift(), p3.lift(), p2.lift(), &c, tol)?;
    Ok(x1 * x2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::cis;
    use crate::sampling::random_isometry;
    use crate::tetrahedra::{standard_lifts, TetraParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tau(theta: f64, phi: f64, psi: f64, r: f64) -> [BoundaryPoint; 4] {
        standard_lifts(&TetraParams { theta, phi, psi, r }).unwrap().vertices()
    }

    #[test]
    fn cartan_of_normal_form() {
        let tol = Tolerances::default();
        let [p1, p2, p3, p4] = tau(0.31, -0.17, 0.4, 1.0);
        assert!((cartan(&p2, &p1, &p3, &tol).unwrap() - 0.62).abs() < 1e-14);
        assert!((cartan(&p1, &p2, &p4, &tol).unwrap() + 0.34).abs() < 1e-14);
    }

    #[test]
    fn cartan_of_real_points_vanishes() {
        let tol = Tolerances::default();
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let p = BoundaryPoint::new(CVec3::new(one, o, o), &tol).unwrap();
        let q = BoundaryPoint::new(CVec3::new(o, o, one), &tol).unwrap();
        let s2 = C64::new(2f64.sqrt(), 0.0);
        let r = BoundaryPoint::new(CVec3::new(-one, s2, one), &tol).unwrap();
        assert!(cartan(&p, &q, &r, &tol).unwrap().abs() < 1e-15);
    }

    #[test]
    fn cartan_degenerate() {
        let tol = Tolerances::default();
        let [p1, p2, _, _] = tau(0.1, 0.1, 0.2, 1.0);
        assert_eq!(cartan(&p1, &p1, &p2, &tol), Err(Error::DegenerateTriple));
    }

    #[test]
    fn cross_ratio_of_normal_form() {
        let tol = Tolerances::default();
        let (th, ph, r) = (0.23, -0.41, 1.7);
        let [p1, p2, p3, p4] = tau(th, ph, 0.9, r);
        let x = cross_ratio(&p1, &p2, &p3, &p4, &tol).unwrap();
        let expect = cis(-2.0 * th - 2.0 * ph) * (r * r);
        assert!((x - expect).norm() < 1e-13);
        let [p1, p2, p3, p4] = tau(0.0, 0.0, 0.7, 1.0);
        assert!((cross_ratio(&p1, &p2, &p3, &p4, &tol).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn bending_of_normal_form() {
        let tol = Tolerances::default();
        let (th, ph, ps) = (0.3, 0.1, 0.35);
        let [p1, p2, p3, p4] = tau(th, ph, ps, 1.0);
        let b = bending(&p1, &p2, &p3, &p4, &tol).unwrap();
        let expect = cis(4.0 * ps) * ((2.0 * th).cos() / (2.0 * ph).cos());
        assert!((b - expect).norm() < 1e-13);
        let [p1, p2, p3, p4] = tau(0.2, 0.2, 0.0, 1.0);
        assert!((bending(&p1, &p2, &p3, &p4, &tol).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn bending_rejects_complex_line() {
        let tol = Tolerances::default();
        let [p1, p2, p3, p4] = tau(std::f64::consts::FRAC_PI_4, 0.1, 0.3, 1.0);
        assert_eq!(bending(&p1, &p2, &p3, &p4, &tol), Err(Error::ComplexLineDegeneracy));
    }

    #[test]
    fn invariance_under_isometry_and_lifts() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = tau(0.2, -0.1, 0.3, 1.0);
        let b0 = bending(&pts[0], &pts[1], &pts[2], &pts[3], &tol).unwrap();
        let x0 = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], &tol).unwrap();
        let a0 = cartan(&pts[0], &pts[2], &pts[3], &tol).unwrap();
        for _ in 0..50 {
            let g = random_isometry(&mut rng);
            let scales = [C64::new(0.3, 1.1), C64::new(-2.0, 0.4), C64::new(0.0, -0.7), C64::new(5.0, 1.0)];
            let q: Vec<BoundaryPoint> = pts.iter().zip(scales).map(|(p, s)| p.image(&g).rescaled(s)).collect();
            let b = bending(&q[0], &q[1], &q[2], &q[3], &tol).unwrap();
            let x = cross_ratio(&q[0], &q[1], &q[2], &q[3], &tol).unwrap();
            let a = cartan(&q[0], &q[2], &q[3], &tol).unwrap();
            assert!((b - b0).norm() <= 1e-10 * b0.norm(), "{b} vs {b0}");
            assert!((x - x0).norm() <= 1e-10 * x0.norm());
            assert!((a - a0).abs() <= 1e-10);
        }
    }

    #[test]
    fn cocycle_and_argument_identity() {
        let tol = Tolerances::default();
        for &(th, ph, ps) in &[(0.1, 0.2, 0.3), (-0.5, 0.7, 1.4), (0.77, -0.77, 0.05)] {
            let [pa, pb, pab, pba] = tau(th / 2.0, ph / 2.0, ps, 1.0);
            let c1 = cartan(&pa, &pb, &pab, &tol).unwrap();
            let c2 = cartan(&pa, &pb, &pba, &tol).unwrap();
            let c3 = cartan(&pa, &pab, &pba, &tol).unwrap();
            let c4 = cartan(&pb, &pab, &pba, &tol).unwrap();
            assert!(angle_diff(c1 - c2 + c3 - c4, 0.0) < 1e-12);
            let x = cross_ratio(&pa, &pb, &pab, &pba, &tol).unwrap();
            assert!(angle_diff(x.arg(), c1 - c2) < 1e-12);
        }
    }

    #[test]
    fn wrap() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!(angle_diff(0.1, 0.1 + TAU) < 1e-15);
    }
}
