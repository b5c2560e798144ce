//! Isometry types from the trace.
//!
//! `f(z) = |z|⁴ − 8 Re(z³) + 18|z|² − 27` is positive on loxodromic traces,
//! negative on regular elliptic ones and vanishes on the deltoid
//! `{2e^{iα} + e^{−2iα}}`. On the deltoid the spectrum is
//! `{λ, λ, λ̄²}` with `λ = e^{iα}` and the type is read off the ranks of
//! `A − λI` and `(A − λI)²`.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hermitian::{cis, CMat3, Isometry};
use crate::invariants::angle_diff;
use crate::{Error, Result, Tolerances, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryTag {
    Loxodromic,
    RegularElliptic,
    ScrewParabolic,
    Unipotent2Step,
    Unipotent3Step,
    ComplexReflection,
    Identity,
}

impl IsometryTag {
    pub fn is_parabolic(self) -> bool {
        matches!(self, Self::ScrewParabolic | Self::Unipotent2Step | Self::Unipotent3Step)
    }

    pub fn is_unipotent(self) -> bool {
        matches!(self, Self::Unipotent2Step | Self::Unipotent3Step)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Loxodromic => "Loxodromic",
            Self::RegularElliptic => "RegularElliptic",
            Self::ScrewParabolic => "ScrewParabolic",
            Self::Unipotent2Step => "Unipotent2Step",
            Self::Unipotent3Step => "Unipotent3Step",
            Self::ComplexReflection => "ComplexReflection",
            Self::Identity => "Identity",
        }
    }
}

impl fmt::Display for IsometryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryClass {
    pub tag: IsometryTag,
    /// `f(tr A)`.
    pub fvalue: f64,
    /// Repeated unit-modulus eigenvalue, for traces on the deltoid.
    pub neutral_eigenvalue: Option<C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltoidSample {
    pub alpha: f64,
    pub z: C64,
}

/// `2e^{iα} + e^{−2iα}`.
pub fn deltoid_point(alpha: f64) -> C64 {
    cis(alpha) * 2.0 + cis(-2.0 * alpha)
}

/// Trace polynomial `f(z) = |z|⁴ − 8 Re(z³) + 18|z|² − 27`.
///
/// `f` is invariant under `z ↦ ωz`, so `z` is first rotated into the sector
/// of the cusp at 3 and `f` is expanded around it. With `z = 3 + a + ib`,
/// `f = 108b² + 4a³ + 36ab² + (a² + b²)²`, which has no cancellation near
/// the cusps where `f` vanishes to third order.
pub fn trace_poly_f(z: C64) -> f64 {
    let k = (z.arg() / (TAU / 3.0)).round();
    let w = z * cis(-k * TAU / 3.0) - 3.0;
    let (a, b) = (w.re, w.im);
    let r2 = a * a + b * b;
    108.0 * b * b + 4.0 * a * a * a + 36.0 * a * b * b + r2 * r2
}

/// `n` uniform samples of the deltoid, `α = 2πk/n`.
pub fn deltoid_samples(n: usize) -> Vec<DeltoidSample> {
    (0..n)
        .map(|k| {
            let alpha = TAU * k as f64 / n as f64;
            DeltoidSample { alpha, z: deltoid_point(alpha) }
        })
        .collect()
}

/// Gauss–Newton refinement of `α` on `2e^{iα} + e^{−2iα} = tr`, keeping only
/// steps that reduce the residual.
fn refine_alpha(tr: C64, mut alpha: f64) -> f64 {
    let mut res = (deltoid_point(alpha) - tr).norm();
    for _ in 0..60 {
        let g = deltoid_point(alpha) - tr;
        let dg = (cis(alpha) - cis(-2.0 * alpha)) * C64::new(0.0, 2.0);
        let d2 = dg.norm_sqr();
        if d2 == 0.0 {
            break;
        }
        let next = alpha - (dg.conj() * g).re / d2;
        let next_res = (deltoid_point(next) - tr).norm();
        if !(next_res < res) {
            break;
        }
        alpha = next;
        res = next_res;
    }
    alpha.rem_euclid(TAU)
}

/// Distance to the nearest cusp `3ωᵏ` under which the neutral eigenvalue is
/// taken to be exactly a cube root of unity.
const CUSP_SNAP: f64 = 1e-9;

/// Angle `α` with `tr = 2e^{iα} + e^{−2iα}` for a trace on (or very near)
/// the deltoid.
///
/// The repeated eigenvalue is a root of the derivative of the characteristic
/// polynomial `x³ − tr·x² + tr̄·x − 1`, so the two roots of `3x² − 2tr·x + tr̄`
/// serve as seeds.
pub fn neutral_angle(tr: C64) -> f64 {
    for k in 0..3 {
        let cusp = cis(TAU * k as f64 / 3.0) * 3.0;
        if (tr - cusp).norm() <= CUSP_SNAP {
            return TAU * k as f64 / 3.0;
        }
    }
    let d = (tr * tr - tr.conj() * 3.0).sqrt();
    let residual = |a: f64| (deltoid_point(a) - tr).norm();
    [(tr + d) / 3.0, (tr - d) / 3.0]
        .into_iter()
        .map(|x| refine_alpha(tr, x.arg()))
        .min_by(|a, b| residual(*a).total_cmp(&residual(*b)))
        .unwrap_or(0.0)
}

fn singular_values(m: &CMat3) -> [f64; 3] {
    let s = m.singular_values();
    let mut v = [s[0], s[1], s[2]];
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Numerical rank with the threshold `tol.rank * scale`; reports values that
/// land within a factor ten of the threshold.
fn numerical_rank(m: &CMat3, scale: f64, tol: &Tolerances) -> Result<usize> {
    let threshold = tol.rank * scale;
    let sv = singular_values(m);
    if let Some(&sigma) = sv.iter().find(|&&s| s > threshold / 10.0 && s < threshold * 10.0) {
        return Err(Error::IllConditioned { sigma, threshold });
    }
    Ok(sv.iter().filter(|&&s| s > threshold).count())
}

/// Isometry type of `a`.
pub fn classify(a: &Isometry, tol: &Tolerances) -> Result<IsometryClass> {
    let tr = a.trace();
    let fvalue = trace_poly_f(tr);
    if fvalue > tol.trace_f {
        return Ok(IsometryClass { tag: IsometryTag::Loxodromic, fvalue, neutral_eigenvalue: None });
    }
    if fvalue < -tol.trace_f {
        return Ok(IsometryClass { tag: IsometryTag::RegularElliptic, fvalue, neutral_eigenvalue: None });
    }
    let alpha = neutral_angle(tr);
    let lambda = cis(alpha);
    let cube_root_of_unity = angle_diff(3.0 * alpha, 0.0) < 1e-12;

    let m = a.matrix();
    let scale = singular_values(m)[0].max(1.0);
    let n = m - CMat3::identity() * lambda;
    let rank = numerical_rank(&n, scale, tol)?;
    let tag = if rank == 0 {
        IsometryTag::Identity
    } else if cube_root_of_unity {
        // triple eigenvalue: A/λ is unipotent, the nilpotency index decides
        match numerical_rank(&(n * n), scale * scale, tol)? {
            0 => IsometryTag::Unipotent2Step,
            _ => IsometryTag::Unipotent3Step,
        }
    } else if rank == 1 {
        IsometryTag::ComplexReflection
    } else {
        IsometryTag::ScrewParabolic
    };
    Ok(IsometryClass { tag, fvalue, neutral_eigenvalue: Some(lambda) })
}
