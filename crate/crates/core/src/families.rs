//! One-parameter families of symmetric groups and the parameter value where
//! `J₁J₂⁻¹` stops being loxodromic.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::classify::{classify, trace_poly_f, IsometryClass, IsometryTag};
use crate::hermitian::{CMat3, Isometry};
use crate::pinch::bisect;
use crate::symmetry::{build_sym_group, trace_j1j2inv, SymGroup, SymGroupParams};
use crate::{Error, Result, Tolerances, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `θ = −φ`, `ψ = 0`: the group collapses.
    Finite,
    /// `θ = −φ`, `ψ = π/2`.
    IdealTriangle,
    /// `θ = φ`, `ψ = 0`.
    Modular1,
    /// `θ = φ`, `ψ = π/2`.
    Modular2,
    /// `θ = φ = 0`, parameter `ψ`.
    Bending,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] =
        [Self::Finite, Self::IdealTriangle, Self::Modular1, Self::Modular2, Self::Bending];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Finite => "finite",
            Self::IdealTriangle => "ideal-triangle",
            Self::Modular1 => "modular1",
            Self::Modular2 => "modular2",
            Self::Bending => "bending",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Range of the free parameter (`θ`, or `ψ` for bending).
    pub fn parameter_range(self) -> (f64, f64) {
        match self {
            Self::Bending => (0.0, FRAC_PI_2),
            _ => (0.0, FRAC_PI_4),
        }
    }

    /// Group parameters at `t`.
    pub fn params(self, t: f64) -> SymGroupParams {
        let (theta, phi, psi) = match self {
            Self::Finite => (t, -t, 0.0),
            Self::IdealTriangle => (t, -t, FRAC_PI_2),
            Self::Modular1 => (t, t, 0.0),
            Self::Modular2 => (t, t, FRAC_PI_2),
            Self::Bending => (0.0, 0.0, t),
        };
        SymGroupParams { theta, phi, psi }
    }

    pub fn group(self, t: f64) -> Result<SymGroup> {
        let (lo, hi) = self.parameter_range();
        if !(lo..=hi).contains(&t) {
            return Err(Error::Range(format!("{} parameter {t} outside [{lo}, {hi}]", self.as_str())));
        }
        build_sym_group(&self.params(t))
    }

    /// Trace of `J₁J₂⁻¹` specialised to the family.
    pub fn trace_formula(self, t: f64) -> C64 {
        match self {
            Self::Finite => C64::new(0.0, 0.0),
            Self::IdealTriangle => C64::from_polar(8.0 * (2.0 * t).cos(), 2.0 * t / 3.0),
            Self::Modular1 => C64::new(4.0 - 4.0 * (2.0 * t).cos(), 0.0),
            Self::Modular2 => C64::new(4.0 + 4.0 * (2.0 * t).cos(), 0.0),
            Self::Bending => C64::new(8.0 * t.sin().powi(2), 0.0),
        }
    }

    /// Expected transition as `(quantity, parameter)`: `cos 2θ` or `sin ψ`,
    /// and the parameter value itself.
    pub fn threshold_closed_form(self) -> Option<(f64, f64)> {
        match self {
            Self::IdealTriangle => {
                let c = 3f64.sqrt() / (8.0 * 2f64.sqrt());
                Some((c, c.acos() / 2.0))
            }
            Self::Modular1 => Some((0.25, 0.25f64.acos() / 2.0)),
            Self::Bending => {
                let s = (3.0f64 / 8.0).sqrt();
                Some((s, s.asin()))
            }
            Self::Finite | Self::Modular2 => None,
        }
    }

    /// `cos 2θ`, or `sin ψ` for bending.
    pub fn threshold_quantity(self, t: f64) -> f64 {
        match self {
            Self::Bending => t.sin(),
            _ => (2.0 * t).cos(),
        }
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The involution conjugating `J₁` to `J₂` (or to `J₂⁻¹`).
pub fn family_i0(kind: FamilyKind) -> Result<Isometry> {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let m = match kind {
        FamilyKind::IdealTriangle => CMat3::new(-one, z, z, z, one, z, z, z, -one),
        FamilyKind::Modular1 => CMat3::new(z, z, one, z, -one, z, one, z, z),
        FamilyKind::Modular2 => CMat3::new(z, z, -one, z, -one, z, -one, z, z),
        FamilyKind::Finite => return Err(Error::NoInvolution("finite family")),
        FamilyKind::Bending => return Err(Error::NoInvolution("bending family")),
    };
    Ok(Isometry::from_matrix_unchecked(m))
}

/// Projective residual of the family's conjugation identity at `t`:
/// `J₂ = I₀J₁⁻¹I₀` for ideal triangles, `J₂ = I₀J₁I₀` for the modular
/// families.
pub fn conjugation_residual(kind: FamilyKind, t: f64) -> Result<f64> {
    let i0 = family_i0(kind)?;
    let g = kind.group(t)?;
    let j1 = if kind == FamilyKind::IdealTriangle { g.j1.inverse() } else { g.j1 };
    Ok((i0 * j1 * i0).projective_residual(&g.j2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySample {
    pub param: f64,
    pub f_value: f64,
    pub class: Option<IsometryTag>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    /// `f(tr J₁J₂⁻¹)` and the class of `J₁J₂⁻¹` along the family.
    pub samples: Vec<FamilySample>,
    /// Parameter where `f` changes sign, found by bisection.
    pub threshold: Option<f64>,
    /// `cos 2θ` or `sin ψ` at `threshold`.
    pub threshold_quantity: Option<f64>,
    pub closed_form: Option<(f64, f64)>,
    /// Class of `J₁J₂⁻¹` at `threshold`.
    pub threshold_class: Option<IsometryClass>,
}

impl FamilyReport {
    /// `|estimate − closed form|` in the threshold quantity.
    pub fn threshold_error(&self) -> Option<f64> {
        Some((self.threshold_quantity? - self.closed_form?.0).abs())
    }
}

fn family_f(kind: FamilyKind, t: f64) -> f64 {
    trace_poly_f(trace_j1j2inv(&kind.params(t)))
}

/// Samples `f(tr J₁J₂⁻¹)` on `resolution` equally spaced parameters and
/// bisects the first sign change. Families without one report no threshold.
pub fn family_threshold(kind: FamilyKind, resolution: usize, tol: &Tolerances) -> Result<FamilyReport> {
    if resolution < 2 {
        return Err(Error::Range(format!("resolution {resolution}, need at least 2")));
    }
    let (lo, hi) = kind.parameter_range();
    let ts: Vec<f64> = (0..resolution)
        .map(|k| if k + 1 == resolution { hi } else { lo + (hi - lo) * k as f64 / (resolution - 1) as f64 })
        .collect();
    let samples: Vec<FamilySample> = ts
        .iter()
        .map(|&t| {
            let g = kind.group(t)?;
            Ok(FamilySample {
                param: t,
                f_value: family_f(kind, t),
                class: classify(&g.j1j2inv(), tol).ok().map(|c| c.tag),
            })
        })
        .collect::<Result<_>>()?;

    let mut threshold = None;
    if kind != FamilyKind::Finite {
        for w in samples.windows(2) {
            let (a, b) = (w[0].f_value, w[1].f_value);
            if a == 0.0 {
                threshold = Some(w[0].param);
                break;
            }
            if a.signum() != b.signum() {
                threshold = Some(bisect(w[0].param, w[1].param, |t| family_f(kind, t))?);
                break;
            }
        }
    }
    let threshold_class = match threshold {
        Some(t) => Some(classify(&kind.group(t)?.j1j2inv(), tol)?),
        None => None,
    };
    Ok(FamilyReport {
        kind,
        samples,
        threshold,
        threshold_quantity: threshold.map(|t| kind.threshold_quantity(t)),
        closed_form: kind.threshold_closed_form(),
        threshold_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traces_specialise() {
        for kind in FamilyKind::ALL {
            let (lo, hi) = kind.parameter_range();
            for k in 0..=20 {
                let t = lo + (hi - lo) * k as f64 / 20.0;
                let d = trace_j1j2inv(&kind.params(t)) - kind.trace_formula(t);
                assert!(d.norm() < 1e-12, "{kind} {t} {d}");
            }
        }
    }

    #[test]
    fn involutions() {
        for kind in [FamilyKind::IdealTriangle, FamilyKind::Modular1, FamilyKind::Modular2] {
            let i0 = family_i0(kind).unwrap();
            assert!((i0 * i0).projective_residual(&Isometry::identity()) < 1e-15);
            for t in [0.0, 0.2, 0.3, 0.7] {
                assert!(conjugation_residual(kind, t).unwrap() < 1e-10, "{kind} {t}");
            }
        }
        assert!(matches!(family_i0(FamilyKind::Finite), Err(Error::NoInvolution(_))));
        assert!(matches!(family_i0(FamilyKind::Bending), Err(Error::NoInvolution(_))));
    }

    #[test]
    fn modular_j1_i0_parabolic() {
        let tol = Tolerances::default();
        let g = FamilyKind::Modular1.group(0.2).unwrap();
        let i0 = family_i0(FamilyKind::Modular1).unwrap();
        let c = classify(&(g.j1 * i0), &tol).unwrap();
        assert!(c.tag.is_parabolic(), "{c:?}");
    }

    #[test]
    fn thresholds() {
        let tol = Tolerances::default();
        for kind in [FamilyKind::IdealTriangle, FamilyKind::Modular1, FamilyKind::Bending] {
            let r = family_threshold(kind, 64, &tol).unwrap();
            assert!(r.threshold_error().unwrap() < 1e-10, "{r:?}");
            assert!(r.threshold_class.unwrap().tag.is_parabolic(), "{r:?}");
        }
        let r = family_threshold(FamilyKind::Modular2, 64, &tol).unwrap();
        assert!(r.threshold.is_none());
        assert!(r.samples.iter().all(|s| s.f_value > 0.0));
        let r = family_threshold(FamilyKind::Finite, 16, &tol).unwrap();
        assert!(r.threshold.is_none());
        assert!(r.samples.iter().all(|s| (s.f_value + 27.0).abs() < 1e-12));
    }

    #[test]
    fn finite_collapse() {
        let tol = Tolerances::default();
        for t in [0.0, 0.1, 0.5] {
            let g = FamilyKind::Finite.group(t).unwrap();
            assert!((g.j2.matrix() - g.j1.inverse().matrix()).norm() < 1e-10);
            assert_eq!(classify(&g.a(), &tol).unwrap().tag, IsometryTag::Identity);
        }
        assert!(FamilyKind::Finite.group(1.0).is_err());
    }
}
