//! Numerical thresholds shared by every module.

use serde::{Deserialize, Serialize};

/// Tolerance regime. The defaults are the values every test in this crate
/// is pinned to; callers may override any of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Null-vector test, relative to `|v|²`.
    pub null: f64,
    /// Fixed-point residual, relative to `|lift|`.
    pub fix: f64,
    /// Form preservation `‖M*HM − H‖∞`, scaled by `max(1, ‖M‖²)`.
    pub form: f64,
    /// `|det M − 1|`.
    pub det: f64,
    /// Band around the deltoid on `f(tr)`, absolute.
    pub trace_f: f64,
    /// Singular-value rank threshold, relative to `max(1, ‖A‖₂)`.
    pub rank: f64,
    /// Balanced test `||X| − 1|`.
    pub balanced: f64,
    /// Projective distance under which two negative points are equal.
    pub proj_dist: f64,
    /// Margin from `±π/2` for the Cartan invariant (complex-line test).
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            null: 1e-9,
            fix: 1e-9,
            form: 1e-12,
            det: 1e-12,
            trace_f: 1e-8,
            rank: 1e-7,
            balanced: 1e-8,
            proj_dist: 1e-7,
            angle: 1e-9,
        }
    }
}
