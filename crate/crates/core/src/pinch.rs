//! Super-pinching: groups where `J₁J₂`, `J₁J₂⁻¹` and `[J₁, J₂]` are all
//! parabolic.
//!
//! On the surface `f(tr J₁J₂⁻¹) = 0` we use `X = (x − z)²`, `Y = (x − z)y`.
//! There `256X⁴·f(tr[J₁, J₂]) = P(X, Y)`, so the super-pinched groups are
//! traced out by the real curve `P = 0`.

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, trace_poly_f, IsometryClass, IsometryTag};
use crate::hermitian::Isometry;
use crate::symmetry::{
    build_sym_group, f_j1j2inv, from_xyz, to_xyz, trace_commutator, SymGroup, SymGroupParams,
    XyzCoords,
};
use crate::{Error, Result, Tolerances};

/// Ends of the `X` range: `(9 ∓ 3√3)/2`.
pub fn x_range() -> (f64, f64) {
    let r = 3.0 * 3f64.sqrt();
    ((9.0 - r) / 2.0, (9.0 + r) / 2.0)
}

/// `X = (x − z)²`, `Y = (x − z)·y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XyCoords {
    pub x: f64,
    pub y: f64,
}

impl XyCoords {
    pub fn from_xyz(c: &XyzCoords) -> Self {
        let u = c.x - c.z;
        Self { x: u * u, y: u * c.y }
    }
}

/// The polynomial `P(X, Y)`, even in `Y` and of degree eight.
pub fn poly_p(x: f64, y: f64) -> f64 {
    let y2 = y * y;
    let c6 = 4.0 * (4.0 * x * x - 14.0 * x + 27.0);
    let c4 = 6.0 * ((((12.0 * x - 8.0) * x + 360.0) * x - 756.0) * x + 729.0);
    let c2 = 4.0
        * ((((((16.0 * x - 24.0) * x + 1404.0) * x - 4536.0) * x + 20412.0) * x - 30618.0) * x
            + 19683.0);
    let q = 2.0 * x * x - 18.0 * x + 27.0;
    let c0 = (2.0 * x * x - 2.0 * x + 27.0) * q * q * q;
    (((y2 + c6) * y2 + c4) * y2 + c2) * y2 + c0
}

/// Solves `f(tr J₁J₂⁻¹) = 0` for `z` given `u = x − z`.
pub fn constraint_z(u: f64) -> Result<f64> {
    if u == 0.0 {
        return Err(Error::DivisionByZero("constraint_z at u = 0"));
    }
    let u2 = u * u;
    Ok((27.0 - u2 * u2 - 18.0 * u2) / (2.0 * u2 * u))
}

/// The point of the constraint surface with `x − z = u` and the given `y`.
pub fn constraint_point(u: f64, y: f64) -> Result<XyzCoords> {
    let z = constraint_z(u)?;
    Ok(XyzCoords { x: z + u, y, z })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum LocusStatus {
    Accepted,
    Rejected(String),
}

/// Classes of the seven elements `A, B, AB, AB⁻¹, AB², A²B, [A, B]` with
/// `A = J₁J₂`, `B = J₂J₁`.
pub const COROLLARY_WORDS: [&str; 7] = ["A", "B", "AB", "AB^-1", "AB^2", "A^2B", "[A,B]"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub xy: XyCoords,
    pub xyz: XyzCoords,
    /// Parameters of this branch of `from_xyz`, if any.
    pub params: Option<SymGroupParams>,
    /// Index into the `from_xyz` candidates.
    pub branch: usize,
    pub residual_p: f64,
    pub residual_f_j1j2inv: f64,
    pub residual_f_comm: f64,
    pub class_j1j2: Option<IsometryClass>,
    pub class_j1j2inv: Option<IsometryClass>,
    pub class_comm: Option<IsometryClass>,
    pub corollary: Option<[IsometryTag; 7]>,
    pub status: LocusStatus,
}

impl LocusPoint {
    pub fn accepted(&self) -> bool {
        self.status == LocusStatus::Accepted
    }

    fn rejected(xy: XyCoords, xyz: XyzCoords, residual_p: f64, reason: String) -> Self {
        Self {
            xy,
            xyz,
            params: None,
            branch: 0,
            residual_p,
            residual_f_j1j2inv: f64::NAN,
            residual_f_comm: f64::NAN,
            class_j1j2: None,
            class_j1j2inv: None,
            class_comm: None,
            corollary: None,
            status: LocusStatus::Rejected(reason),
        }
    }
}

/// Bisection for a root of `g` on `[lo, hi]` given `g(lo) < 0 < g(hi)`,
/// run until the bracket stops shrinking.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
    let (glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::NoRoot { lo, hi });
    }
    let rising = glo < 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if (gm < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Ends of the interval where `P(X, 0) < 0`, found numerically by bisection.
pub fn numeric_x_range() -> Result<(f64, f64)> {
    let g = |x: f64| poly_p(x, 0.0);
    Ok((bisect(0.0, 4.5, g)?, bisect(4.5, 10.0, g)?))
}

/// The non-negative root `Y` of `P(X, ·)`; zero when `P(X, 0) ≥ 0`.
pub fn locus_y(x: f64) -> Result<f64> {
    let g = |y: f64| poly_p(x, y);
    if g(0.0) >= 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NoRoot { lo: 0.0, hi });
        }
    }
    bisect(0.0, hi, g)
}

fn certify(g: &SymGroup, tol: &Tolerances) -> Result<([IsometryClass; 3], [IsometryTag; 7])> {
    let classes = [
        classify(&g.j1j2(), tol)?,
        classify(&g.j1j2inv(), tol)?,
        classify(&g.commutator(), tol)?,
    ];
    let (a, b) = (g.a(), g.b());
    let words: [Isometry; 7] = [
        a,
        b,
        a * b,
        a * b.inverse(),
        a * b * b,
        a * a * b,
        a.commutator(&b),
    ];
    let mut tags = [IsometryTag::Identity; 7];
    for (t, w) in tags.iter_mut().zip(words.iter()) {
        *t = classify(w, tol)?.tag;
    }
    Ok((classes, tags))
}

/// Locus points over the given `X` value, one per surviving branch.
pub fn locus_points_at(x_big: f64, tol: &Tolerances) -> Result<Vec<LocusPoint>> {
    let y_abs = locus_y(x_big)?;
    let u = -x_big.sqrt();
    // y ≥ 0 with u < 0 means Y ≤ 0; P is even so either sign is a root.
    let y_big = if y_abs == 0.0 { 0.0 } else { -y_abs };
    let xy = XyCoords { x: x_big, y: y_big };
    let residual_p = poly_p(x_big, y_big).abs();
    let xyz = constraint_point(u, y_abs / -u)?;
    if !xyz.satisfies_invariants(1e-9) {
        return Ok(vec![LocusPoint::rejected(xy, xyz, residual_p, "xyz outside the image".into())]);
    }
    let branches = match from_xyz(&xyz) {
        Ok(b) => b,
        Err(e) => return Ok(vec![LocusPoint::rejected(xy, xyz, residual_p, e.to_string())]),
    };
    let mut out = Vec::with_capacity(branches.len());
    for (branch, params) in branches.into_iter().enumerate() {
        let g = build_sym_group(&params)?;
        let mut pt = LocusPoint::rejected(xy, xyz, residual_p, String::new());
        pt.params = Some(params);
        pt.branch = branch;
        pt.residual_f_j1j2inv = trace_poly_f(g.j1j2inv().trace()).abs();
        pt.residual_f_comm = trace_poly_f(g.commutator().trace()).abs();
        pt.status = match certify(&g, tol) {
            Ok((classes, tags)) => {
                pt.class_j1j2 = Some(classes[0]);
                pt.class_j1j2inv = Some(classes[1]);
                pt.class_comm = Some(classes[2]);
                pt.corollary = Some(tags);
                if let Some(c) = classes.iter().find(|c| !c.tag.is_parabolic()) {
                    LocusStatus::Rejected(format!("class {}", c.tag))
                } else if let Some(t) = tags.iter().find(|t| !t.is_parabolic()) {
                    LocusStatus::Rejected(format!("corollary word class {t}"))
                } else if pt.residual_f_j1j2inv.max(pt.residual_f_comm) > 1e-6 {
                    LocusStatus::Rejected("residual above 1e-6".into())
                } else {
                    LocusStatus::Accepted
                }
            }
            Err(e) => LocusStatus::Rejected(e.to_string()),
        };
        out.push(pt);
    }
    Ok(out)
}

/// Samples the locus at `nsamples` equally spaced `X` in the closed range,
/// endpoints included. Output is ordered by `X`, then by branch.
pub fn solve_locus(nsamples: usize, tol: &Tolerances) -> Result<Vec<LocusPoint>> {
    if nsamples < 2 {
        return Err(Error::Range(format!("nsamples = {nsamples}, need at least 2")));
    }
    let (lo, hi) = x_range();
    let mut out = Vec::new();
    for k in 0..nsamples {
        let x = if k + 1 == nsamples { hi } else { lo + (hi - lo) * k as f64 / (nsamples - 1) as f64 };
        out.extend(locus_points_at(x, tol)?);
    }
    Ok(out)
}

/// Box in `(θ, φ, ψ)` with node counts per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridBox {
    pub theta: (f64, f64),
    pub phi: (f64, f64),
    pub psi: (f64, f64),
    pub n: (usize, usize, usize),
}

impl GridBox {
    /// Full `θ, φ` square at a single `ψ`.
    pub fn slice(psi: f64, n: usize) -> Self {
        Self {
            theta: (-FRAC_PI_4, FRAC_PI_4),
            phi: (-FRAC_PI_4, FRAC_PI_4),
            psi: (psi, psi),
            n: (n, n, 1),
        }
    }

    fn validate(&self) -> Result<()> {
        let (nt, np, ns) = self.n;
        if nt == 0 || np == 0 || ns == 0 {
            return Err(Error::Range("grid needs at least one node per axis".into()));
        }
        for (a, b) in [self.theta, self.phi, self.psi] {
            if a > b {
                return Err(Error::Range(format!("empty interval [{a}, {b}]")));
            }
        }
        SymGroupParams { theta: self.theta.0, phi: self.phi.0, psi: self.psi.0 }.validate()?;
        SymGroupParams { theta: self.theta.1, phi: self.phi.1, psi: self.psi.1 }.validate()
    }
}

fn node(range: (f64, f64), n: usize, i: usize) -> f64 {
    if n == 1 {
        range.0
    } else if i + 1 == n {
        range.1
    } else {
        range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
    pub f_j1j2inv: f64,
    pub f_comm: f64,
}

pub fn surface_sample(p: &SymGroupParams) -> SurfaceSample {
    let c = to_xyz(p);
    SurfaceSample {
        theta: p.theta,
        phi: p.phi,
        psi: p.psi,
        f_j1j2inv: f_j1j2inv(&c),
        f_comm: trace_poly_f(trace_commutator(&c)),
    }
}

/// Both fields on every node, `ψ` outermost and `φ` innermost.
pub fn surface_grid(b: &GridBox) -> Result<Vec<SurfaceSample>> {
    b.validate()?;
    let (nt, np, ns) = b.n;
    let mut out = Vec::with_capacity(nt * np * ns);
    for k in 0..ns {
        let psi = node(b.psi, ns, k);
        for i in 0..nt {
            let theta = node(b.theta, nt, i);
            for j in 0..np {
                let phi = node(b.phi, np, j);
                out.push(surface_sample(&SymGroupParams { theta, phi, psi }));
            }
        }
    }
    Ok(out)
}

fn changes_sign(v: [f64; 4]) -> bool {
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    lo <= 0.0 && hi >= 0.0 && lo < hi
}

/// A horizontal slice `ψ = ψ₀` on an `n × n` node grid over the full square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceScan {
    pub psi: f64,
    pub n: usize,
    /// Row-major, `θ` index first.
    pub samples: Vec<SurfaceSample>,
}

impl SliceScan {
    pub fn new(psi: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("slice resolution {n}, need at least 2")));
        }
        let samples = surface_grid(&GridBox::slice(psi, n))?;
        Ok(Self { psi, n, samples })
    }

    fn corners(&self, i: usize, j: usize) -> [&SurfaceSample; 4] {
        let n = self.n;
        [
            &self.samples[i * n + j],
            &self.samples[i * n + j + 1],
            &self.samples[(i + 1) * n + j],
            &self.samples[(i + 1) * n + j + 1],
        ]
    }

    /// Cells where both `f(tr J₁J₂⁻¹)` and `f(tr[J₁, J₂])` change sign.
    pub fn common_sign_change_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n - 1 {
            for j in 0..self.n - 1 {
                let c = self.corners(i, j);
                if changes_sign(c.map(|s| s.f_j1j2inv)) && changes_sign(c.map(|s| s.f_comm)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Sign-change cells of `P` over a window in the `(X, Y)` plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PZeroScan {
    pub x_window: (f64, f64),
    pub y_window: (f64, f64),
    pub n: (usize, usize),
    pub cells: Vec<(usize, usize)>,
}

impl PZeroScan {
    /// Centre of a cell.
    pub fn cell_center(&self, c: (usize, usize)) -> (f64, f64) {
        let (nx, ny) = self.n;
        let x0 = node(self.x_window, nx, c.0);
        let x1 = node(self.x_window, nx, c.0 + 1);
        let y0 = node(self.y_window, ny, c.1);
        let y1 = node(self.y_window, ny, c.1 + 1);
        (0.5 * (x0 + x1), 0.5 * (y0 + y1))
    }

    /// Number of 8-connected components of the cell set.
    pub fn components(&self) -> usize {
        let mut left: BTreeSet<(usize, usize)> = self.cells.iter().copied().collect();
        let mut count = 0;
        while let Some(&start) = left.iter().next() {
            count += 1;
            left.remove(&start);
            let mut queue = VecDeque::from([start]);
            while let Some((i, j)) = queue.pop_front() {
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        let (a, b) = (i as i64 + di, j as i64 + dj);
                        if a < 0 || b < 0 {
                            continue;
                        }
                        let nb = (a as usize, b as usize);
                        if left.remove(&nb) {
                            queue.push_back(nb);
                        }
                    }
                }
            }
        }
        count
    }

    /// Whether the cell set maps to itself under `Y ↦ −Y`; meaningful for a
    /// window symmetric about `Y = 0`.
    pub fn is_y_symmetric(&self) -> bool {
        let ny = self.n.1;
        let set: BTreeSet<_> = self.cells.iter().copied().collect();
        self.cells.iter().all(|&(i, j)| set.contains(&(i, ny - 2 - j)))
    }
}

/// Scans `P` on an `nx × ny` node grid over the window.
pub fn scan_p_zero_set(x_window: (f64, f64), y_window: (f64, f64), n: (usize, usize)) -> Result<PZeroScan> {
    let (nx, ny) = n;
    if nx < 2 || ny < 2 {
        return Err(Error::Range("scan needs at least 2 nodes per axis".into()));
    }
    if x_window.0 < 0.0 || x_window.0 > x_window.1 || y_window.0 > y_window.1 {
        return Err(Error::Range(format!("bad window {x_window:?} x {y_window:?}")));
    }
    let values: Vec<f64> = (0..nx)
        .flat_map(|i| {
            let x = node(x_window, nx, i);
            (0..ny).map(move |j| {
                // nodes mirrored by Y ↦ −Y get bitwise equal values
                let y = node(y_window, ny, j);
                let ym = node(y_window, ny, ny - 1 - j);
                poly_p(x, if y.abs() <= ym.abs() { y } else { -ym })
            })
        })
        .collect();
    let at = |i: usize, j: usize| values[i * ny + j];
    let mut cells = Vec::new();
    for i in 0..nx - 1 {
        for j in 0..ny - 1 {
            if changes_sign([at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)]) {
                cells.push((i, j));
            }
        }
    }
    Ok(PZeroScan { x_window, y_window, n, cells })
}
