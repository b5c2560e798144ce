use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use anyhow::{anyhow, bail, Context, Result};
use chyp::classify::{classify, deltoid_samples, trace_poly_f, IsometryClass};
use chyp::families::{family_threshold, FamilyKind};
use chyp::hermitian::{cis, su21_normalize, CMat3, Isometry};
use chyp::invariants::cartan;
use chyp::pinch::{
    constraint_point, numeric_x_range, poly_p, solve_locus, surface_grid, x_range, GridBox,
    LocusStatus, SliceScan, XyCoords,
};
use chyp::representations::{rep_closed_form, rep_from_tetra};
use chyp::sampling::{random_loxodromic, random_sym_params};
use chyp::symmetry::{
    build_sym_group, to_xyz, trace_commutator, trace_j1j2, trace_j1j2inv,
    SymGroupParams,
};
use chyp::tetrahedra::{extract_params, standard_lifts, TetraParams};
use chyp::{Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{complex, matrix, Table, OK};

/// Six slice heights of the figure.
pub const FIGURE_SLICES: [f64; 6] = [0.0, 0.02, 0.04, 0.044, 0.06, 0.085];

fn entry(v: &Value) -> Result<C64> {
    match v {
        Value::Array(p) if p.len() == 2 => {
            let re = p[0].as_f64().ok_or_else(|| anyhow!("real part is not a number"))?;
            let im = p[1].as_f64().ok_or_else(|| anyhow!("imaginary part is not a number"))?;
            Ok(C64::new(re, im))
        }
        Value::Number(n) => Ok(C64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        _ => bail!("matrix entries must be [re, im] pairs"),
    }
}

/// Nested 3×3 or flat list of nine `[re, im]` entries, row-major.
pub fn parse_matrix(text: &str) -> Result<CMat3> {
    let v: Value = serde_json::from_str(text).context("matrix is not valid JSON")?;
    let rows = v.as_array().ok_or_else(|| anyhow!("matrix must be a JSON array"))?;
    let flat: Vec<&Value> = if rows.len() == 3 && rows.iter().all(|r| r.as_array().is_some_and(|r| r.len() == 3)) {
        rows.iter().flat_map(|r| r.as_array().unwrap().iter()).collect()
    } else if rows.len() == 9 {
        rows.iter().collect()
    } else {
        bail!("matrix must be 3x3 or a flat list of 9 entries");
    };
    let entries = flat.into_iter().map(entry).collect::<Result<Vec<_>>>()?;
    Ok(CMat3::from_row_slice(&entries))
}

fn class_json(c: &IsometryClass) -> Value {
    json!({
        "tag": c.tag.as_str(),
        "f": c.fvalue,
        "neutral_eigenvalue": c.neutral_eigenvalue.map(complex),
    })
}

fn class_or_error(a: &Isometry, tol: &Tolerances) -> Value {
    match classify(a, tol) {
        Ok(c) => class_json(&c),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn cmd_classify(text: &str, tol: &Tolerances) -> Result<Value> {
    let m = parse_matrix(text)?;
    let a = su21_normalize(&m, tol)?;
    let c = classify(&a, tol)?;
    Ok(json!({
        "tag": c.tag.as_str(),
        "f": c.fvalue,
        "trace": complex(a.trace()),
        "neutral_eigenvalue": c.neutral_eigenvalue.map(complex),
        "normalized": matrix(a.matrix()),
    }))
}

pub fn cmd_tetra(theta: f64, phi: f64, psi: f64, r: f64, tol: &Tolerances) -> Result<Value> {
    let p = TetraParams { theta, phi, psi, r };
    let t = standard_lifts(&p)?;
    let v = t.vertices();
    let lifts: Vec<Value> =
        v.iter().map(|q| Value::Array(q.lift().iter().map(|z| complex(*z)).collect())).collect();
    let balance = t.balance(tol)?;
    let extracted = extract_params(&t, tol).map(|e| json!(e)).unwrap_or_else(|e| json!({ "error": e.to_string() }));
    Ok(json!({
        "params": p,
        "lifts": lifts,
        "cross_ratio": complex(t.cross_ratio(tol)?),
        "bending": t.bending(tol).map(complex).unwrap_or(Value::Null),
        "cartan_p2_p1_p3": cartan(&t.p2, &t.p1, &t.p3, tol)?,
        "cartan_p1_p2_p4": cartan(&t.p1, &t.p2, &t.p4, tol)?,
        "balance": balance,
        "extracted": extracted,
    }))
}

pub fn cmd_rep(
    (theta, phi, psi): (f64, f64, f64),
    lambda_a: Option<f64>,
    lambda_b: Option<f64>,
    tol: &Tolerances,
) -> Result<Value> {
    let symmetric = -2.0 * (theta + phi) / 3.0;
    let la = cis(lambda_a.unwrap_or(symmetric));
    let lb = cis(lambda_b.unwrap_or(symmetric));
    let t = standard_lifts(&TetraParams::balanced(theta, phi, psi))?;
    let rep = rep_from_tetra(&t, la, lb, tol)?;
    let cf = rep_closed_form(theta, phi, psi, la, lb)?;
    Ok(json!({
        "A": matrix(rep.a.matrix()),
        "B": matrix(rep.b.matrix()),
        "AB": matrix(rep.ab().matrix()),
        "lambda_a": complex(rep.lambda_a),
        "lambda_b": complex(rep.lambda_b),
        "lambda_ab": complex(rep.lambda_ab),
        "class_A": class_or_error(&rep.a, tol),
        "class_B": class_or_error(&rep.b, tol),
        "class_AB": class_or_error(&rep.ab(), tol),
        "closed_form_residual_A": rep.a.projective_residual(&cf.a),
        "closed_form_residual_B": rep.b.projective_residual(&cf.b),
    }))
}

pub fn cmd_group33(theta: f64, phi: f64, psi: f64, tol: &Tolerances) -> Result<Value> {
    let p = SymGroupParams::new(theta, phi, psi)?;
    let g = build_sym_group(&p)?;
    let trace = |m: C64, f: C64| json!({ "matrix": complex(m), "closed_form": complex(f), "residual": (m - f).norm() });
    Ok(json!({
        "params": p,
        "xyz": g.coords,
        "J1": matrix(g.j1.matrix()),
        "J2": matrix(g.j2.matrix()),
        "A": matrix(g.a().matrix()),
        "B": matrix(g.b().matrix()),
        "trace_J1J2": trace(g.j1j2().trace(), trace_j1j2(&p)),
        "trace_J1J2inv": trace(g.j1j2inv().trace(), trace_j1j2inv(&p)),
        "trace_commutator": trace(g.commutator().trace(), trace_commutator(&g.coords)),
        "class_J1J2": class_or_error(&g.j1j2(), tol),
        "class_J1J2inv": class_or_error(&g.j1j2inv(), tol),
        "class_commutator": class_or_error(&g.commutator(), tol),
    }))
}

pub fn cmd_deltoid(samples: usize) -> Table {
    let mut t = Table::new(&["alpha", "re", "im"]);
    for s in deltoid_samples(samples) {
        let f = trace_poly_f(s.z);
        let status = if f.abs() <= 1e-10 { OK.to_string() } else { format!("f = {f:e}") };
        t.push(vec![s.alpha.into(), s.z.re.into(), s.z.im.into()], status);
    }
    t
}

fn finite_status(values: &[f64]) -> &'static str {
    if values.iter().all(|v| v.is_finite()) {
        OK
    } else {
        "non-finite value"
    }
}

pub fn cmd_surface(resolution: usize) -> Result<Table> {
    let b = GridBox {
        theta: (-FRAC_PI_4, FRAC_PI_4),
        phi: (-FRAC_PI_4, FRAC_PI_4),
        psi: (0.0, FRAC_PI_2),
        n: (resolution, resolution, resolution),
    };
    let mut t = Table::new(&["theta", "phi", "psi", "f_J1J2inv", "f_comm_re_deficit"]);
    for s in surface_grid(&b)? {
        let status = finite_status(&[s.f_j1j2inv, s.f_comm]);
        t.push(vec![s.theta.into(), s.phi.into(), s.psi.into(), s.f_j1j2inv.into(), s.f_comm.into()], status);
    }
    Ok(t)
}

pub fn cmd_slices(psis: &[f64], resolution: usize) -> Result<Table> {
    let mut t = Table::new(&["psi", "theta", "phi", "f_J1J2inv", "f_comm"]);
    for &psi in psis {
        let scan = SliceScan::new(psi, resolution)?;
        for s in scan.samples {
            let status = finite_status(&[s.f_j1j2inv, s.f_comm]);
            t.push(vec![s.psi.into(), s.theta.into(), s.phi.into(), s.f_j1j2inv.into(), s.f_comm.into()], status);
        }
    }
    Ok(t)
}

pub fn cmd_superpinch(samples: usize, tol: &Tolerances) -> Result<Table> {
    let mut t = Table::new(&[
        "X", "Y", "x", "y", "z", "theta", "phi", "psi", "resP", "resf1", "resfc", "branch",
    ]);
    for p in solve_locus(samples, tol)? {
        let (theta, phi, psi) = match p.params {
            Some(q) => (Some(q.theta), Some(q.phi), Some(q.psi)),
            None => (None, None, None),
        };
        let status = match &p.status {
            LocusStatus::Accepted => OK.to_string(),
            LocusStatus::Rejected(reason) => format!("rejected: {reason}"),
        };
        t.push(
            vec![
                p.xy.x.into(),
                p.xy.y.into(),
                p.xyz.x.into(),
                p.xyz.y.into(),
                p.xyz.z.into(),
                theta.into(),
                phi.into(),
                psi.into(),
                p.residual_p.into(),
                p.residual_f_j1j2inv.into(),
                p.residual_f_comm.into(),
                p.branch.into(),
            ],
            status,
        );
    }
    Ok(t)
}

pub fn cmd_family(kinds: &[FamilyKind], resolution: usize, tol: &Tolerances) -> Result<Table> {
    let mut t = Table::new(&["kind", "param", "f_value", "class", "threshold"]);
    for &kind in kinds {
        let r = family_threshold(kind, resolution, tol)?;
        for s in &r.samples {
            let (class, status) = match s.class {
                Some(c) => (c.as_str().to_string(), OK.to_string()),
                None => (String::new(), "classification failed".to_string()),
            };
            t.push(
                vec![kind.as_str().into(), s.param.into(), s.f_value.into(), class.into(), r.threshold.into()],
                status,
            );
        }
    }
    Ok(t)
}

/// Reduced version of the acceptance checks, for a quick sanity run.
pub fn cmd_selftest(seed: u64, tol: &Tolerances) -> Result<Table> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Table::new(&["check", "value", "bound"]);
    let mut check = |name: &str, value: f64, bound: f64| {
        let status = if value <= bound { OK } else { "fail" };
        t.push(vec![name.into(), value.into(), bound.into()], status);
    };

    let (mut fdel, mut e1, mut e2) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..500 {
        let p = random_sym_params(&mut rng, 0.0);
        let g = build_sym_group(&p)?;
        fdel = fdel.max(trace_poly_f(g.j1j2().trace()).abs());
        e1 = e1.max((g.j1j2inv().trace() - trace_j1j2inv(&p)).norm());
        e2 = e2.max((g.commutator().trace() - trace_commutator(&to_xyz(&p))).norm());
    }
    check("deltoid membership |f(tr J1J2)|", fdel, 1e-9);
    check("tr(J1J2^-1) closed form", e1, 1e-10);
    check("tr[J1,J2] closed form", e2, 1e-10);

    let (lo, hi) = x_range();
    let mut poly = 0.0f64;
    for _ in 0..100 {
        let c = constraint_point(-rng.gen_range(lo..hi).sqrt(), rng.gen_range(0.0..4.0))?;
        let xy = XyCoords::from_xyz(&c);
        let rhs = poly_p(xy.x, xy.y);
        let lhs = 256.0 * xy.x.powi(4) * trace_poly_f(trace_commutator(&c));
        poly = poly.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
    }
    check("256 X^4 f(tr[J1,J2]) - P(X,Y)", poly, 1e-8);

    let (a, b) = numeric_x_range()?;
    check("X range endpoints", (a - lo).abs().max((b - hi).abs()), 1e-9);

    for kind in [FamilyKind::IdealTriangle, FamilyKind::Modular1, FamilyKind::Bending] {
        let r = family_threshold(kind, 32, tol)?;
        check(&format!("{kind} threshold"), r.threshold_error().unwrap_or(f64::INFINITY), 1e-10);
    }

    let mut lox = 0.0f64;
    for _ in 0..100 {
        let l = random_loxodromic(&mut rng);
        if classify(&l, tol)?.tag != chyp::classify::IsometryTag::Loxodromic {
            lox += 1.0;
        }
    }
    check("misclassified loxodromics", lox, 0.0);

    let p = SymGroupParams::new(0.0, 0.0, (3.0f64 / 8.0).sqrt().asin())?;
    let parabolic = classify(&build_sym_group(&p)?.j1j2inv(), tol)?.tag.is_parabolic();
    check("bending threshold J1J2^-1 not parabolic", if parabolic { 0.0 } else { 1.0 }, 0.0);
    Ok(t)
}

pub fn parse_kinds(kind: Option<&str>) -> Result<Vec<FamilyKind>> {
    match kind {
        None | Some("all") => Ok(FamilyKind::ALL.to_vec()),
        Some(s) => s
            .split(',')
            .map(|k| FamilyKind::parse(k.trim()).ok_or_else(|| anyhow!("unknown family {k:?}")))
            .collect(),
    }
}

