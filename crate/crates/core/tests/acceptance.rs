//! One line per acceptance criterion. Criteria that the tabulated data cannot
//! satisfy are printed as FAIL with the offending rows; the target itself only
//! aborts on a panic.

use std::time::Instant;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symtriad::cell::{cell_vertices, contains, enumerate_faces, Face};
use symtriad::exact::{rational_to_f64, Angle, Rational};
use symtriad::orbit::{mean_curvature_components, OrbitPoint};
use symtriad::report::{check_austere_quarter_points, check_examples, reproduce_table, table_ids, TableReport};
use symtriad::solver::{solve_face_from, FaceOutcome, Objective, SolverOptions};
use symtriad::triad::{catalog_entries, CellPoint, SymmetricTriad};

// tolerances and budgets as stated in the acceptance criteria
const POINT_TOL: f64 = 1e-9;
const FD_REL_TOL: f64 = 1e-6;
const HESSIAN_EIG_MAX: f64 = -1e-12;
const UNIQUENESS_TOL: f64 = 1e-8;
const GRADIENT_POINTS: usize = 100;
const STARTS_PER_FACE: usize = 20;
const SWEEP_MAX_DENOMINATOR: i64 = 12;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
    secs: f64,
    budget: Option<f64>,
}

fn timed(id: &'static str, budget: Option<f64>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t0 = Instant::now();
    let (pass, detail) = f();
    Outcome { id, pass, detail, secs: t0.elapsed().as_secs_f64(), budget }
}

fn tables() -> Vec<TableReport> {
    let opts = SolverOptions::default();
    table_ids().map(|id| reproduce_table(id, &opts).expect("known table")).collect()
}

/// Random point strictly inside the convex hull of `verts` (π units → radians).
fn interior_point(verts: &[Vec<Rational>], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let w: Vec<f64> = verts.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    let r = verts[0].len();
    (0..r)
        .map(|i| verts.iter().zip(&w).map(|(v, wi)| wi * rational_to_f64(v[i])).sum::<f64>() / total * std::f64::consts::PI)
        .collect()
}

fn criterion_1(reports: &[TableReport]) -> (bool, String) {
    let passed: usize = reports.iter().map(TableReport::passed).sum();
    let total: usize = reports.iter().map(|r| r.rows.len()).sum();
    let mut detail = format!("{passed}/{total} rows (criterion text counts 72)");
    for r in reports {
        for row in r.rows.iter().filter(|x| !x.pass()) {
            detail += &format!("\n      table {} {}: {}", r.table_id, row.expected, row.failures.join("; "));
        }
    }
    (passed == total, detail)
}

fn criterion_4(reports: &[TableReport]) -> (bool, String) {
    let mut ok = true;
    let mut detail = String::new();
    for r in reports {
        if r.table_id <= 12 {
            let good = r.solution_count == 7;
            ok &= good;
            detail += &format!("\n      table {}: {} points{}", r.table_id, r.solution_count, if good { "" } else { " (expected 7)" });
        } else {
            let matched = r.rows.iter().filter(|x| x.pass()).count();
            ok &= matched == r.rows.len();
            detail += &format!(
                "\n      table {}: {} points, {matched}/{} listed rows matched, {} extra flagged",
                r.table_id,
                r.solution_count,
                r.rows.len(),
                r.extras.len()
            );
            for e in &r.extras {
                detail += &format!("\n        extra {e}");
            }
        }
    }
    (ok, detail)
}

fn criterion_5a(triads: &[SymmetricTriad], rng: &mut ChaCha8Rng) -> (bool, String) {
    let h = 1e-6;
    let (mut worst_fd, mut worst_hc) = (0.0f64, 0.0f64);
    for t in triads {
        let verts = cell_vertices(t).expect("cell");
        let obj = Objective::full(t);
        for _ in 0..GRADIENT_POINTS {
            let x = interior_point(&verts, rng);
            let g = obj.gradient(&x);
            for i in 0..t.rank {
                let (mut xp, mut xm) = (x.clone(), x.clone());
                xp[i] += h;
                xm[i] -= h;
                let fd = (obj.value(&xp).unwrap() - obj.value(&xm).unwrap()) / (2.0 * h);
                worst_fd = worst_fd.max((fd - g[i]).abs() / g[i].abs().max(1.0));
            }
            let hc = mean_curvature_components(t, &CellPoint::from_radians(&x));
            for (gi, hi) in g.iter().zip(&hc) {
                worst_hc = worst_hc.max((gi - hi.to_f64()).abs() / gi.abs().max(1.0));
            }
        }
    }
    (
        worst_fd <= FD_REL_TOL && worst_hc <= POINT_TOL,
        format!("max relative error vs finite differences {worst_fd:.2e}, vs mean curvature {worst_hc:.2e}"),
    )
}

fn orthonormal(face: &Face, rank: usize) -> DMatrix<f64> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for b in face.basis_f64() {
        let mut v = DVector::from_vec(b);
        for c in &cols {
            v -= c * c.dot(&v);
        }
        cols.push(v.normalize());
    }
    if cols.is_empty() {
        DMatrix::zeros(rank, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

fn criterion_5b(triads: &[SymmetricTriad], rng: &mut ChaCha8Rng) -> (bool, String) {
    let mut worst = f64::NEG_INFINITY;
    let mut checked = 0;
    for t in triads {
        let verts = cell_vertices(t).expect("cell");
        let obj = Objective::full(t);
        for _ in 0..GRADIENT_POINTS {
            let x = interior_point(&verts, rng);
            let e = SymmetricEigen::new(obj.hessian(&x)).eigenvalues;
            worst = worst.max(e.max());
            checked += 1;
        }
        for face in enumerate_faces(t).expect("faces").faces.iter().filter(|f| f.dim > 0 && f.dim < t.rank) {
            let obj = Objective::new(t, face);
            let b = orthonormal(face, t.rank);
            for _ in 0..GRADIENT_POINTS / 10 {
                let x = interior_point(&face.vertices, rng);
                let h = b.transpose() * obj.hessian(&x) * &b;
                worst = worst.max(SymmetricEigen::new(h).eigenvalues.max());
                checked += 1;
            }
        }
    }
    (worst < HESSIAN_EIG_MAX, format!("{checked} points, largest eigenvalue {worst:.3e}"))
}

fn criterion_5cd(reports: &[TableReport]) -> (bool, String) {
    let (mut chain_bad, mut dim_bad, mut n) = (0, 0, 0);
    for r in reports {
        let t = symtriad::triad::lookup(symtriad::report::table_slug(r.table_id).unwrap()).unwrap().triad;
        for s in &r.set.solutions {
            n += 1;
            let rep = &s.report;
            if (rep.totally_geodesic && !rep.austere) || (rep.austere && !rep.minimal) {
                chain_bad += 1;
            }
            if Some(rep.dim_orbit + rep.dim_normal) != t.ambient_dim {
                dim_bad += 1;
            }
        }
    }
    (
        chain_bad == 0 && dim_bad == 0,
        format!("{n} classified points: {chain_bad} break totally geodesic => austere => minimal, {dim_bad} break the dimension sum"),
    )
}

fn sweep_values(lo: f64, hi: f64) -> Vec<Rational> {
    let mut v = std::collections::BTreeSet::new();
    for d in 1..=SWEEP_MAX_DENOMINATOR {
        for p in (lo * d as f64).floor() as i64..=(hi * d as f64).ceil() as i64 {
            v.insert(Rational::new(p, d));
        }
    }
    v.into_iter().collect()
}

fn criterion_5e(triads: &[SymmetricTriad]) -> (bool, String) {
    let (mut points, mut hits, mut bad) = (0, 0, Vec::new());
    for t in triads.iter().filter(|t| t.rank == 2) {
        let verts = cell_vertices(t).expect("cell");
        let axis = |i: usize| {
            let xs: Vec<f64> = verts.iter().map(|v| rational_to_f64(v[i])).collect();
            sweep_values(xs.iter().copied().fold(f64::INFINITY, f64::min), xs.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        };
        let (ax, ay) = (axis(0), axis(1));
        for &a in &ax {
            for &b in &ay {
                let z = CellPoint::new(vec![Angle::pi_multiple(a), Angle::pi_multiple(b)]);
                if !contains(t, &z, 0.0) {
                    continue;
                }
                points += 1;
                let op = OrbitPoint::new(t, &z, 0.0);
                if op.condition_i().holds || op.condition_ii().holds {
                    hits += 1;
                    let exact_zero = op.mean_curvature().iter().all(|v| v.is_exact() && v.is_zero(0.0));
                    if !exact_zero {
                        bad.push(format!("{} at {}", t.name, z.pretty()));
                    }
                }
            }
        }
    }
    let mut detail = format!("{points} exact cell points, {hits} satisfy (I) or (II), {} not exactly minimal", bad.len());
    for b in bad.iter().take(10) {
        detail += &format!("\n      {b}");
    }
    (bad.is_empty() && hits > 0, detail)
}

fn criterion_6(triads: &[SymmetricTriad], rng: &mut ChaCha8Rng) -> (bool, String) {
    let opts = SolverOptions::default();
    let (mut faces, mut worst, mut failures) = (0, 0.0f64, Vec::new());
    for t in triads {
        for face in enumerate_faces(t).expect("faces").faces.iter().filter(|f| f.dim > 0) {
            faces += 1;
            let mut pts: Vec<Vec<f64>> = Vec::new();
            for _ in 0..STARTS_PER_FACE {
                let x0 = interior_point(&face.vertices, rng);
                match solve_face_from(t, face, &x0, &opts) {
                    Ok((FaceOutcome::Solved { point, .. } | FaceOutcome::NotMinimal { point }, _)) => pts.push(point.to_f64()),
                    Ok((other, d)) => failures.push(format!("{} {}: {:?} ({})", t.name, face.label(), other, d.message)),
                    Err(e) => failures.push(format!("{} {}: {e}", t.name, face.label())),
                }
            }
            for p in &pts {
                let d = p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                worst = worst.max(d);
            }
        }
    }
    let mut detail = format!("{faces} faces x {STARTS_PER_FACE} starts, max spread {worst:.2e}, {} failed starts", failures.len());
    for f in failures.iter().take(5) {
        detail += &format!("\n      {f}");
    }
    (failures.is_empty() && worst <= UNIQUENESS_TOL, detail)
}

fn main() {
    let triads: Vec<SymmetricTriad> = catalog_entries().into_iter().map(|e| e.triad).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();

    let t0 = Instant::now();
    let reports = tables();
    let table_secs = t0.elapsed().as_secs_f64();
    let mut c1 = timed("1 table regression", Some(5.0), || criterion_1(&reports));
    c1.secs += table_secs;
    out.push(c1);
    out.push(timed("2 austere quarter points", Some(1.0), || {
        let r = check_austere_quarter_points(POINT_TOL);
        let bad: Vec<String> = r.lines.iter().filter(|l| !l.pass).map(|l| format!("{} ({})", l.name, l.detail)).collect();
        (r.all_pass(), format!("{}/{} points{}", r.passed(), r.lines.len(), if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }))
    }));
    out.push(timed("3 worked examples n<=3", Some(1.0), || {
        let r = check_examples(3, POINT_TOL);
        let mut detail = format!("{}/{} checks", r.passed(), r.lines.len());
        for l in r.lines.iter().filter(|l| !l.pass) {
            detail += &format!("\n      {}: {}", l.name, l.detail);
        }
        (r.all_pass(), detail)
    }));
    let mut c4 = timed("4 minimal point counts", Some(5.0), || criterion_4(&reports));
    c4.secs += table_secs;
    out.push(c4);
    out.push(timed("5a gradient vs finite differences", Some(30.0), || criterion_5a(&triads, &mut rng)));
    out.push(timed("5b Hessian negative definite", Some(30.0), || criterion_5b(&triads, &mut rng)));
    out.push(timed("5c/5d predicate chain and dimensions", Some(30.0), || criterion_5cd(&reports)));
    out.push(timed("5e (I)/(II) imply minimal, exact sweep", Some(30.0), || criterion_5e(&triads)));
    out.push(timed("6 solver uniqueness", None, || criterion_6(&triads, &mut rng)));

    println!();
    let mut passed = 0;
    for o in &out {
        let over = o.budget.is_some_and(|b| o.secs > b);
        let pass = o.pass && !over;
        passed += usize::from(pass);
        let budget = o.budget.map_or(String::new(), |b| format!(", budget {b} s"));
        println!(
            "acceptance criterion {}: {} ({:.2} s{budget}{}) {}",
            o.id,
            if pass { "PASS" } else { "FAIL" },
            o.secs,
            if over { ", over budget" } else { "" },
            o.detail
        );
    }
    println!("acceptance: {passed}/{} criteria pass", out.len());
}
