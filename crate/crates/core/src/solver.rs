//! Minimal orbits as maximizers of the strictly concave log-volume on each
//! face of the closed cell.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cell::{enumerate_faces, CellError, Face};
use crate::exact::{Angle, Rational, DEFAULT_TOLERANCE};
use crate::linalg;
use crate::orbit::{angle_json, classify_with_tol, OrbitPoint, OrbitReport, Part};
use crate::triad::{CellPoint, SymmetricTriad};

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error("point {0:?} is outside the open face")]
    Infeasible(Vec<f64>),
    #[error("start point has {got} coordinates, expected {want}")]
    Arity { got: usize, want: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Congruence and deduplication tolerance.
    pub tol: f64,
    /// Convergence threshold on the projected gradient norm.
    pub grad_tol: f64,
    pub max_iter: usize,
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: DEFAULT_TOLERANCE, grad_tol: 1e-12, max_iter: 200, parallel: false }
    }
}

#[derive(Clone, Debug)]
struct Term {
    n: Vec<f64>,
    m: f64,
    part: Part,
}

/// Log-volume `Σ_V mV log sin β + Σ_H mH log cos β` restricted to a face.
/// Roots pinned to a singular value on the face are left out.
#[derive(Clone, Debug)]
pub struct Objective {
    terms: Vec<Term>,
    rank: usize,
}

impl Objective {
    pub fn new(t: &SymmetricTriad, face: &Face) -> Self {
        let mut terms = Vec::new();
        for r in &t.roots {
            let constant = face.is_constant(&r.root);
            let value = linalg::dot_int(r.root.coeffs(), &face.centroid);
            let n: Vec<f64> = r.root.coeffs().iter().map(|&c| c as f64).collect();
            let v_singular = constant && value.is_integer();
            let h_singular = constant && (value - Rational::new(1, 2)).is_integer();
            if r.m_v > 0 && !v_singular {
                terms.push(Term { n: n.clone(), m: r.m_v as f64, part: Part::Vertical });
            }
            if r.m_h > 0 && !h_singular {
                terms.push(Term { n, m: r.m_h as f64, part: Part::Horizontal });
            }
        }
        Objective { terms, rank: t.rank }
    }

    /// Every root with its full multiplicity; the objective on the open cell.
    pub fn full(t: &SymmetricTriad) -> Self {
        let mut terms = Vec::new();
        for r in &t.roots {
            let n: Vec<f64> = r.root.coeffs().iter().map(|&c| c as f64).collect();
            if r.m_v > 0 {
                terms.push(Term { n: n.clone(), m: r.m_v as f64, part: Part::Vertical });
            }
            if r.m_h > 0 {
                terms.push(Term { n, m: r.m_h as f64, part: Part::Horizontal });
            }
        }
        Objective { terms, rank: t.rank }
    }

    fn dot(n: &[f64], x: &[f64]) -> f64 {
        n.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `None` outside the region where every term is finite.
    pub fn value(&self, x: &[f64]) -> Option<f64> {
        let mut s = 0.0;
        for t in &self.terms {
            let b = Self::dot(&t.n, x);
            let v = match t.part {
                Part::Vertical => b.sin(),
                Part::Horizontal => b.cos(),
            };
            if !(v > 0.0) {
                return None;
            }
            s += t.m * v.ln();
        }
        Some(s)
    }

    /// Ambient gradient: `Σ_V mV·n·cot β − Σ_H mH·n·tan β`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.rank];
        for t in &self.terms {
            let b = Self::dot(&t.n, x);
            let c = match t.part {
                Part::Vertical => t.m / b.tan(),
                Part::Horizontal => -t.m * b.tan(),
            };
            for (gi, ni) in g.iter_mut().zip(&t.n) {
                *gi += c * ni;
            }
        }
        g
    }

    /// Ambient Hessian: `−Σ_V mV·nnᵀ/sin²β − Σ_H mH·nnᵀ/cos²β`.
    pub fn hessian(&self, x: &[f64]) -> DMatrix<f64> {
        let r = self.rank;
        let mut h = DMatrix::zeros(r, r);
        for t in &self.terms {
            let b = Self::dot(&t.n, x);
            let w = match t.part {
                Part::Vertical => t.m / b.sin().powi(2),
                Part::Horizontal => t.m / b.cos().powi(2),
            };
            let n = DVector::from_column_slice(&t.n);
            h -= &n * n.transpose() * w;
        }
        h
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Log-volume at face coordinates `y` (along the face's exact spanning basis,
/// centred on its centroid).
pub fn log_volume(t: &SymmetricTriad, face: &Face, y: &[f64]) -> Result<f64, SolverError> {
    let x = face.to_ambient(y);
    Objective::new(t, face).value(&x).ok_or(SolverError::Infeasible(x))
}

/// Orthonormal basis (columns) of the face directions in radian coordinates.
fn orthonormal_basis(face: &Face, rank: usize) -> DMatrix<f64> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for b in face.basis_f64() {
        let mut v = DVector::from_vec(b);
        for c in &cols {
            let p = c.dot(&v);
            v -= c * p;
        }
        cols.push(v.normalize());
    }
    if cols.is_empty() {
        DMatrix::zeros(rank, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FaceOutcome {
    /// Converged maximizer (for vertices, the vertex itself).
    Solved { point: CellPoint, exact: bool },
    /// Active roots do not span the face directions.
    Degenerate,
    NotConverged { last: Vec<f64> },
    /// Critical on the face but with mean curvature normal to it.
    NotMinimal { point: CellPoint },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaceDiagnostics {
    pub face: String,
    pub dim: usize,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub message: String,
}

/// Newton ascent from the face centroid.
pub fn solve_face(t: &SymmetricTriad, face: &Face, opts: &SolverOptions) -> (FaceOutcome, FaceDiagnostics) {
    let x0: Vec<f64> = face.centroid.iter().map(|&c| crate::exact::rational_to_f64(c) * PI).collect();
    solve_face_from(t, face, &x0, opts).expect("centroid lies in the open face")
}

/// Newton ascent from `x0` (radians), which must lie in the face's relative
/// interior; components normal to the face are projected away.
pub fn solve_face_from(
    t: &SymmetricTriad,
    face: &Face,
    x0: &[f64],
    opts: &SolverOptions,
) -> Result<(FaceOutcome, FaceDiagnostics), SolverError> {
    if x0.len() != t.rank {
        return Err(SolverError::Arity { got: x0.len(), want: t.rank });
    }
    let mut diag = FaceDiagnostics {
        face: face.label(),
        dim: face.dim,
        iterations: 0,
        gradient_norm: 0.0,
        message: String::new(),
    };
    if face.dim == 0 {
        let z = face.base_point();
        diag.message = "vertex".into();
        return Ok((finish(t, z, true, opts, &mut diag), diag));
    }
    let obj = Objective::new(t, face);
    if !spans_face(t, face) {
        diag.message = "active roots do not span the face directions".into();
        return Ok((FaceOutcome::Degenerate, diag));
    }
    let basis = orthonormal_basis(face, t.rank);
    let centroid = DVector::from_vec(face.to_ambient(&[]));
    // project the start onto the face's affine span
    let start = DVector::from_column_slice(x0);
    let mut y: DVector<f64> = basis.transpose() * (&start - &centroid);
    let ambient = |y: &DVector<f64>| -> Vec<f64> { (&centroid + &basis * y).iter().copied().collect() };
    let strictly_in = |x: &[f64]| face.strict.iter().all(|w| w.slack(x) > 0.0);
    let mut x = ambient(&y);
    if !strictly_in(&x) {
        return Err(SolverError::Infeasible(x));
    }
    let mut f = obj.value(&x).ok_or_else(|| SolverError::Infeasible(x.clone()))?;
    for it in 0..=opts.max_iter {
        let g = basis.transpose() * DVector::from_vec(obj.gradient(&x));
        diag.iterations = it;
        diag.gradient_norm = g.norm();
        if diag.gradient_norm < opts.grad_tol {
            diag.message = "converged".into();
            let z = snap(t, face, &x, opts);
            let exact = z.is_exact();
            return Ok((finish(t, z, exact, opts, &mut diag), diag));
        }
        if it == opts.max_iter {
            break;
        }
        let h = basis.transpose() * obj.hessian(&x) * &basis;
        let Some(chol) = (-h).cholesky() else {
            diag.message = "projected Hessian is not negative definite".into();
            return Ok((FaceOutcome::Degenerate, diag));
        };
        let d = chol.solve(&g);
        let slope = g.dot(&d);
        let mut step = 1.0;
        let mut moved = false;
        while step > 1e-16 {
            let y_new = &y + &d * step;
            let x_new = ambient(&y_new);
            if strictly_in(&x_new) {
                if let Some(f_new) = obj.value(&x_new) {
                    let g_new = (basis.transpose() * DVector::from_vec(obj.gradient(&x_new))).norm();
                    // near the optimum f changes below rounding; accept a smaller gradient instead
                    if f_new >= f + 1e-4 * step * slope || g_new < diag.gradient_norm {
                        y = y_new;
                        x = x_new;
                        f = f_new;
                        moved = true;
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        if !moved {
            diag.message = "line search stalled".into();
            return Ok((FaceOutcome::NotConverged { last: x }, diag));
        }
    }
    diag.message = format!("no convergence after {} iterations", opts.max_iter);
    Ok((FaceOutcome::NotConverged { last: x }, diag))
}

fn finish(
    t: &SymmetricTriad,
    z: CellPoint,
    exact: bool,
    opts: &SolverOptions,
    diag: &mut FaceDiagnostics,
) -> FaceOutcome {
    if OrbitPoint::new(t, &z, opts.tol).is_minimal() {
        FaceOutcome::Solved { point: z, exact }
    } else {
        diag.message = format!("{}; mean curvature has a component normal to the face", diag.message);
        FaceOutcome::NotMinimal { point: z }
    }
}

/// Projections of the non-constant roots span the face directions.
fn spans_face(t: &SymmetricTriad, face: &Face) -> bool {
    let rows: Vec<Vec<Rational>> = t
        .roots
        .iter()
        .map(|r| face.span_basis.iter().map(|b| linalg::dot_int(r.root.coeffs(), b)).collect::<Vec<_>>())
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    linalg::rank(&rows) == face.dim
}

/// Replaces coordinates within `tol` of a multiple of π/12 by the exact value.
/// A fully exact point is kept only if it lies exactly in the face and is
/// exactly minimal; otherwise the snapped coordinates are kept only when the
/// mixed point still lies in the face within `tol`.
fn snap(t: &SymmetricTriad, face: &Face, x: &[f64], opts: &SolverOptions) -> CellPoint {
    let numeric = CellPoint::from_radians(x);
    let snapped: Vec<Option<Rational>> = x
        .iter()
        .map(|&v| {
            let k = (v / (PI / 12.0)).round();
            ((v - k * PI / 12.0).abs() < opts.tol).then(|| Rational::new(k as i64, 12))
        })
        .collect();
    if let Some(y) = snapped.iter().copied().collect::<Option<Vec<Rational>>>() {
        if !face.contains_exact(&y) {
            return numeric;
        }
        let z = CellPoint::new(y.iter().map(|&r| Angle::pi_multiple(r)).collect());
        let exact_zero =
            OrbitPoint::new(t, &z, 0.0).mean_curvature().iter().all(|v| v.is_exact() && v.is_zero(0.0));
        return if exact_zero { z } else { numeric };
    }
    let mixed = CellPoint::new(
        x.iter()
            .zip(&snapped)
            .map(|(&v, s)| s.map_or(Angle::radians(v), Angle::pi_multiple))
            .collect(),
    );
    let xm = mixed.to_f64();
    let on_face = face.pinned.iter().all(|w| w.slack(&xm).abs() < opts.tol)
        && face.strict.iter().all(|w| w.slack(&xm) > 0.0);
    if on_face {
        mixed
    } else {
        numeric
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub face: Face,
    pub point: CellPoint,
    pub report: OrbitReport,
}

#[derive(Clone, Debug)]
pub struct MinimalOrbitSet {
    pub triad: String,
    pub solutions: Vec<Solution>,
    pub diagnostics: Vec<FaceDiagnostics>,
    /// Face enumeration is exhaustive (rank ≤ 3).
    pub complete: bool,
    pub face_count: usize,
}

impl MinimalOrbitSet {
    pub fn to_json(&self, verbose: bool) -> Value {
        let mut v = json!({
            "triad": self.triad,
            "face_count": self.face_count,
            "complete": self.complete,
            "solutions": self.solutions.iter().map(|s| json!({
                "face": s.face.label(),
                "face_dim": s.face.dim,
                "Z": s.point.coords.iter().map(angle_json).collect::<Vec<_>>(),
                "Z_radians": s.point.to_f64(),
                "report": s.report.to_json(),
            })).collect::<Vec<_>>(),
        });
        if verbose {
            v["diagnostics"] = self
                .diagnostics
                .iter()
                .map(|d| {
                    json!({
                        "face": d.face, "dim": d.dim, "iterations": d.iterations,
                        "gradient_norm": d.gradient_norm, "message": d.message,
                    })
                })
                .collect();
        }
        v
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut s = format!("{}: {} minimal orbit(s) over {} face(s)\n", self.triad, self.solutions.len(), self.face_count);
        if !self.complete {
            s += "note: face enumeration is not guaranteed complete above rank 3\n";
        }
        for sol in &self.solutions {
            let r = &sol.report;
            let tags: Vec<String> = r.theorem_tags.iter().map(ToString::to_string).collect();
            let coords: Vec<String> = sol
                .point
                .coords
                .iter()
                .map(|a| if a.is_exact() { a.pretty() } else { format!("{:.12}", a.to_radians()) })
                .collect();
            s += &format!(
                "  ({})  dim {}  {}{}{}  tags {{{}}}  [{}]\n",
                coords.join(", "),
                r.dim_orbit,
                if r.totally_geodesic { "totally geodesic" } else if r.austere { "austere" } else { "not austere" },
                if r.condition_i.holds { ", (I)" } else { "" },
                if r.condition_ii.holds { ", (II)" } else { "" },
                tags.join(", "),
                sol.face.label(),
            );
        }
        if verbose {
            s += "diagnostics:\n";
            for d in &self.diagnostics {
                s += &format!(
                    "  {}: {} after {} iteration(s), |grad| = {:.3e}\n",
                    d.face, d.message, d.iterations, d.gradient_norm
                );
            }
        }
        s
    }
}

/// Solves every face and keeps the minimal orbits, one per distinct point.
pub fn enumerate_minimal_orbits(t: &SymmetricTriad, opts: &SolverOptions) -> Result<MinimalOrbitSet, SolverError> {
    let faces = enumerate_faces(t)?;
    let run = |face: &Face| {
        let (outcome, diag) = solve_face(t, face, opts);
        (face.clone(), outcome, diag)
    };
    let results: Vec<(Face, FaceOutcome, FaceDiagnostics)> = if opts.parallel {
        faces.faces.par_iter().map(run).collect()
    } else {
        faces.faces.iter().map(run).collect()
    };
    let mut solutions: Vec<Solution> = Vec::new();
    let mut diagnostics = Vec::new();
    // faces arrive sorted by dimension, so the first record of a point is the lowest-dimensional one
    for (face, outcome, diag) in results {
        diagnostics.push(diag);
        if let FaceOutcome::Solved { point, .. } = outcome {
            if solutions.iter().any(|s| s.point.distance(&point) < opts.tol) {
                continue;
            }
            let report = classify_with_tol(t, &point, opts.tol);
            solutions.push(Solution { face, point, report });
        }
    }
    Ok(MinimalOrbitSet {
        triad: t.name.clone(),
        solutions,
        diagnostics,
        complete: faces.complete,
        face_count: faces.faces.len(),
    })
}
