//! The fundamental cell: boundary walls, exact face enumeration, and folding
//! of arbitrary points back into the closed cell by affine reflections.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rational_to_f64, Angle, Rational};
use crate::linalg;
use crate::triad::{CellPoint, RootVector, SymmetricTriad};

#[derive(Debug, Error, PartialEq)]
pub enum CellError {
    #[error("the cell of {0} is unbounded or not full-dimensional")]
    Degenerate(String),
    #[error("folding did not terminate after {0} reflections")]
    FoldDiverged(usize),
    #[error("root strings do not give a consistent Cartan matrix: {0}")]
    NotCrystallographic(String),
}

/// Which boundary value a wall pins its root to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WallSide {
    /// β = 0 (vertical part)
    #[serde(rename = "V_zero")]
    VZero,
    /// β = π (vertical part)
    #[serde(rename = "V_pi")]
    VPi,
    /// β = −π/2 (horizontal part)
    #[serde(rename = "H_neg")]
    HNeg,
    /// β = π/2 (horizontal part)
    #[serde(rename = "H_pos")]
    HPos,
}

impl WallSide {
    /// Level in units of π.
    pub fn level(self) -> Rational {
        match self {
            WallSide::VZero => Rational::zero(),
            WallSide::VPi => Rational::from_integer(1),
            WallSide::HNeg => Rational::new(-1, 2),
            WallSide::HPos => Rational::new(1, 2),
        }
    }

    /// True when the cell lies on the side `β ≥ level`.
    pub fn is_lower(self) -> bool {
        matches!(self, WallSide::VZero | WallSide::HNeg)
    }
}

impl fmt::Display for WallSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallSide::VZero => "=0",
            WallSide::VPi => "=pi",
            WallSide::HNeg => "=-pi/2",
            WallSide::HPos => "=pi/2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Wall {
    pub root: RootVector,
    pub side: WallSide,
}

impl Wall {
    /// Signed distance to the wall in units of π, nonnegative inside the cell.
    pub fn slack_exact(&self, y: &[Rational]) -> Rational {
        let v = linalg::dot_int(self.root.coeffs(), y);
        if self.side.is_lower() {
            v - self.side.level()
        } else {
            self.side.level() - v
        }
    }

    /// Signed distance in radians for a point given in radians.
    pub fn slack(&self, x: &[f64]) -> f64 {
        let v = self.root.eval_f64(x);
        let level = rational_to_f64(self.side.level()) * PI;
        if self.side.is_lower() {
            v - level
        } else {
            level - v
        }
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.root, self.side)
    }
}

/// All four candidate walls per root, restricted to the parts it carries.
pub fn walls(t: &SymmetricTriad) -> Vec<Wall> {
    let mut out = Vec::new();
    for r in &t.roots {
        if r.m_v > 0 {
            out.push(Wall { root: r.root.clone(), side: WallSide::VZero });
            out.push(Wall { root: r.root.clone(), side: WallSide::VPi });
        }
        if r.m_h > 0 {
            out.push(Wall { root: r.root.clone(), side: WallSide::HNeg });
            out.push(Wall { root: r.root.clone(), side: WallSide::HPos });
        }
    }
    out
}

/// Closed-cell membership, exact for exact points and within `tol` otherwise.
pub fn contains(t: &SymmetricTriad, z: &CellPoint, tol: f64) -> bool {
    if let Some(y) = exact_coords(z) {
        return walls(t).iter().all(|w| !w.slack_exact(&y).is_negative());
    }
    let x = z.to_f64();
    walls(t).iter().all(|w| w.slack(&x) >= -tol)
}

/// Open-cell membership.
pub fn strictly_inside(t: &SymmetricTriad, z: &CellPoint, tol: f64) -> bool {
    if let Some(y) = exact_coords(z) {
        return walls(t).iter().all(|w| w.slack_exact(&y).is_positive());
    }
    let x = z.to_f64();
    walls(t).iter().all(|w| w.slack(&x) > tol)
}

/// Coordinates in units of π when every coordinate is exact.
pub fn exact_coords(z: &CellPoint) -> Option<Vec<Rational>> {
    z.coords.iter().map(Angle::pi_fraction).collect()
}

pub fn point_from_pi_units(y: &[Rational]) -> CellPoint {
    CellPoint::new(y.iter().map(|&r| Angle::pi_multiple(r)).collect())
}

/// A face of the closed cell. Vertices and spanning directions are exact, in
/// units of π.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub dim: usize,
    /// Every wall containing the face.
    pub pinned: Vec<Wall>,
    /// The remaining walls, strict on the relative interior.
    pub strict: Vec<Wall>,
    pub vertices: Vec<Vec<Rational>>,
    pub centroid: Vec<Rational>,
    pub span_basis: Vec<Vec<Rational>>,
}

impl Face {
    pub fn base_point(&self) -> CellPoint {
        point_from_pi_units(&self.centroid)
    }

    /// Radian coordinates of `centroid·π + Σ yⱼ·basisⱼ·π`.
    pub fn to_ambient(&self, y: &[f64]) -> Vec<f64> {
        let mut x: Vec<f64> = self.centroid.iter().map(|&c| rational_to_f64(c) * PI).collect();
        for (yj, b) in y.iter().zip(&self.span_basis) {
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi += yj * rational_to_f64(bi) * PI;
            }
        }
        x
    }

    pub fn basis_f64(&self) -> Vec<Vec<f64>> {
        self.span_basis.iter().map(|b| b.iter().map(|&v| rational_to_f64(v) * PI).collect()).collect()
    }

    /// True when the root is constant on the face.
    pub fn is_constant(&self, root: &RootVector) -> bool {
        self.span_basis.iter().all(|b| linalg::dot_int(root.coeffs(), b).is_zero())
    }

    /// Exact membership in the relative interior.
    pub fn contains_exact(&self, y: &[Rational]) -> bool {
        self.pinned.iter().all(|w| w.slack_exact(y).is_zero())
            && self.strict.iter().all(|w| w.slack_exact(y).is_positive())
    }

    /// Short description such as `interior`, `vertex (0, pi/2)` or `edge β1=0`.
    pub fn label(&self) -> String {
        let walls: Vec<String> = self.pinned.iter().map(ToString::to_string).collect();
        match self.dim {
            0 => format!("vertex {}", self.base_point()),
            d if d == self.centroid.len() => "interior".to_string(),
            1 => format!("edge {}", walls.join(", ")),
            d => format!("{d}-face {}", walls.join(", ")),
        }
    }

    // canonical ordering key
    fn sort_key(&self) -> (usize, Vec<Vec<Rational>>) {
        let mut v = self.vertices.clone();
        v.sort();
        (self.dim, v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FaceEnumeration {
    pub faces: Vec<Face>,
    /// Exhaustive only up to rank 3.
    pub complete: bool,
}

/// Unique hyperplanes `n·y = level` (primitive normal, first nonzero entry positive).
fn hyperplanes(ws: &[Wall]) -> Vec<(Vec<i64>, Rational)> {
    let mut set = BTreeSet::new();
    for w in ws {
        let n = w.root.coeffs();
        let g = n.iter().fold(0i64, |a, &b| gcd(a, b.abs()));
        let sign = if n.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) { -1 } else { 1 };
        let k = g * sign;
        let nn: Vec<i64> = n.iter().map(|&v| v / k).collect();
        set.insert((nn, w.side.level() / k));
    }
    set.into_iter().collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f)
}

/// Vertices of the closed cell, exact in units of π.
pub fn cell_vertices(t: &SymmetricTriad) -> Result<Vec<Vec<Rational>>, CellError> {
    let ws = walls(t);
    let hs = hyperplanes(&ws);
    let r = t.rank;
    let mut verts = BTreeSet::new();
    subsets(hs.len(), r, &mut |idx| {
        let a: Vec<Vec<Rational>> = idx.iter().map(|&i| linalg::to_rational(&hs[i].0)).collect();
        let b: Vec<Rational> = idx.iter().map(|&i| hs[i].1).collect();
        if let Some(y) = linalg::solve(&a, &b) {
            if ws.iter().all(|w| !w.slack_exact(&y).is_negative()) {
                verts.insert(y);
            }
        }
    });
    let verts: Vec<_> = verts.into_iter().collect();
    if verts.is_empty() || affine_dim(&verts) != r {
        return Err(CellError::Degenerate(t.name.clone()));
    }
    Ok(verts)
}

fn affine_dim(pts: &[Vec<Rational>]) -> usize {
    let Some(p0) = pts.first() else { return 0 };
    let diffs: Vec<Vec<Rational>> =
        pts[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| *a - *b).collect()).collect();
    linalg::rank(&diffs)
}

/// Every face of the closed cell exactly once, sorted by dimension and vertices.
pub fn enumerate_faces(t: &SymmetricTriad) -> Result<FaceEnumeration, CellError> {
    let ws = walls(t);
    let hs = hyperplanes(&ws);
    let verts = cell_vertices(t)?;
    let r = t.rank;
    let mut by_vertices: BTreeMap<Vec<usize>, Face> = BTreeMap::new();
    for k in 0..=r {
        subsets(hs.len(), k, &mut |idx| {
            let normals: Vec<Vec<Rational>> = idx.iter().map(|&i| linalg::to_rational(&hs[i].0)).collect();
            if linalg::rank(&normals) != k {
                return;
            }
            let on: Vec<usize> = (0..verts.len())
                .filter(|&v| idx.iter().all(|&i| linalg::dot_int(&hs[i].0, &verts[v]) == hs[i].1))
                .collect();
            if on.is_empty() || by_vertices.contains_key(&on) {
                return;
            }
            let pts: Vec<Vec<Rational>> = on.iter().map(|&v| verts[v].clone()).collect();
            if affine_dim(&pts) != r - k {
                return;
            }
            by_vertices.insert(on, build_face(&ws, pts, r - k));
        });
    }
    let mut faces: Vec<Face> = by_vertices.into_values().collect();
    faces.sort_by_key(Face::sort_key);
    Ok(FaceEnumeration { faces, complete: r <= 3 })
}

fn build_face(ws: &[Wall], vertices: Vec<Vec<Rational>>, dim: usize) -> Face {
    let r = vertices[0].len();
    let count = Rational::from_integer(vertices.len() as i64);
    let centroid: Vec<Rational> = (0..r).map(|i| vertices.iter().map(|v| v[i]).sum::<Rational>() / count).collect();
    let (pinned, strict): (Vec<Wall>, Vec<Wall>) =
        ws.iter().cloned().partition(|w| vertices.iter().all(|v| w.slack_exact(v).is_zero()));
    let diffs: Vec<Vec<Rational>> =
        vertices[1..].iter().map(|p| p.iter().zip(&vertices[0]).map(|(a, b)| *a - *b).collect()).collect();
    let span_basis: Vec<Vec<Rational>> =
        linalg::independent_subset(&diffs).into_iter().map(|i| diffs[i].clone()).collect();
    debug_assert_eq!(span_basis.len(), dim);
    Face { dim, pinned, strict, vertices, centroid, span_basis }
}

/// Cartan integers and an invariant inner product on the span of the simple roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootGeometry {
    /// `cartan[i][j] = ⟨βᵢ, βⱼ^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `(βᵢ, βⱼ)`, normalized so the first simple root of each component has length 1.
    pub gram: Vec<Vec<Rational>>,
}

impl RootGeometry {
    /// Reads Cartan integers from root strings: `⟨βᵢ, βⱼ^∨⟩ = −q` with `q` the
    /// largest `k` such that `βᵢ + kβⱼ` is a root.
    pub fn from_triad(t: &SymmetricTriad) -> Result<Self, CellError> {
        let r = t.rank;
        let roots: BTreeSet<Vec<i64>> = t.roots.iter().map(|x| x.root.coeffs().to_vec()).collect();
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    cartan[i][j] = 2;
                    continue;
                }
                let mut q = 0;
                loop {
                    let mut v = vec![0i64; r];
                    v[i] = 1;
                    v[j] = q + 1;
                    if !roots.contains(&v) {
                        break;
                    }
                    q += 1;
                }
                cartan[i][j] = -q;
            }
        }
        // squared lengths: |βⱼ|²·A_ij = |βᵢ|²·A_ji along each edge of the diagram
        let mut norm: Vec<Option<Rational>> = vec![None; r];
        for s in 0..r {
            if norm[s].is_some() {
                continue;
            }
            norm[s] = Some(Rational::from_integer(1));
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                for j in 0..r {
                    if i == j || cartan[i][j] == 0 && cartan[j][i] == 0 {
                        continue;
                    }
                    if cartan[i][j] == 0 || cartan[j][i] == 0 {
                        return Err(CellError::NotCrystallographic(format!(
                            "A[{i}][{j}] = {} but A[{j}][{i}] = {}",
                            cartan[i][j], cartan[j][i]
                        )));
                    }
                    let ni = norm[i].expect("visited");
                    let nj = ni * Rational::new(cartan[j][i], cartan[i][j]);
                    match norm[j] {
                        None => {
                            norm[j] = Some(nj);
                            queue.push_back(j);
                        }
                        Some(old) if old != nj => {
                            return Err(CellError::NotCrystallographic(format!("inconsistent length for root {}", j + 1)))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let norm: Vec<Rational> = norm.into_iter().map(|n| n.expect("all components visited")).collect();
        let gram = (0..r)
            .map(|i| (0..r).map(|j| Rational::from_integer(cartan[i][j]) * norm[j] / 2).collect())
            .collect();
        Ok(RootGeometry { cartan, gram })
    }

    /// `(βᵢ, α)` for every simple root.
    fn pairings(&self, alpha: &[i64]) -> Vec<Rational> {
        self.gram.iter().map(|row| linalg::dot_int(alpha, row)).collect()
    }

    /// `⟨βᵢ, α^∨⟩ = 2(βᵢ, α)/(α, α)` for every simple root.
    pub fn coroot_pairings(&self, alpha: &[i64]) -> Vec<Rational> {
        let p = self.pairings(alpha);
        let aa = linalg::dot_int(alpha, &p);
        p.iter().map(|&x| x * 2 / aa).collect()
    }

    /// Image of `z` under the reflection in the hyperplane `α = c·π`.
    pub fn reflect(&self, z: &CellPoint, alpha: &RootVector, level: Rational) -> CellPoint {
        let k = self.coroot_pairings(alpha.coeffs());
        let d = alpha.eval(z) - Angle::pi_multiple(level);
        CellPoint::new(z.coords.iter().zip(&k).map(|(&x, &ki)| x - d.scale_ratio(ki)).collect())
    }
}

/// Maps `z` into the closed cell by repeatedly reflecting across the most
/// violated wall. Orbit type and geometry are preserved by these reflections.
pub fn fold_into_cell(t: &SymmetricTriad, z: &CellPoint, tol: f64) -> Result<CellPoint, CellError> {
    const MAX_STEPS: usize = 1000;
    let geo = RootGeometry::from_triad(t)?;
    let ws = walls(t);
    let mut cur = z.clone();
    for _ in 0..MAX_STEPS {
        let worst = match exact_coords(&cur) {
            Some(y) => ws
                .iter()
                .map(|w| (w, rational_to_f64(w.slack_exact(&y))))
                .filter(|(_, s)| *s < 0.0)
                .min_by(|a, b| a.1.total_cmp(&b.1)),
            None => {
                let x = cur.to_f64();
                ws.iter()
                    .map(|w| (w, w.slack(&x)))
                    .filter(|(_, s)| *s < -tol)
                    .min_by(|a, b| a.1.total_cmp(&b.1))
            }
        };
        match worst {
            None => return Ok(cur),
            Some((w, _)) => cur = geo.reflect(&cur, &w.root, w.side.level()),
        }
    }
    Err(CellError::FoldDiverged(MAX_STEPS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triad::{catalog_entries, lookup};

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn tri(slug: &str) -> SymmetricTriad {
        lookup(slug).unwrap().triad
    }

    #[test]
    fn row1_cell_is_a_triangle() {
        let v = cell_vertices(&tri("su3-so3-dual")).unwrap();
        assert_eq!(v, vec![vec![q(0, 1), q(-1, 2)], vec![q(0, 1), q(1, 2)], vec![q(1, 1), q(-1, 2)]]);
        let f = enumerate_faces(&tri("su3-so3-dual")).unwrap();
        assert!(f.complete);
        let dims: Vec<usize> = f.faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 1, 1, 2]);
    }

    #[test]
    fn catalog_cells_have_seven_faces() {
        for e in catalog_entries() {
            let f = enumerate_faces(&e.triad).unwrap();
            assert_eq!(f.faces.len(), 7, "{}", e.slug);
            for face in &f.faces {
                assert!(face.contains_exact(&face.centroid), "{} {}", e.slug, face.label());
                assert_eq!(face.span_basis.len(), face.dim);
            }
        }
    }

    #[test]
    fn vertices_of_other_rows() {
        let v = cell_vertices(&tri("so10-u5-dual")).unwrap();
        assert_eq!(v, vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(-1, 2)]]);
        let v = cell_vertices(&tri("sp2-u2-dual")).unwrap();
        assert_eq!(v, vec![vec![q(-1, 2), q(1, 1)], vec![q(0, 1), q(0, 1)], vec![q(1, 2), q(0, 1)]]);
        let v = cell_vertices(&tri("g2-so4-dual")).unwrap();
        assert_eq!(v, vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 2)], vec![q(1, 3), q(-1, 2)]]);
    }

    #[test]
    fn cartan_from_strings() {
        assert_eq!(RootGeometry::from_triad(&tri("su3-so3-dual")).unwrap().cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(RootGeometry::from_triad(&tri("so10-u5-dual")).unwrap().cartan, vec![vec![2, -1], vec![-2, 2]]);
        let g = RootGeometry::from_triad(&tri("g2-so4-dual")).unwrap();
        assert_eq!(g.cartan, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(g.gram[1][1], q(3, 1));
        // reflecting in a root negates it
        let k = g.coroot_pairings(&[3, 2]);
        assert_eq!(linalg::dot_int(&[3, 2], &k), q(2, 1));
    }

    #[test]
    fn fold_maps_outside_points_in() {
        let t = tri("g2-so4-dual");
        let z = fold_into_cell(&t, &CellPoint::pi_fracs(&[(0, 1), (-1, 2)]), 1e-9).unwrap();
        assert_eq!(z, CellPoint::pi_fracs(&[(0, 1), (1, 2)]));
        let z = fold_into_cell(&t, &CellPoint::pi_fracs(&[(1, 2), (-1, 2)]), 1e-9).unwrap();
        assert_eq!(z, CellPoint::pi_fracs(&[(0, 1), (0, 1)]));
        let a = 5f64.sqrt().atan();
        let z = fold_into_cell(&t, &CellPoint::from_radians(&[a, PI / 2.0 - 2.0 * a]), 1e-9).unwrap();
        let want = [0.0, (1.0 / 5f64.sqrt()).atan()];
        assert!(z.to_f64().iter().zip(want).all(|(x, w)| (x - w).abs() < 1e-12), "{z}");
    }

    #[test]
    fn fold_fixes_cell_points() {
        let t = tri("su3-so3-dual");
        let z = CellPoint::pi_fracs(&[(1, 3), (-1, 6)]);
        assert_eq!(fold_into_cell(&t, &z, 1e-9).unwrap(), z);
        assert!(contains(&t, &z, 0.0));
        assert!(strictly_inside(&t, &z, 0.0));
        assert!(!strictly_inside(&t, &CellPoint::pi_fracs(&[(0, 1), (0, 1)]), 0.0));
    }
}
