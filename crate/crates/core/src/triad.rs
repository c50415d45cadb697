//! Symmetric triads: positive roots with vertical/horizontal multiplicities.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{Angle, AngleParseError};

#[derive(Debug, Error)]
pub enum TriadError {
    #[error("invalid triad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid triad: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("unknown triad {0:?}")]
    Unknown(String),
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Angle(#[from] AngleParseError),
}

/// Coefficients of a positive root over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn new(coeffs: impl Into<Vec<i64>>) -> Self {
        RootVector(coeffs.into())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// β(Z) = Σ nᵢ·Zᵢ; exact whenever every coordinate is.
    pub fn eval(&self, z: &CellPoint) -> Angle {
        self.0
            .iter()
            .zip(&z.coords)
            .fold(Angle::zero(), |acc, (&n, a)| if n == 0 { acc } else { acc + a.scale(n) })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.0.iter().zip(x).map(|(&n, v)| n as f64 * v).sum()
    }
}

impl fmt::Display for RootVector {
    /// `2β1+β2` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &n) in self.0.iter().enumerate() {
            if n == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if n != 1 {
                write!(f, "{n}")?;
            }
            write!(f, "β{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadRoot {
    #[serde(rename = "coeffs")]
    pub root: RootVector,
    #[serde(rename = "mV")]
    pub m_v: u32,
    #[serde(rename = "mH")]
    pub m_h: u32,
}

impl TriadRoot {
    pub fn new(coeffs: impl Into<Vec<i64>>, m_v: u32, m_h: u32) -> Self {
        TriadRoot { root: RootVector::new(coeffs), m_v, m_h }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricTriad {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<TriadRoot>,
    #[serde(default)]
    pub centralizer_dim: u32,
    #[serde(default)]
    pub ambient_dim: Option<u32>,
    #[serde(default)]
    pub cohomogeneity_equals_rank: bool,
}

impl SymmetricTriad {
    /// Triad with zero centralizer and cohomogeneity equal to the rank.
    pub fn new(name: impl Into<String>, rank: usize, roots: Vec<TriadRoot>, ambient_dim: Option<u32>) -> Self {
        SymmetricTriad {
            name: name.into(),
            rank,
            roots,
            centralizer_dim: 0,
            ambient_dim,
            cohomogeneity_equals_rank: true,
        }
    }

    /// All invariant violations; empty iff the triad is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.rank == 0 {
            out.push("rank must be positive".to_string());
        }
        let mut seen = BTreeSet::new();
        for r in &self.roots {
            let c = r.root.coeffs();
            if c.len() != self.rank {
                out.push(format!("root {:?} has length {} but rank is {}", c, c.len(), self.rank));
            }
            if c.iter().all(|&n| n == 0) {
                out.push(format!("root {c:?} is zero"));
            }
            if c.iter().any(|&n| n < 0) {
                out.push(format!("root {c:?} is not positive"));
            }
            if r.m_v + r.m_h == 0 {
                out.push(format!("root {c:?} has mV = mH = 0"));
            }
            if !seen.insert(c.to_vec()) {
                out.push(format!("root {c:?} listed twice"));
            }
        }
        if let Some(ambient) = self.ambient_dim {
            let total = self.rank as u64 + self.centralizer_dim as u64 + self.multiplicity_sum();
            if total != ambient as u64 {
                out.push(format!(
                    "dimension identity fails: rank + centralizer + Σ(mV + mH) = {total} but ambient_dim = {ambient}"
                ));
            }
        }
        out
    }

    pub fn multiplicity_sum(&self) -> u64 {
        self.roots.iter().map(|r| r.m_v as u64 + r.m_h as u64).sum()
    }

    /// True when no root carries both a vertical and a horizontal part.
    pub fn is_disjoint(&self) -> bool {
        self.roots.iter().all(|r| r.m_v == 0 || r.m_h == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triad serializes")
    }

    /// Parses and validates.
    pub fn from_json(s: &str) -> Result<Self, TriadError> {
        let t: SymmetricTriad = serde_json::from_str(s)?;
        let v = t.validate();
        if v.is_empty() {
            Ok(t)
        } else {
            Err(TriadError::Invalid(v))
        }
    }

    /// Parses `"a,b,…"` into a point of matching arity.
    pub fn parse_point(&self, s: &str) -> Result<CellPoint, TriadError> {
        let z: CellPoint = s.parse()?;
        if z.rank() != self.rank {
            return Err(TriadError::BadArgument(format!(
                "expected {} coordinates for {}, got {}",
                self.rank,
                self.name,
                z.rank()
            )));
        }
        Ok(z)
    }
}

/// A point of the Cartan subspace, stored by its simple-root values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellPoint {
    pub coords: Vec<Angle>,
}

impl CellPoint {
    pub fn new(coords: Vec<Angle>) -> Self {
        CellPoint { coords }
    }

    pub fn from_radians(x: &[f64]) -> Self {
        CellPoint { coords: x.iter().map(|&v| Angle::radians(v)).collect() }
    }

    /// Coordinates `pᵢ/qᵢ·π`.
    pub fn pi_fracs(fracs: &[(i64, i64)]) -> Self {
        CellPoint { coords: fracs.iter().map(|&(p, q)| Angle::pi_frac(p, q)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(Angle::is_exact)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Angle::to_radians).collect()
    }

    /// Max-norm distance in radians.
    pub fn distance(&self, other: &CellPoint) -> f64 {
        self.to_f64()
            .iter()
            .zip(other.to_f64())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(Angle::pretty).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for CellPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl std::str::FromStr for CellPoint {
    type Err = AngleParseError;

    /// Comma-separated angles, optionally wrapped in parentheses. Commas inside
    /// function calls are not supported.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
        let coords = t.split(',').map(str::parse).collect::<Result<Vec<Angle>, _>>()?;
        Ok(CellPoint { coords })
    }
}

// Root lists of rank-2 systems, as coefficient pairs.
const A2: &[[i64; 2]] = &[[1, 0], [0, 1], [1, 1]];
const B2: &[[i64; 2]] = &[[1, 0], [0, 1], [1, 1], [2, 1]];
const G2: &[[i64; 2]] = &[[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]];

fn equal_mult(roots: &[[i64; 2]], m: u32) -> Vec<TriadRoot> {
    roots.iter().map(|c| TriadRoot::new(c.to_vec(), m, m)).collect()
}

fn split(v: &[([i64; 2], u32)], h: &[([i64; 2], u32)]) -> Vec<TriadRoot> {
    v.iter()
        .map(|(c, m)| TriadRoot::new(c.to_vec(), *m, 0))
        .chain(h.iter().map(|(c, m)| TriadRoot::new(c.to_vec(), 0, *m)))
        .collect()
}

/// A catalog triad with its short identifier.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub slug: &'static str,
    pub triad: SymmetricTriad,
}

/// The sixteen built-in rank-2 actions: five with coinciding vertical and
/// horizontal roots, then eleven dual actions with disjoint ones.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    let e = |slug, name: &str, roots, ambient| CatalogEntry {
        slug,
        triad: SymmetricTriad::new(name, 2, roots, Some(ambient)),
    };
    vec![
        e("su6-sp3-so6", "SO(6) on SU(6)/Sp(3)", equal_mult(A2, 2), 14),
        e("so5xso5-so2so3", "SO(2)^2×SO(3)^2 on (SO(5)×SO(5))/SO(5)", equal_mult(B2, 1), 10),
        e("sp2xsp2-su2so2", "SU(2)^2·SO(2)^2 on (Sp(2)×Sp(2))/Sp(2)", equal_mult(B2, 1), 10),
        e("e6-f4-sp4", "Sp(4) on E6/F4", equal_mult(A2, 4), 26),
        e("g2xg2-su2", "SU(2)^4 on (G2×G2)/G2", equal_mult(G2, 1), 14),
        e(
            "su3-so3-dual",
            "(1) SO0(1,2)* on SU(3)/SO(3)",
            split(&[([1, 0], 1)], &[([0, 1], 1), ([1, 1], 1)]),
            5,
        ),
        e(
            "su6-sp3-dual",
            "(2) Sp(1,2)* on SU(6)/Sp(3)",
            split(&[([1, 0], 4)], &[([0, 1], 4), ([1, 1], 4)]),
            14,
        ),
        e(
            "so10-u5-dual",
            "(3) U(2,3)* on SO(10)/U(5)",
            split(&[([1, 0], 4), ([2, 0], 1), ([2, 2], 1)], &[([0, 1], 4), ([1, 1], 4), ([2, 1], 4)]),
            20,
        ),
        e(
            "so5xso5-dual",
            "(4) SO0(2,3)* on (SO(5)×SO(5))/SO(5)",
            split(&[([1, 0], 2)], &[([0, 1], 2), ([1, 1], 2), ([2, 1], 2)]),
            10,
        ),
        e(
            "sp2-u2-dual",
            "(5) U(1,1)* on Sp(2)/U(2)",
            split(&[([0, 1], 1), ([2, 1], 1)], &[([1, 0], 1), ([1, 1], 1)]),
            6,
        ),
        e(
            "sp2xsp2-sp2r-dual",
            "(6) Sp(2,R)* on (Sp(2)×Sp(2))/Sp(2)",
            split(&[([1, 0], 2)], &[([0, 1], 2), ([1, 1], 2), ([2, 1], 2)]),
            10,
        ),
        e(
            "sp2xsp2-sp11-dual",
            "(7) Sp(1,1)* on (Sp(2)×Sp(2))/Sp(2)",
            split(&[([0, 1], 2), ([2, 1], 2)], &[([1, 0], 2), ([1, 1], 2)]),
            10,
        ),
        e(
            "e6-spin10u1-dual",
            "(8) (SO*(10)·U(1))* on E6/Spin(10)·U(1)",
            split(&[([1, 0], 8), ([2, 0], 1), ([2, 2], 1)], &[([0, 1], 6), ([1, 1], 9), ([2, 1], 5)]),
            32,
        ),
        e(
            "e6-f4-dual",
            "(9) (F4^-20)* on E6/F4",
            split(&[([1, 0], 8)], &[([0, 1], 8), ([1, 1], 8)]),
            26,
        ),
        e(
            "g2-so4-dual",
            "(10) (SL(2,R)×SL(2,R))* on G2/SO(4)",
            split(&[([1, 0], 1), ([3, 2], 1)], &[([0, 1], 1), ([1, 1], 1), ([2, 1], 1), ([3, 1], 1)]),
            8,
        ),
        e(
            "g2xg2-dual",
            "(11) (G2^2)* on (G2×G2)/G2",
            split(&[([1, 0], 2), ([3, 2], 2)], &[([0, 1], 2), ([1, 1], 2), ([2, 1], 2), ([3, 1], 2)]),
            14,
        ),
    ]
}

pub fn catalog() -> Vec<SymmetricTriad> {
    catalog_entries().into_iter().map(|e| e.triad).collect()
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .map(|c| if c == 'x' { '×' } else { c })
        .collect()
}

/// Finds a catalog triad by slug or display name (case and whitespace
/// insensitive, `x` accepted for `×`).
pub fn lookup(name: &str) -> Result<CatalogEntry, TriadError> {
    let key = normalize(name);
    catalog_entries()
        .into_iter()
        .find(|e| normalize(e.slug) == key || normalize(&e.triad.name) == key)
        .ok_or_else(|| TriadError::Unknown(name.to_string()))
}

/// `βᵢ + … + βⱼ` (1-based, inclusive) in rank `r`.
fn interval_root(r: usize, i: usize, j: usize) -> Vec<i64> {
    (1..=r).map(|k| i64::from(i <= k && k <= j)).collect()
}

/// Type a_{3n+2}, every root vertical with multiplicity `m` ∈ {1, 4}.
pub fn example_triad_a(n: usize, m: u32) -> Result<SymmetricTriad, TriadError> {
    if m != 1 && m != 4 {
        return Err(TriadError::BadArgument(format!("multiplicity must be 1 or 4, got {m}")));
    }
    let r = 3 * n + 2;
    let mut roots = Vec::new();
    for i in 1..=r {
        for j in i..=r {
            roots.push(TriadRoot::new(interval_root(r, i, j), m, 0));
        }
    }
    let big = 3 * n as u32 + 3;
    let (name, ambient) = if m == 1 {
        (format!("SU({big})/SO({big}) isotropy"), (big - 1) * (big + 2) / 2)
    } else {
        (format!("SU({})/Sp({big}) isotropy", 2 * big), (2 * big + 1) * (big - 1))
    };
    Ok(SymmetricTriad::new(name, r, roots, Some(ambient)))
}

/// Type c_{3n+2}, every root vertical with multiplicity 1.
pub fn example_triad_c(n: usize) -> SymmetricTriad {
    let r = 3 * n + 2;
    let mut roots = Vec::new();
    for i in 1..=r {
        for j in i..=r {
            roots.push(TriadRoot::new(interval_root(r, i, j), 1, 0));
        }
    }
    // long family: βᵢ + … + βⱼ₋₁ + 2(βⱼ + … + β_{r−1}) + β_r for i ≤ j ≤ r−1
    for i in 1..r {
        for j in i..r {
            let c: Vec<i64> = (1..=r)
                .map(|k| match k {
                    _ if k == r => 1,
                    _ if k >= j => 2,
                    _ if k >= i => 1,
                    _ => 0,
                })
                .collect();
            roots.push(TriadRoot::new(c, 1, 0));
        }
    }
    let big = r as u32;
    SymmetricTriad::new(format!("Sp({big})/U({big}) isotropy"), r, roots, Some(big * (big + 1)))
}

/// Complex projective plane: roots β (mult 2) and 2β (mult 1).
pub fn example_triad_cp2() -> SymmetricTriad {
    SymmetricTriad::new(
        "SU(3)/S(U(1)×U(2)) isotropy",
        1,
        vec![TriadRoot::new(vec![1], 2, 0), TriadRoot::new(vec![2], 1, 0)],
        Some(4),
    )
}

/// Triad of worked example `which` ∈ 1..=4 (`n` ignored for 3).
pub fn example_triad(which: u8, n: usize) -> Result<SymmetricTriad, TriadError> {
    match which {
        1 => example_triad_a(n, 1),
        2 => example_triad_a(n, 4),
        3 => Ok(example_triad_cp2()),
        4 => Ok(example_triad_c(n)),
        _ => Err(TriadError::BadArgument(format!("example id must be 1..=4, got {which}"))),
    }
}

/// Base point of a worked example; `collision` describes index assignments
/// that landed on the same coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ExamplePoint {
    pub point: CellPoint,
    pub collision: Option<String>,
}

pub fn example_z(which: u8, n: usize) -> Result<ExamplePoint, TriadError> {
    let third = Angle::pi_frac(1, 3);
    let (rank, positions): (usize, Vec<usize>) = match which {
        1 | 2 => (3 * n + 2, vec![n + 1, 2 * n + 2]),
        3 => (1, vec![1]),
        4 => (3 * n + 2, vec![n + 1, 2 * n + 2, 3 * n + 2]),
        _ => return Err(TriadError::BadArgument(format!("example id must be 1..=4, got {which}"))),
    };
    let mut coords = vec![Angle::zero(); rank];
    let mut used = BTreeSet::new();
    let mut clashes = Vec::new();
    for &p in &positions {
        if !used.insert(p) {
            clashes.push(p);
        }
        coords[p - 1] = third;
    }
    let collision = (!clashes.is_empty()).then(|| {
        format!(
            "example {which} at n={n}: index assignments {positions:?} collide at position(s) {clashes:?}; later assignments overwrite"
        )
    });
    Ok(ExamplePoint { point: CellPoint::new(coords), collision })
}
