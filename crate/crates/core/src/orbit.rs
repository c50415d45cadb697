//! Orbit geometry at a point of the cell: singular roots, dimensions, principal
//! curvatures, mean curvature and the minimality/austerity classifiers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::{fmt_rational, Angle, ExactValue, Rational, DEFAULT_TOLERANCE};
use crate::triad::{CellPoint, RootVector, SymmetricTriad};

/// Which part of a root space an entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Part {
    #[serde(rename = "V")]
    Vertical,
    #[serde(rename = "H")]
    Horizontal,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Vertical => "V",
            Part::Horizontal => "H",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SingularSets {
    /// Roots with a vertical part and value ≡ 0 (mod π).
    pub vertical: Vec<RootVector>,
    /// Roots with a horizontal part and value ≡ π/2 (mod π).
    pub horizontal: Vec<RootVector>,
}

/// One eigenspace of the shape operator: `A_v = coeff·β(v)` on `mult` dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub root: RootVector,
    pub part: Part,
    pub coeff: ExactValue,
    pub mult: u32,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ShapeSpectrum {
    /// Entries with nonzero coefficient only.
    pub entries: Vec<SpectrumEntry>,
    pub kernel_dim: u32,
}

impl ShapeSpectrum {
    /// Eigenvalues of `A_v` with multiplicity, `v` given by its simple-root values.
    pub fn eigenvalues(&self, v: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        for e in &self.entries {
            let x = e.coeff.to_f64() * e.root.eval_f64(v);
            out.extend(std::iter::repeat(x).take(e.mult as usize));
        }
        out
    }

    /// `Σ coeff·β(v)·mult`, the trace of `A_v` on the nonzero eigenspaces.
    pub fn trace(&self, v: &[f64]) -> f64 {
        self.entries.iter().map(|e| e.coeff.to_f64() * e.root.eval_f64(v) * e.mult as f64).sum()
    }
}

/// Sufficient criterion for minimality, with the reason it holds or fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub reason: String,
}

impl ConditionCheck {
    fn yes(reason: impl Into<String>) -> Self {
        ConditionCheck { holds: true, reason: reason.into() }
    }
    fn no(reason: impl Into<String>) -> Self {
        ConditionCheck { holds: false, reason: reason.into() }
    }
}

/// Structural results attached to a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremTag {
    B,
    C,
    D,
    E,
    F,
}

impl TheoremTag {
    /// Constant relating the induced metric at the base point to the Killing form.
    pub fn metric_constant(self) -> Option<Rational> {
        match self {
            TheoremTag::B => None,
            TheoremTag::C => Some(Rational::new(3, 4)),
            TheoremTag::D => Some(Rational::new(1, 4)),
            TheoremTag::E => Some(Rational::new(1, 2)),
            TheoremTag::F => Some(Rational::from_integer(1)),
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
struct RootState {
    value: Angle,
    // β ≡ 0 and β ≡ π/2 (mod π), exact or within tolerance
    at_zero: bool,
    at_half: bool,
    snapped: bool,
}

/// A triad together with a point, with every root evaluated once.
#[derive(Clone, Debug)]
pub struct OrbitPoint<'a> {
    pub triad: &'a SymmetricTriad,
    pub z: &'a CellPoint,
    pub tol: f64,
    states: Vec<RootState>,
}

impl<'a> OrbitPoint<'a> {
    /// Panics if the point's arity differs from the triad's rank.
    pub fn new(triad: &'a SymmetricTriad, z: &'a CellPoint, tol: f64) -> Self {
        assert_eq!(z.rank(), triad.rank, "point arity must equal the rank");
        let half = Rational::new(1, 2);
        let states = triad
            .roots
            .iter()
            .map(|r| {
                let value = r.root.eval(z);
                let at_zero = value.congruent_mod_pi(Rational::zero(), tol);
                let at_half = value.congruent_mod_pi(half, tol);
                RootState { value, at_zero, at_half, snapped: !value.is_exact() && (at_zero || at_half) }
            })
            .collect();
        OrbitPoint { triad, z, tol, states }
    }

    pub fn root_values(&self) -> Vec<(RootVector, Angle)> {
        self.triad.roots.iter().zip(&self.states).map(|(r, s)| (r.root.clone(), s.value)).collect()
    }

    /// True when some numeric root value was treated as lying on 0 or π/2.
    pub fn snapped(&self) -> bool {
        self.states.iter().any(|s| s.snapped)
    }

    pub fn singular_sets(&self) -> SingularSets {
        let mut out = SingularSets::default();
        for (r, s) in self.triad.roots.iter().zip(&self.states) {
            if r.m_v > 0 && s.at_zero {
                out.vertical.push(r.root.clone());
            }
            if r.m_h > 0 && s.at_half {
                out.horizontal.push(r.root.clone());
            }
        }
        out
    }

    pub fn orbit_dimension(&self) -> u32 {
        let mut d = self.triad.centralizer_dim;
        for (r, s) in self.triad.roots.iter().zip(&self.states) {
            if !s.at_zero {
                d += r.m_v;
            }
            if !s.at_half {
                d += r.m_h;
            }
        }
        d
    }

    pub fn normal_dimension(&self) -> u32 {
        let mut d = self.triad.rank as u32;
        for (r, s) in self.triad.roots.iter().zip(&self.states) {
            if s.at_zero {
                d += r.m_v;
            }
            if s.at_half {
                d += r.m_h;
            }
        }
        d
    }

    pub fn shape_spectrum(&self) -> ShapeSpectrum {
        let mut entries = Vec::new();
        let mut kernel = self.triad.centralizer_dim;
        for (r, s) in self.triad.roots.iter().zip(&self.states) {
            if r.m_v > 0 && !s.at_zero {
                if s.at_half {
                    kernel += r.m_v;
                } else {
                    let coeff = -s.value.cot_exact();
                    entries.push(SpectrumEntry { root: r.root.clone(), part: Part::Vertical, coeff, mult: r.m_v });
                }
            }
            if r.m_h > 0 && !s.at_half {
                if s.at_zero {
                    kernel += r.m_h;
                } else {
                    let coeff = s.value.tan_exact();
                    entries.push(SpectrumEntry { root: r.root.clone(), part: Part::Horizontal, coeff, mult: r.m_h });
                }
            }
        }
        ShapeSpectrum { entries, kernel_dim: kernel }
    }

    /// `Fᵢ = Σ_V nᵢ·mV·cot β − Σ_H nᵢ·mH·tan β` over nonsingular roots.
    pub fn mean_curvature(&self) -> Vec<ExactValue> {
        let mut f = vec![ExactValue::zero(); self.triad.rank];
        for e in self.shape_spectrum().entries {
            for (fi, &n) in f.iter_mut().zip(e.root.coeffs()) {
                if n != 0 {
                    *fi = *fi - e.coeff.scale(n * e.mult as i64);
                }
            }
        }
        f
    }

    pub fn is_minimal(&self) -> bool {
        self.mean_curvature().iter().all(|x| x.is_zero(self.tol))
    }

    /// The multiset of eigenvalue functionals `coeff·β` is invariant under negation.
    pub fn is_austere(&self) -> bool {
        let spec = self.shape_spectrum();
        // merge entries with equal functionals (e.g. β and 2β can coincide)
        let mut groups: Vec<(Vec<ExactValue>, i64)> = Vec::new();
        for e in &spec.entries {
            let lam: Vec<ExactValue> = e.root.coeffs().iter().map(|&n| e.coeff.scale(n)).collect();
            match groups.iter_mut().find(|(g, _)| functional_eq(g, &lam, self.tol)) {
                Some(g) => g.1 += e.mult as i64,
                None => groups.push((lam, e.mult as i64)),
            }
        }
        groups.iter().all(|(lam, m)| {
            let neg: Vec<ExactValue> = lam.iter().map(|x| -*x).collect();
            let partner = groups.iter().find(|(g, _)| functional_eq(g, &neg, self.tol)).map_or(0, |g| g.1);
            partner == *m
        })
    }

    pub fn is_totally_geodesic(&self) -> bool {
        self.shape_spectrum().entries.is_empty()
    }

    // k with β ≡ kπ/12 for each root; None if some coordinate is not exact
    fn twelfths(&self) -> Option<Vec<Option<u8>>> {
        if !self.z.is_exact() {
            return None;
        }
        Some(self.states.iter().map(|s| s.value.twelfths_mod_pi()).collect())
    }

    pub fn condition_i(&self) -> ConditionCheck {
        let Some(classes) = self.twelfths() else {
            return ConditionCheck::no("non-exact point");
        };
        let mut sixths = Vec::with_capacity(classes.len());
        for (r, k) in self.triad.roots.iter().zip(&classes) {
            match k {
                Some(k) if k % 2 == 0 => sixths.push(k / 2),
                _ => {
                    return ConditionCheck::no(format!(
                        "{} takes a value outside the multiples of pi/6",
                        r.root
                    ))
                }
            }
        }
        // weights per sixth-class; both sides stay in ℤ
        const V_W: [i64; 6] = [0, 3, 1, 0, -1, -3];
        const H_W: [i64; 6] = [0, -1, -3, 0, 3, 1];
        self.balance(&sixths, &V_W, &H_W, "multiples of pi/6")
    }

    pub fn condition_ii(&self) -> ConditionCheck {
        let Some(classes) = self.twelfths() else {
            return ConditionCheck::no("non-exact point");
        };
        let mut quarters = Vec::with_capacity(classes.len());
        for (r, k) in self.triad.roots.iter().zip(&classes) {
            match k {
                Some(k) if k % 3 == 0 => quarters.push(k / 3),
                _ => {
                    return ConditionCheck::no(format!(
                        "{} takes a value outside {{0, pi/4, pi/2, 3pi/4}}",
                        r.root
                    ))
                }
            }
        }
        const V_W: [i64; 4] = [0, 1, 0, -1];
        const H_W: [i64; 4] = [0, -1, 0, 1];
        self.balance(&quarters, &V_W, &H_W, "{0, pi/4, pi/2, 3pi/4}")
    }

    fn balance(&self, classes: &[u8], v_w: &[i64], h_w: &[i64], what: &str) -> ConditionCheck {
        for i in 0..self.triad.rank {
            let s: i64 = self
                .triad
                .roots
                .iter()
                .zip(classes)
                .map(|(r, &c)| {
                    let n = r.root.coeffs()[i];
                    n * (r.m_v as i64 * v_w[c as usize] + r.m_h as i64 * h_w[c as usize])
                })
                .sum();
            if s != 0 {
                return ConditionCheck::no(format!(
                    "all roots lie in {what} but the balance for index {} is off by {s}",
                    i + 1
                ));
            }
        }
        ConditionCheck::yes(format!("all roots lie in {what} and every index balances"))
    }

    // every root with the given part has its value class (in twelfths) in `allowed`
    fn part_in(&self, part: Part, allowed: &[u8]) -> bool {
        let Some(classes) = self.twelfths() else { return false };
        self.triad.roots.iter().zip(&classes).all(|(r, k)| {
            let has = match part {
                Part::Vertical => r.m_v > 0,
                Part::Horizontal => r.m_h > 0,
            };
            !has || k.is_some_and(|k| allowed.contains(&k))
        })
    }

    /// Tags whose hypotheses hold, in ascending order.
    pub fn theorem_tags(&self) -> Vec<TheoremTag> {
        let disjoint = self.triad.is_disjoint();
        let c1 = self.condition_i().holds;
        let c2 = self.condition_ii().holds;
        let mut tags = Vec::new();
        let equal_mults = self.triad.roots.iter().all(|r| r.m_v == r.m_h);
        let quarter_set = [0u8, 3, 6, 9];
        if (c1 || c2)
            && equal_mults
            && self.part_in(Part::Vertical, &quarter_set)
            && self.part_in(Part::Horizontal, &quarter_set)
        {
            tags.push(TheoremTag::B);
        }
        if disjoint && c1 && self.part_in(Part::Vertical, &[0, 4, 8]) && self.part_in(Part::Horizontal, &[2, 6, 10]) {
            tags.push(TheoremTag::C);
        }
        if disjoint && c1 && self.part_in(Part::Vertical, &[0, 2, 10]) && self.part_in(Part::Horizontal, &[4, 6, 8]) {
            tags.push(TheoremTag::D);
        }
        if disjoint && c2 && self.part_in(Part::Vertical, &[0, 3, 9]) && self.part_in(Part::Horizontal, &[3, 6, 9]) {
            tags.push(TheoremTag::E);
        }
        if disjoint && self.states.iter().all(|s| s.at_zero || s.at_half) {
            tags.push(TheoremTag::F);
        }
        tags
    }

    pub fn classify(&self) -> OrbitReport {
        let mean_curvature = self.mean_curvature();
        let minimal = mean_curvature.iter().all(|x| x.is_zero(self.tol));
        let spectrum = self.shape_spectrum();
        let totally_geodesic = spectrum.entries.is_empty();
        let austere = self.is_austere();
        let condition_i = self.condition_i();
        let condition_ii = self.condition_ii();
        let theorem_tags = self.theorem_tags();
        let primary_tag = primary_tag(&theorem_tags);
        let metric_constant = if self.triad.cohomogeneity_equals_rank {
            primary_tag.and_then(TheoremTag::metric_constant)
        } else {
            None
        };
        let mut notes = Vec::new();
        if self.snapped() {
            notes.push(format!("snapped: some root values were within {:e} of 0 or pi/2 (mod pi)", self.tol));
        }
        if !self.z.is_exact() {
            notes.push("non-exact point: conditions (I)/(II) need rational multiples of pi".to_string());
        }
        if minimal {
            notes.push(
                "reductivity of the complement and the normal-connection identity are structural and not computed"
                    .to_string(),
            );
        }
        OrbitReport {
            triad: self.triad.name.clone(),
            z: self.z.clone(),
            root_values: self.root_values(),
            singular: self.singular_sets(),
            dim_orbit: self.orbit_dimension(),
            dim_normal: self.normal_dimension(),
            ambient_dim: self.triad.ambient_dim,
            kernel_dim: spectrum.kernel_dim,
            spectrum,
            mean_curvature,
            minimal,
            austere,
            totally_geodesic,
            condition_i,
            condition_ii,
            theorem_tags,
            primary_tag,
            metric_constant,
            snapped: self.snapped(),
            notes,
        }
    }
}

fn functional_eq(a: &[ExactValue], b: &[ExactValue], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| x.approx_eq(y, tol))
}

/// Most specific tag: F, then C, D, E, then B.
pub fn primary_tag(tags: &[TheoremTag]) -> Option<TheoremTag> {
    use TheoremTag::*;
    [F, C, D, E, B].into_iter().find(|t| tags.contains(t))
}

pub fn singular_sets(t: &SymmetricTriad, z: &CellPoint) -> SingularSets {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).singular_sets()
}

pub fn orbit_dimension(t: &SymmetricTriad, z: &CellPoint) -> u32 {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).orbit_dimension()
}

pub fn normal_dimension(t: &SymmetricTriad, z: &CellPoint) -> u32 {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).normal_dimension()
}

pub fn shape_spectrum(t: &SymmetricTriad, z: &CellPoint) -> ShapeSpectrum {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).shape_spectrum()
}

pub fn mean_curvature_components(t: &SymmetricTriad, z: &CellPoint) -> Vec<ExactValue> {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).mean_curvature()
}

pub fn is_minimal(t: &SymmetricTriad, z: &CellPoint) -> bool {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).is_minimal()
}

pub fn is_austere(t: &SymmetricTriad, z: &CellPoint) -> bool {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).is_austere()
}

pub fn is_totally_geodesic(t: &SymmetricTriad, z: &CellPoint) -> bool {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).is_totally_geodesic()
}

pub fn check_condition_i(t: &SymmetricTriad, z: &CellPoint) -> ConditionCheck {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).condition_i()
}

pub fn check_condition_ii(t: &SymmetricTriad, z: &CellPoint) -> ConditionCheck {
    OrbitPoint::new(t, z, DEFAULT_TOLERANCE).condition_ii()
}

pub fn classify(t: &SymmetricTriad, z: &CellPoint) -> OrbitReport {
    classify_with_tol(t, z, DEFAULT_TOLERANCE)
}

pub fn classify_with_tol(t: &SymmetricTriad, z: &CellPoint, tol: f64) -> OrbitReport {
    OrbitPoint::new(t, z, tol).classify()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    pub triad: String,
    pub z: CellPoint,
    pub root_values: Vec<(RootVector, Angle)>,
    pub singular: SingularSets,
    pub dim_orbit: u32,
    pub dim_normal: u32,
    pub ambient_dim: Option<u32>,
    pub kernel_dim: u32,
    pub spectrum: ShapeSpectrum,
    pub mean_curvature: Vec<ExactValue>,
    pub minimal: bool,
    pub austere: bool,
    pub totally_geodesic: bool,
    pub condition_i: ConditionCheck,
    pub condition_ii: ConditionCheck,
    pub theorem_tags: Vec<TheoremTag>,
    pub primary_tag: Option<TheoremTag>,
    pub metric_constant: Option<Rational>,
    pub snapped: bool,
    pub notes: Vec<String>,
}

/// `{"pi_rational": [p, q]}` or `{"radians": x}`.
pub fn angle_json(a: &Angle) -> Value {
    serde_json::to_value(a).expect("angles serialize")
}

fn roots_json(roots: &[RootVector]) -> Value {
    Value::Array(roots.iter().map(|r| json!(r.coeffs())).collect())
}

impl OrbitReport {
    pub fn to_json(&self) -> Value {
        json!({
            "triad": self.triad,
            "Z": self.z.coords.iter().map(angle_json).collect::<Vec<_>>(),
            "root_values": self.root_values.iter().map(|(r, a)| json!({
                "coeffs": r.coeffs(), "value": angle_json(a),
            })).collect::<Vec<_>>(),
            "singular": {
                "V": roots_json(&self.singular.vertical),
                "H": roots_json(&self.singular.horizontal),
            },
            "dim_orbit": self.dim_orbit,
            "dim_normal": self.dim_normal,
            "ambient_dim": self.ambient_dim,
            "kernel_dim": self.kernel_dim,
            "spectrum": self.spectrum.entries.iter().map(|e| json!({
                "coeffs": e.root.coeffs(), "part": e.part, "coeff": e.coeff, "mult": e.mult,
            })).collect::<Vec<_>>(),
            "mean_curvature": self.mean_curvature,
            "minimal": self.minimal,
            "austere": self.austere,
            "totally_geodesic": self.totally_geodesic,
            "condition_I": self.condition_i,
            "condition_II": self.condition_ii,
            "theorem_tags": self.theorem_tags,
            "primary_tag": self.primary_tag,
            "metric_constant": self.metric_constant.map(fmt_rational),
            "snapped": self.snapped,
            "notes": self.notes,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        s += &format!("triad: {}\n", self.triad);
        s += &format!("Z: {}\n", self.z);
        for (r, a) in &self.root_values {
            s += &format!("  {r}(Z) = {}\n", a.pretty());
        }
        let join = |v: &[RootVector]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        s += &format!(
            "singular: V {{{}}}  H {{{}}}\n",
            join(&self.singular.vertical),
            join(&self.singular.horizontal)
        );
        s += &format!("dim orbit: {}\ndim normal: {}\n", self.dim_orbit, self.dim_normal);
        if let Some(a) = self.ambient_dim {
            s += &format!("ambient dim: {a}\n");
        }
        s += &format!("kernel dim: {}\n", self.kernel_dim);
        s += "principal curvature functionals:\n";
        for e in &self.spectrum.entries {
            s += &format!("  {} {}: {} x{}\n", e.part, e.root, e.coeff, e.mult);
        }
        let hc: Vec<String> = self.mean_curvature.iter().map(ToString::to_string).collect();
        s += &format!("mean curvature: ({})\n", hc.join(", "));
        s += &format!("minimal: {}\n", yn(self.minimal));
        s += &format!("austere: {}\n", yn(self.austere));
        s += &format!("totally geodesic: {}\n", yn(self.totally_geodesic));
        s += &format!("condition (I): {} ({})\n", yn(self.condition_i.holds), self.condition_i.reason);
        s += &format!("condition (II): {} ({})\n", yn(self.condition_ii.holds), self.condition_ii.reason);
        let tags: Vec<String> = self.theorem_tags.iter().map(ToString::to_string).collect();
        s += &format!("theorem tags: {{{}}}", tags.join(", "));
        if let Some(p) = self.primary_tag {
            s += &format!(" primary {p}");
        }
        s += "\n";
        if let Some(c) = self.metric_constant {
            s += &format!("metric constant: {}\n", fmt_rational(c));
        }
        for n in &self.notes {
            s += &format!("note: {n}\n");
        }
        s
    }

    /// Roots whose value is ≡ `target` (mod π), for exact points.
    pub fn roots_congruent_to(&self, target: Rational) -> BTreeSet<RootVector> {
        self.root_values
            .iter()
            .filter(|(_, a)| a.is_exact() && a.congruent_mod_pi(target, 0.0))
            .map(|(r, _)| r.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QuadSurd;
    use crate::triad::{example_triad, example_triad_cp2, example_z, lookup};

    fn tri(slug: &str) -> SymmetricTriad {
        lookup(slug).unwrap().triad
    }

    fn pt(s: &str) -> CellPoint {
        s.parse().unwrap()
    }

    fn surd(a: Rational, b: Rational) -> ExactValue {
        ExactValue::Finite(QuadSurd::new(a, b))
    }

    #[test]
    fn singular_sets_row1() {
        let t = tri("su3-so3-dual");
        let s = singular_sets(&t, &pt("0,-pi/2"));
        assert_eq!(s.vertical, vec![RootVector::new(vec![1, 0])]);
        assert_eq!(s.horizontal, vec![RootVector::new(vec![0, 1]), RootVector::new(vec![1, 1])]);
        let s = singular_sets(&t, &pt("pi/2,-pi/2"));
        assert!(s.vertical.is_empty());
        assert_eq!(s.horizontal, vec![RootVector::new(vec![0, 1])]);
        assert_eq!(singular_sets(&t, &pt("0.3,0.1")), SingularSets::default());
    }

    #[test]
    fn dimensions_from_tables() {
        assert_eq!(orbit_dimension(&tri("su3-so3-dual"), &pt("pi/3,-pi/6")), 3);
        assert_eq!(orbit_dimension(&tri("e6-spin10u1-dual"), &pt("pi/2,-pi/2")), 17);
        let b = (1.0f64 / 13f64.sqrt()).atan();
        let z = CellPoint::new(vec![Angle::zero(), Angle::radians(b)]);
        let t = tri("so10-u5-dual");
        assert_eq!(orbit_dimension(&t, &z), 13);
        assert_eq!(orbit_dimension(&t, &z) + normal_dimension(&t, &z), 20);
    }

    #[test]
    fn spectrum_row1() {
        let t = tri("su3-so3-dual");
        let s = shape_spectrum(&t, &pt("pi/3,-pi/6"));
        let m = surd(Rational::zero(), Rational::new(-1, 3));
        let coeffs: Vec<_> = s.entries.iter().map(|e| (e.root.coeffs().to_vec(), e.coeff, e.mult)).collect();
        assert_eq!(coeffs, vec![(vec![1, 0], m, 1), (vec![0, 1], m, 1), (vec![1, 1], -m, 1)]);
        assert_eq!(s.kernel_dim, 0);
    }

    #[test]
    fn spectrum_e6_f4_quarter_point() {
        // β1+β2 = π/2: vertical coefficient vanishes, horizontal part is singular
        let t = tri("e6-f4-sp4");
        let s = shape_spectrum(&t, &pt("pi/4,pi/4"));
        let one = ExactValue::from_integer(1);
        let got: Vec<_> = s.entries.iter().map(|e| (e.root.coeffs().to_vec(), e.part, e.coeff, e.mult)).collect();
        assert_eq!(
            got,
            vec![
                (vec![1, 0], Part::Vertical, -one, 4),
                (vec![1, 0], Part::Horizontal, one, 4),
                (vec![0, 1], Part::Vertical, -one, 4),
                (vec![0, 1], Part::Horizontal, one, 4),
            ]
        );
        assert_eq!(s.kernel_dim, 4);
    }

    #[test]
    fn totally_geodesic_configuration() {
        let t = tri("su3-so3-dual");
        // V at π/2, H at 0: β1 = π/2, β2 = -π/2 (H at π/2 is singular), β1+β2 = 0
        let s = shape_spectrum(&t, &pt("pi/2,-pi/2"));
        assert!(s.entries.is_empty());
        assert_eq!(s.kernel_dim, 2);
        assert!(is_totally_geodesic(&t, &pt("0,0")));
        assert!(!is_totally_geodesic(&t, &pt("pi/3,-pi/6")));
    }

    #[test]
    fn mean_curvature_examples() {
        let t = tri("su3-so3-dual");
        let zero = vec![ExactValue::zero(); 2];
        assert_eq!(mean_curvature_components(&t, &pt("pi/3,-pi/6")), zero);
        assert_eq!(mean_curvature_components(&t, &pt("pi/2,-pi/2")), zero);
        let cp2 = example_triad_cp2();
        assert_eq!(mean_curvature_components(&cp2, &pt("pi/3")), vec![ExactValue::zero()]);
        assert!(!is_minimal(&t, &pt("0.1,0.2")));
    }

    #[test]
    fn austerity() {
        assert!(is_austere(&tri("su6-sp3-so6"), &pt("pi/4,pi/4")));
        assert!(!is_austere(&tri("su3-so3-dual"), &pt("pi/3,-pi/6")));
        assert!(is_austere(&tri("su3-so3-dual"), &pt("0,0")));
    }

    #[test]
    fn conditions() {
        let t = example_triad(1, 1).unwrap();
        let z = example_z(1, 1).unwrap().point;
        assert!(check_condition_i(&t, &z).holds);
        for e in crate::triad::catalog_entries().iter().take(5) {
            assert!(check_condition_ii(&e.triad, &pt("pi/4,pi/4")).holds, "{}", e.slug);
        }
        let c = check_condition_i(&tri("su3-so3-dual"), &pt("0.3,0.4"));
        assert!(!c.holds);
        assert!(c.reason.contains("non-exact"));
    }

    #[test]
    fn classify_examples() {
        let r = classify(&tri("e6-f4-dual"), &pt("pi/3,-pi/6"));
        assert_eq!(r.theorem_tags, vec![TheoremTag::C]);
        assert_eq!(r.metric_constant, Some(Rational::new(3, 4)));
        assert!(r.minimal && !r.austere);
        assert_eq!(r.dim_orbit, 24);

        let r = classify(&tri("su3-so3-dual"), &pt("0,pi/2"));
        assert_eq!(r.primary_tag, Some(TheoremTag::F));
        assert!(r.theorem_tags.contains(&TheoremTag::F));
        assert!(r.totally_geodesic);
        assert_eq!(r.dim_orbit, 0);
        assert_eq!(r.metric_constant, Some(Rational::from_integer(1)));

        let r = classify(&tri("g2xg2-su2"), &pt("pi/4,pi/4"));
        assert_eq!(r.theorem_tags, vec![TheoremTag::B]);
        assert!(r.austere);
        assert_eq!(r.metric_constant, None);
    }

    #[test]
    fn austere_compares_functionals_not_roots() {
        // V root β and H root 2β: at tan x = 1/√5 the functionals are −√5·β and
        // 2·tan(2x)·β = √5·β, a negation pair although the roots differ
        let t = SymmetricTriad::new(
            "test",
            1,
            vec![crate::triad::TriadRoot::new(vec![1], 1, 0), crate::triad::TriadRoot::new(vec![2], 0, 1)],
            None,
        );
        let x = (1.0 / 5f64.sqrt()).atan();
        let r = classify(&t, &CellPoint::from_radians(&[x]));
        assert!(r.austere);
        assert!(r.minimal);
        assert!(!classify(&t, &CellPoint::from_radians(&[0.3])).austere);
    }

    #[test]
    fn numeric_points_snap() {
        let t = tri("su3-so3-dual");
        let z = CellPoint::from_radians(&[0.0, std::f64::consts::FRAC_PI_2 - 1e-12]);
        let r = classify(&t, &z);
        assert!(r.snapped);
        assert_eq!(r.dim_orbit, 0);
        assert!(!r.condition_i.holds);
    }

    #[test]
    fn json_renders_exact_angles() {
        let r = classify(&tri("su3-so3-dual"), &pt("pi/3,-pi/6"));
        let j = r.to_json();
        assert_eq!(j["Z"], json!([{"pi_rational": [1, 3]}, {"pi_rational": [-1, 6]}]));
        let back: CellPoint = serde_json::from_value(j["Z"].clone()).unwrap();
        assert_eq!(back, r.z);
        assert_eq!(j["spectrum"][0]["coeff"], json!({"a": "0", "b": "-1/3", "sqrt": 3}));
        assert_eq!(j["dim_orbit"], json!(3));
    }
}
