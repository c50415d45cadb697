//! Exact angles and tangent values.
//!
//! Angles that are rational multiples of π are kept exactly. Their tangents and
//! cotangents are exact elements of ℚ(√3) whenever the reduced denominator
//! divides 12; everything else degrades to `f64`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i64>;

/// Absolute tolerance used for numeric congruence and zero tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Denominators whose multiples of π have tan/cot in ℚ(√3).
pub const EXACT_DENOMINATORS: [i64; 6] = [1, 2, 3, 4, 6, 12];

pub fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(r: Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// An angle in radians, either an exact rational multiple of π or a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// `r·π`, always in lowest terms with a positive denominator.
    RationalPi(Rational),
    Numeric(f64),
}

impl Default for Angle {
    fn default() -> Self {
        Angle::zero()
    }
}

impl Angle {
    pub fn zero() -> Self {
        Angle::RationalPi(Rational::zero())
    }

    /// `p/q · π`.
    ///
    /// Panics if `q == 0`.
    pub fn pi_frac(p: i64, q: i64) -> Self {
        Angle::RationalPi(Rational::new(p, q))
    }

    pub fn pi_multiple(r: Rational) -> Self {
        Angle::RationalPi(r)
    }

    pub fn radians(x: f64) -> Self {
        Angle::Numeric(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::RationalPi(_))
    }

    /// The multiple of π for exact angles.
    pub fn pi_fraction(&self) -> Option<Rational> {
        match self {
            Angle::RationalPi(r) => Some(*r),
            Angle::Numeric(_) => None,
        }
    }

    pub fn to_radians(&self) -> f64 {
        match self {
            Angle::RationalPi(r) => rational_to_f64(*r) * PI,
            Angle::Numeric(x) => *x,
        }
    }

    /// Integer multiple `k·self`.
    pub fn scale(&self, k: i64) -> Angle {
        match self {
            Angle::RationalPi(r) => Angle::RationalPi(*r * k),
            Angle::Numeric(x) => Angle::Numeric(*x * k as f64),
        }
    }

    /// Rational multiple `r·self`.
    pub fn scale_ratio(&self, r: Rational) -> Angle {
        match self {
            Angle::RationalPi(a) => Angle::RationalPi(*a * r),
            Angle::Numeric(x) => Angle::Numeric(*x * rational_to_f64(r)),
        }
    }

    /// Representative in `[0, π)`.
    pub fn reduce_mod_pi(&self) -> Angle {
        match self {
            Angle::RationalPi(r) => Angle::RationalPi(*r - r.floor()),
            Angle::Numeric(x) => {
                let y = x.rem_euclid(PI);
                // rem_euclid can round up to exactly π
                Angle::Numeric(if y >= PI { 0.0 } else { y })
            }
        }
    }

    /// `k` with `self ≡ kπ/12 (mod π)`, `0 ≤ k < 12`, for exact angles whose
    /// reduced denominator divides 12.
    pub fn twelfths_mod_pi(&self) -> Option<u8> {
        let r = self.pi_fraction()?;
        let t = r * 12;
        if !t.is_integer() {
            return None;
        }
        Some(t.numer().rem_euclid(12) as u8)
    }

    /// Exact or tolerance-based test of `self ≡ target·π (mod π)`.
    pub fn congruent_mod_pi(&self, target: Rational, tol: f64) -> bool {
        match self {
            Angle::RationalPi(r) => (*r - target).is_integer(),
            Angle::Numeric(x) => numeric_congruent(*x, rational_to_f64(target) * PI, tol),
        }
    }

    /// Nearest `kπ/12` within `tol` for numeric angles; exact angles return their
    /// own class.
    pub fn snap_twelfths(&self, tol: f64) -> Option<u8> {
        match self {
            Angle::RationalPi(_) => self.twelfths_mod_pi(),
            Angle::Numeric(x) => {
                let q = x / (PI / 12.0);
                let k = q.round();
                ((q - k).abs() * PI / 12.0 < tol).then(|| (k as i64).rem_euclid(12) as u8)
            }
        }
    }

    pub fn tan_exact(&self) -> ExactValue {
        match self.twelfths_mod_pi() {
            Some(k) => tan_twelfths(k),
            None => ExactValue::Numeric(self.to_radians().tan()),
        }
    }

    pub fn cot_exact(&self) -> ExactValue {
        match self.twelfths_mod_pi() {
            // cot x = tan(π/2 - x)
            Some(k) => tan_twelfths((18 - k) % 12),
            None => ExactValue::Numeric(1.0 / self.to_radians().tan()),
        }
    }

    /// Short human-readable form such as `pi/3`, `-pi/6` or `0.4205`.
    pub fn pretty(&self) -> String {
        match self {
            Angle::RationalPi(r) => {
                if r.is_zero() {
                    return "0".into();
                }
                let sign = if r.is_negative() { "-" } else { "" };
                let (p, q) = (r.numer().abs(), *r.denom());
                let num = if p == 1 { "pi".to_string() } else { format!("{p}pi") };
                if q == 1 {
                    format!("{sign}{num}")
                } else {
                    format!("{sign}{num}/{q}")
                }
            }
            Angle::Numeric(x) => format!("{x:.12}"),
        }
    }
}

fn numeric_congruent(x: f64, target: f64, tol: f64) -> bool {
    let d = (x - target) / PI;
    (d - d.round()).abs() * PI < tol
}

// tan(kπ/12) for k = 0..11
fn tan_twelfths(k: u8) -> ExactValue {
    let f = |a: i64, b: Rational| ExactValue::Finite(QuadSurd::new(Rational::from_integer(a), b));
    let int = Rational::from_integer;
    match k % 12 {
        0 => f(0, int(0)),
        1 => f(2, int(-1)),
        2 => f(0, Rational::new(1, 3)),
        3 => f(1, int(0)),
        4 => f(0, int(1)),
        5 => f(2, int(1)),
        6 => ExactValue::Infinite,
        7 => f(-2, int(-1)),
        8 => f(0, int(-1)),
        9 => f(-1, int(0)),
        10 => f(0, Rational::new(-1, 3)),
        _ => f(-2, int(1)),
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::RationalPi(a), Angle::RationalPi(b)) => Angle::RationalPi(a + b),
            _ => Angle::Numeric(self.to_radians() + rhs.to_radians()),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        match self {
            Angle::RationalPi(r) => Angle::RationalPi(-r),
            Angle::Numeric(x) => Angle::Numeric(-x),
        }
    }
}

impl fmt::Display for Angle {
    /// Canonical `p/q*pi` form for exact angles, plain radians otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::RationalPi(r) if r.is_zero() => write!(f, "0"),
            Angle::RationalPi(r) => write!(f, "{}*pi", fmt_rational(*r)),
            Angle::Numeric(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AngleRepr {
    PiRational([i64; 2]),
    Radians(f64),
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Angle::RationalPi(r) => AngleRepr::PiRational([*r.numer(), *r.denom()]),
            Angle::Numeric(x) => AngleRepr::Radians(*x),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match AngleRepr::deserialize(d)? {
            AngleRepr::PiRational([_, 0]) => Err(serde::de::Error::custom("zero denominator")),
            AngleRepr::PiRational([p, q]) => Ok(Angle::pi_frac(p, q)),
            AngleRepr::Radians(x) => Ok(Angle::Numeric(x)),
        }
    }
}

/// `a + b√3` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadSurd { a, b }
    }

    pub fn from_integer(n: i64) -> Self {
        QuadSurd::new(Rational::from_integer(n), Rational::zero())
    }

    pub fn zero() -> Self {
        QuadSurd::from_integer(0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(self.a) + rational_to_f64(self.b) * 3f64.sqrt()
    }

    pub fn recip(&self) -> Option<QuadSurd> {
        // (a - b√3) / (a² - 3b²); the norm vanishes only at zero since √3 ∉ ℚ
        let norm = self.a * self.a - self.b * self.b * 3;
        if norm.is_zero() {
            return None;
        }
        Some(QuadSurd::new(self.a / norm, -self.b / norm))
    }

    pub fn scale(&self, k: Rational) -> QuadSurd {
        QuadSurd::new(self.a * k, self.b * k)
    }
}

impl Add for QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: QuadSurd) -> QuadSurd {
        QuadSurd::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: QuadSurd) -> QuadSurd {
        QuadSurd::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: QuadSurd) -> QuadSurd {
        QuadSurd::new(
            self.a * o.a + self.b * o.b * 3,
            self.a * o.b + self.b * o.a,
        )
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd::new(-self.a, -self.b)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(self.a)),
            (true, false) => write!(f, "{}*sqrt3", fmt_rational(self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {sign} {}*sqrt3", fmt_rational(self.a), fmt_rational(self.b.abs()))
            }
        }
    }
}

/// A tangent-like scalar: exact in ℚ(√3), a pole, or a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExactValue {
    Finite(QuadSurd),
    Infinite,
    Numeric(f64),
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::Finite(QuadSurd::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        ExactValue::Finite(QuadSurd::from_integer(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ExactValue::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExactValue::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Finite(q) => q.to_f64(),
            ExactValue::Infinite => f64::INFINITY,
            ExactValue::Numeric(x) => *x,
        }
    }

    /// Exact zero test for surds, `|x| < tol` for floats.
    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            ExactValue::Finite(q) => q.is_zero(),
            ExactValue::Infinite => false,
            ExactValue::Numeric(x) => x.abs() < tol,
        }
    }

    /// Equality: component-wise for surds, within `tol` once either side is numeric.
    pub fn approx_eq(&self, other: &ExactValue, tol: f64) -> bool {
        match (self, other) {
            (ExactValue::Finite(a), ExactValue::Finite(b)) => a == b,
            (ExactValue::Infinite, ExactValue::Infinite) => true,
            (ExactValue::Infinite, _) | (_, ExactValue::Infinite) => false,
            _ => (self.to_f64() - other.to_f64()).abs() < tol,
        }
    }

    pub fn recip(&self) -> ExactValue {
        match self {
            ExactValue::Finite(q) => q.recip().map_or(ExactValue::Infinite, ExactValue::Finite),
            ExactValue::Infinite => ExactValue::zero(),
            ExactValue::Numeric(x) => ExactValue::Numeric(1.0 / x),
        }
    }

    /// Multiplication by an integer, keeping exactness.
    pub fn scale(&self, k: i64) -> ExactValue {
        match self {
            ExactValue::Finite(q) => ExactValue::Finite(q.scale(Rational::from_integer(k))),
            ExactValue::Infinite if k == 0 => ExactValue::zero(),
            ExactValue::Infinite => ExactValue::Infinite,
            ExactValue::Numeric(x) => ExactValue::Numeric(x * k as f64),
        }
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, o: ExactValue) -> ExactValue {
        match (self, o) {
            (ExactValue::Finite(a), ExactValue::Finite(b)) => ExactValue::Finite(a + b),
            (ExactValue::Infinite, _) | (_, ExactValue::Infinite) => ExactValue::Infinite,
            _ => ExactValue::Numeric(self.to_f64() + o.to_f64()),
        }
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, o: ExactValue) -> ExactValue {
        self + (-o)
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, o: ExactValue) -> ExactValue {
        match (self, o) {
            (ExactValue::Finite(a), ExactValue::Finite(b)) => ExactValue::Finite(a * b),
            (ExactValue::Infinite, _) | (_, ExactValue::Infinite) => ExactValue::Infinite,
            _ => ExactValue::Numeric(self.to_f64() * o.to_f64()),
        }
    }
}

impl Div for ExactValue {
    type Output = ExactValue;
    fn div(self, o: ExactValue) -> ExactValue {
        self * o.recip()
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        match self {
            ExactValue::Finite(q) => ExactValue::Finite(-q),
            ExactValue::Infinite => ExactValue::Infinite,
            ExactValue::Numeric(x) => ExactValue::Numeric(-x),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Finite(q) => write!(f, "{q}"),
            ExactValue::Infinite => write!(f, "inf"),
            ExactValue::Numeric(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for ExactValue {
    /// Surds as `{"a": "p/q", "b": "p/q", "sqrt": 3}`, poles as `"inf"`, floats as numbers.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            ExactValue::Finite(q) => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("a", &fmt_rational(q.a))?;
                m.serialize_entry("b", &fmt_rational(q.b))?;
                m.serialize_entry("sqrt", &3)?;
                m.end()
            }
            ExactValue::Infinite => s.serialize_str("inf"),
            ExactValue::Numeric(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse angle {input:?}: {reason}")]
pub struct AngleParseError {
    pub input: String,
    pub reason: String,
}

impl FromStr for Angle {
    type Err = AngleParseError;

    /// Accepts `pi/3`, `-pi/6`, `2pi/3`, `5/12*pi`, integers, decimals (radians)
    /// and numeric expressions such as `atan(sqrt(5))` or `pi/2 - 2*atan(sqrt(5))`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| AngleParseError { input: s.to_string(), reason };
        let mut p = ExprParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr().map_err(err)?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(err(format!("unexpected trailing input at byte {}", p.pos)));
        }
        Ok(match v {
            Val::Pi(r) => Angle::RationalPi(r),
            Val::Rat(r) if r.is_zero() => Angle::zero(),
            Val::Rat(r) => Angle::Numeric(rational_to_f64(r)),
            Val::Num(x) if x.is_finite() => Angle::Numeric(x),
            Val::Num(x) => return Err(err(format!("value {x} is not finite"))),
        })
    }
}

// Values during expression evaluation: plain rationals, rational multiples
// of π, or floats.
#[derive(Clone, Copy, Debug)]
enum Val {
    Rat(Rational),
    Pi(Rational),
    Num(f64),
}

impl Val {
    fn f(self) -> f64 {
        match self {
            Val::Rat(r) => rational_to_f64(r),
            Val::Pi(r) => rational_to_f64(r) * PI,
            Val::Num(x) => x,
        }
    }

    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Rat(a), Val::Rat(b)) => Val::Rat(a + b),
            (Val::Pi(a), Val::Pi(b)) => Val::Pi(a + b),
            (Val::Rat(a), Val::Pi(b)) | (Val::Pi(b), Val::Rat(a)) if a.is_zero() => Val::Pi(b),
            _ => Val::Num(self.f() + o.f()),
        }
    }

    fn neg(self) -> Val {
        match self {
            Val::Rat(a) => Val::Rat(-a),
            Val::Pi(a) => Val::Pi(-a),
            Val::Num(x) => Val::Num(-x),
        }
    }

    fn mul(self, o: Val) -> Val {
        match (self, o) {
            (Val::Rat(a), Val::Rat(b)) => Val::Rat(a * b),
            (Val::Rat(a), Val::Pi(b)) | (Val::Pi(b), Val::Rat(a)) => Val::Pi(a * b),
            _ => Val::Num(self.f() * o.f()),
        }
    }

    fn div(self, o: Val) -> Result<Val, String> {
        match (self, o) {
            (_, Val::Rat(b)) if b.is_zero() => Err("division by zero".into()),
            (Val::Rat(a), Val::Rat(b)) => Ok(Val::Rat(a / b)),
            (Val::Pi(a), Val::Rat(b)) => Ok(Val::Pi(a / b)),
            (Val::Pi(a), Val::Pi(b)) if !b.is_zero() => Ok(Val::Rat(a / b)),
            _ => Ok(Val::Num(self.f() / o.f())),
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Val, String> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v = v.add(self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    v = v.add(self.term()?.neg());
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<Val, String> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    v = v.mul(self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    v = v.div(self.unary()?)?;
                }
                // implicit product: `2pi`, `3(…)`, `2atan(…)`
                Some(c) if c.is_ascii_alphabetic() || c == b'(' || c == 0xCF => {
                    v = v.mul(self.unary()?);
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<Val, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Val, String> {
        match self.peek() {
            None => Err("unexpected end of input".into()),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(0xCF) if self.src.get(self.pos + 1) == Some(&0x80) => {
                self.pos += 2;
                Ok(Val::Pi(Rational::one()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                if name == "pi" {
                    return Ok(Val::Pi(Rational::one()));
                }
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                let x = arg.f();
                let y = match name {
                    "sqrt" => {
                        if x < 0.0 {
                            return Err("sqrt of a negative number".into());
                        }
                        x.sqrt()
                    }
                    "atan" | "arctan" => x.atan(),
                    "tan" => x.tan(),
                    "sin" => x.sin(),
                    "cos" => x.cos(),
                    "asin" | "arcsin" => x.asin(),
                    "acos" | "arccos" => x.acos(),
                    other => return Err(format!("unknown function {other:?}")),
                };
                Ok(Val::Num(y))
            }
            Some(c) => Err(format!("unexpected character {:?}", c as char)),
        }
    }

    fn number(&mut self) -> Result<Val, String> {
        let start = self.pos;
        let mut decimal = false;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_digit() {
                self.pos += 1;
            } else if c == b'.' || c == b'e' || c == b'E' {
                decimal = true;
                self.pos += 1;
                if (c == b'e' || c == b'E') && matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        if decimal {
            text.parse::<f64>().map(Val::Num).map_err(|e| format!("bad number {text:?}: {e}"))
        } else {
            text.parse::<i64>()
                .map(|n| Val::Rat(Rational::from_integer(n)))
                .map_err(|e| format!("bad integer {text:?}: {e}"))
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {:?} at byte {}", c as char, self.pos))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> ExactValue {
        ExactValue::Finite(QuadSurd::new(Rational::from_integer(a), Rational::from_integer(b)))
    }

    #[test]
    fn reduce_mod_pi_examples() {
        assert_eq!(Angle::pi_frac(5, 6).reduce_mod_pi(), Angle::pi_frac(5, 6));
        assert_eq!(Angle::pi_frac(-1, 2).reduce_mod_pi(), Angle::pi_frac(1, 2));
        assert_eq!(Angle::pi_frac(7, 3).reduce_mod_pi(), Angle::pi_frac(1, 3));
        let r = Angle::radians(-0.5).reduce_mod_pi().to_radians();
        assert!((r - (PI - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn tan_examples() {
        assert_eq!(Angle::pi_frac(1, 3).tan_exact(), q(0, 1));
        assert_eq!(Angle::pi_frac(1, 2).tan_exact(), ExactValue::Infinite);
        assert_eq!(Angle::pi_frac(5, 12).tan_exact(), q(2, 1));
        assert!((q(2, 1).to_f64() - 3.7320508075688772).abs() < 1e-15);
        assert!((Angle::pi_frac(5, 12).to_radians().tan() - 3.7320508).abs() < 1e-7);
        assert!(matches!(Angle::pi_frac(1, 5).tan_exact(), ExactValue::Numeric(_)));
    }

    #[test]
    fn cot_examples() {
        assert_eq!(Angle::pi_frac(1, 2).cot_exact(), q(0, 0));
        assert_eq!(Angle::pi_frac(1, 6).cot_exact(), q(0, 1));
        assert_eq!(Angle::zero().cot_exact(), ExactValue::Infinite);
        assert_eq!(Angle::pi_frac(-1, 1).cot_exact(), ExactValue::Infinite);
    }

    #[test]
    fn cot_matches_float_on_all_twelfths() {
        for k in 1..12 {
            let a = Angle::pi_frac(k, 12);
            let want = 1.0 / a.to_radians().tan();
            let got = a.cot_exact().to_f64();
            if k == 6 {
                assert_eq!(got, 0.0);
            } else {
                assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "k={k}");
            }
        }
    }

    #[test]
    fn surd_reciprocal() {
        let x = QuadSurd::new(Rational::from_integer(2), Rational::from_integer(1));
        let y = x.recip().unwrap();
        assert_eq!(x * y, QuadSurd::from_integer(1));
        assert_eq!(QuadSurd::zero().recip(), None);
    }

    #[test]
    fn mixing_degrades_to_numeric() {
        let a = Angle::pi_frac(1, 3) + Angle::radians(0.1);
        assert!(!a.is_exact());
        let v = q(1, 0) + ExactValue::Numeric(0.5);
        assert_eq!(v, ExactValue::Numeric(1.5));
        assert!((Angle::pi_frac(1, 3) + Angle::pi_frac(1, 6)).is_exact());
    }

    #[test]
    fn parse_forms() {
        let p = |s: &str| s.parse::<Angle>().unwrap();
        assert_eq!(p("pi/3"), Angle::pi_frac(1, 3));
        assert_eq!(p("-pi/6"), Angle::pi_frac(-1, 6));
        assert_eq!(p("5/12*pi"), Angle::pi_frac(5, 12));
        assert_eq!(p("2pi/3"), Angle::pi_frac(2, 3));
        assert_eq!(p("π/4"), Angle::pi_frac(1, 4));
        assert_eq!(p("0"), Angle::zero());
        assert_eq!(p("pi"), Angle::pi_frac(1, 1));
        assert_eq!(p("pi/2 - pi/6"), Angle::pi_frac(1, 3));
        assert_eq!(p("0.3"), Angle::radians(0.3));
        let a = p("atan(sqrt(5))");
        assert!(!a.is_exact());
        assert!((a.to_radians() - 5f64.sqrt().atan()).abs() < 1e-15);
        let b = p("pi/2-2*atan(sqrt(5))");
        assert!((b.to_radians() - (PI / 2.0 - 2.0 * 5f64.sqrt().atan())).abs() < 1e-15);
        assert!("pi/".parse::<Angle>().is_err());
        assert!("foo(1)".parse::<Angle>().is_err());
        assert!("1/0".parse::<Angle>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for a in [Angle::pi_frac(-5, 6), Angle::pi_frac(1, 1), Angle::zero(), Angle::pi_frac(7, 12)] {
            assert_eq!(a.to_string().parse::<Angle>().unwrap(), a);
            assert_eq!(a.pretty().parse::<Angle>().unwrap(), a);
        }
    }

    #[test]
    fn json_forms() {
        let j = serde_json::to_string(&Angle::pi_frac(-1, 6)).unwrap();
        assert_eq!(j, r#"{"pi_rational":[-1,6]}"#);
        let a: Angle = serde_json::from_str(r#"{"radians":0.25}"#).unwrap();
        assert_eq!(a, Angle::radians(0.25));
        assert!(serde_json::from_str::<Angle>(r#"{"pi_rational":[1,0]}"#).is_err());
        let v = serde_json::to_value(q(0, 1).recip()).unwrap();
        assert_eq!(v, serde_json::json!({"a": "0", "b": "1/3", "sqrt": 3}));
    }

    #[test]
    fn numeric_congruence_uses_tolerance() {
        let a = Angle::radians(PI / 2.0 + 1e-12);
        assert!(a.congruent_mod_pi(Rational::new(1, 2), DEFAULT_TOLERANCE));
        assert!(a.congruent_mod_pi(Rational::new(-1, 2), DEFAULT_TOLERANCE));
        assert!(!Angle::radians(0.3).congruent_mod_pi(Rational::zero(), DEFAULT_TOLERANCE));
        assert_eq!(Angle::radians(-PI / 6.0).snap_twelfths(1e-9), Some(10));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn exact_angle() -> impl Strategy<Value = Angle> {
        (prop::sample::select(EXACT_DENOMINATORS.to_vec()), -200i64..200)
            .prop_map(|(q, p)| Angle::pi_frac(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn tan_exact_matches_float(a in exact_angle()) {
            match a.tan_exact() {
                ExactValue::Infinite => prop_assert!(a.congruent_mod_pi(Rational::new(1, 2), 0.0)),
                ExactValue::Finite(v) => {
                    let want = a.to_radians().tan();
                    prop_assert!((v.to_f64() - want).abs() <= 1e-12 * want.abs().max(1.0));
                }
                ExactValue::Numeric(_) => prop_assert!(false, "exact angle fell back to numeric"),
            }
        }
    }

    proptest! {
        #[test]
        fn tan_times_cot_is_one(a in exact_angle()) {
            if let (ExactValue::Finite(t), ExactValue::Finite(c)) = (a.tan_exact(), a.cot_exact()) {
                if !t.is_zero() {
                    prop_assert_eq!(t * c, QuadSurd::from_integer(1));
                }
            }
        }

        #[test]
        fn reduce_mod_pi_idempotent_and_integral(p in -1000i64..1000, q in 1i64..50) {
            let a = Angle::pi_frac(p, q);
            let r = a.reduce_mod_pi();
            prop_assert_eq!(r.reduce_mod_pi(), r);
            let shift = (a - r).pi_fraction().unwrap();
            prop_assert!(shift.is_integer());
            let f = r.pi_fraction().unwrap();
            prop_assert!(f >= Rational::zero() && f < Rational::one());
        }

        #[test]
        fn numeric_reduce_in_range(x in -100.0f64..100.0) {
            let r = Angle::radians(x).reduce_mod_pi().to_radians();
            prop_assert!((0.0..PI).contains(&r));
            let k = (x - r) / PI;
            prop_assert!((k - k.round()).abs() < 1e-9);
        }
    }
}
