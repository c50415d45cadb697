//! SVG pictures of a rank-2 cell with marked points.
//!
//! Cell coordinates are the simple-root values `(β1(Z), β2(Z))`. They are mapped
//! to the plane through the root inner products, so the walls meet at their true
//! angles.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cell::{enumerate_faces, CellError, RootGeometry};
use crate::exact::rational_to_f64;
use crate::triad::{CellPoint, SymmetricTriad};

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("cell pictures need rank 2, got rank {0}")]
    Rank(usize),
    #[error(transparent)]
    Cell(#[from] CellError),
}

const SIZE: f64 = 520.0;
const MARGIN: f64 = 70.0;

/// Plane coordinates from root values, via the Cholesky factor `L` of the root
/// Gram matrix.
struct Embedding {
    l11: f64,
    l21: f64,
    l22: f64,
}

impl Embedding {
    fn new(gram: &[Vec<f64>]) -> Self {
        let l11 = gram[0][0].sqrt();
        let l21 = gram[1][0] / l11;
        let l22 = (gram[1][1] - l21 * l21).sqrt();
        Embedding { l11, l21, l22 }
    }

    // βᵢ(Z) = (βᵢ, Z) with βᵢ the columns of Lᵀ, so Z = L⁻¹x
    fn map(&self, x: &[f64]) -> (f64, f64) {
        let z1 = x[0] / self.l11;
        let z2 = (x[1] - self.l21 * z1) / self.l22;
        (z1, z2)
    }
}

struct Frame {
    min: (f64, f64),
    scale: f64,
    offset: (f64, f64),
}

impl Frame {
    fn fit(pts: &[(f64, f64)]) -> Self {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for &(x, y) in pts {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-12);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let offset = (
            (SIZE - (hi.0 - lo.0) * scale) / 2.0,
            (SIZE - (hi.1 - lo.1) * scale) / 2.0,
        );
        Frame { min: lo, scale, offset }
    }

    // y grows downward in SVG
    fn px(&self, p: (f64, f64)) -> (f64, f64) {
        (
            self.offset.0 + (p.0 - self.min.0) * self.scale,
            SIZE - self.offset.1 - (p.1 - self.min.1) * self.scale,
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Draws the closed cell, names its edges by their walls and marks each point.
pub fn emit_cell_svg(t: &SymmetricTriad, marked: &[(String, CellPoint)]) -> Result<String, SvgError> {
    if t.rank != 2 {
        return Err(SvgError::Rank(t.rank));
    }
    let geo = RootGeometry::from_triad(t)?;
    let gram: Vec<Vec<f64>> = geo.gram.iter().map(|r| r.iter().map(|&v| rational_to_f64(v)).collect()).collect();
    let emb = Embedding::new(&gram);
    let faces = enumerate_faces(t)?.faces;
    let to_plane = |y: &[crate::exact::Rational]| {
        let x: Vec<f64> = y.iter().map(|&v| rational_to_f64(v) * std::f64::consts::PI).collect();
        emb.map(&x)
    };

    let mut verts: Vec<(f64, f64)> =
        faces.iter().filter(|f| f.dim == 0).map(|f| to_plane(&f.centroid)).collect();
    let c = verts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let c = (c.0 / verts.len() as f64, c.1 / verts.len() as f64);
    verts.sort_by(|a, b| (a.1 - c.1).atan2(a.0 - c.0).total_cmp(&(b.1 - c.1).atan2(b.0 - c.0)));
    let frame = Frame::fit(&verts);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&t.name));
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    let poly: Vec<String> = verts
        .iter()
        .map(|&p| {
            let q = frame.px(p);
            format!("{:.2},{:.2}", q.0, q.1)
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#dde8f4" stroke="none"/>"##,
        poly.join(" ")
    );

    let cpx = frame.px(c);
    for f in faces.iter().filter(|f| f.dim == 1) {
        let a = frame.px(to_plane(&f.vertices[0]));
        let b = frame.px(to_plane(&f.vertices[f.vertices.len() - 1]));
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f3b5c" stroke-width="2"/>"##,
            a.0, a.1, b.0, b.1
        );
        let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let (dx, dy) = (mid.0 - cpx.0, mid.1 - cpx.1);
        let len = dx.hypot(dy).max(1e-9);
        let pos = (mid.0 + 22.0 * dx / len, mid.1 + 22.0 * dy / len);
        let names: Vec<String> = f.pinned.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" font-family="serif" font-size="13" text-anchor="middle" fill="#1f3b5c">{}</text>"##,
            pos.0,
            pos.1,
            escape(&names.join(", "))
        );
    }

    for (label, z) in marked {
        let p = frame.px(emb.map(&z.to_f64()));
        let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#b22222"/>"##, p.0, p.1);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="serif" font-size="12">{}</text>"#,
            p.0 + 7.0,
            p.1 - 7.0,
            escape(label)
        );
    }
    s += "</svg>\n";
    Ok(s)
}
