//! Deterministic SVG figures on a fixed 800×800 canvas.
//!
//! Output depends only on the input: elements are emitted in a fixed order
//! and every coordinate is printed with two decimals.

use std::fmt::Write;

use coxkit::{enumerate_chambers, Chamber, Error, GradingSpec, Polytope, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub const CANVAS: f64 = 800.0;
pub const MARGIN: f64 = 40.0;

const FILLS: [&str; 6] = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462"];

fn f(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn fr(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Maps a world box onto the canvas with a uniform scale and y pointing up.
struct Frame {
    min: (f64, f64),
    scale: f64,
    offset: (f64, f64),
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for &(x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if points.is_empty() {
            lo = (-1.0, -1.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        // center the shorter side
        let offset = (
            MARGIN + ((span - (hi.0 - lo.0)) * scale) / 2.0,
            MARGIN + ((span - (hi.1 - lo.1)) * scale) / 2.0,
        );
        Frame { min: lo, scale, offset }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        let x = self.offset.0 + (p.0 - self.min.0) * self.scale;
        let y = CANVAS - (self.offset.1 + (p.1 - self.min.1) * self.scale);
        (x, y)
    }
}

fn header(title: &str) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    )
    .unwrap();
    writeln!(s, "<title>{title}</title>").unwrap();
    writeln!(s, r##"<rect x="0" y="0" width="{c}" height="{c}" fill="#ffffff"/>"##, c = CANVAS).unwrap();
    s
}

fn points_attr(frame: &Frame, pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Chamber decomposition of a rank-2 free grading. Chambers are shaded
/// wedges, degree vectors are dots labelled `x_i` (1-based).
pub fn chambers_svg(g: &GradingSpec) -> Result<(String, Vec<Chamber>)> {
    let k = g.free_rank();
    if k > 2 {
        return Err(Error::RankTooLarge { found: k, max: 2 });
    }
    if k < 2 {
        return Err(Error::InvalidInput(format!("plotting needs a rank-2 grading, found rank {k}")));
    }
    let chambers = enumerate_chambers(g)?;
    let degrees: Vec<(f64, f64)> = g.free_degrees().iter().map(|d| (f(&d[0]), f(&d[1]))).collect();
    let reach = degrees
        .iter()
        .map(|&(x, y)| x.abs().max(y.abs()))
        .fold(1.0f64, f64::max);
    let radius = reach * 1.1;
    let frame = Frame::fit(&[(-radius, -radius), (radius, radius)]);

    let mut s = header("Mori chamber decomposition");
    let (ox, oy) = frame.map((0.0, 0.0));
    writeln!(
        s,
        r##"<line x1="{:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="#cccccc"/>"##,
        frame.map((-radius, 0.0)).0,
        frame.map((radius, 0.0)).0
    )
    .unwrap();
    writeln!(
        s,
        r##"<line x1="{ox:.2}" y1="{:.2}" x2="{ox:.2}" y2="{:.2}" stroke="#cccccc"/>"##,
        frame.map((0.0, -radius)).1,
        frame.map((0.0, radius)).1
    )
    .unwrap();
    for (i, ch) in chambers.iter().enumerate() {
        let rays: Vec<(f64, f64)> = ch
            .cone
            .rays()
            .iter()
            .map(|r| {
                let (x, y) = (f(&r[0]), f(&r[1]));
                let n = x.hypot(y);
                (x / n * radius, y / n * radius)
            })
            .collect();
        let mut wedge = vec![(0.0, 0.0)];
        wedge.extend(rays);
        writeln!(
            s,
            r##"<polygon class="chamber" points="{}" fill="{}" fill-opacity="0.6" stroke="#333333" stroke-width="1"/>"##,
            points_attr(&frame, &wedge),
            FILLS[i % FILLS.len()]
        )
        .unwrap();
    }
    for (i, &d) in degrees.iter().enumerate() {
        let (x, y) = frame.map(d);
        // equal degrees share a dot; their labels stack
        let earlier = degrees[..i].iter().filter(|&&e| e == d).count();
        if earlier == 0 {
            writeln!(s, r##"<circle class="degree" cx="{x:.2}" cy="{y:.2}" r="5" fill="#000000"/>"##).unwrap();
        }
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="14">x{}</text>"#,
            x + 8.0,
            y - 8.0 - 16.0 * earlier as f64,
            i + 1
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok((s, chambers))
}

/// A lattice polygon, optionally with all its lattice points, and a set of
/// highlighted points.
pub fn polygon_svg(p: &Polytope, lattice: &[Vec<BigInt>], highlight: &[Vec<BigInt>]) -> Result<String> {
    if p.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.ambient_dim(),
        });
    }
    let verts: Vec<(f64, f64)> = p.vertices().iter().map(|v| (fr(&v[0]), fr(&v[1]))).collect();
    let hl: Vec<(f64, f64)> = highlight.iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    let mut all = verts.clone();
    all.extend(hl.iter().copied());
    let frame = Frame::fit(&all);

    let mut s = header("lattice polygon");
    writeln!(
        s,
        r##"<polygon class="polygon" points="{}" fill="#dde8f4" stroke="#1f4e79" stroke-width="2"/>"##,
        points_attr(&frame, &verts)
    )
    .unwrap();
    for v in lattice {
        let (x, y) = frame.map((f(&v[0]), f(&v[1])));
        writeln!(s, r##"<circle class="lattice" cx="{x:.2}" cy="{y:.2}" r="1.5" fill="#777777"/>"##).unwrap();
    }
    for (v, &pt) in highlight.iter().zip(&hl) {
        let (x, y) = frame.map(pt);
        writeln!(s, r##"<circle class="highlight" cx="{x:.2}" cy="{y:.2}" r="5" fill="#c00000"/>"##).unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12">({},{})</text>"#,
            x + 6.0,
            y - 6.0,
            v[0],
            v[1]
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
