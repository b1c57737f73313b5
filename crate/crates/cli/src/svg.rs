//! SVG pictures of rank-2 monoids on a lattice window.

use std::fmt::Write;

use semitoric::cone::ContainMode;
use semitoric::lattice::IntVec;
use semitoric::monoid::AffineMonoid;
use semitoric::{Error, Result};

const PITCH: i64 = 32;
const MARGIN: i64 = 32;

/// Integer box `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Window {
    pub fn square(n: i64) -> Self {
        Window {
            x0: 0,
            y0: 0,
            x1: n,
            y1: n,
        }
    }

    /// `N` for `[0,N]²` or `x0,y0,x1,y1`.
    pub fn parse(s: &str) -> Option<Self> {
        let parts: Vec<i64> = s.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
        let w = match parts[..] {
            [n] => Window::square(n),
            [x0, y0, x1, y1] => Window { x0, y0, x1, y1 },
            _ => return None,
        };
        (w.x0 <= w.x1 && w.y0 <= w.y1 && w.x1 - w.x0 <= 200 && w.y1 - w.y0 <= 200).then_some(w)
    }

    fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.y0..=self.y1)
            .rev()
            .flat_map(move |y| (self.x0..=self.x1).map(move |x| (x, y)))
    }

    fn px(&self, x: i64) -> i64 {
        MARGIN + (x - self.x0) * PITCH
    }

    fn py(&self, y: i64) -> i64 {
        MARGIN + (self.y1 - y) * PITCH
    }
}

pub type Points = Vec<(i64, i64)>;

/// Points of the window in `S` and in the saturation of `S` but not in `S`.
pub fn classify(s: &AffineMonoid, w: &Window) -> Result<(Points, Points)> {
    let mut members = Vec::new();
    let mut crosses = Vec::new();
    for (x, y) in w.points() {
        let m = IntVec::from_i64(&[x, y]);
        if s.contains(&m)? {
            members.push((x, y));
        } else if s.group().contains(&m) && s.cone().contains(&m, ContainMode::Closed)? {
            crosses.push((x, y));
        }
    }
    Ok((members, crosses))
}

/// The picture: lattice dots, members as filled dots, points of the
/// saturation missing from `S` as red crosses, generators as arrows.
pub fn plot(s: &AffineMonoid, w: &Window) -> Result<String> {
    if s.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: s.ambient_dim(),
        });
    }
    let (members, crosses) = classify(s, w)?;
    let width = 2 * MARGIN + (w.x1 - w.x0) * PITCH;
    let height = 2 * MARGIN + (w.y1 - w.y0) * PITCH;
    let mut out = String::new();
    let o = &mut out;
    let _ = writeln!(o, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        o,
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#1f5fbf"/></marker></defs>"##
    );
    let _ = writeln!(o, r#"<rect width="{width}" height="{height}" fill="white"/>"#);

    let _ = writeln!(o, r##"<g id="axes" stroke="#999999" stroke-width="1">"##);
    if (w.y0..=w.y1).contains(&0) {
        let _ = writeln!(
            o,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            0,
            w.py(0),
            width,
            w.py(0)
        );
    }
    if (w.x0..=w.x1).contains(&0) {
        let _ = writeln!(
            o,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            w.px(0),
            0,
            w.px(0),
            height
        );
    }
    let _ = writeln!(o, "</g>");

    let _ = writeln!(o, r##"<g id="lattice" fill="#bbbbbb">"##);
    for (x, y) in w.points() {
        let _ = writeln!(o, r#"<circle cx="{}" cy="{}" r="2"/>"#, w.px(x), w.py(y));
    }
    let _ = writeln!(o, "</g>");

    let _ = writeln!(o, r#"<g id="members" fill="black">"#);
    for &(x, y) in &members {
        let _ = writeln!(
            o,
            r#"<circle cx="{}" cy="{}" r="5"><title>({x},{y})</title></circle>"#,
            w.px(x),
            w.py(y)
        );
    }
    let _ = writeln!(o, "</g>");

    let _ = writeln!(o, r#"<g id="crosses" stroke="red" stroke-width="2">"#);
    for &(x, y) in &crosses {
        let (cx, cy) = (w.px(x), w.py(y));
        let _ = writeln!(
            o,
            r#"<path d="M{},{} L{},{} M{},{} L{},{}"><title>({x},{y})</title></path>"#,
            cx - 6,
            cy - 6,
            cx + 6,
            cy + 6,
            cx - 6,
            cy + 6,
            cx + 6,
            cy - 6
        );
    }
    let _ = writeln!(o, "</g>");

    let _ = writeln!(
        o,
        r##"<g id="generators" stroke="#1f5fbf" stroke-width="2" marker-end="url(#arrow)">"##
    );
    for g in s.generators() {
        let Some(c) = g.to_i64() else { continue };
        let (gx, gy) = (c[0], c[1]);
        let _ = writeln!(
            o,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"><title>({gx},{gy})</title></line>"#,
            w.px(0),
            w.py(0),
            w.px(0) + gx * PITCH,
            w.py(0) - gy * PITCH
        );
    }
    let _ = writeln!(o, "</g>");
    let _ = writeln!(o, "</svg>");
    Ok(out)
}
