//! SVG drawing of a tropical curve: coordinate grid, skeleton image, rays
//! with labels and circles at crossings. Curves in dimension 3 are drawn by
//! their first two coordinates, with the third written next to each vertex
//! and ray label.

use std::fmt::Write;

use mumford_trop::faithful_trop::{FaithfulnessReport, SegmentKind, TropicalCurve};
use mumford_trop::Rat;
use num_traits::ToPrimitive;

/// Pixels per unit of the value group.
pub const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;
/// Drawn length of a ray, in value-group units.
const RAY_LENGTH: f64 = 1.5;

fn f(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

fn subscript(label: &str) -> String {
    label
        .chars()
        .map(|c| match c.to_digit(10) {
            Some(d) => char::from_u32(0x2080 + d).unwrap_or(c),
            None => c,
        })
        .collect()
}

struct Frame {
    x0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.x0) * SCALE, MARGIN + (self.y1 - y) * SCALE)
    }
}

pub fn render_svg(curve: &TropicalCurve, report: &FaithfulnessReport, title: &str) -> String {
    let pos: Vec<(f64, f64)> = curve
        .vertices
        .iter()
        .map(|v| (f(&v.point[0]), f(&v.point[1])))
        .collect();
    let ray_end = |i: usize| -> (f64, f64) {
        let r = &curve.rays[i];
        let (dx, dy) = (r.direction[0] as f64, r.direction[1] as f64);
        let n = dx.abs().max(dy.abs()).max(1.0);
        let (bx, by) = pos[r.base];
        (bx + RAY_LENGTH * dx / n, by + RAY_LENGTH * dy / n)
    };
    let crossings: Vec<(f64, f64)> = report
        .skeleton_crossings
        .iter()
        .chain(&report.extended_crossings)
        .map(|c| (f(&c.witness[0]), f(&c.witness[1])))
        .collect();

    let mut xs: Vec<f64> = pos.iter().map(|p| p.0).collect();
    let mut ys: Vec<f64> = pos.iter().map(|p| p.1).collect();
    for i in 0..curve.rays.len() {
        let (x, y) = ray_end(i);
        xs.push(x);
        ys.push(y);
    }
    xs.extend(crossings.iter().map(|c| c.0));
    ys.extend(crossings.iter().map(|c| c.1));
    let lo = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min).floor() - 1.0;
    let hi = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() + 1.0;
    let (x0, x1, y0, y1) = (lo(&xs), hi(&xs), lo(&ys), hi(&ys));
    let frame = Frame { x0, y1 };
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN;
    let height = (y1 - y0) * SCALE + 2.0 * MARGIN;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#e0e0e0" stroke-width="1">"##);
    let mut x = x0;
    while x <= x1 {
        let (a, b) = (frame.px(x, y0), frame.px(x, y1));
        let _ = writeln!(s, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#, a.0, a.1, b.0, b.1);
        x += 1.0;
    }
    let mut y = y0;
    while y <= y1 {
        let (a, b) = (frame.px(x0, y), frame.px(x1, y));
        let _ = writeln!(s, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#, a.0, a.1, b.0, b.1);
        y += 1.0;
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g stroke-linecap="round">"#);
    for seg in &curve.segments {
        let (a, b) = (frame.px(pos[seg.tail].0, pos[seg.tail].1), frame.px(pos[seg.head].0, pos[seg.head].1));
        let style = match seg.kind {
            SegmentKind::Skeleton(_) => r#"stroke="black" stroke-width="2.5""#,
            SegmentKind::Join => r#"stroke="black" stroke-width="1.5" stroke-dasharray="4 3""#,
        };
        let _ = writeln!(s, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" {style}/>"#, a.0, a.1, b.0, b.1);
    }
    for (i, r) in curve.rays.iter().enumerate() {
        let a = frame.px(pos[r.base].0, pos[r.base].1);
        let e = ray_end(i);
        let b = frame.px(e.0, e.1);
        let _ = writeln!(
            s,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#4a6fa5" stroke-width="1.5"/>"##,
            a.0, a.1, b.0, b.1
        );
        let (dx, dy) = (r.direction[0] as f64, r.direction[1] as f64);
        let n = (dx * dx + dy * dy).sqrt().max(1.0);
        let (lx, ly) = (b.0 + 10.0 * dx / n, b.1 - 10.0 * dy / n);
        let mut text = format!("trop {}", subscript(r.label.name()));
        if curve.dim == 3 {
            let _ = write!(text, " [{:+}]", r.direction[2]);
        }
        let anchor = if dx < 0.0 { "end" } else if dx > 0.0 { "start" } else { "middle" };
        let _ = writeln!(
            s,
            r##"<text x="{lx:.1}" y="{:.1}" font-size="11" text-anchor="{anchor}" fill="#4a6fa5">{}</text>"##,
            ly + 4.0,
            escape(&text)
        );
    }
    let _ = writeln!(s, "</g>");

    for (v, p) in pos.iter().enumerate() {
        let c = frame.px(p.0, p.1);
        let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="2.5" fill="black"/>"#, c.0, c.1);
        if curve.dim == 3 {
            let _ = writeln!(
                s,
                r##"<text x="{:.1}" y="{:.1}" font-size="9" fill="#707070">{}</text>"##,
                c.0 + 4.0,
                c.1 - 4.0,
                escape(&curve.vertices[v].point[2].to_string())
            );
        }
    }
    for c in &crossings {
        let p = frame.px(c.0, c.1);
        let _ = writeln!(
            s,
            r##"<circle cx="{:.1}" cy="{:.1}" r="8" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
            p.0, p.1
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
