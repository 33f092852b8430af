//! CSV and SVG renderings of a cone section.
//!
//! Rays are primitive integer pairs `(a, b)` standing for `aλ − bδ`. The
//! SVG places `b` on the horizontal axis (stretched so that the steep rays
//! separate) and `a` on the vertical one; exact ray data rides along in
//! `data-*` attributes.

use std::fmt::Write;

use moriwaki_core::cone::{SectionRay, SectionRays};
use num_traits::ToPrimitive;

pub const CSV_HEADER: &str = "cone,ray_a,ray_b";

fn cones(s: &SectionRays) -> Vec<(&'static str, &[SectionRay; 2])> {
    let mut out = vec![("nef", &s.nef), ("mor", &s.moriwaki)];
    if let Some(p) = &s.psef {
        out.push(("psef", p));
    }
    out
}

pub fn csv(s: &SectionRays) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (name, rays) in cones(s) {
        for r in rays {
            writeln!(out, "{name},{},{}", r.a, r.b).unwrap();
        }
    }
    out
}

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const RADIUS: f64 = 300.0;
const X_STRETCH: f64 = 8.0;

fn end_point(r: &SectionRay) -> (f64, f64) {
    let x = r.b.to_f64().unwrap_or(0.0) * X_STRETCH;
    let y = r.a.to_f64().unwrap_or(0.0);
    let n = x.hypot(y);
    let (ox, oy) = origin();
    (ox + RADIUS * x / n, oy - RADIUS * y / n)
}

fn origin() -> (f64, f64) {
    (WIDTH / 2.0, HEIGHT - 30.0)
}

fn style(name: &str) -> (&'static str, &'static str) {
    match name {
        "psef" => ("#dde8f5", "#3b6ea8"),
        "mor" => ("#f5e6c8", "#b07a1a"),
        _ => ("#d5ecd4", "#2f7d32"),
    }
}

pub fn svg(s: &SectionRays) -> String {
    let (ox, oy) = origin();
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-genus="{}" data-x-stretch="{X_STRETCH}">"#,
        s.genus
    )
    .unwrap();
    writeln!(out, "  <title>cone section in the lambda-delta plane, g = {}</title>", s.genus).unwrap();
    writeln!(out, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    // widest cone first so the nested ones stay visible
    let mut layers = cones(s);
    layers.reverse();
    for (name, rays) in &layers {
        let (fill, _) = style(name);
        let (x1, y1) = end_point(&rays[0]);
        let (x2, y2) = end_point(&rays[1]);
        writeln!(
            out,
            r#"  <polygon data-cone="{name}" points="{ox:.3},{oy:.3} {x1:.3},{y1:.3} {ox:.3},{:.3} {x2:.3},{y2:.3}" fill="{fill}" fill-opacity="0.7"/>"#,
            oy - RADIUS
        )
        .unwrap();
    }
    for (name, rays) in &layers {
        let (_, stroke) = style(name);
        for r in rays.iter() {
            let (x, y) = end_point(r);
            writeln!(
                out,
                r#"  <line data-cone="{name}" data-ray-a="{}" data-ray-b="{}" x1="{ox:.3}" y1="{oy:.3}" x2="{x:.3}" y2="{y:.3}" stroke="{stroke}" stroke-width="1.5"/>"#,
                r.a, r.b
            )
            .unwrap();
            writeln!(
                out,
                r#"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11" fill="{stroke}">{name} {}&#955; - {}&#948;</text>"#,
                x + 4.0,
                y - 4.0,
                r.a,
                r.b
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        r##"  <circle cx="{ox:.3}" cy="{oy:.3}" r="2" fill="#000000"/>"##
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
