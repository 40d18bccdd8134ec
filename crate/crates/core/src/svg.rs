//! Minimal SVG rendering of a cover: the hull as an axis, merged cover
//! components as bars. Coordinates are printed with three decimals, so the
//! output is byte-identical for identical input.

use std::fmt::Write as _;

use crate::cover::CoverReport;
use crate::ifs::Interval;
use crate::rational::{format_rational, to_f64, Rational};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 120.0;
const MARGIN: f64 = 20.0;
const BAR_Y: f64 = 40.0;
const BAR_H: f64 = 30.0;
const AXIS_Y: f64 = 90.0;

fn xpos(value: &Rational, hull: &Interval) -> f64 {
    let span = hull.width();
    let frac = if span == Rational::from_integer(0.into()) {
        0.0
    } else {
        to_f64(&((value - &hull.lo) / span))
    };
    MARGIN + (WIDTH - 2.0 * MARGIN) * frac
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_cover_svg(cover: &CoverReport, hull: &Interval) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{HEIGHT:.0}" viewBox="0 0 {WIDTH:.0} {HEIGHT:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN:.3}" y="20.000" font-family="monospace" font-size="12">level {} ({} intervals)</text>"#,
        cover.level(),
        cover.len()
    );
    let _ = writeln!(
        out,
        r#"<line x1="{:.3}" y1="{AXIS_Y:.3}" x2="{:.3}" y2="{AXIS_Y:.3}" stroke="black" stroke-width="1"/>"#,
        xpos(&hull.lo, hull),
        xpos(&hull.hi, hull)
    );
    for (value, anchor) in [(&hull.lo, "start"), (&hull.hi, "end")] {
        let x = xpos(value, hull);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black" stroke-width="1"/>"#,
            AXIS_Y - 4.0,
            AXIS_Y + 4.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.3}" y="{:.3}" font-family="monospace" font-size="12" text-anchor="{anchor}">{}</text>"#,
            AXIS_Y + 18.0,
            escape(&format_rational(value))
        );
    }
    for iv in cover.merged() {
        let x0 = xpos(&iv.lo, hull);
        let x1 = xpos(&iv.hi, hull);
        let _ = writeln!(
            out,
            r#"<rect x="{x0:.3}" y="{BAR_Y:.3}" width="{:.3}" height="{BAR_H:.3}" fill="black"/>"#,
            (x1 - x0).max(0.0)
        );
    }
    out.push_str("</svg>\n");
    out
}
