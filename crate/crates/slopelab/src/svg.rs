//! SVG rendering of a family lift over one period.
//!
//! Screen coordinates are floats; every annotated value is the exact
//! scalar string, so the picture is approximate but its labels are not.

use slopelab_core::lift::{BranchWitnesses, LambdaFamilyMap};
use slopelab_core::scalar::ExactScalar;
use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 56.0;

fn approx(x: &ExactScalar) -> f64 {
    x.to_decimal(15).parse().expect("decimal rendering is a float literal")
}

struct Frame {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - 2.0 * MARGIN)
    }

    fn line(&self, out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#,
            self.px(x1),
            self.py(y1),
            self.px(x2),
            self.py(y2)
        );
    }

    fn dot(&self, out: &mut String, x: f64, y: f64, r: f64, fill: &str) {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"#,
            self.px(x),
            self.py(y)
        );
    }

    fn text(&self, out: &mut String, x: f64, y: f64, anchor: &str, label: &str) {
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}" font-size="13" font-family="monospace" fill="#222">{label}</text>"##,
            self.px(x),
            self.py(y)
        );
    }
}

/// Renders the lift's graph over `[0, 1]` with the three diagonals
/// `y = x - 1`, `y = x`, `y = x + 1`, the connect-the-dots turning
/// points, and optional diagonal-crossing witness marks.
pub fn render_family_svg(family: &LambdaFamilyMap, witnesses: &[BranchWitnesses]) -> String {
    let b = approx(family.b());
    let c = approx(family.c());
    let frame = Frame {
        x_lo: -0.08,
        x_hi: 1.08,
        y_lo: -1.35,
        y_hi: c + 0.45,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    out.push_str(r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    out.push('\n');

    let grid = r##"stroke="#dddddd" stroke-width="1""##;
    for x in [0.0, 1.0] {
        frame.line(&mut out, x, frame.y_lo, x, frame.y_hi, grid);
    }
    for y in [-1.0, 0.0, 1.0, 2.0] {
        frame.line(&mut out, frame.x_lo, y, frame.x_hi, y, grid);
    }

    let dashed = r##"stroke="#888888" stroke-width="1" stroke-dasharray="6 4""##;
    for shift in [-1.0, 0.0, 1.0] {
        let x0 = (frame.y_lo - shift).max(frame.x_lo);
        let x1 = (frame.y_hi - shift).min(frame.x_hi);
        if x1 > x0 {
            frame.line(&mut out, x0, x0 + shift, x1, x1 + shift, dashed);
        }
    }
    frame.text(&mut out, 1.02, 0.92, "start", "y = x");
    frame.text(&mut out, 0.86, 1.96, "start", "y = x+1");
    frame.text(&mut out, 1.02, -0.22, "start", "y = x-1");

    let graph = r##"stroke="#111111" stroke-width="2.5""##;
    frame.line(&mut out, 0.0, -1.0, b, c, graph);
    frame.line(&mut out, b, c, 1.0, 0.0, graph);

    for (x, y) in [(0.0, -1.0), (b, c), (1.0, 0.0)] {
        frame.dot(&mut out, x, y, 4.5, "#111111");
    }
    frame.text(&mut out, 0.02, -1.08, "start", "(0, -1)");
    frame.text(
        &mut out,
        b,
        c + 0.22,
        "middle",
        &format!("(b, c) = ({}, {})", family.b(), family.c()),
    );
    frame.text(&mut out, 0.97, 0.14, "end", "(1, 0)");

    for w in witnesses {
        let down = approx(&w.down);
        let up = approx(&w.up);
        frame.dot(&mut out, down, down - 1.0, 5.0, "#bb3333");
        frame.dot(&mut out, up, up + 1.0, 5.0, "#3355bb");
        frame.text(
            &mut out,
            down,
            down - 1.0 - 0.16,
            "middle",
            &format!("branch {} meets x-1 at {}", w.branch, w.down),
        );
        frame.text(
            &mut out,
            up,
            up + 1.0 + 0.14,
            "middle",
            &format!("branch {} meets x+1 at {}", w.branch, w.up),
        );
    }

    frame.text(
        &mut out,
        frame.x_lo + 0.02,
        frame.y_hi - 0.1,
        "start",
        &format!("lambda = {}", family.lambda()),
    );
    frame.text(
        &mut out,
        frame.x_lo + 0.02,
        frame.y_hi - 0.26,
        "start",
        &format!("b = {}   c = {}", family.b(), family.c()),
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_contains_exact_annotations() {
        let family = LambdaFamilyMap::make(&ExactScalar::parse("132/25").unwrap()).unwrap();
        let svg = render_family_svg(&family, &[]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("lambda = 132/25"));
        assert!(svg.contains("b = 157/264"));
        assert!(svg.contains("c = 107/50"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let family = LambdaFamilyMap::make(&ExactScalar::parse("2+1*sqrt(5)").unwrap()).unwrap();
        assert_eq!(
            render_family_svg(&family, &[]),
            render_family_svg(&family, &[])
        );
    }
}
