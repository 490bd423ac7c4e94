//! Minimal deterministic SVG writer.
//!
//! Coordinates are printed with three decimals so output is byte-stable. The
//! second line of every document is a build-stamp comment; comparisons that
//! must survive version bumps skip it (see [`strip_stamp`]).

use std::fmt::Write as _;

pub const STAMP_PREFIX: &str = "<!-- chab ";

pub struct Svg {
    buf: String,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        let mut buf = String::new();
        let _ = writeln!(
            buf,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        );
        let _ = writeln!(buf, "{STAMP_PREFIX}{} -->", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(buf, r#"<rect width="100%" height="100%" fill="white"/>"#);
        Svg { buf }
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, style: &str) {
        let _ = writeln!(
            self.buf,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" {style}/>"#
        );
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        let _ = writeln!(
            self.buf,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#
        );
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            self.buf,
            r#"<polyline points="{}" fill="none" {style}/>"#,
            coords.join(" ")
        );
    }

    pub fn polygon(&mut self, pts: &[(f64, f64)], style: &str) {
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            self.buf,
            r#"<polygon points="{}" {style}/>"#,
            coords.join(" ")
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, s: &str) {
        let _ = writeln!(
            self.buf,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="serif" font-size="{size:.0}" text-anchor="{anchor}">{}</text>"#,
            esc(s)
        );
    }

    /// Text tagged with a machine-readable class, for annotations that tests read back.
    pub fn label(&mut self, x: f64, y: f64, class: &str, s: &str) {
        let _ = writeln!(
            self.buf,
            r#"<text class="{class}" x="{x:.3}" y="{y:.3}" font-family="serif" font-size="13" text-anchor="middle">{}</text>"#,
            esc(s)
        );
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}

/// Drops the build-stamp line.
pub fn strip_stamp(svg: &str) -> String {
    svg.lines()
        .filter(|l| !l.starts_with(STAMP_PREFIX))
        .map(|l| format!("{l}\n"))
        .collect()
}

/// Text contents of every `<text class="{class}">` element, in document order.
pub fn labels(svg: &str, class: &str) -> Vec<String> {
    let open = format!(r#"<text class="{class}""#);
    svg.lines()
        .filter(|l| l.starts_with(&open))
        .filter_map(|l| {
            let start = l.find('>')? + 1;
            let end = l.rfind("</text>")?;
            Some(l[start..end].to_string())
        })
        .collect()
}
