//! Output formats: deterministic JSON, curve CSV and SVG overlays.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::locus::CurveSample;

/// Pretty JSON with every float written to 17 significant digits.
struct FixedFloatFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

macro_rules! delegate {
    ($($name:ident $(, $arg:ident: $ty:ty)*;)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.inner.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl Formatter for FixedFloatFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    delegate! {
        begin_array;
        end_array;
        begin_array_value, first: bool;
        end_array_value;
        begin_object;
        end_object;
        begin_object_key, first: bool;
        begin_object_value;
        end_object_value;
    }
}

/// `value` with 17 significant digits in exponent notation.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serializes to pretty JSON; identical inputs give byte-identical output.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let fmt = FixedFloatFormatter { inner: PrettyFormatter::with_indent(b"  ") };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// CSV with columns `curve,u1,u2`, plus `x1,x2` when `images` is given.
/// `images` must parallel `curves` vertex for vertex.
pub fn curves_to_csv(curves: &[CurveSample], images: Option<&[CurveSample]>) -> String {
    let mut out = String::from(if images.is_some() { "curve,u1,u2,x1,x2\n" } else { "curve,u1,u2\n" });
    for (k, c) in curves.iter().enumerate() {
        for (m, u) in c.vertices.iter().enumerate() {
            let _ = write!(out, "{k},{},{}", format_float(u[0]), format_float(u[1]));
            if let Some(img) = images {
                let x = img[k].vertices[m];
                let _ = write!(out, ",{},{}", format_float(x[0]), format_float(x[1]));
            }
            out.push('\n');
        }
    }
    out
}

const VIEW: f64 = 800.0;
const PAD: f64 = 40.0;

/// Static 800×800 SVG of `curves` with axes and point markers.
pub fn curves_to_svg(curves: &[CurveSample], markers: &[[f64; 2]], title: &str) -> String {
    let all = curves.iter().flat_map(|c| c.vertices.iter()).chain(markers.iter());
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in all {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if !lo[0].is_finite() {
        lo = [-1.0, -1.0];
        hi = [1.0, 1.0];
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let mid = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    let s = (VIEW - 2.0 * PAD) / span;
    let to_px = |p: [f64; 2]| (VIEW / 2.0 + (p[0] - mid[0]) * s, VIEW / 2.0 - (p[1] - mid[1]) * s);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW}" height="{VIEW}" viewBox="0 0 {VIEW} {VIEW}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<title>{}</title>"#, escape(title));
    let (ox, oy) = to_px([0.0, 0.0]);
    let ox = ox.clamp(PAD, VIEW - PAD);
    let oy = oy.clamp(PAD, VIEW - PAD);
    let _ = writeln!(
        svg,
        r##"<g stroke="#999" stroke-width="1"><line x1="{PAD}" y1="{oy:.2}" x2="{}" y2="{oy:.2}"/><line x1="{ox:.2}" y1="{PAD}" x2="{ox:.2}" y2="{}"/></g>"##,
        VIEW - PAD,
        VIEW - PAD
    );
    for c in curves {
        let mut d = String::new();
        for (m, &p) in c.vertices.iter().enumerate() {
            let (x, y) = to_px(p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if m == 0 { "M" } else { "L" });
        }
        if c.closed {
            d.push('Z');
        }
        let _ = writeln!(svg, r##"<path d="{}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##, d.trim_end());
    }
    for &p in markers {
        let (x, y) = to_px(p);
        let _ = writeln!(svg, r##"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="#c0392b"/>"##);
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        let json = to_json(&serde_json::json!({"x": 0.5, "n": 3, "nan": f64::NAN}));
        assert!(json.contains("\"x\": 5.0000000000000000e-1"));
        assert!(json.contains("\"nan\": null"));
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["x"], 0.5);
    }

    #[test]
    fn csv_layout() {
        let c = CurveSample { vertices: vec![[0.0, 1.0], [2.0, 3.0]], residuals: vec![0.0; 2], closed: false };
        let csv = curves_to_csv(std::slice::from_ref(&c), Some(std::slice::from_ref(&c)));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "curve,u1,u2,x1,x2");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("0,2.0000000000000000e0,3.0000000000000000e0,"));
    }

    #[test]
    fn svg_has_one_path_per_curve() {
        let c = CurveSample { vertices: vec![[0.0, 1.0], [2.0, 3.0]], residuals: vec![0.0; 2], closed: true };
        let svg = curves_to_svg(&[c.clone(), c], &[[0.0, 0.0]], "a<b");
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("a&lt;b"));
    }
}
