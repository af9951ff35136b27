use std::fmt::Write;

use serde::Serialize;

use super::{triangle_from_tangency, GeometryError, NamedTriangle, Point, TrianglePoints};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledPoint {
    pub label: Point,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure {
    pub name: String,
    pub points: Vec<LabeledPoint>,
    pub highlighted: Vec<[Point; 3]>,
    #[serde(skip)]
    pub svg: String,
}

/// Rounds to the decimal grid matching `precision`, so repeated runs print
/// the same digits.
fn quantize(v: f64, digits: usize) -> f64 {
    let s = format!("{v:.digits$}");
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Coordinates of all existing points, each enclosed to `precision` and
/// rounded to that many decimals, with an SVG drawing of the incircle, the
/// triangle and its highlighted bisectral triangles.
pub fn figure_coordinates(name: NamedTriangle, precision: f64) -> Result<Figure, GeometryError> {
    let tp = triangle_from_tangency(&name.tangency())?;
    Ok(figure_for(&tp, name.name(), name.highlighted(), precision))
}

/// [`figure_coordinates`] for any configuration.
pub fn figure_for(tp: &TrianglePoints, name: &str, highlighted: Vec<[Point; 3]>, precision: f64) -> Figure {
    let precision = precision.clamp(1e-15, 1e-1);
    let digits = (-precision.log10()).ceil() as usize;
    let mut points = Vec::new();
    for label in Point::ALL {
        if let Some(p) = tp.get(label) {
            let (x, y) = p.embed_numeric(precision / 4.0).center();
            points.push(LabeledPoint { label, x: quantize(x, digits), y: quantize(y, digits) });
        }
    }
    let svg = render_svg(name, &points, &highlighted);
    Figure { name: name.into(), points, highlighted, svg }
}

fn render_svg(name: &str, points: &[LabeledPoint], highlighted: &[[Point; 3]]) -> String {
    let at = |l: Point| points.iter().find(|p| p.label == l).map(|p| (p.x, -p.y));
    let path = |tri: &[Point; 3]| -> Option<String> {
        let mut d = String::new();
        for (i, &l) in tri.iter().enumerate() {
            let (x, y) = at(l)?;
            write!(d, "{}{x:.6} {y:.6} ", if i == 0 { "M" } else { "L" }).ok()?;
        }
        d.push('Z');
        Some(d)
    };
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2.5 -2.5 5 5\" width=\"500\" height=\"500\">\n");
    writeln!(s, "  <title>{name}</title>").unwrap();
    s.push_str("  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.01\"/>\n");
    if let Some(d) = path(&[Point::A, Point::B, Point::C]) {
        writeln!(s, "  <path d=\"{d}\" fill=\"none\" stroke=\"#000\" stroke-width=\"0.02\"/>").unwrap();
    }
    for tri in highlighted {
        if let Some(d) = path(tri) {
            writeln!(s, "  <path d=\"{d}\" fill=\"none\" stroke=\"#c33\" stroke-width=\"0.015\"/>").unwrap();
        }
    }
    for p in points {
        let (x, y) = (p.x, -p.y);
        writeln!(s, "  <circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.03\" fill=\"#000\"/>").unwrap();
        writeln!(
            s,
            "  <text x=\"{:.6}\" y=\"{:.6}\" font-size=\"0.15\">{}</text>",
            x + 0.05,
            y - 0.05,
            p.label
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
