//! Deterministic SVG renderings of the constructions. Output depends only
//! on the inputs: coordinates are formatted with fixed precision and
//! elements are emitted in the canonical component order.

use std::fmt::Write as _;

use crate::rational::Rational;
use crate::rect::RectSet;
use crate::sector::rect_sector;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}

struct Mapper {
    min: f64,
    scale: f64,
}

impl Mapper {
    /// Maps the square [min, max]² to the canvas, flipping y.
    fn new(min: f64, max: f64) -> Self {
        Mapper {
            min,
            scale: (CANVAS - 2.0 * MARGIN) / (max - min),
        }
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.min) * self.scale
    }

    fn y(&self, v: f64) -> f64 {
        CANVAS - MARGIN - (v - self.min) * self.scale
    }
}

fn bounds(set: &RectSet) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in set.parts() {
        lo = lo.min(r.x.0.to_f64()).min(r.y.0.to_f64());
        hi = hi.max(r.x.1.to_f64()).max(r.y.1.to_f64());
    }
    if lo > hi {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

fn header(out: &mut String) {
    out.push_str(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ",
        "width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n",
        "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n",
    ));
}

fn draw_rects(out: &mut String, set: &RectSet, map: &Mapper, fill: &str) {
    for r in set.parts() {
        let x = map.x(r.x.0.to_f64());
        let y = map.y(r.y.1.to_f64());
        let w = (r.x.1.to_f64() - r.x.0.to_f64()) * map.scale;
        let h = (r.y.1.to_f64() - r.y.0.to_f64()) * map.scale;
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"0.5\"/>",
            fmt(x),
            fmt(y),
            fmt(w.max(0.5)),
            fmt(h.max(0.5)),
            fill,
        );
    }
}

fn draw_line_through_origin(out: &mut String, slope: f64, map: &Mapper, reach: f64, color: &str) {
    // clip the line y = slope·x to the data square by its dominant axis
    let (x0, y0, x1, y1) = if slope.abs() <= 1.0 {
        (-reach, -reach * slope, reach, reach * slope)
    } else {
        (-reach / slope, -reach, reach / slope, reach)
    };
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1.5\"/>",
        fmt(map.x(x0)),
        fmt(map.y(y0)),
        fmt(map.x(x1)),
        fmt(map.y(y1)),
        color,
    );
}

/// The layer components with their direction sectors as wedges from the
/// origin, and the test line of the given slope.
pub fn render_ftilde_line(ftilde: &RectSet, slope: &Rational) -> String {
    let (lo, hi) = bounds(ftilde);
    let reach = lo.abs().max(hi.abs());
    let map = Mapper::new(-reach, reach);
    let mut out = String::new();
    header(&mut out);

    // sector wedges first so the components draw on top
    for r in ftilde.parts() {
        if let Ok(s) = rect_sector(r) {
            let norm = |dx: f64, dy: f64| {
                let n = dx.abs().max(dy.abs());
                (dx / n * reach, dy / n * reach)
            };
            use num::ToPrimitive;
            let fd = (
                s.from.dx().to_f64().unwrap_or(0.0),
                s.from.dy().to_f64().unwrap_or(0.0),
            );
            let td = (
                s.to.dx().to_f64().unwrap_or(0.0),
                s.to.dy().to_f64().unwrap_or(0.0),
            );
            let (fx, fy) = norm(fd.0, fd.1);
            let (tx, ty) = norm(td.0, td.1);
            let _ = writeln!(
                out,
                "<path d=\"M {} {} L {} {} L {} {} Z\" fill=\"#cfe8ff\" fill-opacity=\"0.6\"/>",
                fmt(map.x(0.0)),
                fmt(map.y(0.0)),
                fmt(map.x(fx)),
                fmt(map.y(fy)),
                fmt(map.x(tx)),
                fmt(map.y(ty)),
            );
        }
    }
    draw_rects(&mut out, ftilde, &map, "#1f6fb5");
    draw_line_through_origin(&mut out, slope.to_f64(), &map, reach, "#d62728");
    out.push_str("</svg>\n");
    out
}

/// The product grid with one reference line per slope through the origin.
pub fn render_product_band(product: &RectSet, slopes: &[Rational]) -> String {
    let (lo, hi) = bounds(product);
    let map = Mapper::new(lo, hi);
    let mut out = String::new();
    header(&mut out);
    draw_rects(&mut out, product, &map, "#2ca02c");
    let colors = ["#d62728", "#9467bd", "#ff7f0e"];
    for (i, m) in slopes.iter().enumerate() {
        draw_line_through_origin(
            &mut out,
            m.to_f64(),
            &map,
            hi.abs().max(lo.abs()),
            colors[i % colors.len()],
        );
    }
    out.push_str("</svg>\n");
    out
}
