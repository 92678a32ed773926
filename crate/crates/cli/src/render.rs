//! SVG drawing of an instance and its solution. Needs coordinates.

use std::fmt::Write as _;

use ncsp_core::{Dart, PlanarEmbedding, Solution};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

pub fn render_svg(emb: &PlanarEmbedding, coords: &[(f64, f64)], sol: Option<&Solution>) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in coords {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // y grows downwards in SVG.
    let at = |v: u32| {
        let (x, y) = coords[v as usize];
        (MARGIN + (x - x0) * scale, MARGIN + (y1 - y) * scale)
    };
    let stroke = (scale / 12.0).clamp(0.5, 6.0);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    out.push_str("<g id=\"edges\" stroke=\"#cccccc\">\n");
    for e in 0..emb.num_edges() {
        let d = Dart(2 * e as u32);
        line(&mut out, at(emb.tail(d)), at(emb.head(d)), stroke * 0.5);
    }
    out.push_str("</g>\n<g id=\"boundary\" stroke=\"#333333\">\n");
    for &d in emb.outer_darts() {
        line(&mut out, at(emb.tail(d)), at(emb.head(d)), stroke);
    }
    out.push_str("</g>\n");

    if let Some(sol) = sol {
        out.push_str("<g id=\"union\" stroke=\"#000000\" stroke-opacity=\"0.35\">\n");
        for d in sol.union.y_darts() {
            line(&mut out, at(emb.tail(d)), at(emb.head(d)), stroke * 3.0);
        }
        out.push_str("</g>\n<g id=\"paths\" fill=\"none\" stroke-linejoin=\"round\">\n");
        for (i, path) in sol.paths.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let s = sol.instance.pair(i).s;
            let (x, y) = at(s);
            let _ = write!(out, r#"<polyline data-pair="{}" stroke="{color}" stroke-width="{:.2}" points="{x:.2},{y:.2}"#, i + 1, stroke * 1.5);
            for &d in path {
                let (x, y) = at(emb.head(d));
                let _ = write!(out, " {x:.2},{y:.2}");
            }
            out.push_str("\"/>\n");
        }
        out.push_str("</g>\n<g id=\"terminals\">\n");
        for (i, p) in sol.instance.pairs().iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            for (v, tag) in [(p.s, 's'), (p.t, 't')] {
                let (x, y) = at(v);
                let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="{color}"/>"#, stroke * 2.5);
                let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{tag}{}</text>"#, x + 6.0, y - 6.0, i + 1);
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), width: f64) {
    let _ = writeln!(out, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke-width="{width:.2}"/>"#, a.0, a.1, b.0, b.1);
}
