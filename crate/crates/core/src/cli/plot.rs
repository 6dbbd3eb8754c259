//! Deterministic SVG rendering of a composition's graph.
//!
//! The graph polyline is drawn in a fixed-size viewport with horizontal
//! gridlines at every bin boundary and the raga's symbols labelling the bin
//! midpoints. Identical input produces identical bytes.

use std::fmt::Write as _;

use crate::error::Result;
use crate::fractal::graph_polyline;
use crate::raga::LevelSequence;

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 40.0;

pub fn render_svg(ls: &LevelSequence) -> Result<String> {
    let points = graph_polyline::<f64>(ls)?;
    let raga = ls.raga();
    let n = raga.n_levels();
    let len = ls.len();
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + x * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - y) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // Horizontal gridlines at the bin boundaries k/n.
    for k in 0..=n {
        let y = py(k as f64 / n as f64);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#cccccc" stroke-width="0.5"/>"##,
            px(0.0),
            px(1.0)
        );
    }
    // Symbol labels at the bin midpoints.
    for k in 0..n {
        let y = py((2 * k + 1) as f64 / (2 * n) as f64);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 8.0,
            y + 4.0,
            raga.symbol(k)
        );
    }
    // Index ticks along the bottom edge.
    for quarter in 0..=4usize {
        let frac = quarter as f64 / 4.0;
        let index = ((len - 1) as f64 * frac).round() as usize;
        let x = px(frac);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333333" stroke-width="1"/>"##,
            py(0.0),
            py(0.0) + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" font-family="monospace" font-size="12" text-anchor="middle">{index}</text>"#,
            py(0.0) + 18.0
        );
    }

    let mut coords = String::new();
    for p in &points {
        let _ = write!(coords, "{:.2},{:.2} ", px(p.x), py(p.y));
    }
    let coords = coords.trim_end();
    let _ = writeln!(
        svg,
        r##"<polyline fill="none" stroke="#1f6fb2" stroke-width="1" points="{coords}"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12">raga {}, {len} notes</text>"#,
        MARGIN_LEFT,
        HEIGHT - 8.0,
        raga.name()
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
