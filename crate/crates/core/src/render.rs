//! Text and SVG pictures of lattice paths.

use std::fmt::Write;

use crate::path::{LatticePath, Step};

/// Draws the path on a character grid, top row first. An NE step from
/// height `h` is a `/` in row `h`, an SE step down to `h` is a `\` in row
/// `h`, and an E step is a `_` in row 0.
pub fn render_ascii(path: &LatticePath) -> String {
    let heights = path.heights();
    let rows = path
        .steps
        .iter()
        .zip(&heights)
        .map(|(s, &h)| match s {
            Step::NE => h,
            Step::SE => h - 1,
            Step::E => 0,
        })
        .max()
        .map_or(0, |m| m as usize + 1);
    let mut grid = vec![vec![' '; path.steps.len()]; rows];
    for (x, (s, &h)) in path.steps.iter().zip(&heights).enumerate() {
        let row = match s {
            Step::NE => h,
            Step::SE => h - 1,
            Step::E => 0,
        } as usize;
        grid[row][x] = s.symbol();
    }
    grid.iter()
        .rev()
        .map(|r| r.iter().collect::<String>().trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

/// One line per peak: weight, height and relative height.
pub fn peak_table(path: &LatticePath) -> String {
    path.peaks()
        .iter()
        .map(|p| format!("peak x={} height={} relative={}", p.weight, p.height, p.relative_height))
        .collect::<Vec<_>>()
        .join("\n")
}

const CELL: i64 = 24;
const MARGIN: i64 = 24;

/// A standalone SVG: grid lines, the path, and each peak labelled
/// `weight;relative height`.
pub fn render_svg(path: &LatticePath) -> String {
    let heights = path.heights();
    let width = path.steps.len() as i64;
    let top = heights.iter().copied().max().unwrap_or(0).max(1);
    let px = |x: i64| MARGIN + x * CELL;
    let py = |y: i64| MARGIN + (top - y) * CELL;
    let mut s = String::new();
    let (w, h) = (2 * MARGIN + width * CELL, 2 * MARGIN + top * CELL);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"  <g stroke="lightgray" stroke-width="1">"#);
    for y in 0..=top {
        let _ = writeln!(s, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(0), py(y), px(width), py(y));
    }
    for x in 0..=width {
        let _ = writeln!(s, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(x), py(0), px(x), py(top));
    }
    let _ = writeln!(s, "  </g>");
    let points: Vec<String> = heights
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{},{}", px(x as i64), py(y)))
        .collect();
    let _ = writeln!(
        s,
        r#"  <polyline fill="none" stroke="black" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    for p in path.peaks() {
        let (cx, cy) = (px(i64::from(p.weight)), py(i64::from(p.height)));
        let _ = writeln!(s, r#"  <circle cx="{cx}" cy="{cy}" r="3" fill="crimson"/>"#);
        let _ = writeln!(
            s,
            r#"  <text x="{cx}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{};{}</text>"#,
            cy - 8,
            p.weight,
            p.relative_height
        );
    }
    s.push_str("</svg>\n");
    s
}
