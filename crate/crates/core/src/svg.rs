//! Plain SVG 1.1 output of the depth-`n` tiling.
//!
//! One `<polygon>` per tile in canonical word order, so identical inputs give
//! byte-identical files. Each polygon carries the class `up` or `down`, and
//! highlighted tiles additionally `highlight-plus` or `highlight-minus`.

use std::fmt::Write as _;

use crate::basis::Word;
use crate::error::Result;
use crate::geometry::{initial_triangle, TriTile, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Highlight {
    None,
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct SvgOptions {
    pub r0: f64,
    pub labels: bool,
    pub letters: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            r0: crate::geometry::DEFAULT_R0,
            labels: false,
            letters: false,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".to_string()
    } else {
        s
    }
}

fn points(poly: &[Vec2; 3]) -> String {
    // SVG's y axis points down
    poly.iter()
        .map(|v| format!("{},{}", num(v.x), num(-v.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

const STYLE: &str = "polygon { stroke: #333; stroke-width: 0.2%; }\n\
    .up { fill: #f4f4f4; }\n\
    .down { fill: #d8d8d8; }\n\
    .highlight-plus { fill: #e8a33d; }\n\
    .highlight-minus { fill: #3d7be8; }\n\
    text { font-family: monospace; text-anchor: middle; dominant-baseline: central; }";

/// Renders every tile of order `n`; `highlight` picks the extra class.
pub fn render_tiling(
    n: usize,
    opts: &SvgOptions,
    highlight: impl Fn(Word) -> Highlight,
) -> Result<String> {
    let outer = initial_triangle(opts.r0)?;
    let margin = opts.r0 * 1.05;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("string write");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(-margin),
        num(-margin),
        num(2.0 * margin),
        num(2.0 * margin)
    )
    .expect("string write");
    writeln!(out, "<style>\n{STYLE}\n</style>").expect("string write");
    writeln!(
        out,
        r#"<polygon class="outline" fill="none" points="{}"/>"#,
        points(&outer)
    )
    .expect("string write");
    let mut labels = String::new();
    for word in Word::all(n)? {
        let tile = TriTile::new(word, opts.r0)?;
        let mut class = String::from(if tile.upward { "up" } else { "down" });
        match highlight(word) {
            Highlight::Plus => class.push_str(" highlight-plus"),
            Highlight::Minus => class.push_str(" highlight-minus"),
            Highlight::None => {}
        }
        writeln!(
            out,
            r#"<polygon class="{class}" data-word="{word}" points="{}"/>"#,
            points(&tile.polygon())
        )
        .expect("string write");
        if opts.labels {
            let text = if opts.letters {
                word.to_letters()
            } else {
                word.to_string()
            };
            let size = tile.circumradius() * 0.9 / n as f64;
            writeln!(
                labels,
                r#"<text x="{}" y="{}" font-size="{}">{text}</text>"#,
                num(tile.centroid.x),
                num(-tile.centroid.y),
                num(size)
            )
            .expect("string write");
        }
    }
    out.push_str(&labels);
    out.push_str("</svg>\n");
    Ok(out)
}
