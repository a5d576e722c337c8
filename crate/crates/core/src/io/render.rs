use std::fmt::Write;
use std::str::FromStr;

use super::WeaveDocument;

const CELL: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Ascii,
    Svg,
}

impl FromStr for RenderStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ascii" => Ok(RenderStyle::Ascii),
            "svg" => Ok(RenderStyle::Svg),
            other => Err(format!("unknown render style {other:?} (ascii, svg)")),
        }
    }
}

/// Draws the diagram as a tiling: black where the warp is above.
///
/// ASCII uses `#` for 1 and `.` for 0, one line per warp, no trailing
/// newline. SVG draws an `m x n` grid of unit squares and a dashed frame
/// marking the torus fundamental domain.
pub fn render(doc: &WeaveDocument, style: RenderStyle) -> String {
    match style {
        RenderStyle::Ascii => ascii(doc),
        RenderStyle::Svg => svg(doc),
    }
}

fn ascii(doc: &WeaveDocument) -> String {
    let m = &doc.matrix;
    (0..m.m())
        .map(|i| {
            (0..m.n())
                .map(|j| if m.get(i, j) { '#' } else { '.' })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn svg(doc: &WeaveDocument) -> String {
    let m = &doc.matrix;
    let (w, h) = (m.n() * CELL, m.m() * CELL);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "<title>{}</title>", escape(name));
    }
    for i in 0..m.m() {
        for j in 0..m.n() {
            let fill = if m.get(i, j) { "black" } else { "white" };
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\"/>",
                j * CELL,
                i * CELL
            );
        }
    }
    let _ = writeln!(
        out,
        "<rect class=\"torus-frame\" x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"red\" stroke-dasharray=\"4 2\"/>"
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
