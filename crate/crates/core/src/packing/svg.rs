use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::Packing;
use crate::error::Result;

const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum ColorBy {
    #[default]
    None,
    /// Tile type of the first face at each vertex.
    Type,
    /// Given stage of each vertex.
    Stage(Vec<usize>),
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// SVG of the packing on the unit disk, one `circle` per vertex.
pub fn render_svg(p: &Packing, color: &ColorBy) -> String {
    let c = &p.complex;
    let types: Vec<&str> = c.tile_types().into_iter().flatten().map(String::as_str).collect::<BTreeSet<_>>().into_iter().collect();
    let fill = |v: usize| -> &str {
        let i = match color {
            ColorBy::None => return "none",
            ColorBy::Type => match c.vertex_faces(v).first().and_then(|&f| c.tile_type(f)) {
                Some(t) => types.iter().position(|x| *x == t).unwrap(),
                None => return "none",
            },
            ColorBy::Stage(s) => s.get(v).copied().unwrap_or(0),
        };
        PALETTE[i % PALETTE.len()]
    };
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 -1 2 2\">\n");
    out.push_str("<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.002\"/>\n");
    for v in 0..c.n_vertices() {
        let [x, y] = p.centers[v];
        writeln!(
            out,
            "<circle data-vertex=\"{v}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"0.001\"/>",
            num(x),
            num(-y),
            num(p.radii[v]),
            fill(v)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(p: &Packing, color: &ColorBy, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, render_svg(p, color))?;
    Ok(())
}
