//! Finite subdivision rules.
//!
//! A rule assigns each tile type a model polygon (its boundary edge types,
//! listed counterclockwise from the base corner) and a pattern complex that
//! replaces it. Each edge type subdivides the same way wherever it occurs,
//! which is what lets neighbouring tiles be subdivided independently and
//! glued back together.

mod growth;
mod subdivide;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::complex::io::ComplexDoc;
use crate::complex::{Complex2D, EdgeId, VertexId};
use crate::error::{Error, Result};

pub use growth::{classify_growth, Growth, GrowthClass};
pub use subdivide::{subdivide, subdivide_detailed, subdivide_n, subdivide_quad, subdivide_ring, Subdivision};

/// Edge type used when a rule file omits `edge_types`.
pub const DEFAULT_EDGE_TYPE: &str = "e";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeTypeDoc {
    pub splits_into: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<String>>,
    pub pattern: ComplexDoc,
    pub boundary_map: Vec<Vec<usize>>,
    /// Model corner that lands on a face's first vertex.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub base_corner: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edge_types: BTreeMap<String, EdgeTypeDoc>,
    pub tile_types: BTreeMap<String, TileDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum VertexRole {
    Corner(usize),
    /// (model edge, position along it counted from its start corner)
    OnEdge(usize, usize),
    Interior(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EdgeRole {
    Segment(usize, usize),
    Interior(usize),
}

#[derive(Clone, Debug)]
pub struct TilePattern {
    pub name: String,
    pub boundary: Vec<String>,
    pub pattern: Complex2D,
    pub boundary_map: Vec<Vec<EdgeId>>,
    pub base_corner: usize,
    pub(crate) vertex_roles: Vec<VertexRole>,
    pub(crate) edge_roles: Vec<EdgeRole>,
    pub(crate) n_interior_vertices: usize,
    pub(crate) n_interior_edges: usize,
}

impl TilePattern {
    pub fn sides(&self) -> usize {
        self.boundary.len()
    }
}

#[derive(Clone, Debug)]
pub struct SubdivisionRule {
    pub name: String,
    pub edge_types: BTreeMap<String, Vec<String>>,
    pub tiles: BTreeMap<String, TilePattern>,
}

impl SubdivisionRule {
    pub fn from_doc(doc: &RuleDoc) -> Result<Self> {
        let mut edge_types: BTreeMap<String, Vec<String>> =
            doc.edge_types.iter().map(|(k, v)| (k.clone(), v.splits_into.clone())).collect();
        if edge_types.is_empty() {
            edge_types.insert(DEFAULT_EDGE_TYPE.into(), vec![DEFAULT_EDGE_TYPE.into(); 2]);
        }
        for subs in edge_types.values() {
            if subs.is_empty() {
                return Err(Error::EdgeMismatch("edge type splits into nothing".into()));
            }
            for s in subs {
                if !edge_types.contains_key(s) {
                    return Err(Error::UnknownEdgeType(s.clone()));
                }
            }
        }
        let mut tiles = BTreeMap::new();
        for (name, tile) in &doc.tile_types {
            let boundary = tile
                .boundary
                .clone()
                .unwrap_or_else(|| vec![DEFAULT_EDGE_TYPE.into(); tile.boundary_map.len()]);
            for t in &boundary {
                if !edge_types.contains_key(t) {
                    return Err(Error::UnknownEdgeType(t.clone()));
                }
            }
            let pattern = tile.pattern.to_complex().map_err(|_| Error::NotADisk(name.clone()))?;
            tiles.insert(
                name.clone(),
                TilePattern::build(name, boundary, pattern, &tile.boundary_map, tile.base_corner, &edge_types)?,
            );
        }
        let rule = SubdivisionRule { name: doc.name.clone(), edge_types, tiles };
        rule.check_closure()?;
        Ok(rule)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RuleDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    /// Tile types used inside patterns must exist and agree with the edge
    /// types produced along the model boundary.
    fn check_closure(&self) -> Result<()> {
        for tile in self.tiles.values() {
            let p = &tile.pattern;
            let types = p
                .tile_types()
                .ok_or_else(|| Error::UnknownTileType(format!("<unlabeled face in {}>", tile.name)))?;
            // edge type seen by each pattern face on each of its edges
            let mut seen: Vec<Option<&str>> = vec![None; p.n_edges()];
            for (f, tname) in types.iter().enumerate() {
                let child = self.tiles.get(tname).ok_or_else(|| Error::UnknownTileType(tname.clone()))?;
                let face = p.face(f);
                if face.len() != child.sides() {
                    return Err(Error::EdgeMismatch(format!(
                        "face {f} of pattern {} has {} sides but tile type {tname} has {}",
                        tile.name,
                        face.len(),
                        child.sides()
                    )));
                }
                for (j, &e) in face.edges.iter().enumerate() {
                    let t = child.boundary[(j + child.base_corner) % child.sides()].as_str();
                    match seen[e] {
                        Some(prev) if prev != t => {
                            return Err(Error::EdgeMismatch(format!(
                                "pattern {} edge {e} has types {prev} and {t}",
                                tile.name
                            )))
                        }
                        _ => seen[e] = Some(t),
                    }
                }
            }
            for (e, role) in tile.edge_roles.iter().enumerate() {
                if let EdgeRole::Segment(i, q) = role {
                    let produced = &self.edge_types[&tile.boundary[*i]][*q];
                    if seen[e] != Some(produced.as_str()) {
                        return Err(Error::EdgeMismatch(format!(
                            "pattern {} edge {e} should have type {produced}",
                            tile.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_doc(&self) -> RuleDoc {
        RuleDoc {
            name: self.name.clone(),
            edge_types: self
                .edge_types
                .iter()
                .map(|(k, v)| (k.clone(), EdgeTypeDoc { splits_into: v.clone() }))
                .collect(),
            tile_types: self
                .tiles
                .iter()
                .map(|(k, t)| {
                    (
                        k.clone(),
                        TileDoc {
                            boundary: Some(t.boundary.clone()),
                            pattern: ComplexDoc::from_complex(&t.pattern),
                            boundary_map: t.boundary_map.clone(),
                            base_corner: t.base_corner,
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("rule documents always serialize")
    }

    pub fn splits(&self, edge_type: &str) -> usize {
        self.edge_types[edge_type].len()
    }

    /// Tile type to use for a face with `sides` sides and an optional label.
    pub(crate) fn tile_for(&self, label: Option<&str>, sides: usize) -> Option<&TilePattern> {
        match label {
            Some(l) => self.tiles.get(l).filter(|t| t.sides() == sides),
            None => {
                let mut it = self.tiles.values().filter(|t| t.sides() == sides);
                let first = it.next()?;
                if it.next().is_some() {
                    None
                } else {
                    Some(first)
                }
            }
        }
    }
}

impl TilePattern {
    fn build(
        name: &str,
        boundary: Vec<String>,
        mut pattern: Complex2D,
        boundary_map: &[Vec<usize>],
        base_corner: usize,
        edge_types: &BTreeMap<String, Vec<String>>,
    ) -> Result<Self> {
        let k = boundary.len();
        if k < 3 || boundary_map.len() != k || base_corner >= k {
            return Err(Error::EdgeMismatch(format!(
                "tile {name}: {k} boundary types, {} boundary_map entries, base corner {base_corner}",
                boundary_map.len()
            )));
        }
        if pattern.euler_characteristic() != 1 || pattern.boundary_cycles().is_none_or(|c| c.len() != 1) {
            return Err(Error::NotADisk(name.into()));
        }
        let mut covered = BTreeSet::new();
        for (i, path) in boundary_map.iter().enumerate() {
            let want = edge_types[&boundary[i]].len();
            if path.len() != want {
                return Err(Error::EdgeMismatch(format!(
                    "tile {name}: model edge {i} of type {} maps to {} pattern edges, the type splits into {want}",
                    boundary[i],
                    path.len()
                )));
            }
            for &e in path {
                if e >= pattern.n_edges() || !pattern.is_boundary_edge(e) || !covered.insert(e) {
                    return Err(Error::EdgeMismatch(format!("tile {name}: bad boundary_map edge {e}")));
                }
            }
        }
        if covered.len() != (0..pattern.n_edges()).filter(|&e| pattern.is_boundary_edge(e)).count() {
            return Err(Error::EdgeMismatch(format!("tile {name}: boundary_map misses boundary edges")));
        }
        let chains: Vec<Vec<VertexId>> = boundary_map
            .iter()
            .map(|path| chain_vertices(&pattern, path))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::EdgeMismatch(format!("tile {name}: a boundary_map entry is not a path")))?;
        // corner i is the endpoint shared by chains i-1 and i
        let mut oriented: Vec<Vec<VertexId>> = Vec::with_capacity(k);
        for i in 0..k {
            let prev = &chains[(i + k - 1) % k];
            let cur = &chains[i];
            let prev_ends = [prev[0], *prev.last().unwrap()];
            let c = if prev_ends.contains(&cur[0]) {
                cur.clone()
            } else if prev_ends.contains(cur.last().unwrap()) {
                cur.iter().rev().copied().collect()
            } else {
                return Err(Error::EdgeMismatch(format!("tile {name}: model edges {i} and its predecessor do not meet")));
            };
            oriented.push(c);
        }
        for i in 0..k {
            if oriented[i].last() != oriented[(i + 1) % k].first() {
                return Err(Error::EdgeMismatch(format!("tile {name}: boundary_map is not a closed loop")));
            }
        }
        // pattern faces must run along model edge 0 from corner 0 onwards
        let e0 = boundary_map[0][0];
        let f0 = pattern.edge_faces(e0)[0];
        let pos = pattern.face(f0).edge_position(e0).unwrap();
        let from = pattern.face(f0).vertices[pos];
        if from != oriented[0][0] {
            pattern = pattern.reversed();
        }
        let mut vertex_roles = vec![None; pattern.n_vertices()];
        let mut edge_roles = vec![None; pattern.n_edges()];
        let mut oriented_map = Vec::with_capacity(k);
        for i in 0..k {
            let chain = &oriented[i];
            vertex_roles[chain[0]] = Some(VertexRole::Corner(i));
            for (q, &v) in chain[1..chain.len() - 1].iter().enumerate() {
                vertex_roles[v] = Some(VertexRole::OnEdge(i, q));
            }
            let mut segs = Vec::with_capacity(chain.len() - 1);
            for (q, w) in chain.windows(2).enumerate() {
                let e = boundary_map[i]
                    .iter()
                    .copied()
                    .find(|&e| {
                        let [a, b] = pattern.edge(e);
                        (a == w[0] && b == w[1]) || (a == w[1] && b == w[0])
                    })
                    .unwrap();
                edge_roles[e] = Some(EdgeRole::Segment(i, q));
                segs.push(e);
            }
            oriented_map.push(segs);
        }
        let mut n_interior_vertices = 0;
        let vertex_roles = vertex_roles
            .into_iter()
            .map(|r| {
                r.unwrap_or_else(|| {
                    n_interior_vertices += 1;
                    VertexRole::Interior(n_interior_vertices - 1)
                })
            })
            .collect();
        let mut n_interior_edges = 0;
        let edge_roles = edge_roles
            .into_iter()
            .map(|r| {
                r.unwrap_or_else(|| {
                    n_interior_edges += 1;
                    EdgeRole::Interior(n_interior_edges - 1)
                })
            })
            .collect();
        Ok(TilePattern {
            name: name.into(),
            boundary,
            pattern,
            boundary_map: oriented_map,
            base_corner,
            vertex_roles,
            edge_roles,
            n_interior_vertices,
            n_interior_edges,
        })
    }
}

/// Vertices of an edge path in order, or `None` if the edges do not form
/// a simple path.
fn chain_vertices(c: &Complex2D, path: &[EdgeId]) -> Option<Vec<VertexId>> {
    let first = c.edge(path[0]);
    if path.len() == 1 {
        return Some(first.to_vec());
    }
    let second = c.edge(path[1]);
    let start = if second.contains(&first[1]) { first[0] } else { first[1] };
    let mut out = vec![start];
    let mut cur = start;
    for &e in path {
        let [a, b] = c.edge(e);
        cur = if a == cur {
            b
        } else if b == cur {
            a
        } else {
            return None;
        };
        if out.contains(&cur) {
            return None;
        }
        out.push(cur);
    }
    Some(out)
}

fn triangle_rule(name: &str, n_vertices: usize, edges: &[[i64; 2]], faces: &[[i64; 3]], boundary_map: [[usize; 2]; 3]) -> RuleDoc {
    let doc = json!({
        "name": name,
        "edge_types": { DEFAULT_EDGE_TYPE: { "splits_into": [DEFAULT_EDGE_TYPE, DEFAULT_EDGE_TYPE] } },
        "tile_types": {
            "tri": {
                "boundary": [DEFAULT_EDGE_TYPE, DEFAULT_EDGE_TYPE, DEFAULT_EDGE_TYPE],
                "pattern": {
                    "vertices": (0..n_vertices as i64).collect::<Vec<_>>(),
                    "edges": edges,
                    "faces": faces,
                    "tile_types": vec!["tri"; faces.len()],
                },
                "boundary_map": boundary_map,
            }
        }
    });
    serde_json::from_value(doc).expect("built-in rule documents are well formed")
}

/// Barycentric subdivision: each triangle becomes six, coned from its
/// barycenter over the halved boundary.
pub fn builtin_barycentric() -> SubdivisionRule {
    // corners 0,1,2; midpoints 3 (0-1), 4 (1-2), 5 (2-0); barycenter 6
    let edges = [[0, 3], [3, 1], [1, 4], [4, 2], [2, 5], [5, 0], [6, 0], [6, 3], [6, 1], [6, 4], [6, 2], [6, 5]];
    // signed, 1-based
    let faces = [[1, -8, 7], [2, -9, 8], [3, -10, 9], [4, -11, 10], [5, -12, 11], [6, -7, 12]];
    let doc = triangle_rule("barycentric", 7, &edges, &faces, [[0, 1], [2, 3], [4, 5]]);
    SubdivisionRule::from_doc(&doc).expect("built-in barycentric rule is valid")
}

/// Hexagonal refinement: each triangle becomes four by joining edge
/// midpoints.
pub fn builtin_hexagonal() -> SubdivisionRule {
    // corners 0,1,2; midpoints 3 (0-1), 4 (1-2), 5 (2-0)
    let edges = [[0, 3], [3, 1], [1, 4], [4, 2], [2, 5], [5, 0], [3, 4], [4, 5], [5, 3]];
    let faces = [[1, -9, 6], [2, 3, -7], [-8, 4, 5], [7, 8, 9]];
    let doc = triangle_rule("hexagonal", 6, &edges, &faces, [[0, 1], [2, 3], [4, 5]]);
    SubdivisionRule::from_doc(&doc).expect("built-in hexagonal rule is valid")
}

pub const BUILTIN_RULES: [&str; 2] = ["barycentric", "hexagonal"];

pub fn builtin(name: &str) -> Result<SubdivisionRule> {
    match name {
        "barycentric" => Ok(builtin_barycentric()),
        "hexagonal" => Ok(builtin_hexagonal()),
        other => Err(Error::UnknownRule(other.into())),
    }
}

#[cfg(test)]
mod tests;
