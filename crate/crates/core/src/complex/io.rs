//! JSON interchange for complexes.
//!
//! ```json
//! { "vertices": [0, 1, 2],
//!   "edges": [[0, 1], [1, 2], [2, 0]],
//!   "faces": [[1, 2, 3]],
//!   "tile_types": ["tri"],
//!   "markings": { "quad": { "top": [0], "bottom": [1], "left": [], "right": [2] } } }
//! ```
//!
//! Face entries are 1-based signed edge indices: `k` runs edge `k - 1`
//! from its first to its second vertex, `-k` runs it backwards. Marking arcs
//! list 0-based edge indices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Complex2D;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub vertices: Vec<i64>,
    pub edges: Vec<[i64; 2]>,
    pub faces: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tile_types: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markings: Option<MarkingDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MarkingDoc {
    Ring { inner: Vec<usize>, outer: Vec<usize> },
    Quad { top: Vec<usize>, bottom: Vec<usize>, left: Vec<usize>, right: Vec<usize> },
}

impl ComplexDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex documents always serialize")
    }

    /// Validates the document into a complex. Vertex ids may be any
    /// distinct integers; they are renumbered by position.
    pub fn to_complex(&self) -> Result<Complex2D> {
        let mut index = HashMap::with_capacity(self.vertices.len());
        for (i, &v) in self.vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let mut pair = [0usize; 2];
            for (slot, &v) in pair.iter_mut().zip(e) {
                *slot = *index.get(&v).ok_or(Error::UnknownEdgeVertex { edge: i, vertex: v })?;
            }
            edges.push(pair);
        }
        let mut faces = Vec::with_capacity(self.faces.len());
        for (fi, f) in self.faces.iter().enumerate() {
            let mut signed = Vec::with_capacity(f.len());
            for &s in f {
                let idx = s.unsigned_abs() as usize;
                if s == 0 || idx > edges.len() {
                    return Err(Error::DanglingEdge { face: fi, edge: s });
                }
                signed.push((idx - 1, s > 0));
            }
            faces.push(signed);
        }
        Complex2D::new(self.vertices.len(), edges, faces, self.tile_types.clone())
    }

    pub fn from_complex(c: &Complex2D) -> Self {
        let faces = c
            .faces()
            .iter()
            .map(|f| {
                f.edges
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| {
                        let k = e as i64 + 1;
                        if c.edge(e)[0] == f.vertices[i] {
                            k
                        } else {
                            -k
                        }
                    })
                    .collect()
            })
            .collect();
        ComplexDoc {
            vertices: (0..c.n_vertices() as i64).collect(),
            edges: c.edges().iter().map(|e| [e[0] as i64, e[1] as i64]).collect(),
            faces,
            tile_types: c.tile_types().map(|t| t.to_vec()),
            markings: None,
        }
    }
}

impl Complex2D {
    pub fn from_json(text: &str) -> Result<Self> {
        ComplexDoc::from_json(text)?.to_complex()
    }

    pub fn to_json(&self) -> String {
        ComplexDoc::from_complex(self).to_json()
    }
}
