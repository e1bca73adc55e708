use std::collections::VecDeque;

use super::{Complex2D, FaceId};

/// Isomorphism-invariant encoding of an edge-connected complex, optionally
/// decorated with per-face and per-edge labels. Reflections are allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u64>);

const BOUNDARY: u64 = u64::MAX;

impl Complex2D {
    /// `None` when the faces are not connected through shared edges.
    pub fn canonical_form(&self) -> Option<CanonicalForm> {
        self.canonical_form_labeled(None, None)
    }

    pub fn canonical_form_labeled(
        &self,
        face_labels: Option<&[u64]>,
        edge_labels: Option<&[u64]>,
    ) -> Option<CanonicalForm> {
        let mut best: Option<Vec<u64>> = None;
        for f0 in 0..self.n_faces() {
            for s0 in 0..self.face(f0).len() {
                for reverse in [false, true] {
                    let code = self.encode_from(f0, s0, reverse, face_labels, edge_labels)?;
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        Some(CanonicalForm(best.unwrap_or_default()))
    }

    fn encode_from(
        &self,
        f0: FaceId,
        s0: usize,
        reverse: bool,
        face_labels: Option<&[u64]>,
        edge_labels: Option<&[u64]>,
    ) -> Option<Vec<u64>> {
        let nf = self.n_faces();
        let mut face_label = vec![u64::MAX; nf];
        let mut face_start = vec![0usize; nf];
        let mut vert_label = vec![u64::MAX; self.n_vertices()];
        let mut next_face = 0u64;
        let mut next_vert = 0u64;
        let mut code = Vec::new();
        face_label[f0] = 0;
        face_start[f0] = s0;
        next_face += 1;
        let mut queue = VecDeque::from([f0]);
        while let Some(f) = queue.pop_front() {
            let face = self.face(f);
            let k = face.len();
            code.push(k as u64);
            code.push(face_labels.map_or(0, |l| l[f]));
            for step in 0..k {
                let j = if reverse { (face_start[f] + k - step) % k } else { (face_start[f] + step) % k };
                let v = face.vertices[j];
                if vert_label[v] == u64::MAX {
                    vert_label[v] = next_vert;
                    next_vert += 1;
                }
                code.push(vert_label[v]);
                // edge leaving corner j in traversal direction
                let ei = if reverse { (j + k - 1) % k } else { j };
                let e = face.edges[ei];
                code.push(edge_labels.map_or(0, |l| l[e]));
                let other = self.edge_faces(e).iter().copied().find(|&g| g != f);
                match other {
                    None => code.push(BOUNDARY),
                    Some(g) => {
                        if face_label[g] == u64::MAX {
                            face_label[g] = next_face;
                            next_face += 1;
                            let gf = self.face(g);
                            let p = gf.edge_position(e).unwrap();
                            // enter g at the corner where this edge meets v
                            face_start[g] = if gf.vertices[p] == v { p } else { (p + 1) % gf.len() };
                            queue.push_back(g);
                        }
                        code.push(face_label[g]);
                    }
                }
            }
        }
        if next_face as usize != nf {
            return None;
        }
        Some(code)
    }
}
