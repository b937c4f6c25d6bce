use serde::{Deserialize, Serialize};

use super::Diagram;
use crate::error::{Error, Result};

/// Side of an oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Faces of a diagram, one connected piece at a time.
///
/// Each face is the cyclic list of (edge, side) pairs bounding it, in the
/// order met when walking the boundary with the face on the left.
#[derive(Clone, Debug)]
pub struct FaceMap {
    faces: Vec<Vec<(usize, Side)>>,
    face_of: Vec<[usize; 2]>,
    piece_of_face: Vec<usize>,
    pieces: Vec<Vec<usize>>,
    piece_of_comp: Vec<usize>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl FaceMap {
    pub(super) fn new(d: &Diagram) -> FaceMap {
        let ne = d.num_edges();
        let slots = d.pd_slots();
        let pieces = d.pieces();
        let mut piece_of_comp = vec![0; d.num_components()];
        for (p, comps) in pieces.iter().enumerate() {
            for &i in comps {
                piece_of_comp[i] = p;
            }
        }
        let off = d.edge_offsets();
        let mut edge_comp = vec![0; ne];
        for i in 0..d.num_components() {
            for e in off[i]..off[i + 1] {
                edge_comp[e] = i;
            }
        }

        // Head and tail slot of every edge.
        let mut head = vec![(usize::MAX, 0usize); ne];
        let mut tail = vec![(usize::MAX, 0usize); ne];
        for (c, s) in slots.iter().enumerate() {
            let incoming = if d.sign(c) > 0 { [0, 3] } else { [0, 1] };
            for k in 0..4 {
                if incoming.contains(&k) {
                    head[s[k]] = (c, k);
                } else {
                    tail[s[k]] = (c, k);
                }
            }
        }

        let mut faces = Vec::new();
        let mut piece_of_face = Vec::new();
        let mut face_of = vec![[usize::MAX; 2]; ne];
        for e0 in 0..ne {
            for side0 in [Side::Left, Side::Right] {
                if face_of[e0][side0.index()] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut e, mut side) = (e0, side0);
                loop {
                    face_of[e][side.index()] = id;
                    boundary.push((e, side));
                    if head[e].0 == usize::MAX {
                        // Crossing-free component: a single loop edge.
                        break;
                    }
                    let (c, s) = if side == Side::Left { head[e] } else { tail[e] };
                    let s2 = (s + 3) % 4;
                    let e2 = slots[c][s2];
                    let leaving_backward = head[e2] == (c, s2);
                    e = e2;
                    side = if leaving_backward { Side::Right } else { Side::Left };
                    if e == e0 && side == side0 {
                        break;
                    }
                }
                faces.push(boundary);
                piece_of_face.push(piece_of_comp[edge_comp[e0]]);
            }
        }

        let mut vertices = vec![0; pieces.len()];
        let mut edges = vec![0; pieces.len()];
        for pl in d.places() {
            vertices[piece_of_comp[pl.over.0]] += 1;
        }
        for (p, comps) in pieces.iter().enumerate() {
            for &i in comps {
                edges[p] += d.comp_edges(i);
            }
            if vertices[p] == 0 {
                // A crossing-free circle is one loop at one vertex.
                vertices[p] = 1;
            }
        }

        FaceMap { faces, face_of, piece_of_face, pieces, piece_of_comp, vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, f: usize) -> &[(usize, Side)] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<(usize, Side)>] {
        &self.faces
    }

    /// Face on the given side of edge `e`.
    pub fn face_of(&self, e: usize, side: Side) -> Result<usize> {
        self.face_of.get(e).map(|f| f[side.index()]).ok_or(Error::UnknownEdge(e))
    }

    pub fn piece_of_face(&self, f: usize) -> usize {
        self.piece_of_face[f]
    }

    pub fn piece_of_component(&self, i: usize) -> usize {
        self.piece_of_comp[i]
    }

    pub fn pieces(&self) -> &[Vec<usize>] {
        &self.pieces
    }

    /// Checks V - E + F = 2 for every connected piece.
    pub fn check_euler(&self) -> Result<()> {
        for p in 0..self.pieces.len() {
            let f = self.piece_of_face.iter().filter(|&&q| q == p).count();
            let chi = self.vertices[p] as i64 - self.edges[p] as i64 + f as i64;
            if chi != 2 {
                return Err(Error::Topology(format!(
                    "diagram piece with components {:?} is not planar (V-E+F = {chi})",
                    self.pieces[p]
                )));
            }
        }
        Ok(())
    }

    /// Euler characteristic V - E + F of each piece.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        (0..self.pieces.len())
            .map(|p| {
                let f = self.piece_of_face.iter().filter(|&&q| q == p).count();
                self.vertices[p] as i64 - self.edges[p] as i64 + f as i64
            })
            .collect()
    }
}
