//! Planar subdivision of a disk by non-crossing separatrices.
//!
//! A face is stored as the cyclic sequence of node visits around it; a
//! node gains one extra visit for every separatrix end attached to it.
//! Inserting a separatrix between two visits of one face splits it;
//! attaching a separatrix to a brand-new interior node extends the face
//! around the pendant edge.

use crate::structure::DiagEnd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub faces: Vec<Vec<DiagEnd>>,
}

impl Subdivision {
    /// One face: the whole disk, boundary items in cyclic order.
    pub fn new(n_boundary: usize) -> Self {
        Subdivision {
            faces: vec![(0..n_boundary).map(DiagEnd::Boundary).collect()],
        }
    }

    /// All (face, position) visits of a node.
    pub fn visits(&self, node: DiagEnd) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (f, face) in self.faces.iter().enumerate() {
            for (p, v) in face.iter().enumerate() {
                if *v == node {
                    out.push((f, p));
                }
            }
        }
        out
    }

    /// Splits `face` by an edge between the visits at positions `i` and
    /// `j` (`i != j`). Both resulting faces keep the endpoint visits.
    pub fn split(&mut self, face: usize, i: usize, j: usize) {
        let (i, j) = (i.min(j), i.max(j));
        let old = std::mem::take(&mut self.faces[face]);
        let face_a: Vec<DiagEnd> = old[i..=j].to_vec();
        let mut face_b: Vec<DiagEnd> = old[j..].to_vec();
        face_b.extend_from_slice(&old[..=i]);
        self.faces[face] = face_a;
        self.faces.push(face_b);
    }

    /// Attaches a pendant edge from the visit at position `i` to a new
    /// node; the face is unchanged except for the detour around the edge.
    pub fn pendant(&mut self, face: usize, i: usize, node: DiagEnd) {
        let anchor = self.faces[face][i];
        self.faces[face].splice(i + 1..i + 1, [node, anchor]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DiagEnd::{Boundary as B, Interior as I};

    #[test]
    fn split_keeps_endpoints_on_both_faces() {
        let mut s = Subdivision::new(6);
        s.split(0, 1, 4);
        assert_eq!(s.faces[0], vec![B(1), B(2), B(3), B(4)]);
        assert_eq!(s.faces[1], vec![B(4), B(5), B(0), B(1)]);
    }

    #[test]
    fn pendant_adds_double_visit() {
        let mut s = Subdivision::new(3);
        s.pendant(0, 1, I(0));
        assert_eq!(s.faces[0], vec![B(0), B(1), I(0), B(1), B(2)]);
        // A later split between the interior node and another item.
        s.split(0, 2, 4);
        assert_eq!(s.faces[0], vec![I(0), B(1), B(2)]);
        assert_eq!(s.faces[1], vec![B(2), B(0), B(1), I(0)]);
    }
}
