//! Face-gluing presentations of closed oriented 3-manifolds, with derived
//! vertex/edge orbits and orientation signs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Local edges of a tetrahedron as ordered corner pairs.
pub const EDGE_ENDS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Error)]
pub enum TriError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("tetrahedron {0} does not have exactly 4 gluing records")]
    FaceCount(usize),
    #[error("gluing of tet {0} face {1} is out of range")]
    Range(usize, usize),
    #[error("gluing of tet {0} face {1} has an invalid corner bijection")]
    BadPermutation(usize, usize),
    #[error("face glued to itself at tet {0} face {1}")]
    SelfGlued(usize, usize),
    #[error("gluing is not involutive at tet {0} face {1}")]
    NotInvolutive(usize, usize),
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("Euler characteristic is {0}, expected 0 for a closed 3-manifold")]
    EulerCharacteristic(i64),
}

/// One face-pairing record: the partner tetrahedron and face, and the corner
/// bijection sending local corners to the partner's corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing(pub usize, pub usize, pub [usize; 4]);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriFile {
    tets: Vec<Vec<Gluing>>,
}

/// A validated gluing table with derived orbit and orientation data.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub n_tet: usize,
    pub gluings: Vec<[Gluing; 4]>,
    /// Orbit id per (tet, corner).
    vertex: Vec<usize>,
    pub n_vertices: usize,
    /// Per (tet, local edge): orbit id and whether the local (low, high)
    /// direction disagrees with the orbit's reference direction.
    edge: Vec<(usize, bool)>,
    pub n_edges: usize,
    edge_reps: Vec<(usize, usize)>,
    pub n_faces: usize,
    /// +1 / -1 per tetrahedron from a consistent global orientation.
    pub orientation: Vec<i8>,
}

struct SignedUf {
    parent: Vec<usize>,
    // Parity relative to the parent.
    parity: Vec<bool>,
}

impl SignedUf {
    fn new(n: usize) -> Self {
        SignedUf { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        let total = p ^ self.parity[x];
        self.parent[x] = root;
        self.parity[x] = total;
        (root, total)
    }

    /// Unions with the constraint parity(a) xor parity(b) = rel.
    /// Returns false on an inconsistency.
    fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ rel;
        true
    }
}

fn perm_sign(p: &[usize; 4]) -> i8 {
    let mut sign = 1i8;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

impl Triangulation {
    pub fn vertex_orbit(&self, tet: usize, corner: usize) -> usize {
        self.vertex[tet * 4 + corner]
    }

    pub fn edge_orbit(&self, tet: usize, local_edge: usize) -> (usize, bool) {
        self.edge[tet * 6 + local_edge]
    }

    pub fn edge_rep(&self, orbit: usize) -> (usize, usize) {
        self.edge_reps[orbit]
    }

    /// Number of tetrahedra incident to each edge orbit (with multiplicity).
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n_edges];
        for t in 0..self.n_tet {
            for e in 0..6 {
                deg[self.edge_orbit(t, e).0] += 1;
            }
        }
        deg
    }

    /// Representative (tet, face) per face orbit, for boundary computations.
    pub fn face_reps(&self) -> Vec<(usize, usize)> {
        let mut reps = Vec::new();
        for t in 0..self.n_tet {
            for f in 0..4 {
                let Gluing(t2, f2, _) = self.gluings[t][f];
                if (t, f) <= (t2, f2) {
                    reps.push((t, f));
                }
            }
        }
        reps
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges as i64 + self.n_faces as i64 - self.n_tet as i64
    }

    pub fn to_json(&self) -> String {
        let file = TriFile { tets: self.gluings.iter().map(|g| g.to_vec()).collect() };
        serde_json::to_string_pretty(&file).expect("triangulation serialization")
    }

    pub fn from_gluings(gluings: Vec<[Gluing; 4]>) -> Result<Self, TriError> {
        let n_tet = gluings.len();
        if n_tet == 0 {
            return Err(TriError::Syntax("at least one tetrahedron required".into()));
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (f, &Gluing(t2, f2, perm)) in faces.iter().enumerate() {
                if t2 >= n_tet || f2 >= 4 {
                    return Err(TriError::Range(t, f));
                }
                let mut seen = [false; 4];
                for &p in &perm {
                    if p >= 4 || seen[p] {
                        return Err(TriError::BadPermutation(t, f));
                    }
                    seen[p] = true;
                }
                if perm[f] != f2 {
                    return Err(TriError::BadPermutation(t, f));
                }
                if (t2, f2) == (t, f) {
                    return Err(TriError::SelfGlued(t, f));
                }
                let Gluing(bt, bf, bperm) = gluings[t2][f2];
                if (bt, bf) != (t, f) {
                    return Err(TriError::NotInvolutive(t, f));
                }
                for c in 0..4 {
                    if bperm[perm[c]] != c {
                        return Err(TriError::NotInvolutive(t, f));
                    }
                }
            }
        }
        // Orientation: coherently oriented tets must meet along orientation
        // reversing (odd) corner bijections; propagate signs and check.
        let mut orientation = vec![0i8; n_tet];
        let mut stack = vec![0usize];
        orientation[0] = 1;
        while let Some(t) = stack.pop() {
            for f in 0..4 {
                let Gluing(t2, _, perm) = gluings[t][f];
                let needed = -orientation[t] * perm_sign(&perm);
                if orientation[t2] == 0 {
                    orientation[t2] = needed;
                    stack.push(t2);
                } else if orientation[t2] != needed {
                    return Err(TriError::NonOrientable);
                }
            }
        }
        if orientation.iter().any(|&s| s == 0) {
            return Err(TriError::Syntax("gluing graph is disconnected".into()));
        }
        // Vertex orbits.
        let mut vuf = SignedUf::new(n_tet * 4);
        for (t, faces) in gluings.iter().enumerate() {
            for (f, &Gluing(t2, _, perm)) in faces.iter().enumerate() {
                for c in 0..4 {
                    if c != f {
                        vuf.union(t * 4 + c, t2 * 4 + perm[c], false);
                    }
                }
            }
        }
        let mut vertex = vec![usize::MAX; n_tet * 4];
        let mut n_vertices = 0usize;
        for i in 0..n_tet * 4 {
            let (root, _) = vuf.find(i);
            if vertex[root] == usize::MAX {
                vertex[root] = n_vertices;
                n_vertices += 1;
            }
            vertex[i] = vertex[root];
        }
        // Edge orbits with direction parity.
        let mut euf = SignedUf::new(n_tet * 6);
        let edge_index = |a: usize, b: usize| -> (usize, bool) {
            let (lo, hi) = (a.min(b), a.max(b));
            let idx = EDGE_ENDS.iter().position(|&(x, y)| (x, y) == (lo, hi)).unwrap();
            (idx, a > b)
        };
        for (t, faces) in gluings.iter().enumerate() {
            for (f, &Gluing(t2, _, perm)) in faces.iter().enumerate() {
                for (ei, &(a, b)) in EDGE_ENDS.iter().enumerate() {
                    if a == f || b == f {
                        continue;
                    }
                    let (ei2, rev) = edge_index(perm[a], perm[b]);
                    euf.union(t * 6 + ei, t2 * 6 + ei2, rev);
                }
            }
        }
        let mut edge = vec![(usize::MAX, false); n_tet * 6];
        let mut edge_reps = Vec::new();
        let mut orbit_of_root = vec![usize::MAX; n_tet * 6];
        for i in 0..n_tet * 6 {
            let (root, parity) = euf.find(i);
            if orbit_of_root[root] == usize::MAX {
                orbit_of_root[root] = edge_reps.len();
                // Reference direction: the first-seen local edge's (low, high).
                edge_reps.push((i / 6, i % 6));
            }
            edge[i] = (orbit_of_root[root], parity);
        }
        // Normalize so each orbit's representative has parity false.
        for (orbit, &(t, e)) in edge_reps.clone().iter().enumerate() {
            let (_, p) = edge[t * 6 + e];
            if p {
                for slot in edge.iter_mut() {
                    if slot.0 == orbit {
                        slot.1 = !slot.1;
                    }
                }
            }
        }
        let n_edges = edge_reps.len();
        let n_faces = n_tet * 2;
        let tri = Triangulation {
            n_tet,
            gluings,
            vertex,
            n_vertices,
            edge,
            n_edges,
            edge_reps,
            n_faces,
            orientation,
        };
        let chi = tri.euler_characteristic();
        if chi != 0 {
            return Err(TriError::EulerCharacteristic(chi));
        }
        Ok(tri)
    }
}

/// Parses and validates a gluing-table document.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, TriError> {
    let file: TriFile = serde_json::from_str(text).map_err(|e| TriError::Syntax(e.to_string()))?;
    let mut gluings = Vec::with_capacity(file.tets.len());
    for (t, faces) in file.tets.iter().enumerate() {
        if faces.len() != 4 {
            return Err(TriError::FaceCount(t));
        }
        gluings.push([faces[0], faces[1], faces[2], faces[3]]);
    }
    Triangulation::from_gluings(gluings)
}
