//! Plumbing trees: framed tree-shaped surgery presentations with their
//! linking matrices and exact signature counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlumbingError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("edge ({0}, {1}) is out of range")]
    Range(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cycle detected through edge ({0}, {1})")]
    Cycle(usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(usize, usize),
}

/// A forest of framed vertices; the linking matrix has the framings on the
/// diagonal and adjacency elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingTree {
    pub framings: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlumbingFile {
    vertices: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

impl PlumbingTree {
    pub fn new(framings: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, PlumbingError> {
        let n = framings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(PlumbingError::Range(u, v));
            }
            if u == v {
                return Err(PlumbingError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(PlumbingError::Duplicate(u, v));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(PlumbingError::Cycle(u, v));
            }
            parent[ru] = rv;
        }
        let (b_plus, b_minus, b_zero) = signature(&framings, &edges);
        Ok(PlumbingTree { framings, edges, b_plus, b_minus, b_zero })
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.framings.len();
        let mut b = vec![vec![0i64; n]; n];
        for (i, &m) in self.framings.iter().enumerate() {
            b[i][i] = m;
        }
        for &(u, v) in &self.edges {
            b[u][v] += 1;
            b[v][u] += 1;
        }
        b
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn to_json(&self) -> String {
        let file = PlumbingFile { vertices: self.framings.clone(), edges: self.edges.clone() };
        serde_json::to_string_pretty(&file).expect("plumbing serialization")
    }
}

/// Exact signature of the symmetric integer linking matrix by rational
/// congruence reduction.
fn signature(framings: &[i64], edges: &[(usize, usize)]) -> (usize, usize, usize) {
    let n = framings.len();
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        a[i][i] = BigRational::from(BigInt::from(framings[i]));
    }
    for &(u, v) in edges {
        a[u][v] += BigRational::from(BigInt::from(1));
        a[v][u] += BigRational::from(BigInt::from(1));
    }
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0usize, 0usize);
    while !alive.is_empty() {
        // Prefer a nonzero diagonal pivot.
        if let Some(&p) = alive.iter().find(|&&i| !a[i][i].is_zero()) {
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            alive.retain(|&i| i != p);
            for &i in alive.clone().iter() {
                let factor = &a[i][p] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for &j in alive.iter() {
                    let sub = &factor * &a[p][j];
                    a[i][j] -= sub;
                }
            }
            for &i in alive.iter() {
                a[i][p] = BigRational::zero();
                a[p][i] = BigRational::zero();
            }
            continue;
        }
        // All remaining diagonals are zero: either the block is zero, or
        // symmetrize an off-diagonal entry onto the diagonal first.
        let mut found = None;
        'outer: for (ii, &i) in alive.iter().enumerate() {
            for &j in alive.iter().skip(ii + 1) {
                if !a[i][j].is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        match found {
            None => break,
            Some((i, j)) => {
                // Row/column operation: add row j to row i (and col j to col i),
                // producing 2 a_ij on the diagonal while preserving congruence.
                for &k in alive.iter() {
                    let add = a[j][k].clone();
                    a[i][k] += add;
                }
                for &k in alive.iter() {
                    let add = a[k][j].clone();
                    a[k][i] += add;
                }
            }
        }
    }
    let zero = n - plus - minus;
    (plus, minus, zero)
}

/// Parses a plumbing document and computes signature data.
pub fn parse_plumbing(text: &str) -> Result<PlumbingTree, PlumbingError> {
    let file: PlumbingFile = serde_json::from_str(text).map_err(|e| PlumbingError::Syntax(e.to_string()))?;
    PlumbingTree::new(file.vertices, file.edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_tree_is_sphere_presentation() {
        let t = parse_plumbing(r#"{"vertices": [], "edges": []}"#).unwrap();
        assert_eq!((t.b_plus, t.b_minus, t.b_zero), (0, 0, 0));
    }

    #[test]
    fn single_vertex_framings() {
        let t = PlumbingTree::new(vec![0], vec![]).unwrap();
        assert_eq!((t.b_plus, t.b_minus, t.b_zero), (0, 0, 1));
        let t = PlumbingTree::new(vec![3], vec![]).unwrap();
        assert_eq!((t.b_plus, t.b_minus, t.b_zero), (1, 0, 0));
        let t = PlumbingTree::new(vec![-2], vec![]).unwrap();
        assert_eq!((t.b_plus, t.b_minus, t.b_zero), (0, 1, 0));
    }

    #[test]
    fn hyperbolic_pair() {
        // Two 0-framed vertices joined by an edge: signature (1, 1, 0).
        let t = PlumbingTree::new(vec![0, 0], vec![(0, 1)]).unwrap();
        assert_eq!((t.b_plus, t.b_minus, t.b_zero), (1, 1, 0));
    }

    #[test]
    fn e8_plumbing_is_definite() {
        // The E8 graph with all framings -2 has signature (0, 8, 0).
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        let t = PlumbingTree::new(vec![-2; 8], edges).unwrap();
        assert_eq!((t.b_plus, t.b_minus, t.b_zero), (0, 8, 0));
    }

    #[test]
    fn cycle_rejected() {
        match PlumbingTree::new(vec![1, 1, 1], vec![(0, 1), (1, 2), (2, 0)]) {
            Err(PlumbingError::Cycle(..)) => {}
            other => panic!("expected cycle error, got {other:?}"),
        }
    }
}
