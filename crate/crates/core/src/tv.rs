//! Turaev–Viro–Barrett–Westbury state sums over face-gluing presentations,
//! and the homomorphism-counting oracle for cyclic group categories.

use num_complex::Complex64;
use num_rational::Rational64;
use rayon::prelude::*;
use thiserror::Error;

use crate::fsym::FSymbolSet;
use crate::homology::first_homology;
use crate::tri::{Triangulation, EDGE_ENDS};

#[derive(Debug, Error)]
pub enum TvError {
    #[error("coloring-space cap of {0} partial nodes exceeded")]
    NodeCap(u64),
}

#[derive(Debug, Clone, Copy)]
pub struct TvOptions {
    /// Cap on visited partial assignments.
    pub node_cap: u64,
    /// Shard the outermost color choice across threads. The reduction order
    /// is fixed, so results are bitwise identical to the serial sum.
    pub parallel: bool,
}

impl Default for TvOptions {
    fn default() -> Self {
        TvOptions { node_cap: 100_000_000, parallel: false }
    }
}

struct StateSum<'a> {
    fs: &'a FSymbolSet,
    /// Edge orbits in assignment order.
    order: Vec<usize>,
    /// position of each orbit in `order`.
    position: Vec<usize>,
    /// Faces keyed by the position at which they complete: (tet, face).
    faces_at: Vec<Vec<(usize, usize)>>,
    /// Tets keyed by completion position.
    tets_at: Vec<Vec<usize>>,
    tri: &'a Triangulation,
}

impl<'a> StateSum<'a> {
    fn new(fs: &'a FSymbolSet, tri: &'a Triangulation) -> Self {
        let deg = tri.edge_degrees();
        let mut order: Vec<usize> = (0..tri.n_edges).collect();
        order.sort_by_key(|&e| std::cmp::Reverse(deg[e]));
        let mut position = vec![0usize; tri.n_edges];
        for (p, &e) in order.iter().enumerate() {
            position[e] = p;
        }
        let mut faces_at = vec![Vec::new(); tri.n_edges];
        for &(t, f) in &tri.face_reps() {
            let corners: Vec<usize> = (0..4).filter(|&c| c != f).collect();
            let pmax = face_edges(&corners)
                .iter()
                .map(|&(a, b)| position[tri.edge_orbit(t, local_edge(a, b)).0])
                .max()
                .unwrap();
            faces_at[pmax].push((t, f));
        }
        let mut tets_at = vec![Vec::new(); tri.n_edges];
        for t in 0..tri.n_tet {
            let pmax = (0..6).map(|e| position[tri.edge_orbit(t, e).0]).max().unwrap();
            tets_at[pmax].push(t);
        }
        StateSum { fs, order, position, faces_at, tets_at, tri }
    }

    fn local_label(&self, coloring: &[usize], tet: usize, a: usize, b: usize) -> usize {
        let (orbit, flip) = self.tri.edge_orbit(tet, local_edge(a, b));
        let l = coloring[orbit];
        if flip {
            self.fs.ring.dual[l]
        } else {
            l
        }
    }

    fn face_admissible(&self, coloring: &[usize], tet: usize, face: usize) -> bool {
        let c: Vec<usize> = (0..4).filter(|&x| x != face).collect();
        let lab = self.local_label(coloring, tet, c[0], c[1]);
        let lbc = self.local_label(coloring, tet, c[1], c[2]);
        let lac = self.local_label(coloring, tet, c[0], c[2]);
        self.fs.ring.n(lab, lbc, lac) == 1
    }

    fn tet_weight(&self, coloring: &[usize], tet: usize) -> Complex64 {
        let l = |a, b| self.local_label(coloring, tet, a, b);
        let g = self.fs.g6j(l(0, 1), l(1, 2), l(2, 3), l(0, 3), l(0, 2), l(1, 3));
        if self.tri.orientation[tet] > 0 {
            g
        } else {
            g.conj()
        }
    }

    /// Sum over completions given the first `depth` assignments.
    fn descend(
        &self,
        coloring: &mut Vec<usize>,
        depth: usize,
        acc: Complex64,
        nodes: &mut u64,
        cap: u64,
    ) -> Result<Complex64, TvError> {
        if depth == self.order.len() {
            return Ok(acc);
        }
        let orbit = self.order[depth];
        let mut total = Complex64::new(0.0, 0.0);
        for label in 0..self.fs.ring.rank {
            *nodes += 1;
            if *nodes > cap {
                return Err(TvError::NodeCap(cap));
            }
            coloring[orbit] = label;
            if !self.faces_at[depth]
                .iter()
                .all(|&(t, f)| self.face_admissible(coloring, t, f))
            {
                continue;
            }
            let mut factor = Complex64::new(self.fs.dims.d[label], 0.0);
            for &t in &self.tets_at[depth] {
                factor *= self.tet_weight(coloring, t);
            }
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            total += self.descend(coloring, depth + 1, acc * factor, nodes, cap)?;
        }
        Ok(total)
    }
}

fn local_edge(a: usize, b: usize) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    EDGE_ENDS.iter().position(|&(x, y)| (x, y) == (lo, hi)).unwrap()
}

fn face_edges(corners: &[usize]) -> [(usize, usize); 3] {
    [
        (corners[0], corners[1]),
        (corners[1], corners[2]),
        (corners[0], corners[2]),
    ]
}

/// State-sum invariant: `mu^{-v} sum_colorings prod_e d_e prod_t G_t`, with
/// the symmetrized 6j conjugated on orientation-reversed tetrahedra.
pub fn tv_invariant(fs: &FSymbolSet, tri: &Triangulation, opts: &TvOptions) -> Result<Complex64, TvError> {
    let sum = StateSum::new(fs, tri);
    let rank = fs.ring.rank;
    let shards: Vec<Result<Complex64, TvError>> = if opts.parallel && !sum.order.is_empty() {
        (0..rank)
            .into_par_iter()
            .map(|label| {
                let mut coloring = vec![0usize; tri.n_edges];
                let mut nodes = 0u64;
                shard_descend(&sum, &mut coloring, label, &mut nodes, opts.node_cap / rank as u64)
            })
            .collect()
    } else if sum.order.is_empty() {
        Vec::new()
    } else {
        (0..rank)
            .map(|label| {
                let mut coloring = vec![0usize; tri.n_edges];
                let mut nodes = 0u64;
                shard_descend(&sum, &mut coloring, label, &mut nodes, opts.node_cap / rank as u64)
            })
            .collect()
    };
    let mut total = Complex64::new(0.0, 0.0);
    for shard in shards {
        total += shard?;
    }
    let norm = fs.dims.mu.powi(-(tri.n_vertices as i32));
    Ok(total * norm)
}

fn shard_descend(
    sum: &StateSum,
    coloring: &mut Vec<usize>,
    first_label: usize,
    nodes: &mut u64,
    cap: u64,
) -> Result<Complex64, TvError> {
    let orbit = sum.order[0];
    coloring[orbit] = first_label;
    if !sum.faces_at[0]
        .iter()
        .all(|&(t, f)| sum.face_admissible(coloring, t, f))
    {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut factor = Complex64::new(sum.fs.dims.d[first_label], 0.0);
    for &t in &sum.tets_at[0] {
        factor *= sum.tet_weight(coloring, t);
    }
    if factor.norm_sqr() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    sum.descend(coloring, 1, factor, nodes, cap)
}

/// `|Hom(H_1(M), Z_n)| / n`, the Turaev–Viro value of the cyclic group
/// category with trivial cocycle.
pub fn vec_g_oracle(order: u64, tri: &Triangulation) -> Rational64 {
    let h = first_homology(tri);
    Rational64::new(h.hom_count(order) as i64, order as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::fsym::parse_fsymbols;
    use crate::ring::parse_fusion_ring;
    use crate::tri::parse_triangulation;

    fn fsyms(name: &str) -> FSymbolSet {
        let text = fixtures::ring_json(name).unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        parse_fsymbols(text, &ring).unwrap()
    }

    fn tri(name: &str) -> Triangulation {
        parse_triangulation(fixtures::tri_json(name).unwrap()).unwrap()
    }

    #[test]
    fn trivial_category_gives_one() {
        let fs = fsyms("trivial");
        for name in ["s3_1tet", "s3_2tet", "rp3", "t3"] {
            let v = tv_invariant(&fs, &tri(name), &TvOptions::default()).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12, "{name}: {v}");
        }
    }

    #[test]
    fn fibonacci_sphere_is_inverse_global_dimension() {
        let fs = fsyms("fib");
        for name in ["s3_1tet", "s3_2tet"] {
            let v = tv_invariant(&fs, &tri(name), &TvOptions::default()).unwrap();
            let expected = 1.0 / fs.dims.mu;
            assert!(
                (v - Complex64::new(expected, 0.0)).norm() < 1e-9,
                "{name}: got {v}, expected {expected}"
            );
        }
    }

    #[test]
    fn vec_z2_matches_oracle_everywhere() {
        let fs = fsyms("vec_z2");
        for name in fixtures::TRI_NAMES {
            let t = tri(name);
            let v = tv_invariant(&fs, &t, &TvOptions::default()).unwrap();
            let oracle = vec_g_oracle(2, &t);
            let expected = *oracle.numer() as f64 / *oracle.denom() as f64;
            assert!(
                (v - Complex64::new(expected, 0.0)).norm() < 1e-9,
                "{name}: got {v}, oracle {expected}"
            );
        }
    }

    #[test]
    fn vec_z3_matches_oracle_everywhere() {
        let fs = fsyms("vec_z3");
        for name in fixtures::TRI_NAMES {
            let t = tri(name);
            let v = tv_invariant(&fs, &t, &TvOptions::default()).unwrap();
            let oracle = vec_g_oracle(3, &t);
            let expected = *oracle.numer() as f64 / *oracle.denom() as f64;
            assert!(
                (v - Complex64::new(expected, 0.0)).norm() < 1e-9,
                "{name}: got {v}, oracle {expected}"
            );
        }
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let fs = fsyms("fib");
        for name in ["s3_2tet", "t3", "lens_5_1"] {
            let t = tri(name);
            let serial = tv_invariant(&fs, &t, &TvOptions { parallel: false, ..Default::default() }).unwrap();
            let par = tv_invariant(&fs, &t, &TvOptions { parallel: true, ..Default::default() }).unwrap();
            assert_eq!(serial.re.to_bits(), par.re.to_bits(), "{name}");
            assert_eq!(serial.im.to_bits(), par.im.to_bits(), "{name}");
        }
    }

    #[test]
    fn node_cap_enforced() {
        let fs = fsyms("ising");
        let t = tri("t3");
        match tv_invariant(&fs, &t, &TvOptions { node_cap: 10, parallel: false }) {
            Err(TvError::NodeCap(_)) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_path_exercised() {
        // A synthetic complex-valued check: conjugating all F-data must
        // conjugate the invariant. Uses the semion-like twist of Vec_Z2:
        // F(g,g,g;g) = -1 keeps pentagon but flips nothing real; instead we
        // verify on Fibonacci that the mirrored triangulation (all tets
        // reversed) yields the conjugate value.
        let fs = fsyms("fib");
        let t = tri("lens_3_1");
        let v = tv_invariant(&fs, &t, &TvOptions::default()).unwrap();
        let mut mirrored = t.clone();
        for s in mirrored.orientation.iter_mut() {
            *s = -*s;
        }
        let w = tv_invariant(&fs, &mirrored, &TvOptions::default()).unwrap();
        assert!((v.conj() - w).norm() < 1e-12);
    }
}
