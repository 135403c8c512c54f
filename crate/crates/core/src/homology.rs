//! Integer Smith normal form and first homology of a triangulated closed
//! 3-manifold.

use serde::Serialize;

use crate::tri::{Triangulation, EDGE_ENDS};

/// Invariant-factor description of H1: free rank plus torsion coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl Homology {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Number of homomorphisms into a cyclic group of the given order.
    pub fn hom_count(&self, order: u64) -> u64 {
        let mut count = order.pow(self.betti as u32);
        for &t in &self.torsion {
            count *= gcd(t, order);
        }
        count
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> i128 {
        self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.a[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for c in 0..self.cols {
                self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + c1, r * self.cols + c2);
            }
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, factor: i128) {
        for c in 0..self.cols {
            let v = self.at(src, c).checked_mul(factor).expect("overflow");
            self.a[dst * self.cols + c] = self.at(dst, c).checked_add(v).expect("overflow");
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, factor: i128) {
        for r in 0..self.rows {
            let v = self.at(r, src).checked_mul(factor).expect("overflow");
            self.a[r * self.cols + dst] = self.at(r, dst).checked_add(v).expect("overflow");
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self.a[r * self.cols + c] = -self.at(r, c);
        }
    }
}

/// Result of a Smith reduction: diagonal invariant factors and the column
/// transform, so kernels can be read off.
pub struct Snf {
    /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
    pub factors: Vec<u64>,
    pub rank: usize,
    /// Unimodular V with `original * V` in column echelon: columns past
    /// `rank` span the kernel.
    pub v: IntMat,
}

/// Smith normal form with column-transform tracking.
pub fn smith_normal_form(mat: &IntMat) -> Snf {
    let mut m = mat.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut v = IntMat::zeros(cols, cols);
    for i in 0..cols {
        v.set(i, i, 1);
    }
    let mut k = 0usize;
    while k < rows.min(cols) {
        // Find the entry of least nonzero magnitude in the remaining block.
        let mut pivot: Option<(usize, usize, i128)> = None;
        for r in k..rows {
            for c in k..cols {
                let val = m.at(r, c).abs();
                if val != 0 && pivot.map_or(true, |p| val < p.2) {
                    pivot = Some((r, c, val));
                }
            }
        }
        let Some((pr, pc, _)) = pivot else { break };
        m.swap_rows(k, pr);
        m.swap_cols(k, pc);
        v.swap_cols(k, pc);
        if m.at(k, k) < 0 {
            m.negate_col(k);
            v.negate_col(k);
        }
        let mut clean = true;
        for r in k + 1..rows {
            let q = m.at(r, k).div_euclid(m.at(k, k));
            if q != 0 {
                m.add_row(k, r, -q);
            }
            if m.at(r, k) != 0 {
                clean = false;
            }
        }
        for c in k + 1..cols {
            let q = m.at(k, c).div_euclid(m.at(k, k));
            if q != 0 {
                m.add_col(k, c, -q);
                v.add_col(k, c, -q);
            }
            if m.at(k, c) != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of later entries by the pivot.
        let d = m.at(k, k);
        let mut fixed = true;
        'scan: for r in k + 1..rows {
            for c in k + 1..cols {
                if m.at(r, c) % d != 0 {
                    m.add_col(c, k, 1);
                    v.add_col(c, k, 1);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    let mut factors = Vec::new();
    for i in 0..rows.min(cols) {
        let d = m.at(i, i);
        if d != 0 {
            factors.push(d.unsigned_abs() as u64);
        }
    }
    let rank = factors.len();
    Snf { factors, rank, v }
}

/// First homology of the triangulation by Smith reduction of the boundary
/// maps of its cell structure.
pub fn first_homology(tri: &Triangulation) -> Homology {
    let n_e = tri.n_edges;
    let n_v = tri.n_vertices;
    // d1: edges -> vertices.
    let mut d1 = IntMat::zeros(n_v, n_e);
    for t in 0..tri.n_tet {
        for (ei, &(a, b)) in EDGE_ENDS.iter().enumerate() {
            let (orbit, flip) = tri.edge_orbit(t, ei);
            if tri.edge_rep(orbit) != (t, ei) {
                continue;
            }
            // Orbit representative oriented a -> b, possibly flipped.
            let (tail, head) = if flip { (b, a) } else { (a, b) };
            let vt = tri.vertex_orbit(t, tail);
            let vh = tri.vertex_orbit(t, head);
            d1.set(vh, orbit, d1.at(vh, orbit) + 1);
            d1.set(vt, orbit, d1.at(vt, orbit) - 1);
        }
    }
    // d2: faces -> edges, one column per face orbit.
    let face_reps = tri.face_reps();
    let mut d2 = IntMat::zeros(n_e, face_reps.len());
    for (fi, &(t, f)) in face_reps.iter().enumerate() {
        let corners: Vec<usize> = (0..4).filter(|&c| c != f).collect();
        // Boundary of the oriented 2-simplex (c0, c1, c2).
        let tri_edges = [
            (corners[1], corners[2], 1i128),
            (corners[0], corners[2], -1i128),
            (corners[0], corners[1], 1i128),
        ];
        for &(a, b, sign) in &tri_edges {
            let ei = EDGE_ENDS.iter().position(|&(x, y)| (x, y) == (a.min(b), a.max(b))).unwrap();
            let (orbit, flip) = tri.edge_orbit(t, ei);
            let s = if flip { -sign } else { sign };
            d2.set(orbit, fi, d2.at(orbit, fi) + s);
        }
    }
    // Kernel of d1 in edge coordinates.
    let snf1 = smith_normal_form(&d1);
    let kernel_dim = n_e - snf1.rank;
    // Coordinates of im(d2) in the kernel basis: solve V * x = d2 column by
    // column; since V is unimodular use integer back-substitution via SNF of V.
    // V is square unimodular, so x = V^{-1} d2; compute V^{-1} by Smith:
    let vinv = unimodular_inverse(&snf1.v);
    let mut projected = IntMat::zeros(kernel_dim, d2.cols);
    for c in 0..d2.cols {
        for r in 0..snf1.v.rows {
            let mut acc: i128 = 0;
            for k in 0..snf1.v.rows {
                acc = acc
                    .checked_add(vinv.at(r, k).checked_mul(d2.at(k, c)).expect("overflow"))
                    .expect("overflow");
            }
            if r < snf1.rank {
                debug_assert_eq!(acc % snf1.factors[r] as i128, 0);
            } else {
                projected.set(r - snf1.rank, c, acc);
            }
        }
    }
    let snf2 = smith_normal_form(&projected);
    let betti = kernel_dim - snf2.rank;
    let torsion: Vec<u64> = snf2.factors.iter().copied().filter(|&d| d > 1).collect();
    Homology { betti, torsion }
}

/// Inverse of a unimodular integer matrix by Gauss–Bareiss style elimination
/// over the rationals with exact integers (entries stay small here).
fn unimodular_inverse(v: &IntMat) -> IntMat {
    let n = v.rows;
    assert_eq!(v.rows, v.cols);
    let mut m = v.clone();
    let mut inv = IntMat::zeros(n, n);
    for i in 0..n {
        inv.set(i, i, 1);
    }
    // Integer Gauss-Jordan: since det = +-1, all pivots end at +-1 after
    // clearing with Euclidean steps.
    for col in 0..n {
        // Euclidean reduction to bring a +-1 pivot (exists for unimodular V).
        loop {
            let mut best: Option<(usize, i128)> = None;
            for r in col..n {
                let val = m.at(r, col).abs();
                if val != 0 && best.map_or(true, |b| val < b.1) {
                    best = Some((r, val));
                }
            }
            let (pr, pv) = best.expect("unimodular matrix cannot drop rank");
            m.swap_rows(col, pr);
            inv.swap_rows(col, pr);
            if pv == 1 {
                break;
            }
            let mut progressed = false;
            for r in col + 1..n {
                if m.at(r, col) != 0 {
                    let q = m.at(r, col).div_euclid(m.at(col, col));
                    m.add_row(col, r, -q);
                    inv.add_row(col, r, -q);
                    progressed = true;
                }
            }
            if !progressed {
                // Lone pivot with |pivot| > 1 cannot happen for unimodular V.
                panic!("non-unimodular column transform");
            }
        }
        if m.at(col, col) < 0 {
            for c in 0..n {
                let v1 = -m.at(col, c);
                m.set(col, c, v1);
                let v2 = -inv.at(col, c);
                inv.set(col, c, v2);
            }
        }
        for r in 0..n {
            if r != col && m.at(r, col) != 0 {
                let q = m.at(r, col);
                m.add_row(col, r, -q);
                inv.add_row(col, r, -q);
            }
        }
    }
    inv
}
