//! The tube algebra of a multiplicity-free spherical fusion category:
//! annular diagrams with their stacking product, computed entirely from
//! F-symbols.

use num_complex::Complex64;
use thiserror::Error;

use crate::fsym::FSymbolSet;
use crate::scalar::Tol;
use crate::smallalg::{CMat, C};

#[derive(Debug, Error)]
pub enum TubeError {
    #[error("F-symbols fail the pentagon gate (residual {0:.3e})")]
    PentagonGate(f64),
    #[error("F-matrices are not unitary (residual {0:.3e}); tube products need the isometric gauge")]
    NotUnitary(f64),
    #[error("tube multiplication is not associative (residual {0:.3e}); wrong F conventions")]
    NotAssociative(f64),
    #[error("unit element fails (residual {0:.3e})")]
    UnitFailure(f64),
}

/// Basis tube: the annulus with through-strand entering at `a`, leaving at
/// `b`, around-strand `s`, fusing through the internal channel `m`.
///
/// As a morphism this is `s ⊗ a -> m -> b ⊗ s`; admissibility requires
/// `N_{sa}^m = N_{bs}^m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tube {
    pub a: usize,
    pub s: usize,
    pub m: usize,
    pub b: usize,
}

/// The tube algebra with its structure-constant table.
#[derive(Debug, Clone)]
pub struct TubeAlgebra {
    pub fs: FSymbolSet,
    pub basis: Vec<Tube>,
    index: std::collections::HashMap<Tube, usize>,
    /// `mult[x][y]` expands `basis[x] · basis[y]` (x stacked on top of y).
    mult: Vec<Vec<Vec<(usize, Complex64)>>>,
    pub dim: usize,
}

/// An element in basis coordinates.
pub type TubeElement = Vec<C>;

impl TubeAlgebra {
    pub fn tube_index(&self, t: Tube) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn zero(&self) -> TubeElement {
        vec![C::new(0.0, 0.0); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> TubeElement {
        let mut v = self.zero();
        v[i] = C::new(1.0, 0.0);
        v
    }

    /// Identity: the straight-through tube summed over boundary labels.
    pub fn unit(&self) -> TubeElement {
        let mut v = self.zero();
        for a in 0..self.fs.ring.rank {
            let idx = self.tube_index(Tube { a, s: 0, m: a, b: a }).expect("unit tube");
            v[idx] = C::new(1.0, 0.0);
        }
        v
    }

    /// Dehn-twist element: `id_{a (x) a}` summed over boundary labels.
    pub fn twist_element(&self) -> TubeElement {
        let mut v = self.zero();
        for a in 0..self.fs.ring.rank {
            for m in 0..self.fs.ring.rank {
                if let Some(idx) = self.tube_index(Tube { a, s: a, m, b: a }) {
                    v[idx] = C::new(1.0, 0.0);
                }
            }
        }
        v
    }

    /// Vacuum projector: the around-Omega loop, `(1/mu) sum_s d_s (s,0,s,0)`.
    pub fn vacuum_element(&self) -> TubeElement {
        let mut v = self.zero();
        for s in 0..self.fs.ring.rank {
            let idx = self.tube_index(Tube { a: 0, s, m: s, b: 0 }).expect("loop tube");
            v[idx] = C::new(self.fs.dims.d[s] / self.fs.dims.mu, 0.0);
        }
        v
    }

    /// Through-tube of the label `v`, the induced center class of `v`.
    pub fn through_tube(&self, v: usize) -> TubeElement {
        let idx = self.tube_index(Tube { a: v, s: 0, m: v, b: v }).expect("through tube");
        self.basis_element(idx)
    }

    /// Around-tube of the label `v`: the `v`-loop on the annulus.
    pub fn around_tube(&self, v: usize) -> TubeElement {
        let idx = self.tube_index(Tube { a: 0, s: v, m: v, b: 0 }).expect("around tube");
        self.basis_element(idx)
    }

    /// Product x · y (x stacked on top of y).
    pub fn product(&self, x: &TubeElement, y: &TubeElement) -> TubeElement {
        let mut out = self.zero();
        for (xi, &xc) in x.iter().enumerate() {
            if xc.norm_sqr() == 0.0 {
                continue;
            }
            for (yi, &yc) in y.iter().enumerate() {
                if yc.norm_sqr() == 0.0 {
                    continue;
                }
                for &(zi, zc) in &self.mult[xi][yi] {
                    out[zi] += xc * yc * zc;
                }
            }
        }
        out
    }

    /// Left-multiplication operator as a dense matrix.
    pub fn left_regular(&self, x: &TubeElement) -> CMat {
        let mut l = CMat::zeros(self.dim, self.dim);
        for (xi, &xc) in x.iter().enumerate() {
            if xc.norm_sqr() == 0.0 {
                continue;
            }
            for yi in 0..self.dim {
                for &(zi, zc) in &self.mult[xi][yi] {
                    l[(zi, yi)] += xc * zc;
                }
            }
        }
        l
    }

    /// Right-multiplication operator.
    pub fn right_regular(&self, x: &TubeElement) -> CMat {
        let mut r = CMat::zeros(self.dim, self.dim);
        for (xi, &xc) in x.iter().enumerate() {
            if xc.norm_sqr() == 0.0 {
                continue;
            }
            for yi in 0..self.dim {
                for &(zi, zc) in &self.mult[yi][xi] {
                    r[(zi, yi)] += xc * zc;
                }
            }
        }
        r
    }

    pub fn associativity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for x in 0..self.dim {
            let bx = self.basis_element(x);
            for y in 0..self.dim {
                let by = self.basis_element(y);
                let xy = self.product(&bx, &by);
                for z in 0..self.dim {
                    let bz = self.basis_element(z);
                    let lhs = self.product(&xy, &bz);
                    let yz = self.product(&by, &bz);
                    let rhs = self.product(&bx, &yz);
                    for i in 0..self.dim {
                        worst = worst.max((lhs[i] - rhs[i]).norm());
                    }
                }
            }
        }
        worst
    }

    fn unit_residual(&self) -> f64 {
        let e = self.unit();
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            let b = self.basis_element(i);
            let l = self.product(&e, &b);
            let r = self.product(&b, &e);
            for j in 0..self.dim {
                let expect = C::new(f64::from(i == j), 0.0);
                worst = worst.max((l[j] - expect).norm());
                worst = worst.max((r[j] - expect).norm());
            }
        }
        worst
    }
}

/// Builds the tube algebra; the structure constants come from a three-F
/// contraction of stacked annuli. Associativity and the unit law are
/// verified before returning.
pub fn build_tube_algebra(fs: &FSymbolSet) -> Result<TubeAlgebra, TubeError> {
    build_tube_algebra_with_tol(fs, Tol::default())
}

pub fn build_tube_algebra_with_tol(fs: &FSymbolSet, tol: Tol) -> Result<TubeAlgebra, TubeError> {
    let pentagon = crate::fsym::verify_pentagon_with_tol(fs, tol);
    if !pentagon.pass {
        return Err(TubeError::PentagonGate(pentagon.max_residual));
    }
    let uni = fs.unitarity_residual();
    if uni > tol.0.max(1e-9) {
        return Err(TubeError::NotUnitary(uni));
    }
    let rank = fs.ring.rank;
    let mut basis = Vec::new();
    let mut index = std::collections::HashMap::new();
    for a in 0..rank {
        for s in 0..rank {
            for m in 0..rank {
                for b in 0..rank {
                    if fs.ring.n(s, a, m) == 1 && fs.ring.n(b, s, m) == 1 {
                        index.insert(Tube { a, s, m, b }, basis.len());
                        basis.push(Tube { a, s, m, b });
                    }
                }
            }
        }
    }
    let dim = basis.len();
    // Product of x = (b, t, n, c) stacked on y = (a, s, m, b):
    //   x · y = sum_{u, w} F^{tsa}_w[u][m] (F^{tbs}_w)^{-1}[m][n] F^{cts}_w[n][u]
    //           T_{(a, u, w, c)}.
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for (xi, &x) in basis.iter().enumerate() {
        for (yi, &y) in basis.iter().enumerate() {
            if y.b != x.a {
                continue;
            }
            let (a, s, m) = (y.a, y.s, y.m);
            let (t, n, c) = (x.s, x.m, x.b);
            let mut terms: Vec<(usize, Complex64)> = Vec::new();
            for u in 0..rank {
                if fs.ring.n(t, s, u) == 0 {
                    continue;
                }
                for w in 0..rank {
                    let coeff = fs.f(t, s, a, w, u, m)
                        * fs.f_inv(t, y.b, s, w, m, n)
                        * fs.f(c, t, s, w, n, u);
                    if coeff.norm() < 1e-15 {
                        continue;
                    }
                    let target = Tube { a, s: u, m: w, b: c };
                    let zi = index[&target];
                    terms.push((zi, coeff));
                }
            }
            mult[xi][yi] = terms;
        }
    }
    let algebra = TubeAlgebra { fs: fs.clone(), basis, index, mult, dim };
    let unit_res = algebra.unit_residual();
    if unit_res > tol.0.max(1e-9) {
        return Err(TubeError::UnitFailure(unit_res));
    }
    let assoc = algebra.associativity_residual();
    if assoc > tol.0.max(1e-9) {
        return Err(TubeError::NotAssociative(assoc));
    }
    Ok(algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::fsym::parse_fsymbols;
    use crate::ring::parse_fusion_ring;

    fn algebra(name: &str) -> TubeAlgebra {
        let text = fixtures::ring_json(name).unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        let fs = parse_fsymbols(text, &ring).unwrap();
        build_tube_algebra(&fs).unwrap()
    }

    #[test]
    fn trivial_category_dim_one() {
        let a = algebra("trivial");
        assert_eq!(a.dim, 1);
    }

    #[test]
    fn vec_z2_dim_four_commutative() {
        let a = algebra("vec_z2");
        assert_eq!(a.dim, 4);
        for x in 0..4 {
            for y in 0..4 {
                let bx = a.basis_element(x);
                let by = a.basis_element(y);
                let xy = a.product(&bx, &by);
                let yx = a.product(&by, &bx);
                for i in 0..4 {
                    assert!((xy[i] - yx[i]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fibonacci_dim_seven() {
        let a = algebra("fib");
        assert_eq!(a.dim, 7);
    }

    #[test]
    fn ising_dim_twelve() {
        let a = algebra("ising");
        assert_eq!(a.dim, 12);
    }

    #[test]
    fn vacuum_is_idempotent() {
        for name in ["vec_z2", "vec_z3", "fib", "ising"] {
            let a = algebra(name);
            let w = a.vacuum_element();
            let ww = a.product(&w, &w);
            for i in 0..a.dim {
                assert!((ww[i] - w[i]).norm() < 1e-9, "{name}: vacuum not idempotent");
            }
        }
    }

    #[test]
    fn twist_element_is_central_and_unitary_spectrum() {
        for name in ["vec_z2", "fib", "ising"] {
            let a = algebra(name);
            let d = a.twist_element();
            let l = a.left_regular(&d);
            let r = a.right_regular(&d);
            let diff = l.sub(&r).max_norm();
            assert!(diff < 1e-9, "{name}: twist element not central ({diff:.3e})");
        }
    }

    #[test]
    fn through_tubes_are_orthogonal_idempotents_at_s_zero() {
        let a = algebra("fib");
        let u0 = a.through_tube(0);
        let u1 = a.through_tube(1);
        let p = a.product(&u0, &u1);
        assert!(p.iter().all(|c| c.norm() < 1e-12));
        let sq = a.product(&u1, &u1);
        for i in 0..a.dim {
            assert!((sq[i] - u1[i]).norm() < 1e-12);
        }
    }
}
