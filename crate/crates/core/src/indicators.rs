//! Genus-1 topological indicators, their SL(2,Z) equivariance, and the
//! tube-algebra reference oracle.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::center::Center;
use crate::scalar::Tol;
use crate::sl2z::{mat_mul, torus_rep_apply, Sl2zError};

#[derive(Debug, Error)]
pub enum IndicatorError {
    #[error("curve (0, 0) is not a torus curve")]
    ZeroCurve,
    #[error("coefficient vector has length {0}, expected {1}")]
    Length(usize, usize),
    #[error("non-coprime curves require v to be a scalar multiple of a single object class")]
    NonMonomial,
    #[error("no matrix convention reproduces the curve action; center data inconsistent")]
    NoConvention,
    #[error(transparent)]
    Sl2z(#[from] Sl2zError),
}

/// An oriented `(m, r)` curve system on the torus; `d = gcd` components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusCurve {
    pub m: i64,
    pub r: i64,
}

impl TorusCurve {
    pub fn new(m: i64, r: i64) -> Result<Self, IndicatorError> {
        if m == 0 && r == 0 {
            return Err(IndicatorError::ZeroCurve);
        }
        Ok(TorusCurve { m, r })
    }

    pub fn d(&self) -> u64 {
        gcd(self.m.unsigned_abs(), self.r.unsigned_abs())
    }

    pub fn is_primitive(&self) -> bool {
        self.d() == 1
    }

    /// Image under an integer matrix acting on the column `(m, r)`.
    pub fn apply(&self, f: [[i64; 2]; 2]) -> TorusCurve {
        TorusCurve {
            m: f[0][0] * self.m + f[0][1] * self.r,
            r: f[1][0] * self.m + f[1][1] * self.r,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Complex coefficients over the simple labels of C or Z(C).
#[derive(Debug, Clone, PartialEq)]
pub struct K0Vector(pub Vec<Complex64>);

impl K0Vector {
    pub fn basis(rank: usize, index: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); rank];
        v[index] = Complex64::new(1.0, 0.0);
        K0Vector(v)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        K0Vector(self.0.iter().map(|&x| x * s).collect())
    }
}

/// The canonical SL(2,Z) completion with first column `(m, r)` (primitive):
/// the completing column is the shortest one, reduced along `(m, r)`.
pub fn curve_completion(curve: TorusCurve) -> [[i64; 2]; 2] {
    let (m, r) = (curve.m, curve.r);
    debug_assert_eq!(gcd(m.unsigned_abs(), r.unsigned_abs()), 1);
    // Extended Euclid: m x + r y = 1, so the column (c, d) = (-y, x) gives
    // determinant m d - r c = 1.
    let (x, y) = ext_gcd(m, r);
    let (mut c, mut d) = (-y, x);
    // The completion is unique up to (c, d) += k (m, r); reduce to the
    // shortest representative, preferring the smaller k on ties.
    let num = (c as i128) * (m as i128) + (d as i128) * (r as i128);
    let den = (m as i128) * (m as i128) + (r as i128) * (r as i128);
    let k0 = (-(num as f64) / den as f64).floor() as i64;
    let mut best = (i64::MAX, 0i64);
    for k in k0 - 1..=k0 + 2 {
        let len = (c + k * m).abs() + (d + k * r).abs();
        if (len, k) < best {
            best = (len, k);
        }
    }
    c += best.1 * m;
    d += best.1 * r;
    [[m, c], [r, d]]
}

/// Bezout coefficients: `a x + b y = gcd(a, b)` with the gcd normalized
/// positive.
fn ext_gcd(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        return (a.signum(), 0);
    }
    let (x, y) = ext_gcd(b, a.rem_euclid(b));
    (y, x - a.div_euclid(b) * y)
}

struct Convention {
    /// Conjugator g: the implementation applies rho_std(g f g^{-1}).
    g: [[i64; 2]; 2],
    g_inv: [[i64; 2]; 2],
}

/// Finds the matrix massage aligning `torus_rep_apply` over the center's
/// (S, T) with the geometric curve action realized by the tube transports.
fn find_convention(center: &Center, tol: Tol) -> Result<Convention, IndicatorError> {
    let s = [[0i64, -1], [1, 0]];
    let j = [[1i64, 0], [0, -1]];
    let s2 = mat_mul(s, s);
    let s3 = mat_mul(s2, s);
    let id = [[1i64, 0], [0, 1]];
    let mut candidates = Vec::new();
    for &a in &[id, s, s2, s3] {
        for &b in &[id, j] {
            candidates.push(mat_mul(a, b));
        }
    }
    // Probe states: transported curve classes for each simple label.
    let rank_c = center.tube.fs.ring.rank;
    let u_mat = [[1i64, 0], [1, 1]];
    let t_mat = [[1i64, 1], [0, 1]];
    for g in candidates {
        let g_inv = invert_unimodular(g);
        let ok = (0..rank_c).all(|v| {
            let base = center.curve_class(1, 0, &[v]);
            for (mat, curve) in [(u_mat, (1i64, 1i64)), (t_mat, (1i64, 0i64)), (s, (0i64, 1i64))] {
                let massaged = mat_mul(mat_mul(g, mat), g_inv);
                let Ok(applied) = torus_rep_apply(&center.modular, massaged, &base, false, tol) else {
                    return false;
                };
                let expect = center.curve_class(curve.0, curve.1, &[v]);
                let err: f64 = applied
                    .iter()
                    .zip(&expect)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                if err > 1e-6 {
                    return false;
                }
            }
            true
        });
        if ok {
            return Ok(Convention { g, g_inv });
        }
    }
    Err(IndicatorError::NoConvention)
}

fn invert_unimodular(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    debug_assert!(det == 1 || det == -1);
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

/// Applies the curve-coordinate action of `f` to a state vector through the
/// center's modular data.
pub fn curve_rep_apply(
    center: &Center,
    f: [[i64; 2]; 2],
    state: &[Complex64],
    tol: Tol,
) -> Result<Vec<Complex64>, IndicatorError> {
    let conv = find_convention(center, tol)?;
    let massaged = mat_mul(mat_mul(conv.g, f), conv.g_inv);
    Ok(torus_rep_apply(&center.modular, massaged, state, false, tol)?)
}

/// Genus-1 topological indicator.
///
/// For a primitive curve this is `< rho(f_{(m,r)}) (B v), z >`, normalized so
/// that the `(1, 0)` curve against a simple object reproduces the induction
/// matrix. Non-primitive curves route through the tube-algebra transport
/// with every component colored by the (monomial) object class.
pub fn genus1_indicator(
    center: &Center,
    curve: TorusCurve,
    v: &K0Vector,
    z: &K0Vector,
    tol: Tol,
) -> Result<Complex64, IndicatorError> {
    let rank_c = center.tube.fs.ring.rank;
    let rank_z = center.rank_z();
    if v.0.len() != rank_c {
        return Err(IndicatorError::Length(v.0.len(), rank_c));
    }
    if z.0.len() != rank_z {
        return Err(IndicatorError::Length(z.0.len(), rank_z));
    }
    if curve.m == 0 && curve.r == 0 {
        return Err(IndicatorError::ZeroCurve);
    }
    if curve.is_primitive() {
        // State of the (1,0)-curve colored by v, pushed through rho(f).
        let mut state = vec![Complex64::new(0.0, 0.0); rank_z];
        for (label, &coeff) in v.0.iter().enumerate() {
            if coeff.norm_sqr() == 0.0 {
                continue;
            }
            for x in 0..rank_z {
                state[x] += coeff * center.data.induction[label][x] as f64;
            }
        }
        let f = curve_completion(curve);
        let moved = curve_rep_apply(center, f, &state, tol)?;
        Ok(moved.iter().zip(&z.0).map(|(a, b)| a * b).sum())
    } else {
        let (lambda, weights) = monomial_factor(&v.0, tol).ok_or(IndicatorError::NonMonomial)?;
        let d = curve.d() as usize;
        let mut total = vec![Complex64::new(0.0, 0.0); rank_z];
        let mut tuple = vec![0usize; d];
        loop {
            let weight: u64 = tuple.iter().map(|&i| weights[i]).product();
            if weight > 0 {
                let cls = center.curve_class(curve.m, curve.r, &tuple);
                for (t, c) in total.iter_mut().zip(cls) {
                    *t += Complex64::new(weight as f64, 0.0) * c;
                }
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                tuple[pos] += 1;
                if tuple[pos] < rank_c {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
        let scale = lambda.powu(d as u32);
        Ok(scale * total.iter().zip(&z.0).map(|(a, b)| a * b).sum::<Complex64>())
    }
}

/// Splits `v = lambda * w` with `w` a nonnegative integer vector.
fn monomial_factor(v: &[Complex64], tol: Tol) -> Option<(Complex64, Vec<u64>)> {
    let pivot = v.iter().position(|c| c.norm() > tol.0)?;
    for k in 1..=64u64 {
        let lambda = v[pivot] / k as f64;
        let mut weights = Vec::with_capacity(v.len());
        let mut ok = true;
        for &c in v {
            let w = c / lambda;
            if w.im.abs() > 1e-9 || w.re < -1e-9 || (w.re - w.re.round()).abs() > 1e-9 {
                ok = false;
                break;
            }
            weights.push(w.re.round() as u64);
        }
        if ok {
            return Some((lambda, weights));
        }
    }
    None
}

/// Generalized Frobenius–Schur indicator `nu_{n,k}(V)` against a chosen
/// center vector (defaulting to the vacuum).
pub fn fs_indicator(
    center: &Center,
    n: i64,
    k: i64,
    label: usize,
    z: Option<&K0Vector>,
    tol: Tol,
) -> Result<Complex64, IndicatorError> {
    let curve = TorusCurve::new(n, k)?;
    let v = K0Vector::basis(center.tube.fs.ring.rank, label);
    let vacuum = K0Vector::basis(center.rank_z(), 0);
    genus1_indicator(center, curve, &v, z.unwrap_or(&vacuum), tol)
}

/// Direct tube-algebra evaluation of the indicator: the block trace of the
/// transported curve element. Shares nothing with the word/representation
/// route of [`genus1_indicator`] beyond the decomposition itself.
pub fn indicator_reference_oracle(
    center: &Center,
    curve: TorusCurve,
    label: usize,
    x: usize,
) -> Result<Complex64, IndicatorError> {
    if curve.m == 0 && curve.r == 0 {
        return Err(IndicatorError::ZeroCurve);
    }
    let d = curve.d() as usize;
    let colors = vec![label; d];
    let cls = center.curve_class(curve.m, curve.r, &colors);
    Ok(cls[x])
}

/// Result of one equivariance comparison.
#[derive(Debug, Clone, Serialize)]
pub struct EquivarianceReport {
    pub holds: bool,
    pub residual: f64,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
}

/// Checks `I(f(curve), v, z) = I(curve, v, f~(z))` with `f~ = j f j` the
/// orientation-reversed conjugate.
pub fn check_equivariance(
    center: &Center,
    f: [[i64; 2]; 2],
    curve: TorusCurve,
    v: &K0Vector,
    z: &K0Vector,
    tol: Tol,
) -> Result<EquivarianceReport, IndicatorError> {
    let moved = curve.apply(f);
    let lhs = genus1_indicator(center, moved, v, z, tol)?;
    let j = [[1i64, 0], [0, -1]];
    let f_tilde = mat_mul(mat_mul(j, f), j);
    let z_moved = curve_rep_apply(center, f_tilde, &z.0, tol)?;
    let rhs = genus1_indicator(center, curve, v, &K0Vector(z_moved), tol)?;
    let residual = (lhs - rhs).norm();
    Ok(EquivarianceReport {
        holds: residual <= tol.0.max(1e-6),
        residual,
        lhs: [lhs.re, lhs.im],
        rhs: [rhs.re, rhs.im],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::decompose_center;
    use crate::fixtures;
    use crate::fsym::parse_fsymbols;
    use crate::ring::parse_fusion_ring;
    use crate::tube::build_tube_algebra;

    fn center(name: &str) -> Center {
        let text = fixtures::ring_json(name).unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        let fs = parse_fsymbols(text, &ring).unwrap();
        let tube = build_tube_algebra(&fs).unwrap();
        decompose_center(&tube, 42, Tol::default()).unwrap()
    }

    #[test]
    fn anchor_curve_reproduces_induction() {
        for name in ["vec_z2", "fib"] {
            let c = center(name);
            let curve = TorusCurve::new(1, 0).unwrap();
            for v in 0..c.tube.fs.ring.rank {
                for x in 0..c.rank_z() {
                    let val = genus1_indicator(
                        &c,
                        curve,
                        &K0Vector::basis(c.tube.fs.ring.rank, v),
                        &K0Vector::basis(c.rank_z(), x),
                        Tol::default(),
                    )
                    .unwrap();
                    let expect = c.data.induction[v][x] as f64;
                    assert!(
                        (val - Complex64::new(expect, 0.0)).norm() < 1e-8,
                        "{name}: B[{v}][{x}] = {val}"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_matches_indicator_on_small_curves() {
        for name in ["vec_z2", "fib"] {
            let c = center(name);
            for m in -2i64..=2 {
                for r in -2i64..=2 {
                    if m == 0 && r == 0 {
                        continue;
                    }
                    let curve = TorusCurve::new(m, r).unwrap();
                    if !curve.is_primitive() {
                        continue;
                    }
                    for v in 0..c.tube.fs.ring.rank {
                        for x in 0..c.rank_z() {
                            let reference =
                                indicator_reference_oracle(&c, curve, v, x).unwrap();
                            let val = genus1_indicator(
                                &c,
                                curve,
                                &K0Vector::basis(c.tube.fs.ring.rank, v),
                                &K0Vector::basis(c.rank_z(), x),
                                Tol::default(),
                            )
                            .unwrap();
                            assert!(
                                (reference - val).norm() < 1e-6,
                                "{name} ({m},{r}) v={v} x={x}: oracle {reference} vs {val}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nu2_of_real_selfdual_objects() {
        // nu_2 against the vacuum: 1 for the nontrivial boson of Vec_Z2 and
        // for the Fibonacci tau.
        let c = center("vec_z2");
        let v = fs_indicator(&c, 2, 0, 1, None, Tol::default()).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-7, "Vec_Z2 nu2(g) = {v}");
        let c = center("fib");
        let v = fs_indicator(&c, 2, 0, 1, None, Tol::default()).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-7, "Fib nu2(tau) = {v}");
    }

    #[test]
    fn nu10_against_vacuum_is_delta() {
        for name in ["vec_z2", "fib", "ising"] {
            let c = center(name);
            for v in 0..c.tube.fs.ring.rank {
                let val = fs_indicator(&c, 1, 0, v, None, Tol::default()).unwrap();
                let expect = f64::from(v == 0);
                assert!((val - Complex64::new(expect, 0.0)).norm() < 1e-8, "{name} nu_1({v})");
            }
        }
    }

    #[test]
    fn equivariance_small_cases() {
        let c = center("vec_z2");
        let t = [[1i64, 1], [0, 1]];
        let curve = TorusCurve::new(1, 0).unwrap();
        for x in 0..4 {
            let rep = check_equivariance(
                &c,
                t,
                curve,
                &K0Vector::basis(2, 1),
                &K0Vector::basis(4, x),
                Tol::default(),
            )
            .unwrap();
            assert!(rep.holds, "x = {x}: {rep:?}");
        }
    }

    #[test]
    fn scaling_law() {
        let c = center("fib");
        let curve = TorusCurve::new(1, 1).unwrap();
        for lambda in [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)] {
            for ell in 1i64..=3 {
                // v = (lambda V)^ell as a K0 class: lambda^ell times the
                // class of V^{tensor ell}.
                let ring = &c.tube.fs.ring;
                let mut class = vec![Complex64::new(0.0, 0.0); ring.rank];
                let word = vec![1usize; ell as usize];
                for (k, item) in class.iter_mut().enumerate() {
                    *item = Complex64::new(ring.product_multiplicity(&word, k) as f64, 0.0);
                }
                let v = K0Vector(class).scaled(lambda.powu(ell as u32));
                for x in 0..c.rank_z() {
                    let z = K0Vector::basis(c.rank_z(), x);
                    let lhs = genus1_indicator(&c, curve, &v, &z, Tol::default()).unwrap();
                    let cabled = TorusCurve::new(curve.m * ell, curve.r * ell).unwrap();
                    let base = genus1_indicator(
                        &c,
                        cabled,
                        &K0Vector::basis(ring.rank, 1),
                        &z,
                        Tol::default(),
                    )
                    .unwrap();
                    let expect = lambda.powu((curve.d() as u32) * ell as u32) * base;
                    assert!(
                        (lhs - expect).norm() < 1e-9 * (1.0 + expect.norm()),
                        "lambda={lambda} ell={ell} x={x}: {lhs} vs {expect}"
                    );
                }
            }
        }
    }
}
