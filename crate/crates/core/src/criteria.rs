//! Positivity criteria for unitary categorification of fusion rings and
//! module actions, plus the rank-one K0 identity for module weights.

use serde::Serialize;
use thiserror::Error;

use crate::nimrep::NimRep;
use crate::ring::{DimensionData, FusionRing};
use crate::scalar::Tol;
use crate::smallalg::{minimal_polynomial, monic_roots, CMat, C};

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("matrix dimension {dim} exceeds the size cap {cap}")]
    SizeCap { dim: usize, cap: usize },
    #[error("n must be at least 1")]
    BadN,
}

/// Verdict for one value of `n`: the matrix that was tested, its smallest
/// eigenvalue, and whether it clears `-tol`.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub n: usize,
    pub matrix_dim: usize,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct CriteriaOptions {
    pub tol: Tol,
    /// Largest allowed Kronecker-power dimension.
    pub size_cap: usize,
    /// Above this dimension the spectrum is taken from the common
    /// eigenbasis of the commuting action matrices instead of a dense
    /// eigendecomposition.
    pub dense_cap: usize,
}

impl Default for CriteriaOptions {
    fn default() -> Self {
        CriteriaOptions { tol: Tol::default(), size_cap: 4096, dense_cap: 2200 }
    }
}

fn checked_dim(base: usize, n: usize, cap: usize) -> Result<usize, CriteriaError> {
    if n == 0 {
        return Err(CriteriaError::BadN);
    }
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim.saturating_mul(base);
        if dim > cap {
            return Err(CriteriaError::SizeCap { dim, cap });
        }
    }
    Ok(dim)
}

/// Weighted Kronecker power `M_n = sum_j d_j^{2-n} A_j^{(x) n}` for a family
/// of action matrices closed under transpose via the duality pairing.
///
/// The output is exactly symmetric: entries are computed once per unordered
/// index pair and mirrored.
fn weighted_kron_power(
    mats: &[Vec<Vec<f64>>],
    dual: &[usize],
    d: &[f64],
    n: usize,
    dim: usize,
) -> Vec<f64> {
    let base = mats[0].len();
    let labels = mats.len();
    // Representatives of {j, dual(j)} pairs, in ascending order.
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for j in 0..labels {
        if j <= dual[j] {
            reps.push((j, dual[j]));
        }
    }
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0usize; n];
        for t in (0..n).rev() {
            out[t] = idx % base;
            idx /= base;
        }
        out
    };
    let mut m = vec![0.0f64; dim * dim];
    for row in 0..dim {
        let rd = digits(row);
        for col in row..dim {
            let cd = digits(col);
            let mut acc = 0.0f64;
            for &(j, jd) in &reps {
                let w = d[j].powi(2 - n as i32);
                let mut p = 1.0f64;
                for t in 0..n {
                    p *= mats[j][rd[t]][cd[t]];
                    if p == 0.0 {
                        break;
                    }
                }
                if j == jd {
                    acc += w * p;
                } else {
                    let mut q = 1.0f64;
                    for t in 0..n {
                        q *= mats[jd][rd[t]][cd[t]];
                        if q == 0.0 {
                            break;
                        }
                    }
                    acc += w * (p + q);
                }
            }
            m[row * dim + col] = acc;
            m[col * dim + row] = acc;
        }
    }
    m
}

/// The criterion matrix `M_n = sum_j d_j^{2-n} N_j^{(x) n}` for the ring.
pub fn criterion_matrix(
    ring: &FusionRing,
    dims: &DimensionData,
    n: usize,
    opts: &CriteriaOptions,
) -> Result<Vec<f64>, CriteriaError> {
    let dim = checked_dim(ring.rank, n, opts.size_cap)?;
    let mats: Vec<Vec<Vec<f64>>> = (0..ring.rank).map(|j| ring.fusion_matrix(j)).collect();
    Ok(weighted_kron_power(&mats, &ring.dual, &dims.d, n, dim))
}

fn min_eigenvalue_dense(m: &[f64], dim: usize) -> f64 {
    let mat = faer::Mat::from_fn(dim, dim, |i, j| m[i * dim + j]);
    let ev = mat
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .expect("symmetric eigensolver");
    ev.into_iter().fold(f64::INFINITY, f64::min)
}

/// Simultaneous spectrum of a commuting family: `spectra[j][m]` is the
/// eigenvalue of `mats[j]` on the m-th common eigenvector.
fn family_spectrum(mats: &[Vec<Vec<f64>>], d: &[f64]) -> Option<Vec<Vec<C>>> {
    let base = mats[0].len();
    let labels = mats.len();
    // Commutativity is required for a common eigenbasis.
    for a in 0..labels {
        for b in a + 1..labels {
            for r in 0..base {
                for c in 0..base {
                    let ab: f64 = (0..base).map(|k| mats[a][r][k] * mats[b][k][c]).sum();
                    let ba: f64 = (0..base).map(|k| mats[b][r][k] * mats[a][k][c]).sum();
                    if (ab - ba).abs() > 1e-9 {
                        return None;
                    }
                }
            }
        }
    }
    for attempt in 0..8u32 {
        let weights: Vec<f64> = (0..labels)
            .map(|j| ((j as f64 + 1.3) * (1.7 + attempt as f64)).sin() + 2.0)
            .collect();
        let mut z = CMat::zeros(base, base);
        for j in 0..labels {
            for r in 0..base {
                for c in 0..base {
                    z[(r, c)] += C::new(weights[j] * mats[j][r][c], 0.0);
                }
            }
        }
        let start: Vec<C> = (0..base).map(|i| C::new(1.0 + (i as f64 * 0.37).cos(), 0.0)).collect();
        let Some(minpoly) = minimal_polynomial(base, &start, |v| z.mul_vec(v), 1e-10) else {
            continue;
        };
        if minpoly.len() != base {
            continue;
        }
        let Some(roots) = monic_roots(&minpoly) else { continue };
        let sep = {
            let mut s = f64::INFINITY;
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    s = s.min((roots[i] - roots[j]).norm());
                }
            }
            s
        };
        if sep < 1e-6 {
            continue;
        }
        let mut spectra = vec![vec![C::new(0.0, 0.0); base]; labels];
        let mut ok = true;
        for (m, &lambda) in roots.iter().enumerate() {
            let mut shifted = z.clone();
            for i in 0..base {
                shifted[(i, i)] -= lambda;
            }
            let ns = shifted.nullspace(1e-8);
            if ns.len() != 1 {
                ok = false;
                break;
            }
            let v = &ns[0];
            let pivot = (0..base).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm())).unwrap();
            for j in 0..labels {
                let mut img = C::new(0.0, 0.0);
                for c in 0..base {
                    img += C::new(mats[j][pivot][c], 0.0) * v[c];
                }
                let lam_j = img / v[pivot];
                // Verify this really is a common eigenvector.
                let mut res = 0.0f64;
                for r in 0..base {
                    let mut acc = C::new(0.0, 0.0);
                    for c in 0..base {
                        acc += C::new(mats[j][r][c], 0.0) * v[c];
                    }
                    res = res.max((acc - lam_j * v[r]).norm());
                }
                if res > 1e-8 * (1.0 + lam_j.norm()) {
                    ok = false;
                    break;
                }
                spectra[j][m] = lam_j;
            }
            if !ok {
                break;
            }
        }
        if ok {
            let _ = d;
            return Some(spectra);
        }
    }
    None
}

/// Minimum eigenvalue of `M_n` from the common eigenbasis spectrum.
fn min_eigenvalue_spectral(spectra: &[Vec<C>], d: &[f64], n: usize) -> f64 {
    let base = spectra[0].len();
    let labels = spectra.len();
    // Multisets of eigenvector indices; the eigenvalue is symmetric in them.
    let mut stack: Vec<usize> = vec![0; n];
    let mut min = f64::INFINITY;
    fn rec(
        t: usize,
        lo: usize,
        stack: &mut Vec<usize>,
        n: usize,
        base: usize,
        labels: usize,
        spectra: &[Vec<C>],
        d: &[f64],
        min: &mut f64,
    ) {
        if t == n {
            let mut acc = C::new(0.0, 0.0);
            for j in 0..labels {
                let mut p = C::new(d[j].powi(2 - n as i32), 0.0);
                for &m in stack.iter() {
                    p *= spectra[j][m];
                }
                acc += p;
            }
            debug_assert!(acc.im.abs() < 1e-6 * (1.0 + acc.re.abs()));
            *min = min.min(acc.re);
            return;
        }
        for m in lo..base {
            stack[t] = m;
            rec(t + 1, m, stack, n, base, labels, spectra, d, min);
        }
    }
    rec(0, 0, &mut stack, n, base, labels, spectra, d, &mut min);
    min
}

fn positivity_reports(
    mats: &[Vec<Vec<f64>>],
    dual: &[usize],
    d: &[f64],
    n_max: usize,
    opts: &CriteriaOptions,
) -> Vec<CriterionReport> {
    let base = mats[0].len();
    let spectra = family_spectrum(mats, d);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let Ok(dim) = checked_dim(base, n, opts.size_cap) else { break };
        let min_eigenvalue = if dim <= opts.dense_cap {
            let m = weighted_kron_power(mats, dual, d, n, dim);
            min_eigenvalue_dense(&m, dim)
        } else if let Some(sp) = &spectra {
            min_eigenvalue_spectral(sp, d, n)
        } else {
            let m = weighted_kron_power(mats, dual, d, n, dim);
            min_eigenvalue_dense(&m, dim)
        };
        out.push(CriterionReport {
            n,
            matrix_dim: dim,
            min_eigenvalue,
            pass: opts.tol.is_nonneg(min_eigenvalue),
        });
    }
    out
}

/// Positivity reports for `n = 1..n_max`, subject to the size cap.
pub fn check_positivity(ring: &FusionRing, dims: &DimensionData, n_max: usize, opts: &CriteriaOptions) -> Vec<CriterionReport> {
    let mats: Vec<Vec<Vec<f64>>> = (0..ring.rank).map(|j| ring.fusion_matrix(j)).collect();
    positivity_reports(&mats, &ring.dual, &dims.d, n_max, opts)
}

/// Same criterion with the module action matrices in place of the regular
/// fusion matrices.
pub fn check_module_positivity(
    ring: &FusionRing,
    dims: &DimensionData,
    nim: &NimRep,
    n_max: usize,
    opts: &CriteriaOptions,
) -> Vec<CriterionReport> {
    let mats: Vec<Vec<Vec<f64>>> = (0..ring.rank).map(|j| nim.matrix(j)).collect();
    positivity_reports(&mats, &ring.dual, &dims.d, n_max, opts)
}

/// Result of the rank-one K0 identity `sum_i d_i Ntilde_i = dM dM^T`.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub holds: bool,
    pub residual: f64,
}

/// Checks the Omega-color identity at the K0 level for a module action.
pub fn omega_rank_one(ring: &FusionRing, dims: &DimensionData, nim: &NimRep, tol: Tol) -> OmegaReport {
    let m = nim.module_rank;
    let mut residual = 0.0f64;
    for r in 0..m {
        for c in 0..m {
            let lhs: f64 = (0..ring.rank).map(|i| dims.d[i] * nim.entry(i, r, c) as f64).sum();
            residual = residual.max((lhs - nim.dm[r] * nim.dm[c]).abs());
        }
    }
    OmegaReport { holds: residual <= tol.0.max(1e-9), residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ring::{frobenius_perron_data, parse_fusion_ring};

    fn load(name: &str) -> (FusionRing, DimensionData) {
        let ring = parse_fusion_ring(fixtures::ring_json(name).unwrap()).unwrap();
        let dims = frobenius_perron_data(&ring).unwrap();
        (ring, dims)
    }

    #[test]
    fn trivial_ring_matrix_is_one() {
        let (ring, dims) = load("trivial");
        let m = criterion_matrix(&ring, &dims, 3, &CriteriaOptions::default()).unwrap();
        assert_eq!(m, vec![1.0]);
    }

    #[test]
    fn vec_z2_n2_eigenvalues() {
        let (ring, dims) = load("vec_z2");
        let m = criterion_matrix(&ring, &dims, 2, &CriteriaOptions::default()).unwrap();
        // I (x) I + N1 (x) N1 has eigenvalues {0, 2}.
        let min = min_eigenvalue_dense(&m, 4);
        assert!(min.abs() < 1e-10);
    }

    #[test]
    fn criterion_matrix_bitwise_symmetric() {
        for name in ["vec_z2", "vec_z3", "fib", "ising", "rep_s3"] {
            let (ring, dims) = load(name);
            for n in 1..=4 {
                let Ok(m) = criterion_matrix(&ring, &dims, n, &CriteriaOptions::default()) else {
                    continue;
                };
                let dim = (ring.rank as f64).powi(n as i32) as usize;
                for r in 0..dim {
                    for c in 0..dim {
                        assert_eq!(m[r * dim + c].to_bits(), m[c * dim + r].to_bits());
                    }
                }
            }
        }
    }

    #[test]
    fn eigen_backend_sanity() {
        // diag(1, -1) must report minimum -1.
        let m = vec![1.0, 0.0, 0.0, -1.0];
        assert!((min_eigenvalue_dense(&m, 2) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn categorifiable_rings_pass() {
        for name in ["vec_z2", "vec_z3", "fib", "ising", "rep_s3"] {
            let (ring, dims) = load(name);
            let reports = check_positivity(&ring, &dims, 4, &CriteriaOptions::default());
            for rep in &reports {
                assert!(rep.pass, "{name} failed at n = {} with min {}", rep.n, rep.min_eigenvalue);
            }
        }
    }

    #[test]
    fn spectral_matches_dense() {
        for name in ["vec_z3", "fib", "ising"] {
            let (ring, dims) = load(name);
            let mats: Vec<Vec<Vec<f64>>> = (0..ring.rank).map(|j| ring.fusion_matrix(j)).collect();
            let spectra = family_spectrum(&mats, &dims.d).expect("commutative family");
            for n in 1..=4 {
                let Ok(dim) = checked_dim(ring.rank, n, 4096) else { break };
                let m = weighted_kron_power(&mats, &ring.dual, &dims.d, n, dim);
                let dense = min_eigenvalue_dense(&m, dim);
                let fast = min_eigenvalue_spectral(&spectra, &dims.d, n);
                assert!(
                    (dense - fast).abs() < 1e-7 * (1.0 + dense.abs()),
                    "{name} n={n}: dense {dense} vs spectral {fast}"
                );
            }
        }
    }

    #[test]
    fn regular_module_matches_ring_verdicts() {
        for name in ["vec_z2", "fib"] {
            let (ring, dims) = load(name);
            let nim = crate::nimrep::NimRep::regular(&ring);
            let a = check_positivity(&ring, &dims, 3, &CriteriaOptions::default());
            let b = check_module_positivity(&ring, &dims, &nim, 3, &CriteriaOptions::default());
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.pass, y.pass);
                assert!((x.min_eigenvalue - y.min_eigenvalue).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn omega_identity_for_regular_modules() {
        for name in ["trivial", "vec_z2", "vec_z3", "fib", "ising"] {
            let (ring, dims) = load(name);
            let nim = crate::nimrep::NimRep::regular(&ring);
            let report = omega_rank_one(&ring, &dims, &nim, Tol::default());
            assert!(report.holds, "{name}: residual {}", report.residual);
        }
    }

    #[test]
    fn trivial_module_of_vec_z2() {
        let (ring, dims) = load("vec_z2");
        let nim = crate::nimrep::parse_nimrep(r#"{"module_rank":1,"action":[[[1]],[[1]]]}"#, &ring).unwrap();
        let reports = check_module_positivity(&ring, &dims, &nim, 3, &CriteriaOptions::default());
        // n = 3: the 1x1 matrix [sum_j d_j^{-1}] = [2].
        assert!((reports[2].min_eigenvalue - 2.0).abs() < 1e-9);
        let omega = omega_rank_one(&ring, &dims, &nim, Tol::default());
        assert!(omega.holds);
    }
}
