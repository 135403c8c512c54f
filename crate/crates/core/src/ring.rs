//! Fusion rings: labels, duality, the fusion coefficient tensor, and
//! Frobenius–Perron dimension data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Tol;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("label count {labels} does not match rank {rank}")]
    LabelCount { labels: usize, rank: usize },
    #[error("duplicate fusion entry for ({0}, {1}, {2})")]
    DuplicateEntry(usize, usize, usize),
    #[error("fusion index out of range in entry ({0}, {1}, {2})")]
    IndexRange(usize, usize, usize),
    #[error("unit violation: N[{i}][{j}][{k}] = {found}, expected {expected}")]
    UnitViolation { i: usize, j: usize, k: usize, found: u32, expected: u32 },
    #[error("duality violation: {0}")]
    DualityViolation(String),
    #[error("associativity violation at (i={i}, j={j}, k={k}, l={l}): {lhs} != {rhs}")]
    AssociativityViolation { i: usize, j: usize, k: usize, l: usize, lhs: u32, rhs: u32 },
    #[error("Frobenius–Perron iteration did not converge within {0} steps")]
    NonConvergence(usize),
}

/// A based ring with nonnegative structure constants, unit label 0 and a
/// duality involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    pub rank: usize,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    n: Vec<u32>,
}

/// Frobenius–Perron dimensions and the global dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionData {
    pub d: Vec<f64>,
    pub mu: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    rank: usize,
    labels: Vec<String>,
    dual: Vec<usize>,
    fusion: Vec<[u32; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fsymbols: Option<Vec<[f64; 8]>>,
}

impl FusionRing {
    /// Builds a ring from explicit data and verifies every axiom.
    pub fn new(labels: Vec<String>, dual: Vec<usize>, n: Vec<u32>) -> Result<Self, RingError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(RingError::Syntax("rank must be positive".into()));
        }
        if n.len() != rank * rank * rank {
            return Err(RingError::Syntax(format!(
                "fusion tensor has {} entries, expected {}",
                n.len(),
                rank * rank * rank
            )));
        }
        let ring = FusionRing { rank, labels, dual, n };
        ring.validate()?;
        Ok(ring)
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    /// Matrix of left multiplication by label `i`: entry `(k, j)` is `N_{ij}^k`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<f64>> {
        (0..self.rank)
            .map(|k| (0..self.rank).map(|j| self.n(i, j, k) as f64).collect())
            .collect()
    }

    /// True when every fusion coefficient is 0 or 1.
    pub fn multiplicity_free(&self) -> bool {
        self.n.iter().all(|&c| c <= 1)
    }

    /// Multiplicity of label `k` in the product of the given label word.
    pub fn product_multiplicity(&self, word: &[usize], k: usize) -> u64 {
        // Row vector of multiplicities, updated word letter by letter.
        let mut acc = vec![0u64; self.rank];
        acc[0] = 1;
        for &x in word {
            let mut next = vec![0u64; self.rank];
            for (cur, &mult) in acc.iter().enumerate() {
                if mult == 0 {
                    continue;
                }
                for out in 0..self.rank {
                    next[out] += mult * self.n(cur, x, out) as u64;
                }
            }
            acc = next;
        }
        acc[k]
    }

    fn validate(&self) -> Result<(), RingError> {
        let r = self.rank;
        if self.dual.len() != r {
            return Err(RingError::LabelCount { labels: self.dual.len(), rank: r });
        }
        for (i, &di) in self.dual.iter().enumerate() {
            if di >= r {
                return Err(RingError::DualityViolation(format!("dual({i}) = {di} out of range")));
            }
            if self.dual[di] != i {
                return Err(RingError::DualityViolation(format!(
                    "dual is not an involution at label {i}"
                )));
            }
        }
        if self.dual[0] != 0 {
            return Err(RingError::DualityViolation("dual(0) must be 0".into()));
        }
        // Unit axioms.
        for j in 0..r {
            for k in 0..r {
                let expected = u32::from(j == k);
                if self.n(0, j, k) != expected {
                    return Err(RingError::UnitViolation { i: 0, j, k, found: self.n(0, j, k), expected });
                }
                if self.n(j, 0, k) != expected {
                    return Err(RingError::UnitViolation { i: j, j: 0, k, found: self.n(j, 0, k), expected });
                }
            }
        }
        // Duality: N_{ij}^0 = delta_{j, dual(i)}.
        for i in 0..r {
            for j in 0..r {
                let expected = u32::from(j == self.dual[i]);
                if self.n(i, j, 0) != expected {
                    return Err(RingError::DualityViolation(format!(
                        "N[{i}][{j}][0] = {}, expected {}",
                        self.n(i, j, 0),
                        expected
                    )));
                }
            }
        }
        // Frobenius reciprocity.
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let a = self.n(i, j, k);
                    let b = self.n(self.dual[i], k, j);
                    let c = self.n(k, self.dual[j], i);
                    if a != b || a != c {
                        return Err(RingError::DualityViolation(format!(
                            "Frobenius reciprocity fails at ({i}, {j}, {k}): {a}, {b}, {c}"
                        )));
                    }
                }
            }
        }
        // Associativity.
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u32 = (0..r).map(|m| self.n(i, j, m) * self.n(m, k, l)).sum();
                        let rhs: u32 = (0..r).map(|m| self.n(j, k, m) * self.n(i, m, l)).sum();
                        if lhs != rhs {
                            return Err(RingError::AssociativityViolation { i, j, k, l, lhs, rhs });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical JSON serialization; `fsymbols` round-trips when supplied.
    pub fn to_json_with_fsymbols(&self, fsymbols: Option<Vec<[f64; 8]>>) -> String {
        let mut fusion = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let c = self.n(i, j, k);
                    if c != 0 {
                        fusion.push([i as u32, j as u32, k as u32, c]);
                    }
                }
            }
        }
        let file = RingFile {
            rank: self.rank,
            labels: self.labels.clone(),
            dual: self.dual.clone(),
            fusion,
            fsymbols,
        };
        serde_json::to_string_pretty(&file).expect("ring serialization")
    }

    pub fn to_json(&self) -> String {
        self.to_json_with_fsymbols(None)
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }
}

fn parse_ring_file(text: &str) -> Result<(FusionRing, Option<Vec<[f64; 8]>>), RingError> {
    let file: RingFile = serde_json::from_str(text).map_err(|e| RingError::Syntax(e.to_string()))?;
    if file.labels.len() != file.rank {
        return Err(RingError::LabelCount { labels: file.labels.len(), rank: file.rank });
    }
    let r = file.rank;
    let mut n = vec![u32::MAX; r * r * r];
    for &[i, j, k, c] in &file.fusion {
        let (i, j, k) = (i as usize, j as usize, k as usize);
        if i >= r || j >= r || k >= r {
            return Err(RingError::IndexRange(i, j, k));
        }
        let slot = (i * r + j) * r + k;
        if n[slot] != u32::MAX {
            return Err(RingError::DuplicateEntry(i, j, k));
        }
        n[slot] = c;
    }
    for slot in n.iter_mut() {
        if *slot == u32::MAX {
            *slot = 0;
        }
    }
    let ring = FusionRing::new(file.labels, file.dual, n)?;
    Ok((ring, file.fsymbols))
}

/// Parses and fully validates a ring-description document.
pub fn parse_fusion_ring(text: &str) -> Result<FusionRing, RingError> {
    parse_ring_file(text).map(|(ring, _)| ring)
}

/// Parses a category file returning the raw F-symbol rows alongside the ring.
pub fn parse_ring_document(text: &str) -> Result<(FusionRing, Option<Vec<[f64; 8]>>), RingError> {
    parse_ring_file(text)
}

const FP_MAX_ITER: usize = 100_000;

/// Frobenius–Perron dimensions by power iteration on the total fusion
/// matrix, with a final Rayleigh refinement. Deterministic to 1e-12.
pub fn frobenius_perron_data(ring: &FusionRing) -> Result<DimensionData, RingError> {
    let r = ring.rank;
    let total: Vec<Vec<f64>> = (0..r)
        .map(|k| {
            (0..r)
                .map(|j| (0..r).map(|i| ring.n(i, j, k) as f64).sum())
                .collect()
        })
        .collect();
    let mut v = vec![1.0f64; r];
    let mut converged = false;
    for _ in 0..FP_MAX_ITER {
        let mut w = vec![0.0f64; r];
        for k in 0..r {
            for j in 0..r {
                w[k] += total[k][j] * v[j];
            }
        }
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(RingError::NonConvergence(FP_MAX_ITER));
        }
        for x in w.iter_mut() {
            *x /= norm;
        }
        let delta: f64 = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(RingError::NonConvergence(FP_MAX_ITER));
    }
    if v[0] <= 0.0 {
        return Err(RingError::NonConvergence(FP_MAX_ITER));
    }
    let d: Vec<f64> = v.iter().map(|x| x / v[0]).collect();
    // Rayleigh refinement of the per-label dimensions: d_i = (N_i d, d)/(d, d).
    let dd: f64 = d.iter().map(|x| x * x).sum();
    let refined: Vec<f64> = (0..r)
        .map(|i| {
            let mut num = 0.0;
            for k in 0..r {
                let mut row = 0.0;
                for j in 0..r {
                    row += ring.n(i, j, k) as f64 * d[j];
                }
                num += row * d[k];
            }
            num / dd
        })
        .collect();
    let mu = refined.iter().map(|x| x * x).sum();
    Ok(DimensionData { d: refined, mu })
}

impl DimensionData {
    /// Residual of the eigen-equation `sum_k N_{ij}^k d_k = d_i d_j`.
    pub fn eigen_residual(&self, ring: &FusionRing) -> f64 {
        let r = ring.rank;
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let lhs: f64 = (0..r).map(|k| ring.n(i, j, k) as f64 * self.d[k]).sum();
                worst = worst.max((lhs - self.d[i] * self.d[j]).abs());
            }
        }
        worst
    }

    pub fn check(&self, ring: &FusionRing, tol: Tol) -> bool {
        self.eigen_residual(ring) <= tol.0.max(1e-9)
            && (self.d[0] - 1.0).abs() <= tol.0
            && (0..ring.rank).all(|i| (self.d[i] - self.d[ring.dual[i]]).abs() <= tol.0)
    }
}
