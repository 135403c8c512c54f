//! Nonnegative-integer-matrix representations of fusion rings: the K0
//! shadow of a module category.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{frobenius_perron_data, FusionRing, RingError};

#[derive(Debug, Error)]
pub enum NimRepError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("action table has {found} matrices, expected {expected}")]
    ActionCount { found: usize, expected: usize },
    #[error("action matrix {0} is not {1}x{1}")]
    Shape(usize, usize),
    #[error("Ntilde[0] is not the identity")]
    UnitAction,
    #[error("Ntilde[dual({0})] is not the transpose of Ntilde[{0}]")]
    DualTranspose(usize),
    #[error("representation property fails at pair (i={i}, j={j})")]
    Representation { i: usize, j: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A fusion-ring action on a based module: one nonnegative integer matrix
/// per label, plus the module Frobenius–Perron weights.
#[derive(Debug, Clone)]
pub struct NimRep {
    pub module_rank: usize,
    /// `ntilde[i]` is row-major `module_rank x module_rank`.
    pub ntilde: Vec<Vec<u32>>,
    pub dm: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NimRepFile {
    module_rank: usize,
    action: Vec<Vec<Vec<u32>>>,
}

impl NimRep {
    pub fn entry(&self, label: usize, r: usize, c: usize) -> u32 {
        self.ntilde[label][r * self.module_rank + c]
    }

    /// The action matrix of `label` as dense f64 rows.
    pub fn matrix(&self, label: usize) -> Vec<Vec<f64>> {
        let m = self.module_rank;
        (0..m)
            .map(|r| (0..m).map(|c| self.entry(label, r, c) as f64).collect())
            .collect()
    }

    /// Regular module: the ring acting on itself.
    pub fn regular(ring: &FusionRing) -> NimRep {
        let r = ring.rank;
        let ntilde: Vec<Vec<u32>> = (0..r)
            .map(|i| {
                let mut m = vec![0u32; r * r];
                for k in 0..r {
                    for j in 0..r {
                        m[k * r + j] = ring.n(i, j, k);
                    }
                }
                m
            })
            .collect();
        let dims = frobenius_perron_data(ring).expect("valid ring");
        NimRep { module_rank: r, ntilde, dm: dims.d }
    }

    pub fn to_json(&self) -> String {
        let m = self.module_rank;
        let file = NimRepFile {
            module_rank: m,
            action: self
                .ntilde
                .iter()
                .map(|mat| (0..m).map(|r| mat[r * m..(r + 1) * m].to_vec()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("nimrep serialization")
    }
}

/// Parses a module-action document and verifies the NIM-rep axioms over `ring`.
pub fn parse_nimrep(text: &str, ring: &FusionRing) -> Result<NimRep, NimRepError> {
    let file: NimRepFile = serde_json::from_str(text).map_err(|e| NimRepError::Syntax(e.to_string()))?;
    let m = file.module_rank;
    if m == 0 {
        return Err(NimRepError::Syntax("module_rank must be positive".into()));
    }
    if file.action.len() != ring.rank {
        return Err(NimRepError::ActionCount { found: file.action.len(), expected: ring.rank });
    }
    let mut ntilde = Vec::with_capacity(ring.rank);
    for (i, rows) in file.action.iter().enumerate() {
        if rows.len() != m || rows.iter().any(|row| row.len() != m) {
            return Err(NimRepError::Shape(i, m));
        }
        ntilde.push(rows.iter().flatten().copied().collect::<Vec<u32>>());
    }
    build_nimrep(ring, m, ntilde)
}

fn build_nimrep(ring: &FusionRing, m: usize, ntilde: Vec<Vec<u32>>) -> Result<NimRep, NimRepError> {
    for r in 0..m {
        for c in 0..m {
            if ntilde[0][r * m + c] != u32::from(r == c) {
                return Err(NimRepError::UnitAction);
            }
        }
    }
    for i in 0..ring.rank {
        let di = ring.dual[i];
        for r in 0..m {
            for c in 0..m {
                if ntilde[di][r * m + c] != ntilde[i][c * m + r] {
                    return Err(NimRepError::DualTranspose(i));
                }
            }
        }
    }
    for i in 0..ring.rank {
        for j in 0..ring.rank {
            for r in 0..m {
                for c in 0..m {
                    let lhs: u32 = (0..m).map(|s| ntilde[i][r * m + s] * ntilde[j][s * m + c]).sum();
                    let rhs: u32 = (0..ring.rank)
                        .map(|k| ring.n(i, j, k) * ntilde[k][r * m + c])
                        .sum();
                    if lhs != rhs {
                        return Err(NimRepError::Representation { i, j });
                    }
                }
            }
        }
    }
    // Module FP weights: top eigenvector of R = sum_i d_i Ntilde[i], scaled so
    // that R = dm dm^T (the rank-one K0 identity fixes the normalization).
    let dims = frobenius_perron_data(ring)?;
    let mut rmat = vec![0.0f64; m * m];
    for i in 0..ring.rank {
        for idx in 0..m * m {
            rmat[idx] += dims.d[i] * ntilde[i][idx] as f64;
        }
    }
    let mut v = vec![1.0f64; m];
    for _ in 0..100_000 {
        let mut w = vec![0.0f64; m];
        for r in 0..m {
            for c in 0..m {
                w[r] += rmat[r * m + c] * v[c];
            }
        }
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in w.iter_mut() {
            *x /= norm;
        }
        let delta: f64 = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    let lambda: f64 = {
        let mut num = 0.0;
        for r in 0..m {
            for c in 0..m {
                num += v[r] * rmat[r * m + c] * v[c];
            }
        }
        num
    };
    let dm: Vec<f64> = v.iter().map(|x| x * lambda.sqrt()).collect();
    Ok(NimRep { module_rank: m, ntilde, dm })
}
