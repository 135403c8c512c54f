//! Modular data: S and T matrices, Gauss sums, and the Verlinde fusion ring.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{FusionRing, RingError};
use crate::scalar::{complex_to_pair, pair_to_complex, Tol};

#[derive(Debug, Error)]
pub enum ModularError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("S matrix is not square or does not match T length")]
    Shape,
    #[error("S is not symmetric (residual {0:.3e})")]
    NotSymmetric(f64),
    #[error("S is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("T[0] must be 1, found {0}")]
    BadVacuumTwist(Complex64),
    #[error("|T[{0}]| differs from 1")]
    NonUnitaryTwist(usize),
    #[error("S[0][{0}] does not yield a positive dimension")]
    BadDimension(usize),
    #[error("Gauss sums violate p+ p- = D^2 (residual {0:.3e})")]
    GaussSum(f64),
    #[error("(ST)^3 differs from (p+/D) S^2 (residual {0:.3e})")]
    ModularRelation(f64),
    #[error("S^2 is not a charge-conjugation permutation")]
    BadChargeConjugation,
    #[error("Verlinde coefficient N[{i}][{j}][{k}] = {value} is not a nonnegative integer")]
    VerlindeIntegrality { i: usize, j: usize, k: usize, value: Complex64 },
    #[error("Verlinde ring rejected: {0}")]
    VerlindeRing(#[from] RingError),
}

/// S and T matrices of a modular category with derived quantities attached.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub rank: usize,
    s: Vec<Complex64>,
    t: Vec<Complex64>,
    /// Charge conjugation permutation, from S^2.
    pub conj: Vec<usize>,
    /// Verlinde fusion coefficients as a validated fusion ring.
    pub verlinde: FusionRing,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModularFile {
    #[serde(rename = "S")]
    s: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "T")]
    t: Vec<[f64; 2]>,
}

impl ModularData {
    pub fn s(&self, i: usize, j: usize) -> Complex64 {
        self.s[i * self.rank + j]
    }

    pub fn theta(&self, i: usize) -> Complex64 {
        self.t[i]
    }

    /// Quantum dimensions `S[0][i] / S[0][0]`.
    pub fn dims(&self) -> Vec<f64> {
        (0..self.rank).map(|i| (self.s(0, i) / self.s(0, 0)).re).collect()
    }

    /// Total dimension `D = 1 / S[0][0]`.
    pub fn dtotal(&self) -> f64 {
        (1.0 / self.s(0, 0)).re
    }

    pub fn p_plus(&self) -> Complex64 {
        let d = self.dims();
        (0..self.rank).map(|i| self.theta(i) * d[i] * d[i]).sum()
    }

    pub fn p_minus(&self) -> Complex64 {
        let d = self.dims();
        (0..self.rank).map(|i| self.theta(i).conj() * d[i] * d[i]).sum()
    }

    /// Builds modular data from raw matrices, verifying every invariant.
    pub fn new(s: Vec<Complex64>, t: Vec<Complex64>, tol: Tol) -> Result<Self, ModularError> {
        let rank = t.len();
        if rank == 0 || s.len() != rank * rank {
            return Err(ModularError::Shape);
        }
        let at = |i: usize, j: usize| s[i * rank + j];
        let mut sym = 0.0f64;
        for i in 0..rank {
            for j in 0..rank {
                sym = sym.max((at(i, j) - at(j, i)).norm());
            }
        }
        if sym > tol.0 {
            return Err(ModularError::NotSymmetric(sym));
        }
        let mut uni = 0.0f64;
        for i in 0..rank {
            for j in 0..rank {
                let dot: Complex64 = (0..rank).map(|k| at(i, k) * at(j, k).conj()).sum();
                uni = uni.max((dot - Complex64::new(f64::from(i == j), 0.0)).norm());
            }
        }
        if uni > tol.0 {
            return Err(ModularError::NotUnitary(uni));
        }
        if (t[0] - Complex64::new(1.0, 0.0)).norm() > tol.0 {
            return Err(ModularError::BadVacuumTwist(t[0]));
        }
        for (i, th) in t.iter().enumerate() {
            if (th.norm() - 1.0).abs() > tol.0 {
                return Err(ModularError::NonUnitaryTwist(i));
            }
        }
        for i in 0..rank {
            let d = at(0, i) / at(0, 0);
            if d.im.abs() > tol.0 || d.re <= 0.0 {
                return Err(ModularError::BadDimension(i));
            }
        }
        // Charge conjugation from S^2.
        let mut conj = vec![usize::MAX; rank];
        for i in 0..rank {
            for j in 0..rank {
                let c: Complex64 = (0..rank).map(|k| at(i, k) * at(k, j)).sum();
                if c.norm() > tol.0.max(1e-7) {
                    if (c - Complex64::new(1.0, 0.0)).norm() > tol.0.max(1e-7) || conj[i] != usize::MAX {
                        return Err(ModularError::BadChargeConjugation);
                    }
                    conj[i] = j;
                }
            }
            if conj[i] == usize::MAX {
                return Err(ModularError::BadChargeConjugation);
            }
        }
        if conj[0] != 0 {
            return Err(ModularError::BadChargeConjugation);
        }
        let md = ModularData {
            rank,
            s,
            t,
            conj: conj.clone(),
            verlinde: FusionRing::new(vec!["0".into(); 1], vec![0], vec![1]).expect("placeholder"),
        };
        let dtot = md.dtotal();
        let pp = md.p_plus();
        let pm = md.p_minus();
        let gauss = (pp * pm - Complex64::new(dtot * dtot, 0.0)).norm();
        if gauss > tol.0.max(1e-7) * dtot * dtot {
            return Err(ModularError::GaussSum(gauss));
        }
        // (ST)^3 = (p+/D) S^2.
        let st: Vec<Complex64> = (0..rank * rank)
            .map(|idx| md.s[idx] * md.t[idx % rank])
            .collect();
        let mat_mul = |a: & [Complex64], b: &[Complex64]| -> Vec<Complex64> {
            let mut out = vec![Complex64::new(0.0, 0.0); rank * rank];
            for i in 0..rank {
                for k in 0..rank {
                    let aik = a[i * rank + k];
                    if aik.norm() == 0.0 {
                        continue;
                    }
                    for j in 0..rank {
                        out[i * rank + j] += aik * b[k * rank + j];
                    }
                }
            }
            out
        };
        let st2 = mat_mul(&st, &st);
        let st3 = mat_mul(&st2, &st);
        let s2 = mat_mul(&md.s, &md.s);
        let factor = pp / dtot;
        let mut rel = 0.0f64;
        for idx in 0..rank * rank {
            rel = rel.max((st3[idx] - factor * s2[idx]).norm());
        }
        if rel > tol.0.max(1e-7) {
            return Err(ModularError::ModularRelation(rel));
        }
        // Verlinde fusion tensor.
        let d0 = md.s(0, 0);
        let mut n = vec![0u32; rank * rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let mut v = Complex64::new(0.0, 0.0);
                    for m in 0..rank {
                        v += md.s(i, m) * md.s(j, m) * md.s(k, m).conj() / md.s(0, m);
                    }
                    let _ = d0;
                    let rounded = v.re.round();
                    if (v - Complex64::new(rounded, 0.0)).norm() > tol.0.max(1e-6) || rounded < 0.0 {
                        return Err(ModularError::VerlindeIntegrality { i, j, k, value: v });
                    }
                    n[(i * rank + j) * rank + k] = rounded as u32;
                }
            }
        }
        let labels: Vec<String> = (0..rank).map(|i| i.to_string()).collect();
        let verlinde = FusionRing::new(labels, conj, n)?;
        Ok(ModularData { verlinde, ..md })
    }

    pub fn to_json(&self) -> String {
        let file = ModularFile {
            s: (0..self.rank)
                .map(|i| (0..self.rank).map(|j| complex_to_pair(self.s(i, j))).collect())
                .collect(),
            t: self.t.iter().map(|&z| complex_to_pair(z)).collect(),
        };
        serde_json::to_string_pretty(&file).expect("modular serialization")
    }
}

/// Parses and validates a modular-data document.
pub fn parse_modular_data(text: &str) -> Result<ModularData, ModularError> {
    parse_modular_data_with_tol(text, Tol::default())
}

pub fn parse_modular_data_with_tol(text: &str, tol: Tol) -> Result<ModularData, ModularError> {
    let file: ModularFile = serde_json::from_str(text).map_err(|e| ModularError::Syntax(e.to_string()))?;
    let rank = file.t.len();
    if file.s.len() != rank || file.s.iter().any(|row| row.len() != rank) {
        return Err(ModularError::Shape);
    }
    let s: Vec<Complex64> = file.s.iter().flatten().map(|&p| pair_to_complex(p)).collect();
    let t: Vec<Complex64> = file.t.iter().map(|&p| pair_to_complex(p)).collect();
    ModularData::new(s, t, tol)
}
