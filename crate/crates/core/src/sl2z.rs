//! Factorization of SL(2,Z) matrices into the standard generators and the
//! induced action on genus-1 state spaces.

use num_complex::Complex64;
use thiserror::Error;

use crate::modular::ModularData;
use crate::scalar::Tol;

#[derive(Debug, Error)]
pub enum Sl2zError {
    #[error("matrix has determinant {0}, expected 1")]
    Determinant(i64),
    #[error("vector length {0} does not match rank {1}")]
    Length(usize, usize),
    #[error("modular data is anomalous (p+/D = {0}); torus action is only projective")]
    Anomalous(Complex64),
}

/// One syllable of a generator word: `S` or a power of the Dehn twist `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    S,
    T(i64),
}

/// A factored SL(2,Z) element with its verified generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SL2ZWord {
    pub target: [[i64; 2]; 2],
    pub word: Vec<Gen>,
}

pub fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc: i128 = 0;
            for k in 0..2 {
                acc += a[i][k] as i128 * b[k][j] as i128;
            }
            out[i][j] = i64::try_from(acc).expect("entry overflow");
        }
    }
    out
}

pub const S_MAT: [[i64; 2]; 2] = [[0, -1], [1, 0]];

pub fn t_mat(k: i64) -> [[i64; 2]; 2] {
    [[1, k], [0, 1]]
}

impl SL2ZWord {
    /// Re-multiplies the word; used as a self-check and in tests.
    pub fn product(&self) -> [[i64; 2]; 2] {
        let mut acc = [[1, 0], [0, 1]];
        for gen in &self.word {
            let m = match gen {
                Gen::S => S_MAT,
                Gen::T(k) => t_mat(*k),
            };
            acc = mat_mul(acc, m);
        }
        acc
    }

    /// Number of syllables (S counts 1, T^k counts 1).
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn describe(&self) -> String {
        if self.word.is_empty() {
            return "1".into();
        }
        self.word
            .iter()
            .map(|g| match g {
                Gen::S => "S".to_string(),
                Gen::T(1) => "T".to_string(),
                Gen::T(k) => format!("T^{k}"),
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Continued-fraction factorization of a determinant-1 integer matrix into
/// `S` and powers of `T`. The product of the returned word equals the input
/// exactly (checked before returning).
pub fn sl2z_factor(target: [[i64; 2]; 2]) -> Result<SL2ZWord, Sl2zError> {
    let det = target[0][0] as i128 * target[1][1] as i128 - target[0][1] as i128 * target[1][0] as i128;
    if det != 1 {
        return Err(Sl2zError::Determinant(det as i64));
    }
    let mut word: Vec<Gen> = Vec::new();
    let mut m = target;
    // Reduce the lower-left entry by nearest-integer division, peeling
    // T^q S factors off the left.
    while m[1][0] != 0 {
        let (a, c) = (m[0][0], m[1][0]);
        let q = div_round(a, c);
        // m <- S^{-1} T^{-q} m
        let m1 = mat_mul(t_mat(-q), m);
        m = mat_mul([[0, 1], [-1, 0]], m1);
        if q != 0 {
            word.push(Gen::T(q));
        }
        word.push(Gen::S);
    }
    // Now m = [[a, b], [0, d]] with a d = 1.
    if m[0][0] == 1 {
        if m[0][1] != 0 {
            word.push(Gen::T(m[0][1]));
        }
    } else {
        // a = d = -1: -I = S^2, and -I T^{-b} = m.
        word.push(Gen::S);
        word.push(Gen::S);
        if m[0][1] != 0 {
            word.push(Gen::T(-m[0][1]));
        }
    }
    let result = SL2ZWord { target, word };
    debug_assert_eq!(result.product(), target);
    if result.product() != target {
        unreachable!("factorization self-check failed");
    }
    Ok(result)
}

fn div_round(a: i64, b: i64) -> i64 {
    // Round to nearest, halves toward +inf; any consistent rounding works.
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + b.signum() * r.signum()
    } else {
        q
    }
}

/// Applies the genus-1 representation of `f` to a state vector, using
/// `rho(S) = S` and `rho(T) = diag(theta)`.
///
/// For anomaly-free data (`p+ = D`) this is an honest linear representation;
/// otherwise the call fails in strict mode.
pub fn torus_rep_apply(
    md: &ModularData,
    f: [[i64; 2]; 2],
    vec: &[Complex64],
    strict: bool,
    tol: Tol,
) -> Result<Vec<Complex64>, Sl2zError> {
    if vec.len() != md.rank {
        return Err(Sl2zError::Length(vec.len(), md.rank));
    }
    let anomaly = md.p_plus() / md.dtotal();
    if strict && (anomaly - Complex64::new(1.0, 0.0)).norm() > tol.0.max(1e-6) {
        return Err(Sl2zError::Anomalous(anomaly));
    }
    let word = sl2z_factor(f)?;
    let mut v = vec.to_vec();
    for gen in word.word.iter().rev() {
        match gen {
            Gen::S => {
                let mut out = vec![Complex64::new(0.0, 0.0); md.rank];
                for (i, item) in out.iter_mut().enumerate() {
                    for (j, vj) in v.iter().enumerate() {
                        *item += md.s(i, j) * vj;
                    }
                }
                v = out;
            }
            Gen::T(k) => {
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi *= pow_i(md.theta(i), *k);
                }
            }
        }
    }
    Ok(v)
}

/// Integer power of a unit-modulus complex number.
pub fn pow_i(z: Complex64, k: i64) -> Complex64 {
    let base = if k < 0 { z.conj() } else { z };
    let mut e = k.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}
