//! Multiplicity-free F-symbol tables over a fusion ring, with pentagon and
//! unitarity verification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{frobenius_perron_data, parse_ring_document, DimensionData, FusionRing, RingError};
use crate::scalar::Tol;

#[derive(Debug, Error)]
pub enum FsymError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ring is not multiplicity-free")]
    NotMultiplicityFree,
    #[error("document carries no fsymbols block")]
    MissingBlock,
    #[error("F-symbol index out of range in row {0:?}")]
    IndexRange([usize; 6]),
    #[error("F-symbol listed for inadmissible tuple {0:?}")]
    Inadmissible([usize; 6]),
    #[error("duplicate F-symbol for tuple {0:?}")]
    Duplicate([usize; 6]),
    #[error("missing F-symbol for admissible tuple {0:?}")]
    Missing([usize; 6]),
    #[error("unit-triangle F-symbol at {0:?} is {1}, expected 1")]
    UnitNormalization([usize; 6], Complex64),
}

/// Whether stored values are raw F-matrix entries or the tetrahedrally
/// symmetrized 6j form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gauge {
    RawF,
    Symmetrized6j,
}

/// A complete multiplicity-free F-symbol assignment.
///
/// `f(a,b,c,d,e,f)` is the coefficient relating the two parenthesizations of
/// `a ⊗ b ⊗ c → d`, with `e` the `(a,b)` channel and `f` the `(b,c)` channel.
#[derive(Debug, Clone)]
pub struct FSymbolSet {
    pub ring: FusionRing,
    pub dims: DimensionData,
    pub gauge: Gauge,
    values: Vec<Complex64>,
}

impl FSymbolSet {
    pub fn rank(&self) -> usize {
        self.ring.rank
    }

    fn slot(&self, t: [usize; 6]) -> usize {
        let r = self.ring.rank;
        ((((t[0] * r + t[1]) * r + t[2]) * r + t[3]) * r + t[4]) * r + t[5]
    }

    /// True when the 6-tuple labels a valid pair of fusion trees.
    pub fn admissible(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> bool {
        self.ring.n(a, b, e) == 1
            && self.ring.n(e, c, d) == 1
            && self.ring.n(b, c, f) == 1
            && self.ring.n(a, f, d) == 1
    }

    /// Raw F-symbol; zero for inadmissible tuples.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> Complex64 {
        self.values[self.slot([a, b, c, d, e, f])]
    }

    /// Entry of the inverse F-matrix, using unitarity of the stored gauge.
    pub fn f_inv(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> Complex64 {
        // Unitary gauge: F^{-1} = F^dagger, so (F^{-1})_{ef} = conj(F_{fe}).
        self.f(a, b, c, d, f, e).conj()
    }

    /// Symmetrized 6j value `F^{abc}_d[e][f] / sqrt(d_e d_f)`.
    pub fn g6j(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize) -> Complex64 {
        self.f(a, b, c, d, e, f) / (self.dims.d[e] * self.dims.d[f]).sqrt()
    }

    /// All admissible 6-tuples in lexicographic order.
    pub fn admissible_tuples(&self) -> Vec<[usize; 6]> {
        let r = self.ring.rank;
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        for e in 0..r {
                            for f in 0..r {
                                if self.admissible(a, b, c, d, e, f) {
                                    out.push([a, b, c, d, e, f]);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Largest deviation of any F-matrix from unitarity.
    pub fn unitarity_residual(&self) -> f64 {
        let r = self.ring.rank;
        let mut worst = 0.0f64;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let rows: Vec<usize> =
                            (0..r).filter(|&e| self.ring.n(a, b, e) == 1 && self.ring.n(e, c, d) == 1).collect();
                        let cols: Vec<usize> =
                            (0..r).filter(|&f| self.ring.n(b, c, f) == 1 && self.ring.n(a, f, d) == 1).collect();
                        if rows.is_empty() {
                            continue;
                        }
                        for &f1 in &cols {
                            for &f2 in &cols {
                                let dot: Complex64 = rows
                                    .iter()
                                    .map(|&e| self.f(a, b, c, d, e, f1).conj() * self.f(a, b, c, d, e, f2))
                                    .sum();
                                let expect = Complex64::new(f64::from(f1 == f2), 0.0);
                                worst = worst.max((dot - expect).norm());
                            }
                        }
                    }
                }
            }
        }
        worst
    }

    /// Serializes ring plus F-symbols as a category file.
    pub fn to_json(&self) -> String {
        let rows: Vec<[f64; 8]> = self
            .admissible_tuples()
            .iter()
            .map(|&t| {
                let v = self.values[self.slot(t)];
                [t[0] as f64, t[1] as f64, t[2] as f64, t[3] as f64, t[4] as f64, t[5] as f64, v.re, v.im]
            })
            .collect();
        self.ring.to_json_with_fsymbols(Some(rows))
    }
}

/// Outcome of a pentagon sweep: the largest residual and where it occurred.
#[derive(Debug, Clone, Serialize)]
pub struct PentagonReport {
    pub instances: usize,
    pub max_residual: f64,
    pub worst: Option<PentagonInstance>,
    pub pass: bool,
}

/// One pentagon instance, identified by the outer labels and the free
/// channels of both sides.
#[derive(Debug, Clone, Serialize)]
pub struct PentagonInstance {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub g: usize,
    pub k: usize,
    pub l: usize,
}

/// Parses the `fsymbols` block of a category document against `ring`.
pub fn parse_fsymbols(text: &str, ring: &FusionRing) -> Result<FSymbolSet, FsymError> {
    if !ring.multiplicity_free() {
        return Err(FsymError::NotMultiplicityFree);
    }
    let (file_ring, rows) = parse_ring_document(text)?;
    if &file_ring != ring {
        return Err(FsymError::Ring(RingError::Syntax(
            "category document ring differs from the supplied ring".into(),
        )));
    }
    let rows = rows.ok_or(FsymError::MissingBlock)?;
    let dims = frobenius_perron_data(ring)?;
    let r = ring.rank;
    let mut values = vec![Complex64::new(0.0, 0.0); r.pow(6)];
    let mut seen = vec![false; r.pow(6)];
    let mut fs = FSymbolSet { ring: ring.clone(), dims, gauge: Gauge::RawF, values: values.clone() };
    for row in &rows {
        let t: Vec<usize> = row[..6]
            .iter()
            .map(|&x| {
                if x < 0.0 || x.fract() != 0.0 {
                    usize::MAX
                } else {
                    x as usize
                }
            })
            .collect();
        let t: [usize; 6] = [t[0], t[1], t[2], t[3], t[4], t[5]];
        if t.iter().any(|&x| x >= r) {
            return Err(FsymError::IndexRange(t));
        }
        if !fs.admissible(t[0], t[1], t[2], t[3], t[4], t[5]) {
            return Err(FsymError::Inadmissible(t));
        }
        let slot = fs.slot(t);
        if seen[slot] {
            return Err(FsymError::Duplicate(t));
        }
        seen[slot] = true;
        values[slot] = Complex64::new(row[6], row[7]);
    }
    fs.values = values;
    for t in fs.admissible_tuples() {
        if !seen[fs.slot(t)] {
            return Err(FsymError::Missing(t));
        }
    }
    // Unit-triangle normalization: any of a, b, c equal to the unit forces 1.
    let tol = Tol::default();
    for t in fs.admissible_tuples() {
        if t[0] == 0 || t[1] == 0 || t[2] == 0 {
            let v = fs.f(t[0], t[1], t[2], t[3], t[4], t[5]);
            if !tol.eq_c(v, Complex64::new(1.0, 0.0)) {
                return Err(FsymError::UnitNormalization(t, v));
            }
        }
    }
    Ok(fs)
}

/// Sweeps every admissible pentagon instance and reports the worst residual.
pub fn verify_pentagon(fs: &FSymbolSet) -> PentagonReport {
    verify_pentagon_with_tol(fs, Tol::default())
}

pub fn verify_pentagon_with_tol(fs: &FSymbolSet, tol: Tol) -> PentagonReport {
    let r = fs.ring.rank;
    let mut instances = 0usize;
    let mut max_residual = 0.0f64;
    let mut worst = None;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for e in 0..r {
                        for f in 0..r {
                            if fs.ring.n(a, b, f) == 0 {
                                continue;
                            }
                            for g in 0..r {
                                if fs.ring.n(f, c, g) == 0 {
                                    continue;
                                }
                                for k in 0..r {
                                    for l in 0..r {
                                        // LHS tree channels must exist on at least one side.
                                        let lhs = fs.f(f, c, d, e, g, l) * fs.f(a, b, l, e, f, k);
                                        let mut rhs = Complex64::new(0.0, 0.0);
                                        for h in 0..r {
                                            rhs += fs.f(a, b, c, g, f, h)
                                                * fs.f(a, h, d, e, g, k)
                                                * fs.f(b, c, d, k, h, l);
                                        }
                                        if lhs.norm() == 0.0 && rhs.norm() == 0.0 {
                                            continue;
                                        }
                                        instances += 1;
                                        let res = (lhs - rhs).norm();
                                        if res > max_residual {
                                            max_residual = res;
                                            worst = Some(PentagonInstance { a, b, c, d, e, f, g, k, l });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    PentagonReport { instances, max_residual, worst, pass: max_residual < tol.0.max(1e-12) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ring::parse_fusion_ring;

    fn load(name: &str) -> FSymbolSet {
        let text = fixtures::ring_json(name).unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        parse_fsymbols(text, &ring).unwrap()
    }

    #[test]
    fn vec_z2_trivial_associator_passes() {
        let fs = load("vec_z2");
        let report = verify_pentagon(&fs);
        assert!(report.pass);
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn fibonacci_pentagon_holds() {
        let fs = load("fib");
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((fs.f(1, 1, 1, 1, 0, 0).re - 1.0 / phi).abs() < 1e-12);
        assert!((fs.f(1, 1, 1, 1, 1, 1).re + 1.0 / phi).abs() < 1e-12);
        let report = verify_pentagon(&fs);
        assert!(report.pass, "residual {}", report.max_residual);
        assert!(report.max_residual < 1e-12);
        assert!(fs.unitarity_residual() < 1e-12);
    }

    #[test]
    fn ising_pentagon_holds() {
        let fs = load("ising");
        let report = verify_pentagon(&fs);
        assert!(report.pass, "residual {}", report.max_residual);
        assert!(fs.unitarity_residual() < 1e-12);
    }

    #[test]
    fn vec_z3_pentagon_holds() {
        let fs = load("vec_z3");
        let report = verify_pentagon(&fs);
        assert!(report.pass);
    }

    #[test]
    fn perturbed_fibonacci_fails_pentagon() {
        let text = fixtures::ring_json("fib").unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        let mut fs = parse_fsymbols(text, &ring).unwrap();
        let slot = fs.slot([1, 1, 1, 1, 0, 0]);
        fs.values[slot] += Complex64::new(1e-3, 0.0);
        let report = verify_pentagon(&fs);
        assert!(!report.pass);
        assert!(report.max_residual > 1e-4);
        assert!(report.worst.is_some());
    }

    #[test]
    fn missing_tuple_rejected() {
        let text = fixtures::ring_json("fib").unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(text).unwrap();
        let rows = doc["fsymbols"].as_array_mut().unwrap();
        rows.pop();
        let text2 = serde_json::to_string(&doc).unwrap();
        match parse_fsymbols(&text2, &ring) {
            Err(FsymError::Missing(_)) => {}
            other => panic!("expected missing tuple, got {other:?}"),
        }
    }
}
