//! Approximate complex scalars and the global comparison tolerance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default comparison tolerance used everywhere unless overridden.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Comparison tolerance carried through every numeric check.
///
/// Values are compared *within* the tolerance: two scalars are equal when
/// their distance is below `tol`, a real is nonnegative when it exceeds
/// `-tol`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(DEFAULT_TOL)
    }
}

impl Tol {
    pub fn new(tol: f64) -> Self {
        assert!(tol >= 0.0, "tolerance must be nonnegative");
        Tol(tol)
    }

    pub fn eq_c(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.0
    }

    pub fn eq_f(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.0
    }

    pub fn is_zero(&self, a: Complex64) -> bool {
        a.norm() <= self.0
    }

    pub fn is_real(&self, a: Complex64) -> bool {
        a.im.abs() <= self.0
    }

    /// Nonnegativity within tolerance: true for anything above `-tol`.
    pub fn is_nonneg(&self, x: f64) -> bool {
        x >= -self.0
    }

    /// Nearest integer if within tolerance, otherwise `None`.
    pub fn as_integer(&self, a: Complex64) -> Option<i64> {
        let n = a.re.round();
        if (a - Complex64::new(n, 0.0)).norm() <= self.0 {
            Some(n as i64)
        } else {
            None
        }
    }
}

/// A complex value paired with the tolerance it was computed under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    pub value: Complex64,
    pub tol: Tol,
}

impl Scalar {
    pub fn new(value: Complex64, tol: Tol) -> Self {
        Scalar { value, tol }
    }

    pub fn real(x: f64, tol: Tol) -> Self {
        Scalar { value: Complex64::new(x, 0.0), tol }
    }

    pub fn approx_eq(&self, other: Complex64) -> bool {
        self.tol.eq_c(self.value, other)
    }
}

/// Serialization shape for a complex number: a `[re, im]` pair.
pub fn complex_to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pair_to_complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_comparisons() {
        let tol = Tol::default();
        assert!(tol.eq_f(1.0, 1.0 + 1e-12));
        assert!(!tol.eq_f(1.0, 1.0 + 1e-6));
        assert!(tol.is_nonneg(-1e-12));
        assert!(!tol.is_nonneg(-1e-6));
        assert_eq!(tol.as_integer(Complex64::new(3.0 + 1e-12, 0.0)), Some(3));
        assert_eq!(tol.as_integer(Complex64::new(3.1, 0.0)), None);
    }
}
