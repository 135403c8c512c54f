//! Dense complex linear algebra for the small matrices that appear in
//! fusion-ring spectra and tube-algebra centers (dimension at most a few
//! dozen). Nothing here is tuned for large sizes.

use num_complex::Complex64;

pub type C = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<C>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, a: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        CMat { rows: r, cols: c, a: rows.iter().flatten().copied().collect() }
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += v * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn scale(&self, s: C) -> CMat {
        CMat { rows: self.rows, cols: self.cols, a: self.a.iter().map(|&x| x * s).collect() }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        self.add(&other.scale(C::new(-1.0, 0.0)))
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_norm(&self) -> f64 {
        self.a.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Gaussian elimination with partial pivoting; returns `None` when the
    /// system is singular beyond `eps`.
    pub fn solve(&self, rhs: &[C], eps: f64) -> Option<Vec<C>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut m = self.a.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let (pivot, best) = (col..n)
                .map(|r| (r, m[r * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if best <= eps {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                b.swap(pivot, col);
            }
            let inv = C::new(1.0, 0.0) / m[col * n + col];
            for r in col + 1..n {
                let factor = m[r * n + col] * inv;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col..n {
                    let v = m[col * n + j];
                    m[r * n + j] -= factor * v;
                }
                let bc = b[col];
                b[r] -= factor * bc;
            }
        }
        let mut x = vec![C::new(0.0, 0.0); n];
        for col in (0..n).rev() {
            let mut acc = b[col];
            for j in col + 1..n {
                acc -= m[col * n + j] * x[j];
            }
            x[col] = acc / m[col * n + col];
        }
        Some(x)
    }

    pub fn inverse(&self, eps: f64) -> Option<CMat> {
        let n = self.rows;
        let mut out = CMat::zeros(n, n);
        for j in 0..n {
            let mut e = vec![C::new(0.0, 0.0); n];
            e[j] = C::new(1.0, 0.0);
            let col = self.solve(&e, eps)?;
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        Some(out)
    }

    /// Orthonormal basis of the (right) nullspace, by row reduction.
    pub fn nullspace(&self, eps: f64) -> Vec<Vec<C>> {
        let (r, c) = (self.rows, self.cols);
        let mut m = self.a.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0usize;
        for col in 0..c {
            let (pivot, best) = (row..r)
                .map(|rr| (rr, m[rr * c + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap_or((row, 0.0));
            if best <= eps {
                continue;
            }
            for j in 0..c {
                m.swap(pivot * c + j, row * c + j);
            }
            let inv = C::new(1.0, 0.0) / m[row * c + col];
            for j in 0..c {
                m[row * c + j] *= inv;
            }
            for rr in 0..r {
                if rr != row {
                    let factor = m[rr * c + col];
                    if factor.norm_sqr() == 0.0 {
                        continue;
                    }
                    for j in 0..c {
                        let v = m[row * c + j];
                        m[rr * c + j] -= factor * v;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == r {
                break;
            }
        }
        let free: Vec<usize> = (0..c).filter(|col| !pivot_cols.contains(col)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![C::new(0.0, 0.0); c];
            v[f] = C::new(1.0, 0.0);
            for (prow, &pcol) in pivot_cols.iter().enumerate() {
                v[pcol] = -m[prow * c + f];
            }
            let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.a[i * self.cols + j]
    }
}

/// Roots of a monic polynomial `x^n + c[n-1] x^{n-1} + ... + c[0]` by
/// Durand–Kerner iteration. Degrees here stay below ~20.
pub fn monic_roots(coeffs: &[C]) -> Option<Vec<C>> {
    let n = coeffs.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let eval = |x: C| -> C {
        let mut acc = C::new(1.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let radius = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C::new(0.4, 0.9);
    let mut roots: Vec<C> = (0..n).map(|k| seed.powu(k as u32 + 1) * radius).collect();
    for _ in 0..2000 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                return None;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 * radius.max(1.0) {
            return Some(roots);
        }
    }
    None
}

/// Minimal polynomial of the multiplication-by-`z` operator acting on the
/// span of `basis`, expressed through powers of `z` inside that span.
///
/// `mul` applies the operator to a coordinate vector. Returns the monic
/// coefficient list (constant term first, degree-d leading 1 omitted).
pub fn minimal_polynomial<F>(dim: usize, start: &[C], mul: F, eps: f64) -> Option<Vec<C>>
where
    F: Fn(&[C]) -> Vec<C>,
{
    let mut powers: Vec<Vec<C>> = vec![start.to_vec()];
    loop {
        let next = mul(powers.last().unwrap());
        // Solve for next as a combination of the previous powers.
        let k = powers.len();
        let mut gram = CMat::zeros(k, k);
        let mut rhs = vec![C::new(0.0, 0.0); k];
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = (0..dim).map(|t| powers[i][t].conj() * powers[j][t]).sum();
            }
            rhs[i] = (0..dim).map(|t| powers[i][t].conj() * next[t]).sum();
        }
        if let Some(coeff) = gram.solve(&rhs, 1e-12) {
            let mut residual = 0.0f64;
            for t in 0..dim {
                let mut acc = next[t];
                for i in 0..k {
                    acc -= coeff[i] * powers[i][t];
                }
                residual = residual.max(acc.norm());
            }
            let scale = next.iter().map(|x| x.norm()).fold(1.0, f64::max);
            if residual <= eps * scale {
                // next = sum coeff_i z^i, so minimal poly is x^k - sum coeff_i x^i.
                return Some(coeff.iter().map(|&c| -c).collect());
            }
        }
        if k > dim {
            return None;
        }
        powers.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_nullspace() {
        let m = CMat::from_rows(&[
            vec![C::new(2.0, 0.0), C::new(1.0, 0.0)],
            vec![C::new(1.0, 0.0), C::new(3.0, 0.0)],
        ]);
        let x = m.solve(&[C::new(3.0, 0.0), C::new(4.0, 0.0)], 1e-12).unwrap();
        assert!((x[0] - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - C::new(1.0, 0.0)).norm() < 1e-12);

        let singular = CMat::from_rows(&[
            vec![C::new(1.0, 0.0), C::new(2.0, 0.0)],
            vec![C::new(2.0, 0.0), C::new(4.0, 0.0)],
        ]);
        let ns = singular.nullspace(1e-12);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((v[0] + C::new(2.0, 0.0) * v[1]).norm() < 1e-12);
    }

    #[test]
    fn roots_of_cyclotomic() {
        // x^3 - 1
        let roots = monic_roots(&[C::new(-1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)]).unwrap();
        for r in roots {
            assert!((r.powu(3) - C::new(1.0, 0.0)).norm() < 1e-10);
        }
    }
}
