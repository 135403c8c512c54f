//! Surgery invariants of plumbed 3-manifolds from modular data, and
//! Verlinde state-space dimensions.

use num_complex::Complex64;
use thiserror::Error;

use crate::modular::ModularData;
use crate::plumbing::PlumbingTree;
use crate::scalar::Tol;
use crate::sl2z::pow_i;

#[derive(Debug, Error)]
pub enum RtError {
    #[error("coloring space {0} exceeds the cap {1}")]
    SizeCap(u128, u128),
    #[error("Verlinde dimension {0} is not an integer within tolerance")]
    NonIntegral(f64),
}

/// Colored surgery sum over a plumbing forest:
///
/// `D^{-|V|-1} (p+/D)^{-b+} (p-/D)^{-b-} sum_c prod_v d θ^m d^{1-deg}
///  prod_{(u,v)} S[c_u][c_v]/S[0][0]`.
pub fn rt_invariant(md: &ModularData, tree: &PlumbingTree, cap: u128) -> Result<Complex64, RtError> {
    let nv = tree.framings.len();
    let rank = md.rank as u128;
    let space = rank.checked_pow(nv as u32).unwrap_or(u128::MAX);
    if space > cap {
        return Err(RtError::SizeCap(space, cap));
    }
    let d = md.dims();
    let dtot = md.dtotal();
    let s00 = md.s(0, 0);
    let degrees: Vec<usize> = (0..nv).map(|v| tree.degree(v)).collect();
    let mut total = if nv == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    let mut coloring = vec![0usize; nv];
    if nv > 0 {
        loop {
            let mut term = Complex64::new(1.0, 0.0);
            for v in 0..nv {
                let c = coloring[v];
                term *= d[c]
                    * pow_i(md.theta(c), tree.framings[v])
                    * d[c].powi(1 - degrees[v] as i32);
            }
            for &(u, v) in &tree.edges {
                term *= md.s(coloring[u], coloring[v]) / s00;
            }
            total += term;
            // Odometer step.
            let mut pos = 0;
            loop {
                if pos == nv {
                    break;
                }
                coloring[pos] += 1;
                if coloring[pos] < md.rank {
                    break;
                }
                coloring[pos] = 0;
                pos += 1;
            }
            if pos == nv {
                break;
            }
        }
    }
    let anomaly_plus = md.p_plus() / dtot;
    let anomaly_minus = md.p_minus() / dtot;
    let mut norm = Complex64::new(dtot.powi(-(nv as i32) - 1), 0.0);
    norm *= pow_c_neg(anomaly_plus, tree.b_plus);
    norm *= pow_c_neg(anomaly_minus, tree.b_minus);
    Ok(total * norm)
}

fn pow_c_neg(z: Complex64, e: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..e {
        acc /= z;
    }
    acc
}

/// Genus-`g` state-space dimension `sum_i (D/d_i)^{2g-2}`, asserted integral.
pub fn verlinde_dimension(md: &ModularData, genus: usize, tol: Tol) -> Result<f64, RtError> {
    let d = md.dims();
    let dtot = md.dtotal();
    let value: f64 = (0..md.rank)
        .map(|i| (dtot / d[i]).powi(2 * genus as i32 - 2))
        .sum();
    let rounded = value.round();
    if (value - rounded).abs() > tol.0.max(1e-6) * rounded.abs().max(1.0) {
        return Err(RtError::NonIntegral(value));
    }
    Ok(value)
}
