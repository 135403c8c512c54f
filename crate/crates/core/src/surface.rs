//! Decorated-surface state-space dimensions: truncated polygon
//! decompositions counted through fusion-ring data, and closed genus-g
//! surfaces counted through pants colorings in center data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modular::ModularData;
use crate::ring::FusionRing;
use crate::rt::{verlinde_dimension, RtError};
use crate::scalar::Tol;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("green edge {0} appears {1} times, expected exactly 2")]
    GreenCount(usize, usize),
    #[error("pairing lists edge {0}{1}")]
    BadPairing(usize, &'static str),
    #[error("green edge {0} glued orientation-preservingly; quotient would be nonorientable")]
    InconsistentOrientation(usize),
    #[error("marked point label {0} out of range")]
    LabelRange(usize),
    #[error("pants count disagrees with the Verlinde formula: {pants} vs {verlinde}")]
    VerlindeMismatch { pants: f64, verlinde: f64 },
    #[error(transparent)]
    Rt(#[from] RtError),
}

/// One slot on a polygon boundary: a black arc carrying ordered marked
/// points `(label, sign)`, or a green edge identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum Slot {
    #[serde(rename = "arc")]
    Arc(Vec<(usize, i8)>),
    #[serde(rename = "green")]
    Green(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pairing {
    pub id: usize,
    /// True when the two sides are glued reversing the boundary orientation,
    /// as required for an oriented quotient.
    pub reversed: bool,
}

/// A truncated-polygon presentation of a decorated surface piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedSurface {
    pub polygons: Vec<Vec<Slot>>,
    pub pairings: Vec<Pairing>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceFile {
    polygons: Vec<Vec<Slot>>,
    pairings: Vec<Pairing>,
}

impl DecoratedSurface {
    /// Euler characteristic of the quotient (polygons are disks).
    pub fn euler_characteristic(&self) -> i64 {
        self.polygons.len() as i64 - self.pairings.len() as i64
    }

    /// Occurrences of each green id as (polygon, slot), in lexicographic
    /// order; the first occurrence carries the coloring label, the second
    /// its dual.
    fn green_occurrences(&self) -> std::collections::BTreeMap<usize, Vec<(usize, usize)>> {
        let mut map: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
        for (p, slots) in self.polygons.iter().enumerate() {
            for (s, slot) in slots.iter().enumerate() {
                if let Slot::Green(id) = slot {
                    map.entry(*id).or_default().push((p, s));
                }
            }
        }
        map
    }

    pub fn to_json(&self) -> String {
        let file = SurfaceFile { polygons: self.polygons.clone(), pairings: self.pairings.clone() };
        serde_json::to_string_pretty(&file).expect("surface serialization")
    }
}

/// The bundled 3-holed-sphere presentation with marked points `(a, b, c)`:
/// one interface circle carrying all three points. `split` chooses the
/// alternative decomposition cut along one green chord.
pub fn marked_three_holed_sphere(a: usize, b: usize, c: usize, split: bool) -> DecoratedSurface {
    if split {
        DecoratedSurface {
            polygons: vec![
                vec![Slot::Arc(vec![(a, 1), (b, 1)]), Slot::Green(0)],
                vec![Slot::Arc(vec![(c, 1)]), Slot::Green(0)],
            ],
            pairings: vec![Pairing { id: 0, reversed: true }],
        }
    } else {
        DecoratedSurface {
            polygons: vec![vec![Slot::Arc(vec![(a, 1), (b, 1), (c, 1)])]],
            pairings: vec![],
        }
    }
}

/// Parses and validates a decorated-surface document.
pub fn parse_surface(text: &str) -> Result<DecoratedSurface, SurfaceError> {
    let file: SurfaceFile = serde_json::from_str(text).map_err(|e| SurfaceError::Syntax(e.to_string()))?;
    let surf = DecoratedSurface { polygons: file.polygons, pairings: file.pairings };
    let occ = surf.green_occurrences();
    for (&id, slots) in &occ {
        if slots.len() != 2 {
            return Err(SurfaceError::GreenCount(id, slots.len()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for p in &surf.pairings {
        if !occ.contains_key(&p.id) {
            return Err(SurfaceError::BadPairing(p.id, " but it appears on no polygon"));
        }
        if !seen.insert(p.id) {
            return Err(SurfaceError::BadPairing(p.id, " twice"));
        }
        if !p.reversed {
            return Err(SurfaceError::InconsistentOrientation(p.id));
        }
    }
    for &id in occ.keys() {
        if !seen.contains(&id) {
            return Err(SurfaceError::BadPairing(id, " in slots but not in pairings"));
        }
    }
    Ok(surf)
}

/// State-space dimension of the decorated surface over a fusion ring:
/// the sum over green colorings of the product of invariant-space
/// dimensions of the polygons.
pub fn dim_state_space(ring: &FusionRing, surf: &DecoratedSurface) -> Result<u64, SurfaceError> {
    let occ = surf.green_occurrences();
    let ids: Vec<usize> = occ.keys().copied().collect();
    // Validate marked point labels up front.
    for slots in &surf.polygons {
        for slot in slots {
            if let Slot::Arc(points) = slot {
                for &(label, _) in points {
                    if label >= ring.rank {
                        return Err(SurfaceError::LabelRange(label));
                    }
                }
            }
        }
    }
    let mut total = 0u64;
    let mut coloring = vec![0usize; ids.len()];
    loop {
        let color_of = |id: usize| coloring[ids.iter().position(|&x| x == id).unwrap()];
        let mut product = 1u64;
        for (p, slots) in surf.polygons.iter().enumerate() {
            let mut word: Vec<usize> = Vec::new();
            for (s, slot) in slots.iter().enumerate() {
                match slot {
                    Slot::Arc(points) => {
                        for &(label, sign) in points {
                            word.push(if sign >= 0 { label } else { ring.dual[label] });
                        }
                    }
                    Slot::Green(id) => {
                        let first = occ[id][0] == (p, s);
                        let c = color_of(*id);
                        word.push(if first { c } else { ring.dual[c] });
                    }
                }
            }
            product *= ring.product_multiplicity(&word, 0);
            if product == 0 {
                break;
            }
        }
        total += product;
        // Odometer over green colorings.
        let mut pos = 0;
        loop {
            if pos == coloring.len() {
                break;
            }
            coloring[pos] += 1;
            if coloring[pos] < ring.rank {
                break;
            }
            coloring[pos] = 0;
            pos += 1;
        }
        if pos == coloring.len() {
            break;
        }
    }
    Ok(total)
}

/// Closed genus-g dimension by pants colorings over the center's Verlinde
/// ring: the vacuum-to-vacuum entry of the g-th power of the handle
/// transfer matrix. Cross-checked against the Verlinde formula.
pub fn dim_closed_surface(md: &ModularData, genus: usize, tol: Tol) -> Result<u64, SurfaceError> {
    let ring = &md.verlinde;
    let rank = ring.rank;
    let value: u64 = if genus == 0 {
        1
    } else {
        // H[p][q] = sum_u multiplicity of q in p (x) u (x) ubar.
        let mut h = vec![vec![0u64; rank]; rank];
        for (p, row) in h.iter_mut().enumerate() {
            for u in 0..rank {
                let word = [u, ring.dual[u]];
                for (q, cell) in row.iter_mut().enumerate() {
                    let mut full = vec![p];
                    full.extend_from_slice(&word);
                    *cell += ring.product_multiplicity(&full, q);
                }
            }
        }
        // e_0^T H^g e_0.
        let mut vec_state = vec![0u64; rank];
        vec_state[0] = 1;
        for _ in 0..genus {
            let mut next = vec![0u64; rank];
            for (q, item) in next.iter_mut().enumerate() {
                for p in 0..rank {
                    *item += h[p][q] * vec_state[p];
                }
            }
            vec_state = next;
        }
        vec_state[0]
    };
    let verlinde = verlinde_dimension(md, genus, tol)?;
    if (value as f64 - verlinde).abs() > tol.0.max(1e-6) * verlinde.max(1.0) {
        return Err(SurfaceError::VerlindeMismatch { pants: value as f64, verlinde });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modular::parse_modular_data;
    use crate::ring::parse_fusion_ring;

    fn ring(name: &str) -> FusionRing {
        parse_fusion_ring(fixtures::ring_json(name).unwrap()).unwrap()
    }

    #[test]
    fn annulus_fixture_parses() {
        let surf = parse_surface(fixtures::surface_json("annulus").unwrap()).unwrap();
        assert_eq!(surf.euler_characteristic(), 0);
        // No marked points: dimension = rank (one color per compatible loop).
        let r = ring("fib");
        assert_eq!(dim_state_space(&r, &surf).unwrap(), 2);
    }

    #[test]
    fn bad_green_multiplicity_rejected() {
        let text = r#"{"polygons": [[{"green": 0}, {"arc": []}, {"green": 0}, {"green": 0}]],
                       "pairings": [{"id": 0, "reversed": true}]}"#;
        match parse_surface(text) {
            Err(SurfaceError::GreenCount(0, 3)) => {}
            other => panic!("expected green-count error, got {other:?}"),
        }
    }

    #[test]
    fn unreversed_pairing_rejected() {
        let text = r#"{"polygons": [[{"green": 0}, {"arc": []}, {"green": 0}, {"arc": []}]],
                       "pairings": [{"id": 0, "reversed": false}]}"#;
        match parse_surface(text) {
            Err(SurfaceError::InconsistentOrientation(0)) => {}
            other => panic!("expected orientation error, got {other:?}"),
        }
    }

    #[test]
    fn three_holed_sphere_counts_invariants() {
        for name in ["vec_z2", "vec_z3", "fib", "ising", "rep_s3"] {
            let r = ring(name);
            for a in 0..r.rank {
                for b in 0..r.rank {
                    for c in 0..r.rank {
                        let expect = r.product_multiplicity(&[a, b, c], 0);
                        for split in [false, true] {
                            let surf = marked_three_holed_sphere(a, b, c, split);
                            let dim = dim_state_space(&r, &surf).unwrap();
                            assert_eq!(dim, expect, "{name} ({a},{b},{c}) split={split}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bundled_pants_decompositions_agree() {
        let a = parse_surface(fixtures::surface_json("pants").unwrap()).unwrap();
        let b = parse_surface(fixtures::surface_json("pants_alt").unwrap()).unwrap();
        for name in ["vec_z2", "fib", "ising"] {
            let r = ring(name);
            assert_eq!(dim_state_space(&r, &a).unwrap(), dim_state_space(&r, &b).unwrap(), "{name}");
        }
    }

    #[test]
    fn paper_hexagon_pair_parses() {
        // Two truncated triangles glued along three green edges; the quotient
        // is a pants whose polygon count lands in the induced center classes.
        let text = r#"{"polygons": [
            [{"arc": [[1, 1]]}, {"green": 0}, {"arc": [[1, 1]]}, {"green": 1}, {"arc": [[1, 1]]}, {"green": 2}],
            [{"arc": []}, {"green": 2}, {"arc": []}, {"green": 1}, {"arc": []}, {"green": 0}]
        ], "pairings": [
            {"id": 0, "reversed": true}, {"id": 1, "reversed": true}, {"id": 2, "reversed": true}
        ]}"#;
        let surf = parse_surface(text).unwrap();
        assert_eq!(surf.euler_characteristic(), -1);
        // Vec_Z3 with three g-marks: dim Hom_{Z}(1, I(g)^3) = 9.
        let r = ring("vec_z3");
        assert_eq!(dim_state_space(&r, &surf).unwrap(), 9);
    }

    #[test]
    fn closed_dimensions_match_verlinde() {
        for name in ["rank1", "toric_code", "fib_modular", "ising_modular", "semion"] {
            let md = parse_modular_data(fixtures::modular_json(name).unwrap()).unwrap();
            for g in 0..=3 {
                let v = dim_closed_surface(&md, g, Tol::default()).unwrap();
                let direct = crate::rt::verlinde_dimension(&md, g, Tol::default()).unwrap();
                assert_eq!(v as f64, direct.round(), "{name} genus {g}");
            }
        }
    }

    #[test]
    fn toric_code_genus_two_is_sixteen() {
        let md = parse_modular_data(fixtures::modular_json("toric_code").unwrap()).unwrap();
        assert_eq!(dim_closed_surface(&md, 2, Tol::default()).unwrap(), 16);
    }
}
