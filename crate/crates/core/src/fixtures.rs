//! Bundled example data, resolved by short name. Everything here is plain
//! JSON in the same formats accepted by the parsers, compiled into the
//! binary so the CLI works with zero setup.

/// Category files: fusion ring plus (where available) F-symbols.
pub fn ring_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "trivial" => include_str!("../fixtures/rings/trivial.json"),
        "vec_z2" => include_str!("../fixtures/rings/vec_z2.json"),
        "vec_z3" => include_str!("../fixtures/rings/vec_z3.json"),
        "fib" => include_str!("../fixtures/rings/fib.json"),
        "ising" => include_str!("../fixtures/rings/ising.json"),
        "rep_s3" => include_str!("../fixtures/rings/rep_s3.json"),
        _ => return None,
    })
}

/// Modular-data files.
pub fn modular_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "rank1" => include_str!("../fixtures/modular/rank1.json"),
        "toric_code" => include_str!("../fixtures/modular/toric_code.json"),
        "fib_modular" => include_str!("../fixtures/modular/fib_modular.json"),
        "ising_modular" => include_str!("../fixtures/modular/ising_modular.json"),
        "semion" => include_str!("../fixtures/modular/semion.json"),
        _ => return None,
    })
}

/// Triangulation files (face-gluing tables of closed oriented 3-manifolds).
pub fn tri_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "s3_1tet" | "lens_1_1" => include_str!("../fixtures/tri/s3_1tet.json"),
        "s3_2tet" => include_str!("../fixtures/tri/s3_2tet.json"),
        "s2xs1" => include_str!("../fixtures/tri/s2xs1.json"),
        "rp3" | "lens_2_1" => include_str!("../fixtures/tri/lens_2_1.json"),
        "lens_3_1" => include_str!("../fixtures/tri/lens_3_1.json"),
        "lens_4_1" => include_str!("../fixtures/tri/lens_4_1.json"),
        "lens_5_1" => include_str!("../fixtures/tri/lens_5_1.json"),
        "t3" => include_str!("../fixtures/tri/t3.json"),
        _ => return None,
    })
}

/// Decorated-surface files.
pub fn surface_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "pants" => include_str!("../fixtures/surface/pants.json"),
        "pants_alt" => include_str!("../fixtures/surface/pants_alt.json"),
        "annulus" => include_str!("../fixtures/surface/annulus.json"),
        _ => return None,
    })
}

/// NIM-rep (module action) files.
pub fn nimrep_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "fib_regular" => include_str!("../fixtures/nimrep/fib_regular.json"),
        "vec_z2_trivial" => include_str!("../fixtures/nimrep/vec_z2_trivial.json"),
        _ => return None,
    })
}

/// Plumbing files.
pub fn plumbing_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "empty" => include_str!("../fixtures/plumbing/empty.json"),
        "s2xs1" => include_str!("../fixtures/plumbing/s2xs1.json"),
        _ => return None,
    })
}

pub const RING_NAMES: &[&str] = &["trivial", "vec_z2", "vec_z3", "fib", "ising", "rep_s3"];
pub const MODULAR_NAMES: &[&str] = &["rank1", "toric_code", "fib_modular", "ising_modular", "semion"];
pub const TRI_NAMES: &[&str] =
    &["s3_1tet", "s3_2tet", "s2xs1", "rp3", "lens_3_1", "lens_4_1", "lens_5_1", "t3"];
pub const SURFACE_NAMES: &[&str] = &["pants", "pants_alt", "annulus"];
pub const NIMREP_NAMES: &[&str] = &["fib_regular", "vec_z2_trivial"];
pub const PLUMBING_NAMES: &[&str] = &["empty", "s2xs1"];

/// Fixture lens-space triangulation for `L(p,1)`, `1 <= p <= 5`.
pub fn lens_tri_json(p: u32) -> Option<&'static str> {
    match p {
        1 => tri_json("s3_1tet"),
        2 => tri_json("rp3"),
        3 => tri_json("lens_3_1"),
        4 => tri_json("lens_4_1"),
        5 => tri_json("lens_5_1"),
        _ => None,
    }
}
