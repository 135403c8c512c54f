//! Acceptance suite: every release gate in one place, one pass/fail line
//! per criterion. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tqft_core::center::{center_from_square, decompose_center, Center};
use tqft_core::criteria::{check_positivity, CriteriaOptions};
use tqft_core::fixtures;
use tqft_core::fsym::{parse_fsymbols, verify_pentagon, FSymbolSet};
use tqft_core::indicators::{
    check_equivariance, fs_indicator, genus1_indicator, indicator_reference_oracle, K0Vector,
    TorusCurve,
};
use tqft_core::modular::parse_modular_data;
use tqft_core::plumbing::PlumbingTree;
use tqft_core::ring::{frobenius_perron_data, parse_fusion_ring, FusionRing};
use tqft_core::rt::{rt_invariant, verlinde_dimension};
use tqft_core::scalar::Tol;
use tqft_core::sl2z::{mat_mul, t_mat, S_MAT};
use tqft_core::surface::{dim_closed_surface, marked_three_holed_sphere, dim_state_space};
use tqft_core::tri::{parse_triangulation, Triangulation};
use tqft_core::tube::build_tube_algebra;
use tqft_core::tv::{tv_invariant, vec_g_oracle, TvOptions};

fn category(name: &str) -> (FusionRing, FSymbolSet) {
    let text = fixtures::ring_json(name).unwrap();
    let ring = parse_fusion_ring(text).unwrap();
    let fs = parse_fsymbols(text, &ring).unwrap();
    (ring, fs)
}

fn center_of(name: &str) -> Center {
    let (_, fs) = category(name);
    let tube = build_tube_algebra(&fs).unwrap();
    decompose_center(&tube, 42, Tol::default()).unwrap()
}

fn tri(name: &str) -> Triangulation {
    parse_triangulation(fixtures::tri_json(name).unwrap()).unwrap()
}

struct Gate {
    label: &'static str,
    start: Instant,
    budget: Option<f64>,
}

impl Gate {
    fn new(label: &'static str, budget_secs: Option<f64>) -> Self {
        Gate { label, start: Instant::now(), budget: budget_secs }
    }

    fn finish(self, pass: bool) {
        let elapsed = self.start.elapsed().as_secs_f64();
        let mut verdict = pass;
        let mut note = String::new();
        if let Some(budget) = self.budget {
            note = format!(" ({elapsed:.2}s, budget {budget}s)");
            if cfg!(not(debug_assertions)) && elapsed > budget {
                verdict = false;
            }
        }
        println!(
            "criterion {:44} {}{}",
            self.label,
            if verdict { "PASS" } else { "FAIL" },
            note
        );
        assert!(verdict, "criterion failed: {}", self.label);
    }
}

#[test]
fn criterion_01_vec_g_oracle() {
    let gate = Gate::new("1: Vec_G oracle on all fixtures", Some(1.0));
    let mut pass = true;
    for order in [2u64, 3] {
        let name = if order == 2 { "vec_z2" } else { "vec_z3" };
        let (_, fs) = category(name);
        for fixture in ["s3_1tet", "s3_2tet", "s2xs1", "rp3", "lens_3_1", "lens_4_1", "t3"] {
            let t = tri(fixture);
            let tv = tv_invariant(&fs, &t, &TvOptions::default()).unwrap();
            let oracle = vec_g_oracle(order, &t);
            let expected = *oracle.numer() as f64 / *oracle.denom() as f64;
            if (tv - Complex64::new(expected, 0.0)).norm() > 1e-9 {
                eprintln!("  {name} on {fixture}: {tv} vs {expected}");
                pass = false;
            }
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_02_tv_equals_rt() {
    let gate = Gate::new("2: TV = RT on L(p,1), p = 1..5", Some(5.0));
    let mut pass = true;
    for name in ["vec_z2", "fib"] {
        let (_, fs) = category(name);
        let center = center_of(name);
        for p in 1u32..=5 {
            let t = parse_triangulation(fixtures::lens_tri_json(p).unwrap()).unwrap();
            let tv = tv_invariant(&fs, &t, &TvOptions::default()).unwrap();
            let tree = PlumbingTree::new(vec![p as i64], vec![]).unwrap();
            let rt = rt_invariant(&center.modular, &tree, 1 << 24).unwrap();
            if (tv - rt).norm() > 1e-6 {
                eprintln!("  {name} L({p},1): TV {tv} vs RT {rt}");
                pass = false;
            }
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_03_trace_formula() {
    let gate = Gate::new("3: TV(T^3) = rank_z = dim V(torus)", None);
    let mut pass = true;
    let t3 = tri("t3");
    for (name, expected) in [("vec_z2", 4.0), ("fib", 4.0), ("ising", 9.0)] {
        let (_, fs) = category(name);
        let tv = tv_invariant(&fs, &t3, &TvOptions::default()).unwrap();
        let center = center_of(name);
        let rank_z = center.rank_z() as f64;
        let genus1 = dim_closed_surface(&center.modular, 1, Tol::default()).unwrap() as f64;
        for (what, value) in [("TV", tv.re), ("rank_z", rank_z), ("dim", genus1)] {
            if (value - expected).abs() > 1e-6 || tv.im.abs() > 1e-6 {
                eprintln!("  {name}: {what} = {value}, expected {expected}");
                pass = false;
            }
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_04_center_oracle() {
    let gate = Gate::new("4: center square-oracle and anomaly freeness", None);
    let mut pass = true;
    let fib = center_of("fib");
    let md = parse_modular_data(fixtures::modular_json("fib_modular").unwrap()).unwrap();
    let square = center_from_square(&md, Tol::default()).unwrap();
    if square.rank != fib.rank_z() {
        pass = false;
    } else {
        let mut direct = 0.0f64;
        let mut mirror = 0.0f64;
        for i in 0..square.rank {
            for j in 0..square.rank {
                direct = direct.max((fib.modular.s(i, j) - square.s(i, j)).norm());
                mirror = mirror.max((fib.modular.s(i, j) - square.s(i, j).conj()).norm());
            }
            direct = direct.max((fib.modular.theta(i) - square.theta(i)).norm());
            mirror = mirror.max((fib.modular.theta(i) - square.theta(i).conj()).norm());
        }
        if direct.min(mirror) > 1e-6 {
            eprintln!("  S/T difference: direct {direct:.2e}, mirror {mirror:.2e}");
            pass = false;
        }
    }
    for name in ["vec_z2", "vec_z3", "fib", "ising"] {
        let c = center_of(name);
        let anomaly = c.modular.p_plus() / c.modular.dtotal();
        if (anomaly - Complex64::new(1.0, 0.0)).norm() > 1e-6 {
            eprintln!("  {name}: p+/D = {anomaly}");
            pass = false;
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_05_positivity() {
    let gate = Gate::new("5: positivity for all categorifiable rings", Some(5.0));
    let mut pass = true;
    for name in ["vec_z2", "vec_z3", "fib", "ising", "rep_s3"] {
        let ring = parse_fusion_ring(fixtures::ring_json(name).unwrap()).unwrap();
        let dims = frobenius_perron_data(&ring).unwrap();
        let opts = CriteriaOptions::default();
        let n_max = (0..)
            .take_while(|&n| (ring.rank as f64).powi(n as i32 + 1) <= opts.size_cap as f64)
            .count()
            + 1;
        let reports = check_positivity(&ring, &dims, n_max, &opts);
        for rep in &reports {
            println!(
                "  {name:8} n = {:2} dim = {:5} min eigenvalue = {:+.3e} {}",
                rep.n,
                rep.matrix_dim,
                rep.min_eigenvalue,
                if rep.pass { "ok" } else { "NEGATIVE" }
            );
            pass &= rep.pass;
        }
        let max_dim = reports.iter().map(|r| r.matrix_dim).max().unwrap();
        if max_dim * ring.rank > opts.size_cap {
            // reached the cap as required
        } else {
            eprintln!("  {name}: did not reach the size cap (max dim {max_dim})");
            pass = false;
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_06_pentagon_gate() {
    let gate = Gate::new("6: pentagon residuals and perturbation", None);
    let mut pass = true;
    for name in ["trivial", "vec_z2", "vec_z3", "fib", "ising"] {
        let (_, fs) = category(name);
        let report = verify_pentagon(&fs);
        if !report.pass || report.max_residual > 1e-12 {
            eprintln!("  {name}: residual {}", report.max_residual);
            pass = false;
        }
    }
    // Perturb one Fibonacci entry by 1e-3 through JSON.
    let text = fixtures::ring_json("fib").unwrap();
    let ring = parse_fusion_ring(text).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(text).unwrap();
    for row in doc["fsymbols"].as_array_mut().unwrap() {
        let r = row.as_array().unwrap();
        if (0..6).all(|i| r[i].as_f64() == Some(1.0)) && r[4].as_f64() == Some(1.0) {
            let v = row[6].as_f64().unwrap();
            row[6] = serde_json::json!(v + 1e-3);
            break;
        }
    }
    let perturbed = parse_fsymbols(&serde_json::to_string(&doc).unwrap(), &ring).unwrap();
    let report = verify_pentagon(&perturbed);
    if report.pass {
        eprintln!("  perturbed Fibonacci passed the pentagon gate");
        pass = false;
    }
    gate.finish(pass);
}

#[test]
fn criterion_07_polygon_pants_consistency() {
    let gate = Gate::new("7: polygon and pants dimension counts", None);
    let mut pass = true;
    for name in ["vec_z2", "vec_z3", "fib", "ising", "rep_s3"] {
        let ring = parse_fusion_ring(fixtures::ring_json(name).unwrap()).unwrap();
        for a in 0..ring.rank {
            for b in 0..ring.rank {
                for c in 0..ring.rank {
                    let expected = ring.product_multiplicity(&[a, b, c], 0);
                    for split in [false, true] {
                        let surf = marked_three_holed_sphere(a, b, c, split);
                        if dim_state_space(&ring, &surf).unwrap() != expected {
                            eprintln!("  {name} ({a},{b},{c}) split={split}");
                            pass = false;
                        }
                    }
                }
            }
        }
    }
    for name in ["rank1", "toric_code", "fib_modular", "ising_modular", "semion"] {
        let md = parse_modular_data(fixtures::modular_json(name).unwrap()).unwrap();
        for g in 0..=3usize {
            let pants = dim_closed_surface(&md, g, Tol::default()).unwrap() as f64;
            let verlinde = verlinde_dimension(&md, g, Tol::default()).unwrap();
            if (pants - verlinde).abs() > 1e-9 {
                eprintln!("  {name} genus {g}: {pants} vs {verlinde}");
                pass = false;
            }
        }
    }
    let toric = parse_modular_data(fixtures::modular_json("toric_code").unwrap()).unwrap();
    pass &= dim_closed_surface(&toric, 2, Tol::default()).unwrap() == 16;
    let zfib = center_of("fib");
    pass &= dim_closed_surface(&zfib.modular, 2, Tol::default()).unwrap() == 25;
    gate.finish(pass);
}

#[test]
fn criterion_08_indicator_oracle() {
    let gate = Gate::new("8: indicators match the tube oracle", None);
    let mut pass = true;
    for name in ["vec_z2", "vec_z3", "fib", "ising"] {
        let center = center_of(name);
        let rank_c = center.tube.fs.ring.rank;
        for m in -3i64..=3 {
            for r in -3i64..=3 {
                if m == 0 && r == 0 {
                    continue;
                }
                let curve = TorusCurve::new(m, r).unwrap();
                for v in 0..rank_c {
                    for x in 0..center.rank_z() {
                        let reference = indicator_reference_oracle(&center, curve, v, x).unwrap();
                        let value = genus1_indicator(
                            &center,
                            curve,
                            &K0Vector::basis(rank_c, v),
                            &K0Vector::basis(center.rank_z(), x),
                            Tol::default(),
                        )
                        .unwrap();
                        if (reference - value).norm() > 1e-6 {
                            eprintln!(
                                "  {name} ({m},{r}) v={v} x={x}: {value} vs oracle {reference}"
                            );
                            pass = false;
                        }
                    }
                }
            }
        }
    }
    for (name, label) in [("vec_z2", 1usize), ("fib", 1usize)] {
        let center = center_of(name);
        let nu2 = fs_indicator(&center, 2, 0, label, None, Tol::default()).unwrap();
        if (nu2 - Complex64::new(1.0, 0.0)).norm() > 1e-6 {
            eprintln!("  {name}: nu_2 = {nu2}");
            pass = false;
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_09_equivariance_and_scaling() {
    let gate = Gate::new("9: equivariance and the scaling law", None);
    let mut pass = true;
    let gens = [S_MAT, t_mat(1), t_mat(-1)];
    for name in ["vec_z2", "vec_z3", "fib", "ising"] {
        let center = center_of(name);
        let rank_c = center.tube.fs.ring.rank;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..20 {
            let mut f = [[1i64, 0], [0, 1]];
            for _ in 0..rng.gen_range(1..=6usize) {
                f = mat_mul(f, gens[rng.gen_range(0..3)]);
            }
            let curve = TorusCurve::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
                .unwrap_or(TorusCurve { m: 1, r: 0 });
            let v = K0Vector(
                (0..rank_c)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
            let z = K0Vector(
                (0..center.rank_z())
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
            // Random complex v only enters the primitive-curve path.
            let curve = if curve.is_primitive() { curve } else { TorusCurve { m: 1, r: 0 } };
            let report = check_equivariance(&center, f, curve, &v, &z, Tol::default()).unwrap();
            if !report.holds {
                eprintln!("  {name} f={f:?} curve=({},{}): residual {}", curve.m, curve.r, report.residual);
                pass = false;
            }
        }
    }
    // Scaling law against cabling, exact to 1e-9.
    let center = center_of("fib");
    let ring_rank = center.tube.fs.ring.rank;
    for lambda in [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)] {
        for ell in 1i64..=3 {
            for (m, r) in [(1i64, 0i64), (1, 1), (0, 1)] {
                let base_curve = TorusCurve::new(m, r).unwrap();
                let d = base_curve.d();
                let word = vec![1usize; ell as usize];
                let mut class = vec![Complex64::new(0.0, 0.0); ring_rank];
                for (k, item) in class.iter_mut().enumerate() {
                    *item = Complex64::new(
                        center.tube.fs.ring.product_multiplicity(&word, k) as f64,
                        0.0,
                    );
                }
                let v = K0Vector(class).scaled(lambda.powu(ell as u32));
                for x in 0..center.rank_z() {
                    let z = K0Vector::basis(center.rank_z(), x);
                    let lhs = genus1_indicator(&center, base_curve, &v, &z, Tol::default()).unwrap();
                    let cabled = TorusCurve::new(m * ell, r * ell).unwrap();
                    let rhs = genus1_indicator(
                        &center,
                        cabled,
                        &K0Vector::basis(ring_rank, 1),
                        &z,
                        Tol::default(),
                    )
                    .unwrap();
                    let expect = lambda.powu(d as u32 * ell as u32) * rhs;
                    if (lhs - expect).norm() > 1e-9 * (1.0 + expect.norm()) {
                        eprintln!("  scaling lambda={lambda} ell={ell} ({m},{r}) x={x}: {lhs} vs {expect}");
                        pass = false;
                    }
                }
            }
        }
    }
    gate.finish(pass);
}

#[test]
fn criterion_10_determinism() {
    let gate = Gate::new("10: determinism and parallel agreement", None);
    let mut pass = true;
    // Byte-identical center reports for a fixed seed.
    let (_, fs) = category("fib");
    let tube = build_tube_algebra(&fs).unwrap();
    let a = decompose_center(&tube, 42, Tol::default()).unwrap();
    let b = decompose_center(&tube, 42, Tol::default()).unwrap();
    let ja = serde_json::to_string(&a.data).unwrap() + &a.modular.to_json();
    let jb = serde_json::to_string(&b.data).unwrap() + &b.modular.to_json();
    if ja != jb {
        eprintln!("  center reports differ between identical runs");
        pass = false;
    }
    // Parallel and serial state sums agree bitwise.
    for name in ["vec_z3", "fib", "ising"] {
        let (_, fs) = category(name);
        for fixture in ["t3", "lens_5_1"] {
            let t = tri(fixture);
            let serial = tv_invariant(&fs, &t, &TvOptions { parallel: false, ..Default::default() }).unwrap();
            let par = tv_invariant(&fs, &t, &TvOptions { parallel: true, ..Default::default() }).unwrap();
            if serial.re.to_bits() != par.re.to_bits() || serial.im.to_bits() != par.im.to_bits() {
                eprintln!("  {name} on {fixture}: parallel differs from serial");
                pass = false;
            }
        }
    }
    gate.finish(pass);
}
