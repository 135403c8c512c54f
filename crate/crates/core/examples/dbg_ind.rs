use tqft_core::center::decompose_center;
use tqft_core::fixtures;
use tqft_core::fsym::parse_fsymbols;
use tqft_core::indicators::*;
use tqft_core::ring::parse_fusion_ring;
use tqft_core::scalar::Tol;
use tqft_core::tube::build_tube_algebra;

fn main() {
    for name in ["vec_z2", "vec_z3", "fib", "ising"] {
        let text = fixtures::ring_json(name).unwrap();
        let ring = parse_fusion_ring(text).unwrap();
        let fs = parse_fsymbols(text, &ring).unwrap();
        let tube = build_tube_algebra(&fs).unwrap();
        let center = decompose_center(&tube, 42, Tol::default()).unwrap();
        let rank_c = ring.rank;
        for m in -3i64..=3 {
            for r in -3i64..=3 {
                if m == 0 && r == 0 { continue; }
                let curve = TorusCurve::new(m, r).unwrap();
                for v in 0..rank_c {
                    for x in 0..center.rank_z() {
                        let reference = indicator_reference_oracle(&center, curve, v, x).unwrap();
                        match genus1_indicator(&center, curve,
                            &K0Vector::basis(rank_c, v), &K0Vector::basis(center.rank_z(), x), Tol::default()) {
                            Ok(value) => {
                                if (reference - value).norm() > 1e-6 {
                                    println!("{name} ({m},{r}) v={v} x={x}: impl {value} oracle {reference}");
                                }
                            }
                            Err(e) => { println!("{name} ({m},{r}) v={v} x={x}: ERR {e}"); return; }
                        }
                    }
                }
            }
        }
        println!("{name} done");
    }
}
