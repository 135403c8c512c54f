use tqft_core::fixtures;
use tqft_core::fsym::parse_fsymbols;
use tqft_core::ring::parse_fusion_ring;
use tqft_core::tube::build_tube_algebra;
use tqft_core::scalar::Tol;

fn main() {
    let name = std::env::args().nth(1).unwrap_or("vec_z2".into());
    let text = fixtures::ring_json(&name).unwrap();
    let ring = parse_fusion_ring(text).unwrap();
    let fs = parse_fsymbols(text, &ring).unwrap();
    let tube = build_tube_algebra(&fs).unwrap();
    println!("tube dim {}", tube.dim);
    match tqft_core::center::decompose_center(&tube, 42, Tol::default()) {
        Ok(c) => println!("ok rank_z {} dims {:?} twists {:?}", c.rank_z(), c.data.dims_z, c.data.twists),
        Err(e) => println!("ERR: {e}"),
    }
}
