//! Dev tool: enumerate two-tetrahedron face pairings and keep closed
//! orientable quotients with H1 = Z (that census class is S^2 x S^1).
//! Cross-checks the Turaev--Viro value against the Vec_Z2 / Vec_Z3 oracles
//! and prints the gluing table as fixture JSON.

use tqft_core::fixtures;
use tqft_core::fsym::parse_fsymbols;
use tqft_core::homology::first_homology;
use tqft_core::ring::parse_fusion_ring;
use tqft_core::tri::{Gluing, Triangulation};
use tqft_core::tv::{tv_invariant, vec_g_oracle, TvOptions};

fn perms3(from: [usize; 3], to: [usize; 3]) -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    let idx = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for p in idx {
        out.push([(from[0], to[p[0]]), (from[1], to[p[1]]), (from[2], to[p[2]])]);
    }
    out
}

fn main() {
    let faces: Vec<(usize, usize)> = (0..2).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
    let mut matchings: Vec<Vec<((usize, usize), (usize, usize))>> = Vec::new();
    fn build(
        rest: Vec<(usize, usize)>,
        acc: Vec<((usize, usize), (usize, usize))>,
        out: &mut Vec<Vec<((usize, usize), (usize, usize))>>,
    ) {
        if rest.is_empty() {
            out.push(acc);
            return;
        }
        let first = rest[0];
        for k in 1..rest.len() {
            let mut next = rest.clone();
            let partner = next.remove(k);
            next.remove(0);
            let mut acc2 = acc.clone();
            acc2.push((first, partner));
            build(next, acc2, out);
        }
    }
    build(faces, Vec::new(), &mut matchings);
    println!("matchings: {}", matchings.len());

    let fib_text = fixtures::ring_json("fib").unwrap();
    let fib_ring = parse_fusion_ring(fib_text).unwrap();
    let fib = parse_fsymbols(fib_text, &fib_ring).unwrap();

    let mut found = 0;
    'outer: for matching in &matchings {
        // For each pair choose one of six corner bijections.
        let per_pair: Vec<Vec<Vec<(usize, usize)>>> = matching
            .iter()
            .map(|&((_, f1), (_, f2))| {
                let from: Vec<usize> = (0..4).filter(|&c| c != f1).collect();
                let to: Vec<usize> = (0..4).filter(|&c| c != f2).collect();
                perms3([from[0], from[1], from[2]], [to[0], to[1], to[2]])
                    .into_iter()
                    .map(|m| m.to_vec())
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; matching.len()];
        loop {
            // Assemble the gluing table.
            let mut gl = vec![[Gluing(usize::MAX, 0, [0; 4]); 4]; 2];
            for (k, &((t1, f1), (t2, f2))) in matching.iter().enumerate() {
                let mut perm = [0usize; 4];
                perm[f1] = f2;
                for &(a, b) in &per_pair[k][choice[k]] {
                    perm[a] = b;
                }
                let mut inv = [0usize; 4];
                for c in 0..4 {
                    inv[perm[c]] = c;
                }
                gl[t1][f1] = Gluing(t2, f2, perm);
                gl[t2][f2] = Gluing(t1, f1, inv);
            }
            if let Ok(tri) = Triangulation::from_gluings(vec![gl[0], gl[1]]) {
                let h = first_homology(&tri);
                if h.betti == 1 && h.torsion.is_empty() {
                    let z2 = vec_g_oracle(2, &tri);
                    let z3 = vec_g_oracle(3, &tri);
                    let fibv = tv_invariant(&fib, &tri, &TvOptions::default()).unwrap();
                    println!(
                        "candidate: oracle2 {z2} oracle3 {z3} fib {:.6}+{:.6}i",
                        fibv.re, fibv.im
                    );
                    if (fibv.re - 1.0).abs() < 1e-9 && fibv.im.abs() < 1e-9 {
                        println!("{}", tri.to_json());
                        found += 1;
                        if found >= 1 {
                            break 'outer;
                        }
                    }
                }
            }
            // Next choice.
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < 6 {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    if found == 0 {
        println!("no candidate found");
    }
}
