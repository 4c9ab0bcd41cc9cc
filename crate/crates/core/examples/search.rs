//! Times the basis search on a builtin group's reflection multi-arrangement.

use std::time::Instant;

use multider::derivations::{hilbert_consistency, free_basis_search, SearchOptions};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "G25".into());
    let t = Instant::now();
    let group = multider::builtin_group(&name, None).expect("group");
    let arr = group.reflection_arrangement().expect("arrangement");
    println!("{name}: {} hyperplanes, |rho| = {} ({:?})", arr.order(), arr.total_multiplicity(), t.elapsed());
    let t = Instant::now();
    let out = free_basis_search(&arr, &SearchOptions::default()).expect("search");
    println!("exponents {:?} ({:?})", out.exponents(), t.elapsed());
    if let Some(cert) = out.certificate() {
        let t = Instant::now();
        let top = cert.degrees.iter().max().copied().unwrap_or(0) + 3;
        let rep = hilbert_consistency(cert, &arr, top).expect("hilbert");
        println!("hilbert consistent: {} ({:?})", rep.consistent(), t.elapsed());
    }
}
