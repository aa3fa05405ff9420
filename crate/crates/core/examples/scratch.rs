use std::time::Instant;

use herbex_core::gen;
use herbex_core::interp::{canonical_counter_args, transform_all};
use herbex_core::proofs::check_one_sided;
use herbex_core::reduce::DEFAULT_FUEL;
use herbex_core::samples;
use herbex_core::verify::check_soundness_report;

fn main() {
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(5);
    let mut pool = vec![samples::lem(), samples::x1(), samples::x2(), samples::x3()];
    for _ in 0..200 {
        pool.push(gen::random_one_sided(&mut rng, &sig));
    }
    let target = 159;
    for (i, p) in pool.iter().enumerate() {
        let end = check_one_sided(p).unwrap();
        let mut vectors = vec![canonical_counter_args(&sig, &end.0)];
        for _ in 0..3 {
            vectors.push(gen::random_counter_args(&mut rng, &sig, &end.0));
        }
        if i != target {
            continue;
        }
        let doc = herbex_core::format::ProofDocument {
            signature: sig.clone(),
            proof: herbex_core::format::AnyProof::One(p.clone()),
        };
        eprintln!("proof {target}:\n{}", herbex_core::format::print_proof_file(&doc));
        eprintln!("end: {end}");
        for (k, args) in vectors.iter().enumerate() {
            let t = Instant::now();
            let evidence = transform_all(&sig, p, args).unwrap();
            let esz: usize = evidence.iter().map(|e| e.size()).sum();
            eprintln!("vector {k}: transform_all {:?}, evidence nodes {esz}", t.elapsed());
            let t = Instant::now();
            let r = check_soundness_report(&sig, p, args, DEFAULT_FUEL).unwrap();
            eprintln!(
                "vector {k}: full report {:?}, holds {}",
                t.elapsed(),
                r.outcome.holds()
            );
        }
        break;
    }
}
