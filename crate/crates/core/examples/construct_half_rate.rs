//! Builds rate-1/2 evaluation vectors stage by stage and prints the trace.
//!
//! Usage: `cargo run --release --example construct_half_rate [q] [k]`
//! (defaults: q = 251, k = 3). Stages up to `k = 3` are checked with the
//! exact optimality test; larger `k` fall back to the rank certificate.

use std::time::Instant;

use rs_insdel::analyze::Guards;
use rs_insdel::construct::{construct_half_rate, prop14_min_q, VerifyMode};

fn main() {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(251, |s| s.parse().expect("q"));
    let k: usize = args.next().map_or(3, |s| s.parse().expect("k"));
    let verify = if k <= 3 { VerifyMode::Exact } else { VerifyMode::Certificate };
    println!("q = {q}, k = {k}, guaranteed from q >= {}", prop14_min_q(k).unwrap());

    let start = Instant::now();
    match construct_half_rate(q, k, verify, Default::default(), &Guards::default()) {
        Ok(trace) => {
            println!("base {:?} ({:?})", trace.base, trace.base_verification);
            for s in &trace.stages {
                println!(
                    "stage {}: {} prefix pairs, |B| = {} (ceiling {}), chose {:?}, {:?}",
                    s.i, s.prefix_pairs, s.bad_pair_count, s.bad_pair_ceiling, s.chosen_pair, s.verification
                );
            }
            println!("alpha = {:?}", trace.alpha);
        }
        Err(e) => println!("construction failed: {e}"),
    }
    println!("elapsed {:.2?}", start.elapsed());
}
