//! Random full-length orderings: how often does the 2-dimensional code
//! correct a `(1 − δ)` fraction of insdel errors?
//!
//! Usage: `cargo run --release --example random_orderings [q] [δ] [trials] [seed]`

use rs_insdel::analyze::{sample_orderings, Guards};
use rs_insdel::gf::Field;

fn main() {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(81, |s| s.parse().expect("q"));
    let delta: f64 = args.next().map_or(0.5, |s| s.parse().expect("δ"));
    let trials: usize = args.next().map_or(100, |s| s.parse().expect("trials"));
    let seed: u64 = args.next().map_or(42, |s| s.parse().expect("seed"));

    let field = Field::with_order(q).unwrap();
    let r = sample_orderings(&field, delta, trials, seed, &Guards::default()).unwrap();
    let max = r.lcs_values.iter().max().copied().unwrap_or(0);
    println!("GF({q}), δ = {delta}, {trials} trials, seed {seed}");
    println!("LCS(C) <= {}: {} ({:.3})", r.lcs_threshold, r.correcting, r.fraction_correcting.unwrap_or(0.0));
    println!("corrects one insdel: {}", r.correcting_one);
    println!("largest LCS(C) seen: {max}");
}
