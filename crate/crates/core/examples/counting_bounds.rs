//! Evaluates the counting bounds exactly: lower bounds on 1-insdel-correcting classes
//! for small fields and the bad-ordering sum against its closed form.

use rs_insdel::bounds::{claim8_bound, exact_bad_class_count, prop6_bad_ordering_bound, prop7_lower_bound_classes};

fn main() {
    println!(" q  lower bound  listed bad classes");
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16] {
        println!(
            "{q:>2}  {:>11}  {:>18}",
            prop7_lower_bound_classes(q).unwrap(),
            exact_bad_class_count(q).unwrap()
        );
    }

    println!("\nbad-ordering sum at q = 7: {:?}", (1..=7).map(|l| prop6_bad_ordering_bound(7, l).unwrap().to_string()).collect::<Vec<_>>());

    for (q, delta) in [(256u64, 0.25), (256, 0.5), (1024, 0.5), (100, 0.005)] {
        let r = claim8_bound(q, delta).unwrap();
        let c = r.comparison.unwrap();
        let ln = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2}"));
        println!(
            "q={q:>4} δ={delta:<5}  ln lhs = {:>9}  ln rhs = {:>9}  {:?}",
            ln(c.ln_lhs),
            ln(c.ln_rhs),
            c.verdict
        );
    }
}
