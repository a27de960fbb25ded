//! Proportion of full-length 2-dimensional RS codes correcting one insdel:
//! exhaustive census for small fields, formula with deduplication beyond.

use rs_insdel::analyze::Guards;
use rs_insdel::bounds::table1;

fn main() {
    println!(" q  method          correcting / classes   proportion   lower bound");
    for r in table1(&Guards::default()).unwrap() {
        println!(
            "{:>2}  {:<14} {:>11} / {:<9} {:>10}   {:>11}",
            r.q,
            format!("{:?}", r.method),
            r.classes_correcting_one,
            r.classes_total,
            r.proportion_3dp,
            r.prop7_proportion_3dp
        );
    }
}
