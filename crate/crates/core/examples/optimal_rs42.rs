//! Which `(0, 1, α₁, α₂)` give an RS_{4,2} code that corrects one insdel?
//! Compares the closed-form predicate with the exact check over small fields.

use std::sync::Arc;

use rs_insdel::analyze::{is_optimal_half_rate, predicate_rs42, Guards};
use rs_insdel::gf::Field;
use rs_insdel::rscode::EvaluationVector;

fn main() {
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        let field = Arc::new(Field::with_order(q).unwrap());
        let (mut optimal, mut total, mut mismatches) = (0, 0, 0);
        for a1 in 2..q {
            for a2 in 2..q {
                if a1 == a2 {
                    continue;
                }
                let eval = EvaluationVector::from_indices(field.clone(), &[0, 1, a1, a2]).unwrap();
                let exact = is_optimal_half_rate(&eval, 2, &Guards::default()).unwrap().is_optimal();
                let predicted = predicate_rs42(&field, eval.at(3), eval.at(4)).unwrap();
                total += 1;
                optimal += exact as usize;
                mismatches += (exact != predicted) as usize;
            }
        }
        println!("GF({q:>2}): {optimal:>3} of {total:>3} pairs optimal, {mismatches} predicate mismatches");
    }
}
