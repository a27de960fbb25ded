//! The full-length orderings whose 2-dimensional RS code cannot correct a
//! single insdel: geometric, reversed geometric and (for prime q) the
//! arithmetic progression, up to affine equivalence.

use std::sync::Arc;

use rs_insdel::analyze::{classify_bad_ordering, lcs_code_affine, listed_bad_vectors};
use rs_insdel::gf::Field;
use rs_insdel::rscode::EvaluationVector;

fn main() {
    let field = Arc::new(Field::with_order(7).unwrap());
    for v in listed_bad_vectors(&field) {
        let eval = EvaluationVector::new(field.clone(), v.points.clone()).unwrap();
        let report = lcs_code_affine(&eval).unwrap();
        println!(
            "{:<20} θ={:<4} {eval}  canonical {}  LCS(C)={}",
            format!("{:?}", v.reason),
            v.theta.map_or("-".to_string(), |t| t.to_string()),
            eval.canonical_form(),
            report.lcs_of_code
        );
    }

    // An equivalent copy is recognised, with the affine map that produces it.
    let copy = EvaluationVector::from_indices(field.clone(), &[3, 5, 0, 2, 4, 6, 1]).unwrap();
    println!("\n{copy}: {:?}", classify_bad_ordering(&copy).unwrap());
}
