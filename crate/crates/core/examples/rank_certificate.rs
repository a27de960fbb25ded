//! The rank certificate: full rank of every qualifying V_{k,ℓ,I,J}(α)
//! certifies insdel correction. Compared here with the exact LCS.

use std::sync::Arc;

use rs_insdel::analyze::{lcs_code_bruteforce, Guards};
use rs_insdel::gf::Field;
use rs_insdel::insdel::rank_certificate;
use rs_insdel::rscode::{EvaluationVector, RsCode};

fn main() {
    let f7 = Arc::new(Field::new(7, 1).unwrap());
    for alpha in [[0u64, 1, 2, 5], [0, 1, 2, 3], [0, 1, 3, 2]] {
        let code = RsCode::new(EvaluationVector::from_indices(f7.clone(), &alpha).unwrap(), 2).unwrap();
        let cert = rank_certificate(&code, 1).unwrap();
        let exact = lcs_code_bruteforce(&code, &Guards::default()).unwrap();
        println!("{alpha:?}: certificate {cert:?}, exact corrects {} insdel(s)", exact.max_correctable);
    }

    // The certificate never claims more than the code can do.
    let f31 = Arc::new(Field::with_order(31).unwrap());
    let code = RsCode::new(EvaluationVector::from_indices(f31, &[0, 1, 5, 12, 3, 20, 9, 27]).unwrap(), 2).unwrap();
    let exact = lcs_code_bruteforce(&code, &Guards::default()).unwrap();
    println!("\nGF(31), n=8, k=2 corrects exactly {} insdels", exact.max_correctable);
    for t in 1..=5 {
        println!("  t={t}: certified = {}", rank_certificate(&code, t).unwrap().is_certified());
    }
}
