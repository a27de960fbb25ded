use std::sync::Arc;

use rs_insdel::analyze::{is_optimal_half_rate, Guards};
use rs_insdel::construct::{
    bad_set, base_case, construct_half_rate, extend, prop14_min_q, ConstructOptions, ExtendOptions, Verification,
    VerifyMode,
};
use rs_insdel::gf::Field;
use rs_insdel::rscode::EvaluationVector;

/// Every admissible pair left outside the bad set must give an optimal code,
/// whatever the field size.
#[test]
fn pairs_outside_bad_set_are_optimal() {
    for q in [11u64, 13, 16, 31] {
        let field = Arc::new(Field::with_order(q).unwrap());
        let base = base_case(&field).unwrap();
        for restrict_dh in [false, true] {
            let bad = bad_set(&base, 3, ExtendOptions { restrict_dh }).unwrap();
            let used: Vec<u32> = base.indices();
            let mut good = 0;
            for x in 0..q as u32 {
                for y in 0..q as u32 {
                    if x == y || used.contains(&x) || used.contains(&y) || bad.pairs.contains(&(x, y)) {
                        continue;
                    }
                    let mut idx: Vec<u64> = used.iter().map(|&v| v as u64).collect();
                    idx.extend([x as u64, y as u64]);
                    let alpha = EvaluationVector::from_indices(field.clone(), &idx).unwrap();
                    assert!(
                        is_optimal_half_rate(&alpha, 3, &Guards::default()).unwrap().is_optimal(),
                        "q={q}: pair ({x},{y}) outside the bad set is not optimal"
                    );
                    good += 1;
                }
            }
            eprintln!("q={q} restrict={restrict_dh}: |B|={} good={good}", bad.pairs.len());
        }
    }
}

#[test]
fn restricted_sweep_is_a_subset() {
    // At i = 3 every prefix pair is already far enough apart; i = 4 is the
    // first stage where the restriction drops anything.
    let field = Arc::new(Field::with_order(251).unwrap());
    let t = construct_half_rate(251, 3, VerifyMode::Exact, Default::default(), &Guards::default()).unwrap();
    let six = t.evaluation_vector(field).unwrap();
    let full = bad_set(&six, 4, ExtendOptions { restrict_dh: false }).unwrap();
    let restricted = bad_set(&six, 4, ExtendOptions { restrict_dh: true }).unwrap();
    assert!(restricted.pairs.is_subset(&full.pairs));
    assert!(restricted.prefix_pairs < full.prefix_pairs);
}

#[test]
fn construction_is_deterministic() {
    let a = construct_half_rate(251, 3, VerifyMode::None, Default::default(), &Guards::default()).unwrap();
    let b = construct_half_rate(251, 3, VerifyMode::None, Default::default(), &Guards::default()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn small_fields_may_be_attempted() {
    let opts = ConstructOptions { allow_small_q: true, ..Default::default() };
    assert!(construct_half_rate(64, 3, VerifyMode::Exact, Default::default(), &Guards::default()).is_err());
    let t = construct_half_rate(64, 3, VerifyMode::Exact, opts, &Guards::default()).unwrap();
    assert_eq!(t.stages[0].verification, Verification::ExactOptimal);
    assert!(64 < prop14_min_q(3).unwrap());
}

#[test]
fn extension_grows_by_two() {
    let field = Arc::new(Field::with_order(251).unwrap());
    let base = base_case(&field).unwrap();
    let ext = extend(&base, 3, Default::default()).unwrap();
    assert_eq!(ext.alpha.len(), 6);
    assert_eq!(&ext.alpha[..4], base.indices().as_slice());
}
