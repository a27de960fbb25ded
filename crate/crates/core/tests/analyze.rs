use std::sync::Arc;

use itertools::Itertools;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rs_insdel::analyze::{
    census_2dim, classify_bad_ordering, is_optimal_half_rate, lcs_code_affine, lcs_code_bruteforce,
    next_permutation, sample_orderings, CensusVerify, Guards, Optimality,
};
use rs_insdel::gf::{Field, FieldElement};
use rs_insdel::insdel::{lcs, rank_certificate};
use rs_insdel::poly::Polynomial;
use rs_insdel::rscode::{EvaluationVector, RsCode};

/// LCS(C) over every ordered pair of distinct codewords, no symmetry used.
fn lcs_unreduced(code: &RsCode) -> usize {
    let f = code.field();
    let q = f.order();
    let words: Vec<Vec<FieldElement>> = (0..code.size())
        .map(|mut idx| {
            let coeffs = (0..code.k())
                .map(|_| {
                    let c = f.element(idx % q as u64).unwrap();
                    idx /= q as u64;
                    c
                })
                .collect();
            code.codeword(&Polynomial::new(coeffs)).unwrap()
        })
        .collect();
    words
        .iter()
        .enumerate()
        .flat_map(|(i, a)| words.iter().enumerate().filter(move |&(j, _)| j != i).map(move |(_, b)| lcs(a, b)))
        .max()
        .unwrap()
}

fn random_code(q: u64, n: usize, k: usize, rng: &mut ChaCha8Rng) -> RsCode {
    let field = Arc::new(Field::with_order(q).unwrap());
    let mut idx: Vec<u64> = (0..q).collect();
    idx.shuffle(rng);
    RsCode::new(EvaluationVector::from_indices(field, &idx[..n]).unwrap(), k).unwrap()
}

/// Every canonical full-length ordering `(0, 1, ...)` of GF(q).
fn canonical_orderings(field: &Arc<Field>) -> Vec<EvaluationVector> {
    let mut tail: Vec<FieldElement> = field.elements().skip(2).collect();
    let mut out = Vec::new();
    loop {
        let mut points = vec![field.zero(), field.one()];
        points.extend_from_slice(&tail);
        out.push(EvaluationVector::new(field.clone(), points).unwrap());
        if !next_permutation(&mut tail) {
            return out;
        }
    }
}

#[test]
fn bruteforce_matches_unreduced_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (q, n, k) in [(5, 4, 2), (7, 5, 2), (7, 4, 1), (4, 4, 3), (8, 6, 2), (5, 5, 3), (9, 3, 2)] {
        for _ in 0..6 {
            let code = random_code(q, n, k, &mut rng);
            let report = lcs_code_bruteforce(&code, &Guards::default()).unwrap();
            assert_eq!(report.lcs_of_code, lcs_unreduced(&code), "{}", code.eval());
            assert!(report.satisfies_half_singleton());
            let w = report.witness.unwrap();
            assert_ne!(w.f, w.g);
            let (cf, cg) = (code.codeword(&w.f).unwrap(), code.codeword(&w.g).unwrap());
            assert_eq!(lcs(&cf, &cg), report.lcs_of_code);
        }
    }
}

#[test]
fn affine_fast_path_matches_bruteforce() {
    for q in [4u64, 5, 7, 8] {
        let field = Arc::new(Field::with_order(q).unwrap());
        for eval in canonical_orderings(&field) {
            let fast = lcs_code_affine(&eval).unwrap();
            let slow = lcs_code_bruteforce(&RsCode::new(eval.clone(), 2).unwrap(), &Guards::default()).unwrap();
            assert_eq!(fast.lcs_of_code, slow.lcs_of_code, "{eval}");
        }
    }
}

#[test]
fn bad_orderings_are_exactly_the_lcs_maximal_ones() {
    for q in [5u64, 7] {
        let field = Arc::new(Field::with_order(q).unwrap());
        for eval in canonical_orderings(&field) {
            let bad = classify_bad_ordering(&eval).unwrap().bad;
            assert_eq!(bad, lcs_code_affine(&eval).unwrap().lcs_of_code == q as usize - 1, "{eval}");
        }
    }
}

#[test]
fn optimality_check_matches_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = [0usize; 2];
    for (q, k) in [(7u64, 2usize), (8, 2), (9, 2), (7, 3), (8, 3)] {
        for _ in 0..15 {
            let code = random_code(q, 2 * k, k, &mut rng);
            let exact = lcs_code_bruteforce(&code, &Guards::default()).unwrap();
            let verdict = is_optimal_half_rate(code.eval(), k, &Guards::default()).unwrap();
            assert_eq!(verdict.is_optimal(), exact.optimal, "{}", code.eval());
            seen[exact.optimal as usize] += 1;
            if let Optimality::NotOptimal(w) = verdict {
                let (cf, cg) = (code.codeword(&w.f).unwrap(), code.codeword(&w.g).unwrap());
                let i_vals: Vec<_> = w.i.iter().map(|&p| cf[p - 1]).collect();
                let j_vals: Vec<_> = w.j.iter().map(|&p| cg[p - 1]).collect();
                assert_eq!(i_vals, j_vals);
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "both verdicts exercised: {seen:?}");
}

#[test]
fn certificate_never_overclaims() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let q = *[7u64, 8, 11, 13, 16].choose(&mut rng).unwrap();
        let n = rng.gen_range(4..8);
        let code = random_code(q, n, 2, &mut rng);
        let exact = lcs_code_bruteforce(&code, &Guards::default()).unwrap();
        for t in 1..=n - 3 {
            if rank_certificate(&code, t).unwrap().is_certified() {
                assert!(exact.corrects(t), "{} t={t}", code.eval());
            }
        }
    }
}

#[test]
fn census_agrees_with_listed_classes() {
    for q in [4u64, 5, 7, 8] {
        let field = Field::with_order(q).unwrap();
        let r = census_2dim(&field, CensusVerify::All, &Guards::default()).unwrap();
        assert_eq!(r.mismatches, 0);
        assert_eq!(r.verified, r.classes_total);
        let bad = rs_insdel::bounds::exact_bad_class_count(q).unwrap() as u64;
        assert_eq!(r.classes_total - r.classes_correcting_one, bad, "q={q}");
    }
}

#[test]
fn census_guard_is_enforced() {
    let field = Field::with_order(13).unwrap();
    assert!(census_2dim(&field, CensusVerify::None, &Guards::default()).is_err());
}

#[test]
fn sampling_ignores_thread_count() {
    let field = Field::with_order(27).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sample_orderings(&field, 0.5, 40, 9, &Guards::default()).unwrap())
    };
    assert_eq!(run(1), run(4));
    assert_ne!(run(1).lcs_values, sample_orderings(&field, 0.5, 40, 10, &Guards::default()).unwrap().lcs_values);
}

#[test]
fn orderings_enumerated_once() {
    let field = Arc::new(Field::with_order(7).unwrap());
    let all = canonical_orderings(&field);
    assert_eq!(all.len(), 120);
    assert_eq!(all.iter().map(|e| e.indices()).unique().count(), 120);
}
