use proptest::prelude::*;
use rs_insdel::gf::{euler_phi, prime_power, Field, FieldElement, GfError};
use rs_insdel::poly::{interpolate, rank, solve_linear, LinearSolution, Matrix, Polynomial};

const ORDERS: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 256];

/// Schoolbook product of two residues in base-`p` digit encoding, reduced by
/// the field's modulus. Independent of the log tables.
fn naive_mul(field: &Field, a: u32, b: u32) -> u32 {
    let (p, m) = (field.characteristic() as u64, field.degree() as usize);
    let digits = |mut v: u32| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = v as u64 % p;
                v /= p as u32;
                d
            })
            .collect()
    };
    let (x, y) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        }
    }
    let modulus: Vec<u64> = field.modulus().iter().map(|&c| c as u64).collect();
    for d in (m..2 * m).rev() {
        let c = prod[d];
        if c != 0 {
            for (i, &mc) in modulus.iter().enumerate() {
                let idx = d - m + i;
                prod[idx] = (prod[idx] + p * p - c * mc % p) % p;
            }
        }
    }
    prod[..m].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

fn field_and_elems() -> impl Strategy<Value = (u64, u32, u32, u32)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|q| (Just(q), 0..q as u32, 0..q as u32, 0..q as u32))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn field_axioms((q, a, b, c) in field_and_elems()) {
        let f = Field::with_order(q).unwrap();
        let (a, b, c) = (f.element(a as u64).unwrap(), f.element(b as u64).unwrap(), f.element(c as u64).unwrap());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, f.one()), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q - 1), f.one());
            prop_assert_eq!((q - 1) % f.multiplicative_order(a).unwrap(), 0);
        } else {
            prop_assert_eq!(f.inv(a), Err(GfError::DivisionByZero));
        }
    }

    #[test]
    fn multiplication_matches_schoolbook((q, a, b, _) in field_and_elems()) {
        let f = Field::with_order(q).unwrap();
        let got = f.mul(f.element(a as u64).unwrap(), f.element(b as u64).unwrap());
        prop_assert_eq!(got.value(), naive_mul(&f, a, b));
    }

    #[test]
    fn interpolation_round_trip(coeffs in prop::collection::vec(0u32..13, 1..6), extra in 0usize..4) {
        let f = Field::with_order(13).unwrap();
        let p = Polynomial::new(coeffs.iter().map(|&c| f.element(c as u64).unwrap()).collect());
        let k = coeffs.len();
        let points: Vec<_> = f.elements().take(k + extra).map(|x| (x, p.eval(&f, x))).collect();
        prop_assert_eq!(interpolate(&f, &points, k).unwrap(), Some(p.clone()));
        if !p.is_zero() {
            for r in p.roots(&f).unwrap() {
                prop_assert!(p.eval(&f, r).is_zero());
            }
        }
    }

    #[test]
    fn solutions_satisfy_the_system(entries in prop::collection::vec(0u32..7, 12), rhs in prop::collection::vec(0u32..7, 3)) {
        let f = Field::with_order(7).unwrap();
        let e = |v: u32| f.element(v as u64).unwrap();
        let rows: Vec<Vec<FieldElement>> = entries.chunks(4).map(|r| r.iter().map(|&v| e(v)).collect()).collect();
        let a = Matrix::from_rows(rows).unwrap();
        let b: Vec<FieldElement> = rhs.iter().map(|&v| e(v)).collect();
        match solve_linear(&f, &a, &b).unwrap() {
            LinearSolution::Unique(x) => prop_assert_eq!(a.mul_vec(&f, &x), b),
            LinearSolution::Underdetermined { particular, kernel } => {
                prop_assert_eq!(a.mul_vec(&f, &particular), b.clone());
                prop_assert_eq!(kernel.len(), 4 - rank(&f, &a));
                for v in kernel {
                    prop_assert!(a.mul_vec(&f, &v).iter().all(|x| x.is_zero()));
                }
            }
            LinearSolution::None => prop_assert!(rank(&f, &a) < 3),
        }
    }
}

#[test]
fn construction_errors() {
    assert_eq!(Field::new(6, 1).unwrap_err(), GfError::NonPrime(6));
    assert_eq!(Field::new(2, 0).unwrap_err(), GfError::ZeroDegree);
    assert!(matches!(Field::new(2, 40), Err(GfError::TooLarge { .. })));
    assert_eq!(Field::with_order(12).unwrap_err(), GfError::NotPrimePower(12));
    assert_eq!(prime_power(1367), Some((1367, 1)));
    assert_eq!(prime_power(1369), Some((37, 2)));
}

#[test]
fn primitive_element_count() {
    for q in ORDERS {
        let f = Field::with_order(q).unwrap();
        assert_eq!(f.primitive_elements().len() as u64, euler_phi(q - 1), "q={q}");
    }
}

#[test]
fn vandermonde_has_full_rank() {
    let f = Field::with_order(16).unwrap();
    let rows: Vec<Vec<FieldElement>> = f
        .elements()
        .take(5)
        .map(|x| (0..5).map(|d| f.pow(x, d)).collect())
        .collect();
    assert_eq!(rank(&f, &Matrix::from_rows(rows).unwrap()), 5);
}
