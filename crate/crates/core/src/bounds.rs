//! Closed-form counting bounds, evaluated exactly.
//!
//! Factorials and binomials are big integers; the one transcendental
//! comparison (powers of `e`) is decided by bracketing `e` between two
//! rationals, so a verdict is never the product of rounding. Natural logs are
//! reported alongside for reading, not for deciding.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::analyze::{census_2dim, format_proportion, AnalyzeError, BadOrderingClassifier, CensusVerify, Guards};
use crate::gf::{euler_phi, is_prime, prime_power, Field, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
}

/// Most insdel errors an `[n, k]` linear code can correct: `n − 2k + 1`
/// (negative when `2k > n + 1`, i.e. not even zero errors are guaranteed by
/// the bound's form).
pub fn half_singleton(n: usize, k: usize) -> Result<i64, BoundsError> {
    if k == 0 || k >= n {
        return Err(BoundsError::Precondition(format!("need 1 <= k < n, got n={n}, k={k}")));
    }
    Ok(n as i64 - 2 * k as i64 + 1)
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Falling factorial `q (q-1) ... (q-m+1)`.
fn falling(q: u64, m: u64) -> BigUint {
    (0..m).fold(BigUint::one(), |acc, i| acc * (q - i))
}

fn check_prime_power(q: u64, min: u64) -> Result<(), BoundsError> {
    if q < min || prime_power(q).is_none() {
        return Err(BoundsError::Precondition(format!("need a prime power q >= {min}, got {q}")));
    }
    Ok(())
}

/// Lower bound on the classes of full-length 2-dimensional codes correcting
/// one insdel: `(q−2)! − 2φ(q−1) − [q prime]`, clamped at zero.
pub fn prop7_lower_bound_classes(q: u64) -> Result<BigUint, BoundsError> {
    check_prime_power(q, 4)?;
    let total = factorial(q - 2);
    let bad = BigUint::from(2 * euler_phi(q - 1) + is_prime(q) as u64);
    Ok(if total > bad { total - bad } else { BigUint::zero() })
}

/// Distinct equivalence classes among the listed bad orderings of `GF(q)`.
pub fn exact_bad_class_count(q: u64) -> Result<usize, BoundsError> {
    check_prime_power(q, 4)?;
    let field = Field::with_order(q)?;
    Ok(BadOrderingClassifier::new(&field).distinct_classes())
}

/// The subtracted sum bounding the orderings whose 2-dimensional code has
/// `LCS(C) >= ℓ`:
/// `Σ_{s=ℓ+1}^{min(2ℓ, q)} C(q,s) C(s,ℓ)² (q−s)! (q−1) q Π_{i=0}^{s−ℓ−1} (q−i)`.
pub fn prop6_bad_ordering_bound(q: u64, ell: u64) -> Result<BigUint, BoundsError> {
    if ell == 0 || ell > q {
        return Err(BoundsError::Precondition(format!("need 1 <= ℓ <= q, got ℓ={ell}, q={q}")));
    }
    let mut sum = BigUint::zero();
    let mut fact_rest = factorial(q.saturating_sub(ell + 1));
    for s in ell + 1..=(2 * ell).min(q) {
        // (q - s)! from (q - s + 1)!
        if s > ell + 1 {
            fact_rest /= q - s + 1;
        }
        let c = binomial(s, ell);
        sum += binomial(q, s) * &c * &c * &fact_rest * (q - 1) * q * falling(q, s - ell);
    }
    Ok(sum)
}

/// `q! −` [`prop6_bad_ordering_bound`]: orderings guaranteed to correct
/// `q − ℓ` insdels. Negative when the bound is vacuous.
pub fn prop6_good_orderings(q: u64, ell: u64) -> Result<num_bigint::BigInt, BoundsError> {
    let bad = prop6_bad_ordering_bound(q, ell)?;
    Ok(num_bigint::BigInt::from(factorial(q)) - num_bigint::BigInt::from(bad))
}

/// Natural log of a big integer (`-inf` for zero).
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Rationals `lo < e < hi` from the first `terms` Taylor terms of `Σ 1/n!`.
fn e_bracket(terms: u64) -> ((BigUint, BigUint), (BigUint, BigUint)) {
    // Σ_{n=0}^{N} 1/n! = num / N!
    let den = factorial(terms);
    let mut num = BigUint::zero();
    let mut term = BigUint::one();
    for n in (0..=terms).rev() {
        num += &term;
        term *= n.max(1);
    }
    // The tail Σ_{n>N} 1/n! is below 1/(N!·N).
    let hi_num = &num * terms + 1u32;
    let hi_den = &den * terms;
    ((num, den), (hi_num, hi_den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The rational bracket of `e` is too wide to decide.
    Undecided,
    /// `⌊δq⌋ < 1`: the sum is empty and the inequality has no content.
    OutOfRegime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub ln_lhs: Option<f64>,
    pub ln_rhs: Option<f64>,
    pub verdict: Verdict,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub parameters: Value,
    /// Decimal digits of an exact integer value.
    pub exact_value: Option<String>,
    pub ln_value: Option<f64>,
    pub comparison: Option<Comparison>,
}

/// Taylor terms in the rational bracket of `e`; its width is below `2^-270`.
const E_TERMS: u64 = 60;

/// Checks `S(q, ℓ) / q! <= q² (4e² / (δ² q))^{ℓ}` with `ℓ = ⌊δq⌋` and
/// `δ = ℓ/q` after flooring.
///
/// Clearing denominators, the inequality reads
/// `S · ℓ^{2ℓ} <= q! · q² · (4q)^ℓ · e^{2ℓ}`; it holds if it holds with `e`
/// replaced by a rational lower bound, and fails if it fails with an upper one.
pub fn claim8_bound(q: u64, delta: f64) -> Result<BoundReport, BoundsError> {
    if !(delta > 0.0 && delta < 1.0) || q < 2 {
        return Err(BoundsError::Precondition(format!("need 0 < δ < 1 and q >= 2, got δ={delta}, q={q}")));
    }
    let ell = (delta * q as f64).floor() as u64;
    let delta_eff = ell as f64 / q as f64;
    let parameters = json!({
        "q": q,
        "delta": delta,
        "ell": ell,
        "delta_effective": delta_eff,
        "floored": (delta * q as f64).fract() != 0.0,
        "theorem_regime": q as f64 > 8.0 * std::f64::consts::E.powi(2) / (delta_eff * delta_eff),
    });
    if ell < 1 {
        return Ok(BoundReport {
            name: "claim8".into(),
            parameters,
            exact_value: None,
            ln_value: None,
            comparison: Some(Comparison {
                lhs: "0".into(),
                rhs: "n/a".into(),
                ln_lhs: None,
                ln_rhs: None,
                verdict: Verdict::OutOfRegime,
                method: "empty sum".into(),
            }),
        });
    }
    let sum = prop6_bad_ordering_bound(q, ell)?;
    let q_fact = factorial(q);
    let lhs = &sum * BigUint::from(ell).pow(2 * ell as u32);
    let base = &q_fact * q * q * BigUint::from(4 * q).pow(ell as u32);
    let ((lo_n, lo_d), (hi_n, hi_d)) = e_bracket(E_TERMS);
    let e2l = 2 * ell as u32;
    // lhs <= base · (n/d)^{2ℓ}  ⇔  lhs · d^{2ℓ} <= base · n^{2ℓ}
    let holds = &lhs * lo_d.pow(e2l) <= &base * lo_n.pow(e2l);
    let fails = &lhs * hi_d.pow(e2l) > &base * hi_n.pow(e2l);
    let verdict = match (holds, fails) {
        (true, _) => Verdict::Holds,
        (false, true) => Verdict::Fails,
        (false, false) => Verdict::Undecided,
    };
    let ln_lhs = ln_big(&sum) - ln_big(&q_fact);
    let (qf, lf) = (q as f64, ell as f64);
    let ln_rhs = 2.0 * qf.ln() + lf * ((4.0 * qf).ln() + 2.0 - 2.0 * lf.ln());
    Ok(BoundReport {
        name: "claim8".into(),
        parameters,
        exact_value: Some(sum.to_string()),
        ln_value: Some(ln_lhs),
        comparison: Some(Comparison {
            lhs: "S(q,ℓ)/q!".into(),
            rhs: "q²(4e²/(δ²q))^ℓ".into(),
            ln_lhs: Some(ln_lhs),
            ln_rhs: Some(ln_rhs),
            verdict,
            method: format!("exact integers, e bracketed by {E_TERMS}-term Taylor sums"),
        }),
    })
}

pub fn prop7_report(q: u64) -> Result<BoundReport, BoundsError> {
    let lower = prop7_lower_bound_classes(q)?;
    let bad = exact_bad_class_count(q)?;
    let total = factorial(q - 2);
    let bad_big = BigUint::from(bad);
    let exact = if total > bad_big { &total - bad_big } else { BigUint::zero() };
    let small = |x: &BigUint| x.to_u64();
    let proportion = match (small(&lower), small(&total)) {
        (Some(l), Some(t)) => Some(format_proportion(l, t)),
        _ => None,
    };
    Ok(BoundReport {
        name: "prop7".into(),
        parameters: json!({
            "q": q,
            "classes_total": total.to_string(),
            "listed_bad_classes": bad,
            "formula_bad_classes": 2 * euler_phi(q - 1) + is_prime(q) as u64,
            "proportion_3dp": proportion,
        }),
        exact_value: Some(lower.to_string()),
        ln_value: None,
        comparison: Some(Comparison {
            lhs: "prop7 lower bound".into(),
            rhs: "(q-2)! - distinct listed bad classes".into(),
            ln_lhs: None,
            ln_rhs: None,
            verdict: if lower <= exact { Verdict::Holds } else { Verdict::Fails },
            method: "exact integers".into(),
        }),
    })
}

pub fn prop6_report(q: u64, ell: u64) -> Result<BoundReport, BoundsError> {
    let bad = prop6_bad_ordering_bound(q, ell)?;
    Ok(BoundReport {
        name: "prop6".into(),
        parameters: json!({ "q": q, "ell": ell, "good_orderings_lower": prop6_good_orderings(q, ell)?.to_string() }),
        ln_value: Some(ln_big(&bad)),
        exact_value: Some(bad.to_string()),
        comparison: None,
    })
}

pub fn half_singleton_report(n: usize, k: usize) -> Result<BoundReport, BoundsError> {
    let v = half_singleton(n, k)?;
    Ok(BoundReport {
        name: "half_singleton".into(),
        parameters: json!({ "n": n, "k": k }),
        exact_value: Some(v.to_string()),
        ln_value: None,
        comparison: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowMethod {
    /// Exhaustive enumeration of all classes, verdicts checked against LCS.
    Census,
    /// `(q-2)!` minus the distinct listed bad classes.
    FormulaDedup,
}

/// One row of the proportion table for full-length 2-dimensional codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub q: u64,
    pub method: RowMethod,
    pub classes_total: u64,
    pub classes_correcting_one: u64,
    pub proportion_3dp: String,
    pub prop7_lower_bound: u64,
    pub prop7_proportion_3dp: String,
    pub census_mismatches: Option<u64>,
}

pub fn table1_row(q: u64, method: RowMethod, guards: &Guards) -> Result<Table1Row, BoundsError> {
    check_prime_power(q, 4)?;
    let total = factorial(q - 2)
        .to_u64()
        .ok_or_else(|| BoundsError::Precondition(format!("(q-2)! overflows at q={q}")))?;
    let (correcting, mismatches) = match method {
        RowMethod::Census => {
            let field = Field::with_order(q)?;
            let r = census_2dim(&field, CensusVerify::All, guards)?;
            (r.classes_correcting_one, Some(r.mismatches))
        }
        RowMethod::FormulaDedup => (total.saturating_sub(exact_bad_class_count(q)? as u64), None),
    };
    let lower = prop7_lower_bound_classes(q)?.to_u64().expect("below (q-2)!");
    Ok(Table1Row {
        q,
        method,
        classes_total: total,
        classes_correcting_one: correcting,
        proportion_3dp: format_proportion(correcting, total),
        prop7_lower_bound: lower,
        prop7_proportion_3dp: format_proportion(lower, total),
        census_mismatches: mismatches,
    })
}

/// Census rows for `q ∈ {4, 5, 7, 8, 9}`, formula rows for `q ∈ {11, 13}`.
pub fn table1(guards: &Guards) -> Result<Vec<Table1Row>, BoundsError> {
    let census = [4u64, 5, 7, 8, 9].map(|q| (q, RowMethod::Census));
    let formula = [11u64, 13].map(|q| (q, RowMethod::FormulaDedup));
    census
        .into_iter()
        .chain(formula)
        .map(|(q, m)| table1_row(q, m, guards))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_singleton_values() {
        assert_eq!(half_singleton(4, 2).unwrap(), 1);
        assert_eq!(half_singleton(7, 2).unwrap(), 4);
        for k in 1..10 {
            assert_eq!(half_singleton(2 * k, k).unwrap(), 1);
        }
        assert!(half_singleton(3, 3).is_err());
    }

    #[test]
    fn prop7_values() {
        assert_eq!(prop7_lower_bound_classes(4).unwrap(), BigUint::zero());
        assert_eq!(prop7_lower_bound_classes(8).unwrap(), BigUint::from(708u32));
        assert_eq!(prop7_lower_bound_classes(9).unwrap(), BigUint::from(5032u32));
        assert_eq!(prop7_lower_bound_classes(7).unwrap(), BigUint::from(115u32));
        assert!(prop7_lower_bound_classes(6).is_err());
    }

    #[test]
    fn listed_classes() {
        assert_eq!(exact_bad_class_count(8).unwrap(), 12);
        // No coincidences among the listed vectors at q = 5, 7.
        assert_eq!(exact_bad_class_count(5).unwrap(), 5);
        assert_eq!(exact_bad_class_count(7).unwrap(), 5);
    }

    #[test]
    fn e_bracket_contains_e() {
        let ((ln, ld), (hn, hd)) = e_bracket(E_TERMS);
        assert!(&ln * &hd < &hn * &ld);
        let lo = ln.to_f64().unwrap() / ld.to_f64().unwrap();
        assert!((lo - std::f64::consts::E).abs() < 1e-15);
        // the bracket is far narrower than anything f64 can see
        let width = (&hn * &ld - &ln * &hd).to_f64().unwrap() / (&ld * &hd).to_f64().unwrap();
        assert!(width < 1e-70);
    }

    #[test]
    fn empty_sum_at_full_length() {
        assert!(prop6_bad_ordering_bound(7, 7).unwrap().is_zero());
        assert!(claim8_bound(7, 0.1).unwrap().comparison.unwrap().verdict == Verdict::OutOfRegime);
    }

    #[test]
    fn ln_big_matches_f64() {
        let x = factorial(30);
        assert!((ln_big(&x) - x.to_f64().unwrap().ln()).abs() < 1e-9);
    }
}
