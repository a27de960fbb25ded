//! Exact insdel-capability measurement for Reed–Solomon codes.
//!
//! A code corrects `t` insdel errors exactly when the longest common
//! subsequence over pairs of distinct codewords is at most `n - t - 1`.
//! Everything here reduces to computing that quantity, either by exhaustive
//! pair enumeration or by one of the shortcuts that the affine symmetries
//! `ED(c, c') = ED(λc + μ, λc' + μ)` allow.

use std::collections::HashMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{Field, FieldElement};
use crate::insdel::{lcs, lcs_distinct, lcs_with_witness, position_table, IncreasingSequence};
use crate::poly::{interpolate, Polynomial};
use crate::rscode::{canonical_points, equivalent, CodeError, EvaluationVector, RsCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    GuardExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("wall-time guard exceeded during {0}")]
    Timeout(&'static str),
    #[error("evaluation vector is not a full-length ordering of the field")]
    NotFullLength,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Explicit work limits. Exceeding one is an error, never a partial result.
#[derive(Debug, Clone, Copy)]
pub struct Guards {
    /// Largest `q^k` the brute-force scan will enumerate.
    pub max_codewords: u64,
    /// Largest `(q-2)!` the census will enumerate.
    pub max_census_classes: u64,
    /// Largest number of `(f, I, J)` triples the optimality checker will scan.
    pub max_optimality_checks: u128,
    pub deadline: Option<Instant>,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_codewords: 20_000,
            max_census_classes: 362_880,
            max_optimality_checks: 400_000_000,
            deadline: None,
        }
    }
}

impl Guards {
    fn check(&self, what: &'static str, needed: u128, limit: u128) -> Result<(), AnalyzeError> {
        if needed > limit {
            Err(AnalyzeError::GuardExceeded { what, needed, limit })
        } else {
            Ok(())
        }
    }

    fn check_time(&self, what: &'static str) -> Result<(), AnalyzeError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(AnalyzeError::Timeout(what)),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    AffineFastPath,
    NormalizedEnumeration,
    RankCertificate,
}

/// Two distinct codewords `f(α)`, `g(α)` agreeing along `f(α_I) = g(α_J)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub f: Polynomial,
    pub g: Polynomial,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub lcs_of_code: usize,
    pub max_correctable: usize,
    pub optimal: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl AnalysisReport {
    fn new(n: usize, k: usize, q: u32, lcs_of_code: usize, witness: Option<Witness>, method: Method) -> Self {
        debug_assert!(lcs_of_code < n);
        let max_correctable = n - 1 - lcs_of_code;
        AnalysisReport {
            n,
            k,
            q,
            lcs_of_code,
            max_correctable,
            optimal: n + 1 >= 2 * k && max_correctable == n + 1 - 2 * k,
            witness,
            method,
        }
    }

    /// The half-Singleton bound `LCS(C) >= 2k - 2`, capped at `n - 1`.
    pub fn satisfies_half_singleton(&self) -> bool {
        self.lcs_of_code >= (2 * self.k - 2).min(self.n - 1)
    }

    pub fn corrects(&self, t: usize) -> bool {
        t <= self.max_correctable
    }
}

/// Decodes `idx` as base-`q` coefficients of a polynomial of degree `< k`.
fn poly_from_index(idx: u64, q: u32, k: usize) -> Polynomial {
    let mut coeffs = Vec::with_capacity(k);
    let mut v = idx;
    for _ in 0..k {
        coeffs.push(FieldElement::from_index((v % q as u64) as u32));
        v /= q as u64;
    }
    Polynomial::new(coeffs)
}

/// Indices (in the base-`q` enumeration) of the normalized family
/// `f_{k-1} x^{k-1} + ... + f_1 x` with `f_{k-1} ∈ {0, 1}`.
fn normalized_family(q: u32, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0];
    }
    let q = q as u64;
    let middle = q.pow(k as u32 - 2);
    let top = q.pow(k as u32 - 1);
    [0u64, 1]
        .iter()
        .flat_map(|&lead| (0..middle).map(move |m| lead * top + m * q))
        .collect()
}

/// Exact `LCS(C)` by enumerating pairs `(f, g)`, `f` from the normalized family.
///
/// Fixing `f_0 = 0` and scaling the leading coefficient to `{0, 1}` loses no
/// pair, since the affine maps `c -> λc + μ` preserve LCS and map the code to
/// itself.
pub fn lcs_code_bruteforce(code: &RsCode, guards: &Guards) -> Result<AnalysisReport, AnalyzeError> {
    let (n, k) = (code.n(), code.k());
    let field = code.field();
    let q = field.order();
    guards.check("codewords (q^k)", code.size() as u128, guards.max_codewords as u128)?;
    let total = code.size();
    let alpha = code.eval().points();
    let codewords: Vec<Vec<FieldElement>> = (0..total)
        .into_par_iter()
        .map(|idx| poly_from_index(idx, q, k).eval_vec(field, alpha))
        .collect();
    let family = normalized_family(q, k);
    let best = family
        .par_iter()
        .map(|&fi| {
            let cf = &codewords[fi as usize];
            let mut best: Option<(usize, u64, u64)> = None;
            for gi in 0..total {
                if gi == fi {
                    continue;
                }
                let l = lcs(cf, &codewords[gi as usize]);
                if best.is_none_or(|b| l > b.0) {
                    best = Some((l, fi, gi));
                    if l + 1 == n {
                        break;
                    }
                }
            }
            best
        })
        .reduce(|| None, |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && (y.1, y.2) < (x.1, x.2)) { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        });
    guards.check_time("brute-force LCS")?;
    let (lcs_of_code, witness) = match best {
        Some((l, fi, gi)) => {
            let (_, i, j) = lcs_with_witness(&codewords[fi as usize], &codewords[gi as usize]);
            let w = Witness {
                f: poly_from_index(fi, q, k),
                g: poly_from_index(gi, q, k),
                i,
                j,
            };
            (l, Some(w))
        }
        None => (0, None),
    };
    Ok(AnalysisReport::new(n, k, q, lcs_of_code, witness, Method::BruteForce))
}

/// Largest `LCS(α, Aα + B)` over `A ≠ 0`, `(A, B) ≠ (1, 0)`, with the maximizing pair.
fn affine_max(field: &Field, alpha: &[FieldElement]) -> (usize, (FieldElement, FieldElement)) {
    let q = field.order();
    let pos = position_table(q, alpha);
    let mut image = vec![FieldElement::ZERO; alpha.len()];
    let mut best = (0usize, (FieldElement::ONE, FieldElement::ZERO));
    for a in field.elements().skip(1) {
        for b in field.elements() {
            if a == FieldElement::ONE && b.is_zero() {
                continue;
            }
            for (slot, &x) in image.iter_mut().zip(alpha) {
                *slot = field.add(field.mul(a, x), b);
            }
            let l = lcs_distinct(&pos, &image);
            if l > best.0 {
                best = (l, (a, b));
                if l + 1 == alpha.len() {
                    return best;
                }
            }
        }
    }
    best
}

/// Exact `LCS(C)` for the full-length 2-dimensional code `RS_{q,2}(α)`.
///
/// Every pair of distinct codewords is affinely equivalent to `(α, Aα + B)` or
/// involves a constant codeword, which shares at most one symbol with a
/// non-constant one. Both words are permutations of `GF(q)`, so each LCS is a
/// longest increasing subsequence.
pub fn lcs_code_affine(eval: &EvaluationVector) -> Result<AnalysisReport, AnalyzeError> {
    if !eval.is_full_length() {
        return Err(AnalyzeError::NotFullLength);
    }
    let field = eval.field();
    let alpha = eval.points();
    let q = field.order();
    let (best, (a, b)) = affine_max(field, alpha);
    let lcs_of_code = best.max(1);
    let witness = if best >= 1 {
        let image: Vec<FieldElement> = alpha.iter().map(|&x| field.add(field.mul(a, x), b)).collect();
        let (_, i, j) = lcs_with_witness(alpha, &image);
        Some(Witness {
            f: Polynomial::x(),
            g: Polynomial::new(vec![b, a]),
            i,
            j,
        })
    } else {
        None
    };
    Ok(AnalysisReport::new(q as usize, 2, q, lcs_of_code, witness, Method::AffineFastPath))
}

/// Picks the affine fast path when it applies, brute force otherwise.
pub fn analyze_exact(code: &RsCode, guards: &Guards) -> Result<AnalysisReport, AnalyzeError> {
    if code.k() == 2 && code.eval().is_full_length() {
        lcs_code_affine(code.eval())
    } else {
        lcs_code_bruteforce(code, guards)
    }
}

/// Whether the code corrects `t` insdel errors, i.e. `LCS(C) <= n - t - 1`.
pub fn corrects(code: &RsCode, t: usize, guards: &Guards) -> Result<bool, AnalyzeError> {
    if t == 0 {
        return Ok(true);
    }
    Ok(analyze_exact(code, guards)?.corrects(t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Optimality {
    Optimal,
    NotOptimal(Witness),
}

impl Optimality {
    pub fn is_optimal(&self) -> bool {
        matches!(self, Optimality::Optimal)
    }
}

/// Decides whether `RS_{2k,k}(α)` corrects one insdel error.
///
/// Searches for normalized `f`, some `g ≠ f` of degree `< k` and increasing
/// `I ≠ J` of length `2k - 1` with `f(α_I) = g(α_J)`. The candidate `g` is
/// pinned down by the first `k` equations; the other `k - 1` are checked
/// through precomputed Lagrange weights. `I = J` is skipped: agreement on
/// `2k - 1 >= k` distinct points forces `f = g`.
pub fn is_optimal_half_rate(eval: &EvaluationVector, k: usize, guards: &Guards) -> Result<Optimality, AnalyzeError> {
    let n = eval.len();
    if k < 1 || n != 2 * k {
        return Err(AnalyzeError::Precondition(format!("need n = 2k, got n={n}, k={k}")));
    }
    let field = eval.field();
    let q = field.order();
    let alpha = eval.points();
    let family = normalized_family(q, k);
    let seqs: Vec<IncreasingSequence> = crate::insdel::enumerate_increasing(n, n - 1).collect();
    let pairs: Vec<(usize, usize)> = (0..seqs.len())
        .flat_map(|a| (0..seqs.len()).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    guards.check(
        "optimality checks (f, I, J)",
        family.len() as u128 * pairs.len() as u128,
        guards.max_optimality_checks,
    )?;

    // weights[j][s][t] = L_t(α_{J_{k+s}}) for the Lagrange basis on α_{J_1..J_k}
    let weights: Vec<Vec<Vec<FieldElement>>> = seqs
        .iter()
        .map(|j_seq| {
            let nodes: Vec<FieldElement> = j_seq.indices()[..k].iter().map(|&p| alpha[p - 1]).collect();
            j_seq.indices()[k..]
                .iter()
                .map(|&p| {
                    let x = alpha[p - 1];
                    (0..k)
                        .map(|t| {
                            let mut num = FieldElement::ONE;
                            let mut den = FieldElement::ONE;
                            for (u, &xu) in nodes.iter().enumerate() {
                                if u != t {
                                    num = field.mul(num, field.sub(x, xu));
                                    den = field.mul(den, field.sub(nodes[t], xu));
                                }
                            }
                            field.div(num, den).expect("distinct nodes")
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let witness = family.par_iter().find_map_first(|&fi| {
        let f = poly_from_index(fi, q, k);
        let fvals = f.eval_vec(field, alpha);
        for &(a, b) in &pairs {
            let (i_seq, j_seq) = (&seqs[a], &seqs[b]);
            let y: Vec<FieldElement> = i_seq.indices().iter().map(|&p| fvals[p - 1]).collect();
            let consistent = weights[b].iter().enumerate().all(|(s, w)| {
                let predicted = w
                    .iter()
                    .zip(&y[..k])
                    .fold(FieldElement::ZERO, |acc, (&wt, &yt)| field.add(acc, field.mul(wt, yt)));
                predicted == y[k + s]
            });
            if !consistent {
                continue;
            }
            let points: Vec<(FieldElement, FieldElement)> =
                j_seq.indices().iter().zip(&y).map(|(&p, &v)| (alpha[p - 1], v)).collect();
            let g = interpolate(field, &points, k)
                .expect("distinct nodes")
                .expect("consistency already verified");
            if g != f {
                return Some(Witness {
                    f: f.clone(),
                    g,
                    i: i_seq.indices().to_vec(),
                    j: j_seq.indices().to_vec(),
                });
            }
        }
        None
    });
    guards.check_time("optimality check")?;
    Ok(match witness {
        Some(w) => Optimality::NotOptimal(w),
        None => Optimality::Optimal,
    })
}

/// Closed-form test for `(0, 1, α₁, α₂)` giving an optimal `RS_{4,2}`:
/// `α₂ ∉ {α₁², α₁² − α₁ + 1}` and `α₂ ≠ −1/(α₁ − 2)` when `α₁ ≠ 2`.
pub fn predicate_rs42(field: &Field, a1: FieldElement, a2: FieldElement) -> Result<bool, AnalyzeError> {
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    if a1 == zero || a1 == one || a2 == zero || a2 == one || a2 == a1 || a1.value() >= field.order() || a2.value() >= field.order() {
        return Err(AnalyzeError::Precondition(format!(
            "need α₁ ∉ {{0,1}} and α₂ ∉ {{0,1,α₁}}, got ({a1}, {a2})"
        )));
    }
    let sq = field.mul(a1, a1);
    if a2 == sq || a2 == field.add(field.sub(sq, a1), one) {
        return Ok(false);
    }
    let shifted = field.sub(a1, field.from_int(2));
    if !shifted.is_zero() {
        let forbidden = field.neg(field.inv(shifted).expect("non-zero"));
        if a2 == forbidden {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BadReason {
    Geometric,
    ReversedGeometric,
    ArithmeticProgression,
    NotBad,
}

/// `α = λ·v + μ` for the listed bad vector `v` built from `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BadWitness {
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub theta: Option<FieldElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadOrderingVerdict {
    pub bad: bool,
    pub reason: BadReason,
    pub witness: Option<BadWitness>,
}

/// A listed bad ordering: `(0, 1, θ, ..., θ^{q-2})`, its reversal, or
/// `(0, 1, ..., q-1)` for prime `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadVector {
    pub reason: BadReason,
    pub theta: Option<FieldElement>,
    pub points: Vec<FieldElement>,
}

/// Every explicit bad ordering, geometric ones first, `θ` ascending.
pub fn listed_bad_vectors(field: &Field) -> Vec<BadVector> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    let primitive = field.primitive_elements();
    for &theta in &primitive {
        let mut points = vec![FieldElement::ZERO];
        points.extend((0..q - 1).map(|e| field.pow(theta, e)));
        out.push(BadVector { reason: BadReason::Geometric, theta: Some(theta), points });
    }
    for &theta in &primitive {
        let mut points: Vec<FieldElement> = (0..q - 1).rev().map(|e| field.pow(theta, e)).collect();
        points.push(FieldElement::ZERO);
        out.push(BadVector { reason: BadReason::ReversedGeometric, theta: Some(theta), points });
    }
    if field.is_prime_field() {
        out.push(BadVector {
            reason: BadReason::ArithmeticProgression,
            theta: None,
            points: field.elements().collect(),
        });
    }
    out
}

/// Classifies full-length orderings for `k = 2` against the listed bad vectors.
///
/// Canonical forms of all listed vectors are precomputed, so classifying an
/// ordering is one canonicalization and one hash lookup.
pub struct BadOrderingClassifier<'f> {
    field: &'f Field,
    listed: Vec<BadVector>,
    by_canonical: HashMap<Vec<FieldElement>, usize>,
}

impl<'f> BadOrderingClassifier<'f> {
    pub fn new(field: &'f Field) -> Self {
        let listed = listed_bad_vectors(field);
        let mut by_canonical = HashMap::new();
        for (idx, v) in listed.iter().enumerate() {
            by_canonical.entry(canonical_points(field, &v.points)).or_insert(idx);
        }
        BadOrderingClassifier { field, listed, by_canonical }
    }

    pub fn listed(&self) -> &[BadVector] {
        &self.listed
    }

    /// Number of distinct equivalence classes among the listed vectors.
    pub fn distinct_classes(&self) -> usize {
        self.by_canonical.len()
    }

    pub fn classify_points(&self, alpha: &[FieldElement]) -> Result<BadOrderingVerdict, AnalyzeError> {
        if alpha.len() != self.field.order() as usize {
            return Err(AnalyzeError::NotFullLength);
        }
        let canon = canonical_points(self.field, alpha);
        Ok(match self.by_canonical.get(&canon) {
            None => BadOrderingVerdict { bad: false, reason: BadReason::NotBad, witness: None },
            Some(&idx) => {
                let v = &self.listed[idx];
                let (lambda, mu) = equivalent(self.field, &v.points, alpha).expect("same canonical form");
                BadOrderingVerdict {
                    bad: true,
                    reason: v.reason,
                    witness: Some(BadWitness { lambda, mu, theta: v.theta }),
                }
            }
        })
    }
}

pub fn classify_bad_ordering(eval: &EvaluationVector) -> Result<BadOrderingVerdict, AnalyzeError> {
    if !eval.is_full_length() {
        return Err(AnalyzeError::NotFullLength);
    }
    BadOrderingClassifier::new(eval.field()).classify_points(eval.points())
}

/// How many census verdicts are cross-checked against the exact LCS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusVerify {
    All,
    /// Check every `n`-th class in enumeration order.
    Every(u64),
    None,
}

impl CensusVerify {
    /// Everything up to `q = 9`, every 97th class beyond.
    pub fn default_for(q: u32) -> CensusVerify {
        if q <= 9 {
            CensusVerify::All
        } else {
            CensusVerify::Every(97)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadClass {
    pub ordering: Vec<FieldElement>,
    pub reason: BadReason,
    pub theta: Option<FieldElement>,
    pub lambda: FieldElement,
    pub mu: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub q: u32,
    pub classes_total: u64,
    pub classes_correcting_one: u64,
    pub proportion: f64,
    pub proportion_3dp: String,
    pub bad_classes: Vec<BadClass>,
    pub verified: u64,
    pub mismatches: u64,
}

/// Formats a proportion to three decimals, never showing `1.000` for a
/// value below one (such values print as `0.999`).
pub fn format_proportion(num: u64, den: u64) -> String {
    if den == 0 {
        return "nan".into();
    }
    let milli = ((num as u128 * 1000 * 2 + den as u128) / (2 * den as u128)) as u64;
    let milli = if milli == 1000 && num < den { 999 } else { milli };
    format!("{}.{:03}", milli / 1000, milli % 1000)
}

/// Enumerates the `(q-2)!` canonical orderings `(0, 1, ...)` of `GF(q)`,
/// classifies each and cross-checks verdicts against the exact LCS.
pub fn census_2dim(field: &Field, verify: CensusVerify, guards: &Guards) -> Result<CensusReport, AnalyzeError> {
    let q = field.order();
    if q < 3 {
        return Err(AnalyzeError::Precondition("census needs q >= 3".into()));
    }
    let total: u128 = (1..=(q as u128 - 2)).product();
    guards.check("census classes ((q-2)!)", total, guards.max_census_classes as u128)?;
    let classifier = BadOrderingClassifier::new(field);
    let rest: Vec<FieldElement> = field.elements().skip(2).collect();
    let block = total / rest.len() as u128;

    struct Partial {
        bad: Vec<BadClass>,
        verified: u64,
        mismatches: u64,
    }

    // One job per choice of the third coordinate, each walking the remaining
    // permutations in lexicographic order.
    let partials: Vec<Partial> = (0..rest.len())
        .into_par_iter()
        .map(|head| -> Result<Partial, AnalyzeError> {
            let mut tail: Vec<FieldElement> = rest.iter().enumerate().filter(|&(i, _)| i != head).map(|(_, &e)| e).collect();
            let mut alpha = Vec::with_capacity(q as usize);
            let mut part = Partial { bad: Vec::new(), verified: 0, mismatches: 0 };
            let mut serial = head as u128 * block;
            loop {
                alpha.clear();
                alpha.extend([FieldElement::ZERO, FieldElement::ONE, rest[head]]);
                alpha.extend_from_slice(&tail);
                let verdict = classifier.classify_points(&alpha)?;
                let check = match verify {
                    CensusVerify::All => true,
                    CensusVerify::Every(n) => serial.is_multiple_of(n as u128),
                    CensusVerify::None => false,
                };
                if check {
                    let (best, _) = affine_max(field, &alpha);
                    part.verified += 1;
                    if (best + 1 == q as usize) != verdict.bad {
                        part.mismatches += 1;
                    }
                }
                if let Some(w) = verdict.witness {
                    part.bad.push(BadClass {
                        ordering: alpha.clone(),
                        reason: verdict.reason,
                        theta: w.theta,
                        lambda: w.lambda,
                        mu: w.mu,
                    });
                }
                serial += 1;
                if serial.is_multiple_of(4096) {
                    guards.check_time("census")?;
                }
                if !next_permutation(&mut tail) {
                    break;
                }
            }
            Ok(part)
        })
        .collect::<Result<_, _>>()?;

    let mut bad_classes = Vec::new();
    let (mut verified, mut mismatches) = (0, 0);
    for p in partials {
        bad_classes.extend(p.bad);
        verified += p.verified;
        mismatches += p.mismatches;
    }
    let total = total as u64;
    let correcting = total - bad_classes.len() as u64;
    Ok(CensusReport {
        q,
        classes_total: total,
        classes_correcting_one: correcting,
        proportion: correcting as f64 / total as f64,
        proportion_3dp: format_proportion(correcting, total),
        bad_classes,
        verified,
        mismatches,
    })
}

/// Advances to the next lexicographic permutation; false once exhausted.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub q: u32,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    /// `⌊δq⌋ − 1`: a trial corrects `(1 − δ)q` insdels iff its LCS is at most this.
    pub lcs_threshold: i64,
    pub lcs_values: Vec<usize>,
    pub correcting: usize,
    pub fraction_correcting: Option<f64>,
    pub correcting_one: usize,
    pub fraction_correcting_one: Option<f64>,
}

/// Uniformly random ordering of `GF(q)`: Fisher–Yates over the canonical
/// index order driven by ChaCha8 seeded from a `u64`.
pub fn random_ordering(field: &Field, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let mut v: Vec<FieldElement> = field.elements().collect();
    for i in (1..v.len()).rev() {
        let j = rng.gen_range(0..=i);
        v.swap(i, j);
    }
    v
}

/// Samples random full-length orderings and records `LCS(C)` of each
/// 2-dimensional code.
pub fn sample_orderings(
    field: &Field,
    delta: f64,
    trials: usize,
    seed: u64,
    guards: &Guards,
) -> Result<SampleReport, AnalyzeError> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(AnalyzeError::Precondition(format!("δ must lie in (0, 1], got {delta}")));
    }
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orderings: Vec<Vec<FieldElement>> = (0..trials).map(|_| random_ordering(field, &mut rng)).collect();
    let lcs_values: Vec<usize> = orderings
        .par_iter()
        .map(|alpha| {
            guards.check_time("sampling")?;
            Ok(affine_max(field, alpha).0.max(1))
        })
        .collect::<Result<_, AnalyzeError>>()?;
    let threshold = (delta * q as f64).floor() as i64 - 1;
    let correcting = lcs_values.iter().filter(|&&l| (l as i64) <= threshold).count();
    let correcting_one = lcs_values.iter().filter(|&&l| l + 1 < q as usize).count();
    let frac = |c: usize| (trials > 0).then(|| c as f64 / trials as f64);
    Ok(SampleReport {
        q,
        delta,
        trials,
        seed,
        lcs_threshold: threshold,
        correcting,
        fraction_correcting: frac(correcting),
        correcting_one,
        fraction_correcting_one: frac(correcting_one),
        lcs_values,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn ev(q: u64, v: &[u64]) -> EvaluationVector {
        EvaluationVector::from_indices(Arc::new(Field::with_order(q).unwrap()), v).unwrap()
    }

    #[test]
    fn normalized_family_sizes() {
        assert_eq!(normalized_family(7, 1), vec![0]);
        assert_eq!(normalized_family(7, 2), vec![0, 7]);
        assert_eq!(normalized_family(5, 3).len(), 10);
        for idx in normalized_family(5, 3) {
            let f = poly_from_index(idx, 5, 3);
            assert!(f.coeff(0).is_zero());
            assert!(f.coeff(2).value() <= 1);
        }
    }

    #[test]
    fn bruteforce_examples() {
        let g = Guards::default();
        let r = lcs_code_bruteforce(&RsCode::new(ev(7, &[0, 1, 2, 5]), 2).unwrap(), &g).unwrap();
        assert_eq!((r.lcs_of_code, r.max_correctable, r.optimal), (2, 1, true));
        let r = lcs_code_bruteforce(&RsCode::new(ev(7, &[0, 1, 2, 3, 4, 5, 6]), 2).unwrap(), &g).unwrap();
        assert_eq!((r.lcs_of_code, r.max_correctable), (6, 0));
        let r = lcs_code_bruteforce(&RsCode::new(ev(7, &[0, 1, 2, 5]), 1).unwrap(), &g).unwrap();
        assert_eq!(r.lcs_of_code, 0);
        let big = RsCode::new(ev(31, &[0, 1, 2, 3, 4, 5]), 3).unwrap();
        assert!(matches!(lcs_code_bruteforce(&big, &g), Err(AnalyzeError::GuardExceeded { .. })));
    }

    #[test]
    fn witness_is_a_real_common_subsequence() {
        let g = Guards::default();
        let code = RsCode::new(ev(7, &[0, 1, 2, 3, 4, 5, 6]), 2).unwrap();
        let r = lcs_code_bruteforce(&code, &g).unwrap();
        let w = r.witness.unwrap();
        let cf = code.codeword(&w.f).unwrap();
        let cg = code.codeword(&w.g).unwrap();
        assert_ne!(cf, cg);
        assert_eq!(w.i.len(), r.lcs_of_code);
        let a: Vec<_> = w.i.iter().map(|&p| cf[p - 1]).collect();
        let b: Vec<_> = w.j.iter().map(|&p| cg[p - 1]).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn affine_examples() {
        let r = lcs_code_affine(&ev(7, &[0, 1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(r.lcs_of_code, 6);
        let r = lcs_code_affine(&ev(7, &[0, 1, 3, 2, 6, 4, 5])).unwrap();
        assert_eq!(r.lcs_of_code, 6);
        let r = lcs_code_affine(&ev(7, &[0, 1, 2, 5, 3, 6, 4])).unwrap();
        assert!(r.lcs_of_code <= 5);
        assert_eq!(lcs_code_affine(&ev(7, &[0, 1, 2])).unwrap_err(), AnalyzeError::NotFullLength);
    }

    #[test]
    fn corrects_examples() {
        let g = Guards::default();
        let code = RsCode::new(ev(7, &[0, 1, 2, 5]), 2).unwrap();
        assert!(corrects(&code, 1, &g).unwrap());
        assert!(!corrects(&code, 2, &g).unwrap());
        assert!(corrects(&code, 0, &g).unwrap());
    }

    #[test]
    fn half_rate_optimality_examples() {
        let g = Guards::default();
        assert!(is_optimal_half_rate(&ev(7, &[0, 1, 2, 5]), 2, &g).unwrap().is_optimal());
        assert!(!is_optimal_half_rate(&ev(7, &[0, 1, 2, 4]), 2, &g).unwrap().is_optimal());
        for a1 in 2..5 {
            for a2 in 2..5 {
                if a1 != a2 {
                    assert!(!is_optimal_half_rate(&ev(5, &[0, 1, a1, a2]), 2, &g).unwrap().is_optimal());
                }
            }
        }
        assert!(is_optimal_half_rate(&ev(7, &[0, 1, 2]), 2, &g).is_err());
    }

    #[test]
    fn predicate_examples() {
        let f7 = Field::new(7, 1).unwrap();
        let e = |v| f7.element(v).unwrap();
        assert!(predicate_rs42(&f7, e(2), e(5)).unwrap());
        assert!(!predicate_rs42(&f7, e(2), e(4)).unwrap());
        assert!(!predicate_rs42(&f7, e(3), e(6)).unwrap());
        assert!(predicate_rs42(&f7, e(1), e(5)).is_err());
        assert!(predicate_rs42(&f7, e(2), e(2)).is_err());
    }

    #[test]
    fn classification_examples() {
        let v = classify_bad_ordering(&ev(7, &[0, 1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(v.reason, BadReason::ArithmeticProgression);
        let v = classify_bad_ordering(&ev(7, &[0, 1, 3, 2, 6, 4, 5])).unwrap();
        assert_eq!(v.reason, BadReason::Geometric);
        assert_eq!(v.witness.unwrap().theta.unwrap().value(), 3);
        let v = classify_bad_ordering(&ev(7, &[0, 1, 2, 5, 3, 6, 4])).unwrap();
        assert!(!v.bad);
        assert_eq!(v.reason, BadReason::NotBad);
    }

    #[test]
    fn census_small() {
        let g = Guards::default();
        // Counts cross-checked by an exhaustive all-pairs LCS scan.
        let expect = [(4u64, 0u64, 2u64, "0.000"), (5, 1, 6, "0.167"), (7, 115, 120, "0.958")];
        for (q, good, total, shown) in expect {
            let field = Field::with_order(q).unwrap();
            let r = census_2dim(&field, CensusVerify::All, &g).unwrap();
            assert_eq!((r.classes_correcting_one, r.classes_total), (good, total), "q={q}");
            assert_eq!(r.proportion_3dp, shown);
            assert_eq!(r.mismatches, 0);
            assert_eq!(r.verified, total);
        }
    }

    #[test]
    fn proportion_formatting() {
        assert_eq!(format_proportion(116, 120), "0.967");
        assert_eq!(format_proportion(2, 6), "0.333");
        assert_eq!(format_proportion(0, 2), "0.000");
        assert_eq!(format_proportion(362_871, 362_880), "0.999");
        assert_eq!(format_proportion(5, 5), "1.000");
    }

    #[test]
    fn permutation_walk() {
        let mut v = vec![1, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 3, 2]);
        assert_eq!(seen[5], vec![3, 2, 1]);
    }

    #[test]
    fn sampling_edges() {
        let g = Guards::default();
        let f = Field::new(7, 1).unwrap();
        let r = sample_orderings(&f, 0.5, 0, 1, &g).unwrap();
        assert!(r.lcs_values.is_empty());
        assert_eq!(r.fraction_correcting, None);
        let r = sample_orderings(&f, 1.0, 20, 1, &g).unwrap();
        assert_eq!(r.correcting, 20);
        assert!(sample_orderings(&f, 0.0, 5, 1, &g).is_err());
        let a = sample_orderings(&f, 0.5, 10, 9, &g).unwrap();
        let b = sample_orderings(&f, 0.5, 10, 9, &g).unwrap();
        assert_eq!(a, b);
    }
}
