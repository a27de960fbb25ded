//! Deterministic construction of rate-1/2 RS codes correcting one insdel.
//!
//! The construction starts from a 4-point base vector `(0, 1, α₁, α₂)` and
//! grows it two points at a time. At stage `i` the current vector of length
//! `2i - 2` is optimal for dimension `i - 1`; every normalized pair `(f̃, g̃)`
//! agreeing on a prefix `(I*, J*)` is solved for, the new point pairs that
//! would extend such an agreement to a full-length common subsequence are
//! collected into a bad set, and the least pair outside it is appended.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analyze::{is_optimal_half_rate, predicate_rs42, AnalyzeError, Guards, Optimality};
use crate::gf::{prime_power, Field, FieldElement, GfError};
use crate::insdel::{enumerate_increasing, hamming_increasing, rank_certificate, Certificate, IncreasingSequence, InsdelError};
use crate::poly::{rank, solve_linear, LinearSolution, Matrix, Polynomial};
use crate::rscode::{CodeError, EvaluationVector, RsCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("no base case over GF({q}): an optimal RS_{{4,2}} needs q >= 7")]
    NoBaseCase { q: u32 },
    #[error("q={q} is below the field-size guarantee {min_q} for k={k}")]
    BelowBound { q: u32, k: usize, min_q: u64 },
    #[error("stage {i}: every admissible pair is bad ({bad_pairs} bad pairs, q={q}{})",
        if *below_bound { ", below the field-size guarantee" } else { "" })]
    NoGoodPair { i: usize, q: u32, bad_pairs: usize, below_bound: bool },
    #[error("stage {i}: singular system for I*={i_star:?}, J*={j_star:?}; the input vector is not optimal")]
    SingularSystem { i: usize, i_star: Vec<usize>, j_star: Vec<usize> },
    #[error("stage {i}: bad set has {bad_pairs} pairs, above the ceiling {ceiling}")]
    BadSetCeiling { i: usize, bad_pairs: usize, ceiling: u128 },
    #[error("stage {i}: verification failed ({detail})")]
    VerificationFailed { i: usize, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error(transparent)]
    Insdel(#[from] InsdelError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Smallest field size for which every stage is guaranteed a good pair:
/// `20k⁴ − 90k³ + 150k² − 106k + 27` for `k >= 3`. At `k = 2` the base case
/// alone decides and `q = 7` is the least field that admits one.
pub fn prop14_min_q(k: usize) -> Result<u64, ConstructError> {
    if k < 2 {
        return Err(ConstructError::Precondition(format!("need k >= 2, got {k}")));
    }
    if k == 2 {
        return Ok(7);
    }
    let k = k as i128;
    Ok((20 * k.pow(4) - 90 * k.pow(3) + 150 * k * k - 106 * k + 27) as u64)
}

/// The coarser `100k⁴` field-size requirement.
pub fn theorem3_min_q(k: usize) -> u64 {
    100 * (k as u64).pow(4)
}

/// The lexicographically least `(0, 1, α₁, α₂)` whose `RS_{4,2}` corrects one insdel.
pub fn base_case(field: &Arc<Field>) -> Result<EvaluationVector, ConstructError> {
    let q = field.order();
    if q < 7 {
        return Err(ConstructError::NoBaseCase { q });
    }
    for a1 in 2..q {
        for a2 in 2..q {
            if a2 == a1 {
                continue;
            }
            let (x, y) = (field.element(a1 as u64)?, field.element(a2 as u64)?);
            if predicate_rs42(field, x, y)? {
                return Ok(EvaluationVector::from_indices(field.clone(), &[0, 1, a1 as u64, a2 as u64])?);
            }
        }
    }
    Err(ConstructError::NoBaseCase { q })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtendOptions {
    /// Only visit `(I*, J*)` with `d_H(I*, J*) >= i - 2`, the pairs that can
    /// actually prefix a bad `(I, J)`.
    pub restrict_dh: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub alpha: Vec<u32>,
    pub chosen_pair: (u32, u32),
    pub bad_pair_count: usize,
    pub bad_pair_ceiling: u128,
    pub prefix_pairs: usize,
    /// Prefix pairs skipped because their matrix is singular and their
    /// Hamming distance is too small to matter.
    pub singular_skipped: usize,
}

/// Bad-set ceiling for stage `i`: `5(i-1)²q` per ordered prefix pair.
pub fn bad_set_ceiling(i: usize, q: u32) -> u128 {
    let (i, q) = (i as u128, q as u128);
    (2 * i - 2) * (2 * i - 3) * 5 * (i - 1) * (i - 1) * q
}

/// A solved prefix system: `f̃ = u_f + c·w_f`, `g̃ = u_g + c·w_g`.
struct PrefixSolution {
    f_base: Vec<FieldElement>,
    f_dir: Vec<FieldElement>,
    g_base: Vec<FieldElement>,
    g_dir: Vec<FieldElement>,
}

/// Solves `f̃(α_{I*}) = g̃(α_{J*})` for every `g̃_{i-1}` at once.
///
/// Unknowns are `(g̃_0, ..., g̃_{i-2}, f̃_1, ..., f̃_{i-2})` with `f̃` monic of
/// degree `i - 1` and no constant term; row `t` reads
/// `Σ g̃_j α_{J_t}^j − Σ f̃_m α_{I_t}^m = α_{I_t}^{i-1} − g̃_{i-1} α_{J_t}^{i-1}`.
/// Returns `None` when the matrix is singular.
fn solve_prefix(
    field: &Field,
    alpha: &[FieldElement],
    i: usize,
    i_star: &IncreasingSequence,
    j_star: &IncreasingSequence,
) -> Option<PrefixSolution> {
    let rows = 2 * i - 3;
    let mut m = Matrix::zeros(rows, rows);
    let mut b_base = Vec::with_capacity(rows);
    let mut b_dir = Vec::with_capacity(rows);
    for t in 0..rows {
        let x_i = alpha[i_star.indices()[t] - 1];
        let x_j = alpha[j_star.indices()[t] - 1];
        let (mut pi, mut pj) = (FieldElement::ONE, FieldElement::ONE);
        m.set(t, 0, FieldElement::ONE);
        for d in 1..i - 1 {
            pi = field.mul(pi, x_i);
            pj = field.mul(pj, x_j);
            m.set(t, d, pj);
            m.set(t, i - 2 + d, field.neg(pi));
        }
        b_base.push(field.mul(pi, x_i));
        b_dir.push(field.neg(field.mul(pj, x_j)));
    }
    if rank(field, &m) < rows {
        return None;
    }
    let unique = |b: &[FieldElement]| match solve_linear(field, &m, b).expect("square system") {
        LinearSolution::Unique(x) => x,
        _ => unreachable!("full-rank square system"),
    };
    let (u, w) = (unique(&b_base), unique(&b_dir));
    let split = |v: &[FieldElement], lead: FieldElement| {
        let g: Vec<FieldElement> = v[..i - 1].iter().copied().chain([FieldElement::ZERO]).collect();
        let f: Vec<FieldElement> = [FieldElement::ZERO]
            .into_iter()
            .chain(v[i - 1..].iter().copied())
            .chain([lead])
            .collect();
        (f, g)
    };
    let (f_base, mut g_base) = split(&u, FieldElement::ONE);
    let (f_dir, mut g_dir) = split(&w, FieldElement::ZERO);
    // g̃_{i-1} itself is the free parameter c
    g_base[i - 1] = FieldElement::ZERO;
    g_dir[i - 1] = FieldElement::ONE;
    Some(PrefixSolution { f_base, f_dir, g_base, g_dir })
}

/// Evaluation table of `p` over every field element, by canonical index.
fn table(field: &Field, coeffs: &[FieldElement]) -> Vec<u32> {
    field
        .elements()
        .map(|x| {
            coeffs
                .iter()
                .rev()
                .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
                .value()
        })
        .collect()
}

/// Preimages of every value under a table, as `(starts, items)`.
fn preimages(values: &[u32]) -> (Vec<usize>, Vec<u32>) {
    let q = values.len();
    let mut starts = vec![0usize; q + 1];
    for &v in values {
        starts[v as usize + 1] += 1;
    }
    for s in 1..=q {
        starts[s] += starts[s - 1];
    }
    let mut fill = starts.clone();
    let mut items = vec![0u32; q];
    for (x, &v) in values.iter().enumerate() {
        items[fill[v as usize]] = x as u32;
        fill[v as usize] += 1;
    }
    (starts, items)
}

/// Adds every `(x, y)` solving one of the five extension systems for `(f̃, g̃)`,
/// with `a = α_{2i-2}`:
///
/// 1. `f̃(a) = g̃(x)`, `f̃(x) = g̃(y)`
/// 2. `f̃(a) = g̃(x)`, `f̃(y) = g̃(y)`
/// 3. `f̃(x) = g̃(a)`, `f̃(y) = g̃(x)`
/// 4. `f̃(x) = g̃(a)`, `f̃(y) = g̃(y)`
/// 5. `f̃(x) = g̃(x)`, `f̃(y) = g̃(y)`
///
/// Root finding is a scan of the evaluation tables. The caller guarantees
/// `f̃ ≠ g̃`; both are non-constant, so every system has finitely many solutions.
fn add_bad_pairs(field: &Field, f: &[FieldElement], g: &[FieldElement], a: u32, bad: &mut HashSet<(u32, u32)>) {
    let fv = table(field, f);
    let gv = table(field, g);
    let (f_starts, f_items) = preimages(&fv);
    let (g_starts, g_items) = preimages(&gv);
    let g_pre = |v: u32| &g_items[g_starts[v as usize]..g_starts[v as usize + 1]];
    let f_pre = |v: u32| &f_items[f_starts[v as usize]..f_starts[v as usize + 1]];
    let agree: Vec<u32> = (0..fv.len() as u32).filter(|&z| fv[z as usize] == gv[z as usize]).collect();
    let (fa, ga) = (fv[a as usize], gv[a as usize]);

    for &x in g_pre(fa) {
        for &y in g_pre(fv[x as usize]) {
            bad.insert((x, y));
        }
        for &y in &agree {
            bad.insert((x, y));
        }
    }
    for &x in f_pre(ga) {
        for &y in f_pre(gv[x as usize]) {
            bad.insert((x, y));
        }
        for &y in &agree {
            bad.insert((x, y));
        }
    }
    for &x in &agree {
        for &y in &agree {
            bad.insert((x, y));
        }
    }
}

/// The pairs `(α_{2i-1}, α_{2i})` ruled out at stage `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadSet {
    pub pairs: HashSet<(u32, u32)>,
    pub prefix_pairs: usize,
    pub singular_skipped: usize,
}

/// Collects the bad set for extending `alpha` (length `2i - 2`) at stage `i`.
///
/// The caller is responsible for the optimality of `alpha`; a singular prefix
/// system that could still prefix a bad `(I, J)` is reported as
/// [`ConstructError::SingularSystem`], since it can only arise from a
/// non-optimal input.
pub fn bad_set(alpha: &EvaluationVector, i: usize, options: ExtendOptions) -> Result<BadSet, ConstructError> {
    if i < 3 || alpha.len() != 2 * i - 2 {
        return Err(ConstructError::Precondition(format!(
            "stage {i} needs a vector of length {}, got {}",
            (2 * i).saturating_sub(2),
            alpha.len()
        )));
    }
    let field = alpha.field();
    let q = field.order();
    let points = alpha.points();
    let n_prev = 2 * i - 2;
    let seqs: Vec<IncreasingSequence> = enumerate_increasing(n_prev, n_prev - 1).collect();
    let mut prefix_pairs = Vec::new();
    for a in 0..seqs.len() {
        for b in 0..seqs.len() {
            if a == b {
                continue;
            }
            let dh = hamming_increasing(&seqs[a], &seqs[b])?;
            if options.restrict_dh && dh < i - 2 {
                continue;
            }
            prefix_pairs.push((a, b, dh));
        }
    }

    let mut solutions = Vec::with_capacity(prefix_pairs.len());
    let mut singular_skipped = 0;
    for &(a, b, dh) in &prefix_pairs {
        match solve_prefix(field, points, i, &seqs[a], &seqs[b]) {
            Some(s) => solutions.push(s),
            // A bad (I, J) has d_H(I, J) >= i, so its prefixes are at
            // distance >= i - 2; closer prefixes cannot matter.
            None if dh < i - 2 => singular_skipped += 1,
            None => {
                return Err(ConstructError::SingularSystem {
                    i,
                    i_star: seqs[a].indices().to_vec(),
                    j_star: seqs[b].indices().to_vec(),
                })
            }
        }
    }

    let a_last = points[n_prev - 1].value();
    let work: Vec<(usize, u32)> = (0..solutions.len()).flat_map(|s| (0..q).map(move |c| (s, c))).collect();
    let bad: HashSet<(u32, u32)> = work
        .par_iter()
        .fold(HashSet::new, |mut acc, &(s, c)| {
            let sol = &solutions[s];
            let c = FieldElement::from_index(c);
            let combine = |base: &[FieldElement], dir: &[FieldElement]| -> Vec<FieldElement> {
                base.iter().zip(dir).map(|(&u, &w)| field.add(u, field.mul(c, w))).collect()
            };
            let f = combine(&sol.f_base, &sol.f_dir);
            let g = combine(&sol.g_base, &sol.g_dir);
            // f̃ = g̃ is the same codeword on both sides, not a bad pair.
            if Polynomial::new(f.clone()) != Polynomial::new(g.clone()) {
                add_bad_pairs(field, &f, &g, a_last, &mut acc);
            }
            acc
        })
        .reduce(HashSet::new, |mut x, y| {
            if x.len() < y.len() {
                return y.into_iter().chain(x).collect();
            }
            x.extend(y);
            x
        });
    Ok(BadSet { pairs: bad, prefix_pairs: prefix_pairs.len(), singular_skipped })
}

/// Extends an optimal `RS_{2i-2,i-1}` evaluation vector by two points: the
/// lexicographically least pair of new, distinct points outside the bad set.
pub fn extend(alpha: &EvaluationVector, i: usize, options: ExtendOptions) -> Result<Extension, ConstructError> {
    let BadSet { pairs: bad, prefix_pairs, singular_skipped } = bad_set(alpha, i, options)?;
    let field = alpha.field();
    let q = field.order();
    let points = alpha.points();

    let ceiling = bad_set_ceiling(i, q);
    if bad.len() as u128 > ceiling {
        return Err(ConstructError::BadSetCeiling { i, bad_pairs: bad.len(), ceiling });
    }

    let mut used = vec![false; q as usize];
    for p in points {
        used[p.value() as usize] = true;
    }
    let chosen = (0..q)
        .filter(|&x| !used[x as usize])
        .flat_map(|x| (0..q).map(move |y| (x, y)))
        .find(|&(x, y)| x != y && !used[y as usize] && !bad.contains(&(x, y)));
    let Some((x, y)) = chosen else {
        return Err(ConstructError::NoGoodPair {
            i,
            q,
            bad_pairs: bad.len(),
            below_bound: (q as u64) < prop14_min_q(i)?,
        });
    };
    let mut out: Vec<u32> = points.iter().map(|p| p.value()).collect();
    out.extend([x, y]);
    Ok(Extension {
        alpha: out,
        chosen_pair: (x, y),
        bad_pair_count: bad.len(),
        bad_pair_ceiling: ceiling,
        prefix_pairs,
        singular_skipped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exact,
    Certificate,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    RankCertified,
    ExactOptimal,
    Skipped,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConstructOptions {
    pub restrict_dh: bool,
    /// Attempt fields below the guarantee; stages may then fail with `NoGoodPair`.
    pub allow_small_q: bool,
    /// Require `q >= 100k⁴` instead of the sharper polynomial bound.
    pub theorem3_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub i: usize,
    pub bad_pair_count: usize,
    pub bad_pair_ceiling: u128,
    pub prefix_pairs: usize,
    pub singular_skipped: usize,
    pub chosen_pair: (u32, u32),
    pub verification: Verification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub field: String,
    pub q: u32,
    pub k: usize,
    pub min_q: u64,
    pub verify: VerifyMode,
    pub base: Vec<u32>,
    pub base_verification: Verification,
    pub stages: Vec<Stage>,
    pub alpha: Vec<u32>,
}

impl ConstructionTrace {
    pub fn evaluation_vector(&self, field: Arc<Field>) -> Result<EvaluationVector, CodeError> {
        let idx: Vec<u64> = self.alpha.iter().map(|&v| v as u64).collect();
        EvaluationVector::from_indices(field, &idx)
    }
}

fn verify_stage(
    eval: &EvaluationVector,
    i: usize,
    mode: VerifyMode,
    guards: &Guards,
) -> Result<Verification, ConstructError> {
    match mode {
        VerifyMode::None => Ok(Verification::Skipped),
        VerifyMode::Exact => match is_optimal_half_rate(eval, i, guards)? {
            Optimality::Optimal => Ok(Verification::ExactOptimal),
            Optimality::NotOptimal(w) => Err(ConstructError::VerificationFailed {
                i,
                detail: format!("common subsequence along I={:?}, J={:?}", w.i, w.j),
            }),
        },
        VerifyMode::Certificate => match rank_certificate(&RsCode::new(eval.clone(), i)?, 1)? {
            Certificate::Certified => Ok(Verification::RankCertified),
            Certificate::Inconclusive { i: a, j: b } => Err(ConstructError::VerificationFailed {
                i,
                detail: format!("rank-deficient pair I={:?}, J={:?}", a.indices(), b.indices()),
            }),
        },
    }
}

/// Builds `α ∈ F_q^{2k}` whose `RS_{2k,k}(α)` corrects a single insdel error.
pub fn construct_half_rate(
    q: u64,
    k: usize,
    verify: VerifyMode,
    options: ConstructOptions,
    guards: &Guards,
) -> Result<ConstructionTrace, ConstructError> {
    if prime_power(q).is_none() {
        return Err(GfError::NotPrimePower(q).into());
    }
    let field = Arc::new(Field::with_order(q)?);
    if q < 7 {
        return Err(ConstructError::NoBaseCase { q: q as u32 });
    }
    let min_q = if options.theorem3_bound { theorem3_min_q(k) } else { prop14_min_q(k)? };
    if q < min_q && !options.allow_small_q {
        return Err(ConstructError::BelowBound { q: q as u32, k, min_q });
    }
    let mut eval = base_case(&field)?;
    let base: Vec<u32> = eval.points().iter().map(|p| p.value()).collect();
    let base_verification = verify_stage(&eval, 2, verify, guards)?;
    let mut stages = Vec::new();
    for i in 3..=k {
        let ext = extend(&eval, i, ExtendOptions { restrict_dh: options.restrict_dh })?;
        let idx: Vec<u64> = ext.alpha.iter().map(|&v| v as u64).collect();
        eval = EvaluationVector::from_indices(field.clone(), &idx)?;
        let verification = verify_stage(&eval, i, verify, guards)?;
        stages.push(Stage {
            i,
            bad_pair_count: ext.bad_pair_count,
            bad_pair_ceiling: ext.bad_pair_ceiling,
            prefix_pairs: ext.prefix_pairs,
            singular_skipped: ext.singular_skipped,
            chosen_pair: ext.chosen_pair,
            verification,
        });
    }
    Ok(ConstructionTrace {
        field: field.label(),
        q: q as u32,
        k,
        min_q,
        verify,
        base,
        base_verification,
        stages,
        alpha: eval.points().iter().map(|p| p.value()).collect(),
    })
}
