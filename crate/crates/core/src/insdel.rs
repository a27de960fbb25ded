//! Longest common subsequences, increasing index sequences and the
//! rank certificate for insdel correction.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{Field, FieldElement};
use crate::poly::{rank, Matrix};
use crate::rscode::RsCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InsdelError {
    #[error("index sequence is not strictly increasing within [1, {n}]: {indices:?}")]
    NotIncreasing { indices: Vec<usize>, n: usize },
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("index {index} exceeds the evaluation vector length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subsequence length {ell} outside [{min}, {n}]")]
    LengthOutOfRange { ell: usize, min: usize, n: usize },
    #[error("{pairs} index pairs exceed the certificate guard of {guard}")]
    TooManyPairs { pairs: u128, guard: u128 },
}

/// Upper bound on `C(n, ℓ)^2` pairs the certificate is willing to scan.
pub const CERTIFICATE_PAIR_GUARD: u128 = 50_000_000;

/// Length of a longest common subsequence, `O(|a|·|b|)` time, `O(|b|)` memory.
pub fn lcs<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// LCS together with one alignment, as 1-based index sequences into `a` and `b`.
pub fn lcs_with_witness<T: PartialEq>(a: &[T], b: &[T]) -> (usize, Vec<usize>, Vec<usize>) {
    let (n, m) = (a.len(), b.len());
    let mut table = vec![0usize; (n + 1) * (m + 1)];
    let at = |i: usize, j: usize| i * (m + 1) + j;
    for i in 1..=n {
        for j in 1..=m {
            table[at(i, j)] = if a[i - 1] == b[j - 1] {
                table[at(i - 1, j - 1)] + 1
            } else {
                table[at(i - 1, j)].max(table[at(i, j - 1)])
            };
        }
    }
    let (mut i, mut j) = (n, m);
    let (mut ia, mut ib) = (Vec::new(), Vec::new());
    while i > 0 && j > 0 {
        if a[i - 1] == b[j - 1] {
            ia.push(i);
            ib.push(j);
            i -= 1;
            j -= 1;
        } else if table[at(i - 1, j)] >= table[at(i, j - 1)] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    ia.reverse();
    ib.reverse();
    (table[at(n, m)], ia, ib)
}

/// LCS when every symbol of `a` is distinct.
///
/// Maps `b` onto positions in `a` and takes a longest strictly increasing
/// run of positions (patience sorting), `O(|b| log |b|)` after the lookup.
/// `position` maps a symbol index to its 1-based position in `a` (0 = absent).
pub fn lcs_distinct(position: &[u32], b: &[FieldElement]) -> usize {
    let mut tails: Vec<u32> = Vec::with_capacity(b.len());
    for sym in b {
        let p = position[sym.value() as usize];
        if p == 0 {
            continue;
        }
        match tails.binary_search(&p) {
            Ok(_) => {}
            Err(idx) if idx == tails.len() => tails.push(p),
            Err(idx) => tails[idx] = p,
        }
    }
    tails.len()
}

/// Inverse-position table for [`lcs_distinct`].
pub fn position_table(q: u32, a: &[FieldElement]) -> Vec<u32> {
    let mut pos = vec![0u32; q as usize];
    for (i, x) in a.iter().enumerate() {
        pos[x.value() as usize] = i as u32 + 1;
    }
    pos
}

/// Minimum number of insertions and deletions turning `a` into `b`.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.len() + b.len() - 2 * lcs(a, b)
}

/// Strictly increasing 1-based positions within `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IncreasingSequence {
    indices: Vec<usize>,
    #[serde(skip)]
    n: usize,
}

impl IncreasingSequence {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<IncreasingSequence, InsdelError> {
        let ok = indices.iter().all(|&i| (1..=n).contains(&i))
            && indices.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(InsdelError::NotIncreasing { indices, n });
        }
        Ok(IncreasingSequence { indices, n })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// For `ℓ = n - 1`: the single position of `[1, n]` that is left out.
    pub fn missing_index(&self) -> Option<usize> {
        if self.indices.len() + 1 != self.n {
            return None;
        }
        (1..=self.n).find(|i| self.indices.binary_search(i).is_err())
    }

    /// Selects the entries of `v` at these (1-based) positions.
    pub fn select<T: Copy>(&self, v: &[T]) -> Vec<T> {
        self.indices.iter().map(|&i| v[i - 1]).collect()
    }
}

pub fn hamming_increasing(a: &IncreasingSequence, b: &IncreasingSequence) -> Result<usize, InsdelError> {
    if a.len() != b.len() {
        return Err(InsdelError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.indices.iter().zip(&b.indices).filter(|(x, y)| x != y).count())
}

/// All increasing sequences of length `ell` in `[1, n]`, lexicographically.
pub fn enumerate_increasing(n: usize, ell: usize) -> impl Iterator<Item = IncreasingSequence> {
    (1..=n)
        .combinations(ell)
        .map(move |indices| IncreasingSequence { indices, n })
}

/// The `ℓ × (2k-1)` matrix whose row `t` is
/// `(1, α_{I_t}, ..., α_{I_t}^{k-1}, α_{J_t}, ..., α_{J_t}^{k-1})`.
pub fn build_v(
    field: &Field,
    alpha: &[FieldElement],
    k: usize,
    i_seq: &IncreasingSequence,
    j_seq: &IncreasingSequence,
) -> Result<Matrix, InsdelError> {
    if i_seq.len() != j_seq.len() {
        return Err(InsdelError::LengthMismatch(i_seq.len(), j_seq.len()));
    }
    for &idx in i_seq.indices.iter().chain(&j_seq.indices) {
        if idx > alpha.len() {
            return Err(InsdelError::IndexOutOfRange { index: idx, n: alpha.len() });
        }
    }
    let ell = i_seq.len();
    let mut m = Matrix::zeros(ell, 2 * k - 1);
    for t in 0..ell {
        let (x, y) = (alpha[i_seq.indices[t] - 1], alpha[j_seq.indices[t] - 1]);
        m.set(t, 0, FieldElement::ONE);
        let (mut px, mut py) = (FieldElement::ONE, FieldElement::ONE);
        for d in 1..k {
            px = field.mul(px, x);
            py = field.mul(py, y);
            m.set(t, d, px);
            m.set(t, k - 1 + d, py);
        }
    }
    Ok(m)
}

/// Outcome of the rank certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Certificate {
    /// Every qualifying matrix has full rank: the code corrects `t` insdels.
    Certified,
    /// A rank-deficient pair exists. This does not prove failure.
    Inconclusive { i: IncreasingSequence, j: IncreasingSequence },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified)
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Checks that `V_{k,ℓ,I,J}(α)` has rank `2k-1` for every pair of increasing
/// sequences of length `ℓ = n - t` with `d_H(I, J) >= ℓ - k + 1`.
///
/// Full rank everywhere certifies that the code corrects `t` insdel errors.
/// The first rank-deficient pair in lexicographic `(I, J)` order is returned
/// otherwise.
pub fn rank_certificate(code: &RsCode, t: usize) -> Result<Certificate, InsdelError> {
    let (n, k) = (code.n(), code.k());
    let min = 2 * k - 1;
    let ell = n.checked_sub(t).ok_or(InsdelError::LengthOutOfRange { ell: 0, min, n })?;
    if ell < min || ell > n {
        return Err(InsdelError::LengthOutOfRange { ell, min, n });
    }
    let pairs = binomial(n, ell).pow(2);
    if pairs > CERTIFICATE_PAIR_GUARD {
        return Err(InsdelError::TooManyPairs { pairs, guard: CERTIFICATE_PAIR_GUARD });
    }
    let field = code.field();
    let alpha = code.eval().points();
    let seqs: Vec<IncreasingSequence> = enumerate_increasing(n, ell).collect();
    let threshold = ell + 1 - k;
    let witness = seqs.par_iter().find_map_first(|i_seq| {
        seqs.iter().find_map(|j_seq| {
            let dh = hamming_increasing(i_seq, j_seq).expect("equal lengths");
            if dh < threshold {
                return None;
            }
            let v = build_v(field, alpha, k, i_seq, j_seq).expect("indices in range");
            (rank(field, &v) < min).then(|| (i_seq.clone(), j_seq.clone()))
        })
    });
    Ok(match witness {
        None => Certificate::Certified,
        Some((i, j)) => Certificate::Inconclusive { i, j },
    })
}
