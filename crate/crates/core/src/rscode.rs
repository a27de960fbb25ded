//! Evaluation vectors, Reed–Solomon codes and affine equivalence of orderings.
//!
//! Evaluation vectors have a text form `GF(p^m):i1,i2,...` where each `i`
//! is a canonical element index.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("evaluation points are not pairwise distinct (repeat of {0})")]
    RepeatedPoint(FieldElement),
    #[error("evaluation vector must have between 1 and q points, got {0}")]
    BadLength(usize),
    #[error("dimension k={k} must satisfy 1 <= k < n={n}")]
    BadDimension { k: usize, n: usize },
    #[error("polynomial degree {degree} is not below k={k}")]
    DegreeTooHigh { degree: usize, k: usize },
    #[error("cannot parse evaluation vector: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Pairwise distinct evaluation points `(α_1, ..., α_n)` over a shared field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationVector {
    field: Arc<Field>,
    points: Vec<FieldElement>,
}

impl EvaluationVector {
    pub fn new(field: Arc<Field>, points: Vec<FieldElement>) -> Result<EvaluationVector, CodeError> {
        if points.is_empty() || points.len() > field.order() as usize {
            return Err(CodeError::BadLength(points.len()));
        }
        let mut seen = vec![false; field.order() as usize];
        for &p in &points {
            field.element(p.value() as u64)?;
            if std::mem::replace(&mut seen[p.value() as usize], true) {
                return Err(CodeError::RepeatedPoint(p));
            }
        }
        Ok(EvaluationVector { field, points })
    }

    pub fn from_indices(field: Arc<Field>, indices: &[u64]) -> Result<EvaluationVector, CodeError> {
        let points = indices
            .iter()
            .map(|&v| field.element(v))
            .collect::<Result<Vec<_>, _>>()?;
        EvaluationVector::new(field, points)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point at a 1-based position.
    pub fn at(&self, pos: usize) -> FieldElement {
        self.points[pos - 1]
    }

    pub fn indices(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.value()).collect()
    }

    /// True when the points are an ordering of the whole field.
    pub fn is_full_length(&self) -> bool {
        self.points.len() == self.field.order() as usize
    }

    /// Componentwise `λ α + μ`.
    pub fn affine_image(&self, lambda: FieldElement, mu: FieldElement) -> Result<EvaluationVector, CodeError> {
        if lambda.is_zero() {
            return Err(CodeError::Field(GfError::DivisionByZero));
        }
        let f = &self.field;
        Ok(EvaluationVector {
            field: self.field.clone(),
            points: self.points.iter().map(|&a| f.add(f.mul(lambda, a), mu)).collect(),
        })
    }

    /// Returns `(λ, μ)` with `λ·self + μ = other`, if the vectors are equivalent.
    pub fn equivalent(&self, other: &EvaluationVector) -> Option<(FieldElement, FieldElement)> {
        equivalent(&self.field, &self.points, &other.points)
    }

    /// The equivalent vector whose first two coordinates are `0, 1`.
    pub fn canonical_form(&self) -> EvaluationVector {
        EvaluationVector {
            field: self.field.clone(),
            points: canonical_points(&self.field, &self.points),
        }
    }
}

impl fmt::Display for EvaluationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.field.label())?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for EvaluationVector {
    type Err = CodeError;

    /// Parses `GF(p^m):i1,i2,...` (also `GF(q):...`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (header, body) = s
            .split_once(':')
            .ok_or_else(|| CodeError::Parse("missing `GF(..):` header".into()))?;
        let field = parse_field_spec(header.trim())?;
        let indices = parse_indices(body)?;
        EvaluationVector::from_indices(Arc::new(field), &indices)
    }
}

/// Parses `q`, `p^m`, `GF(q)` or `GF(p^m)` into a field.
pub fn parse_field_spec(s: &str) -> Result<Field, CodeError> {
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    let bad = || CodeError::Parse(format!("bad field `{s}`"));
    match inner.split_once('^') {
        Some((p, m)) => {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let m: u32 = m.trim().parse().map_err(|_| bad())?;
            Ok(Field::new(p, m)?)
        }
        None => {
            let q: u64 = inner.parse().map_err(|_| bad())?;
            Ok(Field::with_order(q)?)
        }
    }
}

/// Parses a comma-separated list of element indices.
pub fn parse_indices(s: &str) -> Result<Vec<u64>, CodeError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CodeError::Parse(format!("bad index `{}`", t.trim())))
        })
        .collect()
}

pub(crate) fn equivalent(
    field: &Field,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Option<(FieldElement, FieldElement)> {
    if a.len() != b.len() || a.len() < 2 || a[0] == a[1] {
        return None;
    }
    // λ a_1 + μ = b_1 and λ a_2 + μ = b_2
    let lambda = field
        .div(field.sub(b[1], b[0]), field.sub(a[1], a[0]))
        .ok()?;
    if lambda.is_zero() {
        return None;
    }
    let mu = field.sub(b[0], field.mul(lambda, a[0]));
    a.iter()
        .zip(b)
        .all(|(&x, &y)| field.add(field.mul(lambda, x), mu) == y)
        .then_some((lambda, mu))
}

pub(crate) fn canonical_points(field: &Field, a: &[FieldElement]) -> Vec<FieldElement> {
    assert!(a.len() >= 2 && a[0] != a[1], "canonical form needs two distinct leading points");
    let lambda = field.inv(field.sub(a[1], a[0])).expect("distinct points");
    let mu = field.neg(field.mul(lambda, a[0]));
    a.iter().map(|&x| field.add(field.mul(lambda, x), mu)).collect()
}

/// `RS_{n,k}(α)`: evaluations of all polynomials of degree `< k` at `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCode {
    eval: EvaluationVector,
    k: usize,
}

impl RsCode {
    pub fn new(eval: EvaluationVector, k: usize) -> Result<RsCode, CodeError> {
        if k == 0 || k >= eval.len() {
            return Err(CodeError::BadDimension { k, n: eval.len() });
        }
        Ok(RsCode { eval, k })
    }

    pub fn eval(&self) -> &EvaluationVector {
        &self.eval
    }

    pub fn field(&self) -> &Field {
        self.eval.field()
    }

    pub fn n(&self) -> usize {
        self.eval.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn codeword(&self, f: &Polynomial) -> Result<Vec<FieldElement>, CodeError> {
        if let Some(d) = f.degree() {
            if d >= self.k {
                return Err(CodeError::DegreeTooHigh { degree: d, k: self.k });
            }
        }
        Ok(f.eval_vec(self.field(), self.eval.points()))
    }

    /// Number of codewords, `q^k`, saturating.
    pub fn size(&self) -> u64 {
        (self.field().order() as u64).saturating_pow(self.k as u32)
    }
}
