//! Univariate polynomials and dense linear algebra over `GF(q)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("interpolation nodes are not pairwise distinct")]
    DuplicateNode,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("the zero polynomial vanishes everywhere")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Coefficient vector, low degree first, with trailing zeros trimmed.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        Polynomial::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Polynomial {
        Polynomial::new(vec![FieldElement::ZERO, FieldElement::ONE])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn eval_vec(&self, field: &Field, xs: &[FieldElement]) -> Vec<FieldElement> {
        xs.iter().map(|&x| self.eval(field, x)).collect()
    }

    pub fn add(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: FieldElement) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Polynomial::new(out)
    }

    /// All roots in `GF(q)`, ascending, found by scanning the whole field.
    pub fn roots(&self, field: &Field) -> Result<Vec<FieldElement>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(field
            .elements()
            .filter(|&x| self.eval(field, x).is_zero())
            .collect())
    }
}

/// Finds the polynomial of degree `< k` through `points`, if one exists.
///
/// Lagrange interpolation on the first `k` points, then every remaining
/// point is checked. Returns `Ok(None)` when the points are not on a single
/// polynomial of degree `< k`.
pub fn interpolate(
    field: &Field,
    points: &[(FieldElement, FieldElement)],
    k: usize,
) -> Result<Option<Polynomial>, PolyError> {
    if points.len() < k {
        return Err(PolyError::TooFewPoints {
            needed: k,
            got: points.len(),
        });
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].iter().any(|b| b.0 == a.0) {
            return Err(PolyError::DuplicateNode);
        }
    }
    let nodes: Vec<FieldElement> = points[..k].iter().map(|p| p.0).collect();
    let mut result = Polynomial::zero();
    for (i, &(xi, yi)) in points[..k].iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::constant(FieldElement::ONE);
        let mut denom = FieldElement::ONE;
        for (j, &xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(field, &Polynomial::new(vec![field.neg(xj), FieldElement::ONE]));
            denom = field.mul(denom, field.sub(xi, xj));
        }
        let c = field.div(yi, denom).expect("distinct nodes");
        result = result.add(field, &basis.scale(field, c));
    }
    if points[k..].iter().all(|&(x, y)| result.eval(field, x) == y) {
        Ok(Some(result))
    } else {
        Ok(None)
    }
}

/// Dense row-major matrix over `GF(q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Matrix, PolyError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PolyError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(self.get(r, c)).expect("pivot is non-zero");
            for j in c..self.cols {
                self.set(r, j, field.mul(self.get(r, j), inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

pub fn rank(field: &Field, a: &Matrix) -> usize {
    a.clone().rref(field).len()
}

/// Full description of the solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<FieldElement>),
    None,
    /// A particular solution plus a basis of the kernel of `A`.
    Underdetermined {
        particular: Vec<FieldElement>,
        kernel: Vec<Vec<FieldElement>>,
    },
}

pub fn solve_linear(field: &Field, a: &Matrix, b: &[FieldElement]) -> Result<LinearSolution, PolyError> {
    if b.len() != a.rows {
        return Err(PolyError::Dimension(format!(
            "matrix has {} rows, right-hand side has {}",
            a.rows,
            b.len()
        )));
    }
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for r in 0..a.rows {
        for c in 0..n {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, n, b[r]);
    }
    let pivots = aug.rref(field);
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::None);
    }
    let mut particular = vec![FieldElement::ZERO; n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug.get(r, n);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(LinearSolution::Unique(particular));
    }
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![FieldElement::ZERO; n];
            v[fc] = FieldElement::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(aug.get(r, fc));
            }
            v
        })
        .collect();
    Ok(LinearSolution::Underdetermined { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(field: &Field, v: u64) -> FieldElement {
        field.element(v).unwrap()
    }

    fn poly(field: &Field, cs: &[u64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| el(field, c)).collect())
    }

    fn mat(field: &Field, rows: &[&[u64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| el(field, v)).collect()).collect()).unwrap()
    }

    #[test]
    fn evaluation() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(poly(&f7, &[0, 0, 1]).eval(&f7, el(&f7, 5)).value(), 4);
        let alpha: Vec<_> = [0, 1, 2, 5].iter().map(|&v| el(&f7, v)).collect();
        assert!(Polynomial::zero().eval_vec(&f7, &alpha).iter().all(|v| v.is_zero()));
        assert_eq!(Polynomial::x().eval_vec(&f7, &alpha), alpha);
    }

    #[test]
    fn trimming() {
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(poly(&f7, &[3, 0, 0]).degree(), Some(0));
        assert!(poly(&f7, &[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn interpolation_cases() {
        let f7 = Field::new(7, 1).unwrap();
        let pts = |v: &[(u64, u64)]| v.iter().map(|&(x, y)| (el(&f7, x), el(&f7, y))).collect::<Vec<_>>();
        assert_eq!(interpolate(&f7, &pts(&[(0, 0), (1, 1)]), 2).unwrap(), Some(Polynomial::x()));
        assert_eq!(interpolate(&f7, &pts(&[(0, 0), (1, 1), (2, 5)]), 2).unwrap(), None);
        assert_eq!(
            interpolate(&f7, &pts(&[(0, 3), (1, 3), (4, 3)]), 3).unwrap(),
            Some(poly(&f7, &[3]))
        );
        assert_eq!(
            interpolate(&f7, &pts(&[(0, 3), (0, 3)]), 1).unwrap_err(),
            PolyError::DuplicateNode
        );
        assert!(matches!(
            interpolate(&f7, &pts(&[(0, 3)]), 2),
            Err(PolyError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn root_scan() {
        let f7 = Field::new(7, 1).unwrap();
        let r: Vec<u32> = poly(&f7, &[6, 0, 1]).roots(&f7).unwrap().iter().map(|e| e.value()).collect();
        assert_eq!(r, vec![1, 6]);
        assert!(poly(&f7, &[1, 0, 1]).roots(&f7).unwrap().is_empty());
        assert!(poly(&f7, &[4]).roots(&f7).unwrap().is_empty());
        assert_eq!(Polynomial::zero().roots(&f7).unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn linear_systems() {
        let f7 = Field::new(7, 1).unwrap();
        let b: Vec<_> = [3, 1, 4].iter().map(|&v| el(&f7, v)).collect();
        assert_eq!(solve_linear(&f7, &Matrix::identity(3), &b).unwrap(), LinearSolution::Unique(b.clone()));

        let a = mat(&f7, &[&[1, 1], &[2, 2]]);
        match solve_linear(&f7, &a, &[el(&f7, 1), el(&f7, 2)]).unwrap() {
            LinearSolution::Underdetermined { particular, kernel } => {
                assert_eq!(kernel.len(), 1);
                assert_eq!(a.mul_vec(&f7, &particular), vec![el(&f7, 1), el(&f7, 2)]);
                assert!(a.mul_vec(&f7, &kernel[0]).iter().all(|v| v.is_zero()));
            }
            other => panic!("expected underdetermined, got {other:?}"),
        }
        assert_eq!(
            solve_linear(&f7, &a, &[el(&f7, 1), el(&f7, 3)]).unwrap(),
            LinearSolution::None
        );
        assert!(solve_linear(&f7, &a, &[el(&f7, 1)]).is_err());
    }

    #[test]
    fn ranks() {
        let f7 = Field::new(7, 1).unwrap();
        let vand = mat(&f7, &[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4]]);
        assert_eq!(rank(&f7, &vand), 3);
        assert_eq!(rank(&f7, &Matrix::zeros(3, 4)), 0);
        // V matrix for k=2, alpha=(0,1,2,5), I=(1,2,3), J=(2,3,4)
        let v = mat(&f7, &[&[1, 0, 1], &[1, 1, 2], &[1, 2, 5]]);
        assert_eq!(rank(&f7, &v), 3);
    }
}
