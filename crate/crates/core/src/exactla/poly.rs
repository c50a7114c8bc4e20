use std::fmt;

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Dense univariate polynomial, ascending coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if *c == self.field.one() && k > 0 {
                String::new()
            } else {
                format!("({c})")
            };
            terms.push(match k {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{k}"),
            });
        }
        f.write_str(&terms.join(" + "))
    }
}

impl<F: Field> Polynomial<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x - root`
    pub fn linear(field: &F, root: &F::Elem) -> Self {
        Self::new(field, vec![-root.clone(), field.one()])
    }

    /// `∏ (x - r)` over `roots`, the empty product being 1.
    pub fn from_roots<'a, I>(field: &F, roots: I) -> Self
    where
        I: IntoIterator<Item = &'a F::Elem>,
        F: 'a,
    {
        roots
            .into_iter()
            .fold(Self::one(field), |acc, r| acc.mul(&Self::linear(field, r)))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(&self.field.one())
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<F::Elem> {
        assert!(self.coeffs.len() <= len, "degree exceeds padding");
        let mut v = self.coeffs.clone();
        v.resize(len, self.field.zero());
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            &self.field,
            (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            &self.field,
            (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect(),
        )
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let cur = out[i + j].clone();
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Self::new(&self.field, out)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        assert!(m.is_square(), "polynomial evaluated at a non-square matrix");
        let n = m.rows();
        self.coeffs.iter().rev().fold(Matrix::zeros(&self.field, n, n), |acc, c| {
            acc.mul(m).add(&Matrix::scalar(&self.field, n, c.clone()))
        })
    }

    /// Quotient and remainder on division by `x - root`.
    pub fn div_linear(&self, root: &F::Elem) -> (Self, F::Elem) {
        if self.is_zero() {
            return (Self::zero(&self.field), self.field.zero());
        }
        let mut q = vec![self.field.zero(); self.coeffs.len() - 1];
        let mut carry = self.field.zero();
        for k in (0..self.coeffs.len()).rev() {
            let v = self.coeffs[k].clone() + carry * root.clone();
            if k == 0 {
                return (Self::new(&self.field, q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `root` as a zero.
    pub fn multiplicity(&self, root: &F::Elem) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.div_linear(root);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}
