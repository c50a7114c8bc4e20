use std::collections::HashMap;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Monic characteristic polynomial `det(xI - M)`.
///
/// Uses Faddeev-LeVerrier whenever the divisions by `1..=n` are legal
/// (characteristic zero or `p > n`); otherwise falls back to cofactor
/// expansion with memoized minors.
pub fn char_poly<F: Field>(m: &Matrix<F>) -> Result<Polynomial<F>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let p = m.field().characteristic();
    if p == 0 || p > m.rows() as u64 {
        Ok(faddeev_leverrier(m))
    } else {
        char_poly_by_minors(m)
    }
}

fn faddeev_leverrier<F: Field>(m: &Matrix<F>) -> Polynomial<F> {
    let field = m.field();
    let n = m.rows();
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    let mut acc = Matrix::zeros(field, n, n);
    for k in 1..=n {
        acc = m.mul(&acc).add(&Matrix::scalar(field, n, coeffs[n - k + 1].clone()));
        let tr = m.mul(&acc).trace();
        let k_inv = field.from_i64(k as i64).inv().expect("k invertible when p > n");
        coeffs[n - k] = -(tr * k_inv);
    }
    Polynomial::new(field, coeffs)
}

/// `det(xI - M)` by Laplace expansion along rows. Exponential in `n`; used as
/// the fallback in small characteristic and as an independent cross-check.
pub fn char_poly_by_minors<F: Field>(m: &Matrix<F>) -> Result<Polynomial<F>> {
    if !m.is_square() {
        return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    if n > 24 {
        return Err(Error::invalid("cofactor expansion limited to n <= 24"));
    }
    let field = m.field();
    // entry (r, c) of xI - M
    let entry = |r: usize, c: usize| -> Polynomial<F> {
        let mut coeffs = vec![-m[(r, c)].clone()];
        if r == c {
            coeffs.push(field.one());
        }
        Polynomial::new(field, coeffs)
    };
    let mut memo: HashMap<u32, Polynomial<F>> = HashMap::new();
    fn minor<F: Field>(
        row: usize,
        used: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> Polynomial<F>,
        memo: &mut HashMap<u32, Polynomial<F>>,
        field: &F,
    ) -> Polynomial<F> {
        if row == n {
            return Polynomial::one(field);
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut total = Polynomial::zero(field);
        let mut sign_pos = true;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let e = entry(row, c);
            if !e.is_zero() {
                let sub = minor(row + 1, used | (1 << c), n, entry, memo, field);
                let term = e.mul(&sub);
                total = if sign_pos { total.add(&term) } else { total.sub(&term) };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, total.clone());
        total
    }
    Ok(minor(0, 0, n, &entry, &mut memo, field))
}

/// Eigenvalues in canonical order with bases of the corresponding eigenspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData<F: Field> {
    pub eigenvalues: Vec<F::Elem>,
    pub eigenspaces: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> EigenData<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenOutcome<F: Field> {
    Diagonalizable(EigenData<F>),
    NotDiagonalizable,
    /// The characteristic polynomial does not split into linear factors over the field.
    EigenvalueOutsideField,
}

impl<F: Field> EigenOutcome<F> {
    pub fn data(self) -> Option<EigenData<F>> {
        match self {
            EigenOutcome::Diagonalizable(d) => Some(d),
            _ => None,
        }
    }
}

pub fn eigen_data<F: Field>(m: &Matrix<F>) -> Result<EigenOutcome<F>> {
    let cp = char_poly(m)?;
    let mut roots = m.field().roots(cp.coeffs());
    roots.sort_by(|a, b| a.canonical_cmp(b));
    let total: usize = roots.iter().map(|r| cp.multiplicity(r)).sum();
    if total < m.rows() {
        return Ok(EigenOutcome::EigenvalueOutsideField);
    }
    let eigenspaces: Vec<_> = roots.iter().map(|r| m.shift(r).kernel()).collect();
    if eigenspaces.iter().map(Vec::len).sum::<usize>() != m.rows() {
        return Ok(EigenOutcome::NotDiagonalizable);
    }
    Ok(EigenOutcome::Diagonalizable(EigenData {
        eigenvalues: roots,
        eigenspaces,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::PrimeField;
    use crate::Rationals;

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64(&Rationals::new(), rows).unwrap()
    }

    fn ints(f: &Rationals, xs: &[i64]) -> Vec<crate::Q> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn char_poly_examples() {
        let f = Rationals::new();
        // swap matrix: x^2 - 1
        let p = char_poly(&qm(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(p.coeffs(), ints(&f, &[-1, 0, 1]).as_slice());
        // diag(2,0,-2): x^3 - 4x
        let p = char_poly(&qm(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]])).unwrap();
        assert_eq!(p.coeffs(), ints(&f, &[0, -4, 0, 1]).as_slice());
        // [c]: x - c
        let p = char_poly(&qm(&[&[7]])).unwrap();
        assert_eq!(p.coeffs(), ints(&f, &[-7, 1]).as_slice());
    }

    #[test]
    fn char_poly_rejects_rectangular() {
        assert!(char_poly(&qm(&[&[1, 2]])).is_err());
    }

    #[test]
    fn small_characteristic_uses_minors() {
        // p = 3 <= n = 3
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64(&f, &[&[0, 2, 0], &[1, 0, 1], &[0, 2, 0]]).unwrap();
        let p = char_poly(&m).unwrap();
        // x^3 - 4x = x^3 + 2x mod 3
        assert_eq!(p.coeffs(), &[f.elem(0), f.elem(2), f.elem(0), f.elem(1)]);
    }

    #[test]
    fn eigen_swap_matrix() {
        let f = Rationals::new();
        let m = qm(&[&[0, 1], &[1, 0]]);
        let data = eigen_data(&m).unwrap().data().unwrap();
        assert_eq!(data.eigenvalues, ints(&f, &[-1, 1]));
        assert_eq!(data.dims(), vec![1, 1]);
        for (th, basis) in data.eigenvalues.iter().zip(&data.eigenspaces) {
            for v in basis {
                let mv = m.mul_vec(v);
                let tv: Vec<_> = v.iter().map(|x| x.clone() * th.clone()).collect();
                assert_eq!(mv, tv);
            }
        }
    }

    #[test]
    fn eigen_failures() {
        assert_eq!(
            eigen_data(&qm(&[&[0, 1], &[0, 0]])).unwrap(),
            EigenOutcome::NotDiagonalizable
        );
        assert_eq!(
            eigen_data(&qm(&[&[0, 1], &[-1, 0]])).unwrap(),
            EigenOutcome::EigenvalueOutsideField
        );
    }

    #[test]
    fn rotation_splits_mod_5() {
        // x^2 + 1 = (x - 2)(x - 3) mod 5
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(&f, &[&[0, 1], &[-1, 0]]).unwrap();
        let data = eigen_data(&m).unwrap().data().unwrap();
        assert_eq!(data.eigenvalues, vec![f.elem(2), f.elem(3)]);
    }
}
