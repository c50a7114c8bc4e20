use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}](", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, ")")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: &F, n: usize, c: F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(field: &F, diag: &[F::Elem]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, c) in diag.iter().enumerate() {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from small integers; handy for fixtures.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn from_flat(field: &F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<F::Elem> {
        self.entries
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(op.into()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(F::Elem, F::Elem) -> F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| op(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("mul".into()));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let cur = out[(i, j)].clone();
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sum shape")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix difference shape")
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[I, M, M^2, .., M^k]`
    pub fn powers(&self, k: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::identity(&self.field, self.rows));
        for i in 0..k {
            let next = out[i].mul(self);
            out.push(next);
        }
        out
    }

    pub fn trace(&self) -> F::Elem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `M - c I`
    pub fn shift(&self, c: &F::Elem) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let cur = m[(i, i)].clone();
            m[(i, i)] = cur - c.clone();
        }
        m
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Gauss-Jordan elimination. Pivots on the first nonzero entry of each column.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(found) = (pr..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, found);
            let inv = m[(pr, c)].inv().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m[(pr, k)].clone();
                m[(pr, k)] = v * inv.clone();
            }
            for r in 0..m.rows {
                if r == pr || m[(r, c)].is_zero() {
                    continue;
                }
                let factor = m[(r, c)].clone();
                for k in c..m.cols {
                    let sub = factor.clone() * m[(pr, k)].clone();
                    let v = m[(r, k)].clone();
                    m[(r, k)] = v - sub;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced[(row, fc)].clone();
                }
                v
            })
            .collect()
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (r, c): (usize, usize)) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F::Elem {
        &mut self.entries[r * self.cols + c]
    }
}

/// Dimension of the span of `mats`, each flattened to a row vector.
pub fn span_rank<F: Field>(mats: &[Matrix<F>]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    for m in mats {
        first.same_shape(m, "span_rank")?;
    }
    let width = first.rows * first.cols;
    let flat = mats.iter().flat_map(|m| m.entries.iter().cloned()).collect();
    Ok(Matrix::from_flat(first.field(), mats.len(), width, flat)?.rank())
}

/// Coefficients `c` with `Σ c_k gens[k] = target`, if the target lies in the span.
/// When the generators are dependent one particular solution is returned.
pub fn solve_combination<F: Field>(
    field: &F,
    gens: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let len = target.len();
    let k = gens.len();
    let mut aug = Matrix::zeros(field, len, k + 1);
    for (c, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), len);
        for (r, x) in g.iter().enumerate() {
            aug[(r, c)] = x.clone();
        }
    }
    for (r, x) in target.iter().enumerate() {
        aug[(r, k)] = x.clone();
    }
    let Rref { reduced, pivots, .. } = aug.rref();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut sol = vec![field.zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        sol[pc] = reduced[(row, k)].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::PrimeField;
    use crate::{Rationals, Q};

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64(&Rationals::new(), rows).unwrap()
    }

    #[test]
    fn rref_identity() {
        let r = qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows() {
        let r = qm(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, qm(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_over_gf3() {
        // 2*row0 = (2, 4) = (2, 1) = row1 mod 3
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, Matrix::from_i64(&f, &[&[1, 2], &[0, 0]]).unwrap());
    }

    #[test]
    fn rref_normalizes_fractions() {
        let r = qm(&[&[2, 1], &[4, 3]]).rref();
        assert_eq!(r.reduced, qm(&[&[1, 0], &[0, 1]]));
        let r = qm(&[&[2, 1, 0]]).rref();
        assert_eq!(r.reduced.row(0)[1], Q::new(1.into(), 2.into()));
    }

    #[test]
    fn span_rank_examples() {
        let a = qm(&[&[0, 1], &[1, 0]]);
        let mats = a.powers(2);
        assert_eq!(span_rank(&mats).unwrap(), 2);
        assert_eq!(span_rank::<Rationals>(&[]).unwrap(), 0);
        let e0 = qm(&[&[1, 0], &[0, 0]]);
        let e1 = qm(&[&[0, 0], &[0, 1]]);
        assert_eq!(span_rank(&[e0, e1]).unwrap(), 2);
    }

    #[test]
    fn span_rank_rejects_mismatch() {
        let a = qm(&[&[1, 0], &[0, 1]]);
        let b = qm(&[&[1]]);
        assert!(matches!(span_rank(&[a, b]), Err(Error::Shape(_))));
    }

    #[test]
    fn kernel_of_projection() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_in_span() {
        let f = Rationals::new();
        let g = vec![
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(1)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)],
        ];
        let t = vec![f.from_i64(2), f.from_i64(3), f.from_i64(5)];
        assert_eq!(solve_combination(&f, &g, &t), Some(vec![f.from_i64(2), f.from_i64(3)]));
        let bad = vec![f.from_i64(1), f.from_i64(1), f.from_i64(0)];
        assert_eq!(solve_combination(&f, &g, &bad), None);
    }
}
