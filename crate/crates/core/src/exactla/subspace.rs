use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// A subspace of `K^m` stored as the nonzero rows of its reduced row-echelon
/// form. Two subspaces are equal iff their bases are equal rowwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    ambient_dim: usize,
    // (pivot column, row), sorted by pivot
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn new(field: &F, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field: field.clone(),
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn spanned_by<I>(field: &F, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let mut s = Self::new(field, ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of matrices, each flattened row-major.
    pub fn of_matrices<'a, I>(field: &F, ambient_dim: usize, mats: I) -> Self
    where
        I: IntoIterator<Item = &'a Matrix<F>>,
        F: 'a,
    {
        Self::spanned_by(field, ambient_dim, mats.into_iter().map(|m| m.entries().to_vec()))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Remainder of `v` after eliminating every pivot of the basis. Zero iff `v`
    /// lies in the subspace; linear in `v` and zero on the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient_dim, "vector length vs ambient dimension");
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            for (k, x) in row.iter().enumerate().skip(*p) {
                if !x.is_zero() {
                    let cur = w[k].clone();
                    w[k] = cur - c.clone() * x.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_all(&self, other: &Self) -> bool {
        other.vectors().all(|v| self.contains(v))
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut().skip(p) {
            *x = x.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (k, x) in w.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    let cur = row[k].clone();
                    row[k] = cur - c.clone() * x.clone();
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        true
    }

    pub fn extend_from(&mut self, other: &Self) {
        for v in other.vectors() {
            self.insert(v.to_vec());
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.extend_from(other);
        s
    }

    pub fn same_space(&self, other: &Self) -> bool {
        self == other
    }

    /// Basis rows reshaped as `rows x cols` matrices.
    pub fn as_matrices(&self, rows: usize, cols: usize) -> Vec<Matrix<F>> {
        self.vectors()
            .map(|v| Matrix::from_flat(&self.field, rows, cols, v.to_vec()).expect("reshape"))
            .collect()
    }
}
