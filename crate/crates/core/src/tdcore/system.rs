use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

use super::pair::primitive_idempotents;

/// A tridiagonal system `(A; {E_i}; A*; {E*_i})` with its eigenvalue
/// sequences in the chosen standard orderings.
///
/// Values are only produced by [`super::build_system`] and the D4 action, so
/// every instance satisfies the idempotent algebra and tridiagonality
/// relations; irreducibility was certified when the pair was verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdSystem<F: Field> {
    field: F,
    n: usize,
    d: usize,
    a: Matrix<F>,
    astar: Matrix<F>,
    theta: Vec<F::Elem>,
    thetastar: Vec<F::Elem>,
    e: Vec<Matrix<F>>,
    estar: Vec<Matrix<F>>,
    rho: Vec<usize>,
}

impl<F: Field> TdSystem<F> {
    /// Builds the idempotents for the given eigenvalue orderings and checks
    /// every structural invariant.
    pub(crate) fn assemble(
        a: Matrix<F>,
        theta: Vec<F::Elem>,
        astar: Matrix<F>,
        thetastar: Vec<F::Elem>,
    ) -> Result<Self> {
        let e = primitive_idempotents(&theta, &a)?;
        let estar = primitive_idempotents(&thetastar, &astar)?;
        let rho = estar.iter().map(Matrix::rank).collect();
        let sys = TdSystem {
            field: a.field().clone(),
            n: a.rows(),
            d: theta.len().saturating_sub(1),
            a,
            astar,
            theta,
            thetastar,
            e,
            estar,
            rho,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Diameter.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn astar(&self) -> &Matrix<F> {
        &self.astar
    }

    pub fn theta(&self) -> &[F::Elem] {
        &self.theta
    }

    pub fn thetastar(&self) -> &[F::Elem] {
        &self.thetastar
    }

    pub fn e(&self) -> &[Matrix<F>] {
        &self.e
    }

    pub fn estar(&self) -> &[Matrix<F>] {
        &self.estar
    }

    /// Shape vector: `dim E*_i V` for each `i`.
    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    /// Swap the roles of `(A, {E_i})` and `(A*, {E*_i})`.
    pub fn star(&self) -> Self {
        TdSystem {
            field: self.field.clone(),
            n: self.n,
            d: self.d,
            a: self.astar.clone(),
            astar: self.a.clone(),
            theta: self.thetastar.clone(),
            thetastar: self.theta.clone(),
            e: self.estar.clone(),
            estar: self.e.clone(),
            rho: self.e.iter().map(Matrix::rank).collect(),
        }
    }

    /// Reverse the ordering of `{E*_i}`.
    pub fn down(&self) -> Self {
        let mut s = self.clone();
        s.estar.reverse();
        s.thetastar.reverse();
        s.rho.reverse();
        s
    }

    /// Reverse the ordering of `{E_i}`.
    pub fn double_down(&self) -> Self {
        let mut s = self.clone();
        s.e.reverse();
        s.theta.reverse();
        s
    }

    /// Re-checks the invariants: distinct eigenvalues, the idempotent algebra
    /// on both sides, and the tridiagonal vanishing `E_j A* E_i = 0`,
    /// `E*_j A E*_i = 0` for `|i - j| > 1`.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: String| Err(Error::invalid(what));
        if self.theta.len() != self.thetastar.len() {
            return fail(format!(
                "{} eigenvalues for A but {} for A*",
                self.theta.len(),
                self.thetastar.len()
            ));
        }
        for (name, op, vals, idem, other) in [
            ("A", &self.a, &self.theta, &self.e, &self.astar),
            ("A*", &self.astar, &self.thetastar, &self.estar, &self.a),
        ] {
            for i in 0..vals.len() {
                for j in 0..i {
                    if vals[i] == vals[j] {
                        return fail(format!("repeated eigenvalue {} of {name}", vals[i]));
                    }
                }
            }
            let id = Matrix::identity(&self.field, self.n);
            let mut sum = Matrix::zeros(&self.field, self.n, self.n);
            let mut weighted = Matrix::zeros(&self.field, self.n, self.n);
            for (th, ei) in vals.iter().zip(idem.iter()) {
                sum = sum.add(ei);
                weighted = weighted.add(&ei.scale(th));
            }
            if sum != id {
                return fail(format!("idempotents of {name} do not sum to I"));
            }
            if &weighted != op {
                return fail(format!("{name} is not the weighted sum of its idempotents"));
            }
            for (i, ei) in idem.iter().enumerate() {
                for (j, ej) in idem.iter().enumerate() {
                    let prod = ei.mul(ej);
                    let ok = if i == j { &prod == ei } else { prod.is_zero() };
                    if !ok {
                        return fail(format!("E_{i} E_{j} wrong for {name}"));
                    }
                    if i.abs_diff(j) > 1 && !ej.mul(other).mul(ei).is_zero() {
                        return fail(format!(
                            "tridiagonality fails for the idempotents of {name} at ({j}, {i})"
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
