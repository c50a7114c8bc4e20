//! The polynomial families `τ_i, η_i, τ*_i, η*_i` and the basis statements
//! built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{span_rank, Field, Matrix, Polynomial, SubspaceBasis};
use crate::report::Verdict;
use crate::tdcore::TdSystem;

/// `τ_i = ∏_{h<i} (x - θ_h)`, `η_i = ∏_{h<i} (x - θ_{d-h})`, and the same
/// with the dual eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily<F: Field> {
    pub tau: Vec<Polynomial<F>>,
    pub eta: Vec<Polynomial<F>>,
    pub taustar: Vec<Polynomial<F>>,
    pub etastar: Vec<Polynomial<F>>,
}

fn prefix_products<F: Field>(field: &F, roots: &[F::Elem]) -> Vec<Polynomial<F>> {
    (0..roots.len())
        .map(|i| Polynomial::from_roots(field, &roots[..i]))
        .collect()
}

pub fn build_poly_family<F: Field>(sys: &TdSystem<F>) -> PolyFamily<F> {
    let field = sys.field();
    let rev = |v: &[F::Elem]| v.iter().rev().cloned().collect::<Vec<_>>();
    PolyFamily {
        tau: prefix_products(field, sys.theta()),
        eta: prefix_products(field, &rev(sys.theta())),
        taustar: prefix_products(field, sys.thetastar()),
        etastar: prefix_products(field, &rev(sys.thetastar())),
    }
}

pub fn eval_at_matrix<F: Field>(p: &Polynomial<F>, m: &Matrix<F>) -> Matrix<F> {
    p.eval_matrix(m)
}

/// A failed identity, named by what it expands and the index it failed at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, identity: &'static str, i: usize, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(IdentityFailure { identity, i });
        }
    }
}

/// Expansions between `{τ_i(A)}`, `{η_i(A)}` and `{E_i}`, checked as exact
/// matrix equalities for every `i`:
///
/// * `τ_i(A) = Σ_{j≥i} τ_i(θ_j) E_j`
/// * `E_i = Σ_{j≥i} η_{d-j}(θ_i) τ_j(A) / (τ_i(θ_i) η_{d-i}(θ_i))`
/// * `η_i(A) = Σ_{j≤d-i} η_i(θ_j) E_j`
/// * `E_i = Σ_{j≥d-i} τ_{d-j}(θ_i) η_j(A) / (τ_i(θ_i) η_{d-i}(θ_i))`
/// * `E_i = τ_i(A) η_{d-i}(A) / (τ_i(θ_i) η_{d-i}(θ_i))`
///
/// plus the polynomial identity `τ_i η_{d-i} = Σ_{j≥i} η_{d-j}(θ_i) τ_j`.
pub fn check_idempotent_expansions<F: Field>(sys: &TdSystem<F>) -> IdentityReport {
    let field = sys.field();
    let n = sys.n();
    let d = sys.d();
    let th = sys.theta();
    let e = sys.e();
    let fam = build_poly_family(sys);
    let tau_a: Vec<Matrix<F>> = fam.tau.iter().map(|p| p.eval_matrix(sys.a())).collect();
    let eta_a: Vec<Matrix<F>> = fam.eta.iter().map(|p| p.eval_matrix(sys.a())).collect();
    let zero = || Matrix::zeros(field, n, n);
    let mut rep = IdentityReport {
        checked: 0,
        failures: Vec::new(),
    };
    for i in 0..=d {
        let rhs = (i..=d).fold(zero(), |acc, j| acc.add(&e[j].scale(&fam.tau[i].eval(&th[j]))));
        rep.record("tau_in_idempotents", i, rhs == tau_a[i]);

        let rhs = (0..=d - i).fold(zero(), |acc, j| acc.add(&e[j].scale(&fam.eta[i].eval(&th[j]))));
        rep.record("eta_in_idempotents", i, rhs == eta_a[i]);

        let norm = fam.tau[i].eval(&th[i]) * fam.eta[d - i].eval(&th[i]);
        let Some(inv) = field.div(field.one(), &norm) else {
            rep.record("normalizer_nonzero", i, false);
            continue;
        };

        let rhs = (i..=d).fold(zero(), |acc, j| {
            acc.add(&tau_a[j].scale(&fam.eta[d - j].eval(&th[i])))
        });
        rep.record("idempotent_in_tau", i, rhs.scale(&inv) == e[i]);

        let rhs = (d - i..=d).fold(zero(), |acc, j| {
            acc.add(&eta_a[j].scale(&fam.tau[d - j].eval(&th[i])))
        });
        rep.record("idempotent_in_eta", i, rhs.scale(&inv) == e[i]);

        let prod = tau_a[i].mul(&eta_a[d - i]).scale(&inv);
        rep.record("idempotent_as_product", i, prod == e[i]);

        let lhs = fam.tau[i].mul(&fam.eta[d - i]);
        let rhs = (i..=d).fold(Polynomial::zero(field), |acc, j| {
            acc.add(&fam.tau[j].scale(&fam.eta[d - j].eval(&th[i])))
        });
        rep.record("tau_eta_polynomial", i, lhs == rhs);
    }
    rep
}

fn span<F: Field>(field: &F, n: usize, mats: &[&Matrix<F>]) -> SubspaceBasis<F> {
    SubspaceBasis::of_matrices(field, n * n, mats.iter().copied())
}

fn tau_basis_statements<F: Field>(sys: &TdSystem<F>, rep: &mut IdentityReport, mirrored: bool) {
    let field = sys.field();
    let n = sys.n();
    let d = sys.d();
    let fam = build_poly_family(sys);
    let tau_a: Vec<Matrix<F>> = fam.tau.iter().map(|p| p.eval_matrix(sys.a())).collect();
    let pows = sys.a().powers(d);
    let e = sys.e();
    let (n1, n2, n3) = if mirrored {
        ("eta_powers_span", "eta_idempotents_span", "eta_intersection")
    } else {
        ("tau_powers_span", "tau_idempotents_span", "tau_intersection")
    };
    for i in 0..=d {
        let low_pow = span(field, n, &pows[..=i].iter().collect::<Vec<_>>());
        let low_tau = span(field, n, &tau_a[..=i].iter().collect::<Vec<_>>());
        rep.record(n1, i, low_pow.same_space(&low_tau));

        let high_e = span(field, n, &e[i..].iter().collect::<Vec<_>>());
        let high_tau = span(field, n, &tau_a[i..].iter().collect::<Vec<_>>());
        rep.record(n2, i, high_e.same_space(&high_tau));

        let sum_dim = low_pow.sum(&high_e).dim();
        let meet_dim = low_pow.dim() + high_e.dim() - sum_dim;
        let t = tau_a[i].entries();
        rep.record(n3, i, meet_dim == 1 && low_pow.contains(t) && high_e.contains(t) && !tau_a[i].is_zero());
    }
}

/// Span statements for `{A^h}`, `{E_h}` and `{τ_h(A)}` at every `i`, and
/// their `η` mirrors obtained by running the same statements on `Φ^⇓`.
pub fn check_taubasis<F: Field>(sys: &TdSystem<F>) -> IdentityReport {
    let mut rep = IdentityReport {
        checked: 0,
        failures: Vec::new(),
    };
    tau_basis_statements(sys, &mut rep, false);
    tau_basis_statements(&sys.double_down(), &mut rep, true);
    rep
}

/// Whether `{I, A, .., A^n} ∪ {E_i : i ∉ Δ}` is a basis of the algebra
/// generated by `A` (i.e. has rank `d + 1`).
pub fn check_basis_replacement<F: Field>(
    sys: &TdSystem<F>,
    delta: &[usize],
    n: usize,
) -> Result<bool> {
    let d = sys.d();
    if delta.len() != n + 1 {
        return Err(Error::invalid(format!(
            "|Δ| = {} but n + 1 = {}",
            delta.len(),
            n + 1
        )));
    }
    if let Some(&bad) = delta.iter().find(|&&i| i > d) {
        return Err(Error::invalid(format!("index {bad} exceeds d = {d}")));
    }
    let mut sorted = delta.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != delta.len() {
        return Err(Error::invalid("Δ has repeated indices"));
    }
    let mut mats = sys.a().powers(n);
    mats.extend((0..=d).filter(|i| !delta.contains(i)).map(|i| sys.e()[i].clone()));
    Ok(span_rank(&mats)? == d + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplacementReport {
    pub subsets_checked: usize,
    /// Subsets (as index lists) for which the replacement is not a basis.
    pub failures: Vec<Vec<usize>>,
}

impl ReplacementReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`check_basis_replacement`] for every nonempty `Δ ⊆ {0..d}`.
pub fn check_basis_replacement_all<F: Field>(sys: &TdSystem<F>) -> ReplacementReport {
    let d = sys.d();
    assert!(d < 20, "exhaustive subset enumeration");
    let mut rep = ReplacementReport {
        subsets_checked: 0,
        failures: Vec::new(),
    };
    for mask in 1u32..(1 << (d + 1)) {
        let delta: Vec<usize> = (0..=d).filter(|i| mask & (1 << i) != 0).collect();
        rep.subsets_checked += 1;
        let ok = check_basis_replacement(sys, &delta, delta.len() - 1).unwrap_or(false);
        if !ok {
            rep.failures.push(delta);
        }
    }
    rep
}

pub fn verdicts<F: Field>(sys: &TdSystem<F>) -> Vec<Verdict> {
    let expansions = check_idempotent_expansions(sys);
    let tb = check_taubasis(sys);
    let rep = check_basis_replacement_all(sys);
    vec![
        Verdict::new("poly.idempotent_expansions", expansions.pass(), &expansions),
        Verdict::new("poly.tau_eta_bases", tb.pass(), &tb),
        Verdict::new("poly.basis_replacement", rep.pass(), &rep),
    ]
}
