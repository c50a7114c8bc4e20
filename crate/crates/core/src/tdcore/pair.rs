use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{
    algebra_closure, eigen_data, vector_closure, EigenData, EigenOutcome, Field, Matrix, Scalar,
    SubspaceBasis,
};

use super::system::TdSystem;

/// `E_i = ∏_{j≠i} (M - θ_j I) / (θ_i - θ_j)` for each listed eigenvalue.
pub fn primitive_idempotents<F: Field>(
    eigenvalues: &[F::Elem],
    m: &Matrix<F>,
) -> Result<Vec<Matrix<F>>> {
    if !m.is_square() {
        return Err(Error::Shape("idempotents of a non-square matrix".into()));
    }
    let field = m.field();
    let n = m.rows();
    eigenvalues
        .iter()
        .enumerate()
        .map(|(i, ti)| {
            let mut acc = Matrix::identity(field, n);
            for (j, tj) in eigenvalues.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = (ti.clone() - tj.clone())
                    .inv()
                    .ok_or_else(|| Error::invalid(format!("repeated eigenvalue {ti}")))?;
                acc = acc.mul(&m.shift(tj)).scale(&denom);
            }
            Ok(acc)
        })
        .collect()
}

/// Either every standard ordering of `M`'s eigenvalues relative to `N`, or a
/// description of why none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardOrderings<F: Field> {
    Found(Vec<Vec<F::Elem>>),
    NoStandardOrdering(String),
}

impl<F: Field> StandardOrderings<F> {
    pub fn found(self) -> Option<Vec<Vec<F::Elem>>> {
        match self {
            StandardOrderings::Found(o) => Some(o),
            StandardOrderings::NoStandardOrdering(_) => None,
        }
    }
}

/// Orderings `{V_i}` of the eigenspaces of `m` with `n V_i ⊆ V_{i-1} + V_i + V_{i+1}`.
///
/// Eigenspaces `i ≠ j` are joined when `F_j N F_i` or `F_i N F_j` is nonzero;
/// the standard orderings are the two traversals of this graph when it is a
/// simple path through every vertex. Orderings come back with the one whose
/// first eigenvalue is smaller in canonical order first.
pub fn detect_standard_orderings<F: Field>(
    m: &Matrix<F>,
    n: &Matrix<F>,
) -> Result<StandardOrderings<F>> {
    match eigen_data(m)? {
        EigenOutcome::Diagonalizable(data) => orderings_from_eigen(&data, m, n),
        _ => Err(Error::invalid(
            "standard orderings need a matrix diagonalizable over the field",
        )),
    }
}

pub(crate) fn orderings_from_eigen<F: Field>(
    data: &EigenData<F>,
    m: &Matrix<F>,
    n: &Matrix<F>,
) -> Result<StandardOrderings<F>> {
    if m.rows() != n.rows() || !n.is_square() {
        return Err(Error::Shape("operators of different sizes".into()));
    }
    let idem = primitive_idempotents(&data.eigenvalues, m)?;
    let k = idem.len();
    let vals = &data.eigenvalues;
    if k == 1 {
        return Ok(StandardOrderings::Found(vec![vals.clone()]));
    }
    let nf: Vec<Matrix<F>> = idem.iter().map(|f| n.mul(f)).collect();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in (i + 1)..k {
            if !idem[j].mul(&nf[i]).is_zero() || !idem[i].mul(&nf[j]).is_zero() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    if let Some(v) = (0..k).find(|&v| adj[v].len() > 2) {
        return Ok(StandardOrderings::NoStandardOrdering(format!(
            "eigenvalue {} is coupled to {} others",
            vals[v],
            adj[v].len()
        )));
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let ends: Vec<usize> = (0..k).filter(|&v| adj[v].len() == 1).collect();
    if edges != k - 1 || ends.len() != 2 {
        return Ok(StandardOrderings::NoStandardOrdering(if edges >= k {
            "the coupling graph has a cycle".into()
        } else {
            "the coupling graph is disconnected".into()
        }));
    }
    let walk = |start: usize| -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
            prev = cur;
            cur = next;
            path.push(cur);
        }
        path
    };
    let path = walk(ends[0]);
    if path.len() != k {
        return Ok(StandardOrderings::NoStandardOrdering(
            "the coupling graph is disconnected".into(),
        ));
    }
    let fwd: Vec<F::Elem> = path.iter().map(|&i| vals[i].clone()).collect();
    let mut rev = fwd.clone();
    rev.reverse();
    let mut out = vec![fwd, rev];
    out.sort_by(|x, y| x[0].canonical_cmp(&y[0]));
    Ok(StandardOrderings::Found(out))
}

/// Result of the layered irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility<F: Field> {
    Irreducible,
    /// Basis (RREF rows) of a proper nonzero common invariant subspace.
    Reducible(Vec<Vec<F::Elem>>),
    Undetermined,
}

/// Decides whether `A`, `A*` have a common invariant subspace other than 0 and V.
///
/// Layers, in order:
/// 1. the algebra generated by `A`, `A*` is all of `End(V)`: irreducible;
/// 2. the closure of some eigenvector of `A` or `A*` is proper: reducible;
/// 3. every eigenspace of `A` (or of `A*`) is a line and all their closures
///    are full: irreducible;
/// 4. Norton's test on the elements `A - θI`, `A* - θ*I` and the basis of the
///    generated algebra whose kernel is a line.
///
/// Anything not settled by these is reported as undetermined.
pub fn check_irreducible<F: Field>(a: &Matrix<F>, astar: &Matrix<F>) -> Result<Irreducibility<F>> {
    if !a.is_square() || a.rows() != astar.rows() || a.cols() != astar.cols() {
        return Err(Error::Shape("irreducibility needs two square matrices of equal size".into()));
    }
    if a.field() != astar.field() {
        return Err(Error::FieldMismatch("irreducibility".into()));
    }
    let eig_a = eigen_data(a)?.data();
    let eig_s = eigen_data(astar)?.data();
    irreducibility(a, astar, eig_a.as_ref(), eig_s.as_ref())
}

pub(crate) fn irreducibility<F: Field>(
    a: &Matrix<F>,
    astar: &Matrix<F>,
    eig_a: Option<&EigenData<F>>,
    eig_s: Option<&EigenData<F>>,
) -> Result<Irreducibility<F>> {
    let field = a.field();
    let n = a.rows();
    let gens = [a.clone(), astar.clone()];
    let algebra = algebra_closure(field, n, &gens);
    if algebra.is_full() {
        return Ok(Irreducibility::Irreducible);
    }

    let proper = |span: &SubspaceBasis<F>| span.dim() < n;
    let mut line_sides_full = [false, false];
    for (side, eig) in [eig_a, eig_s].into_iter().enumerate() {
        let Some(eig) = eig else { continue };
        let mut all_lines_full = true;
        for basis in &eig.eigenspaces {
            for v in basis {
                let span = vector_closure(&gens, v);
                if proper(&span) {
                    return Ok(Irreducibility::Reducible(rows_of(&span)));
                }
            }
            if basis.len() != 1 {
                all_lines_full = false;
            }
        }
        line_sides_full[side] = all_lines_full;
    }
    if line_sides_full.iter().any(|&b| b) {
        return Ok(Irreducibility::Irreducible);
    }

    let mut candidates: Vec<Matrix<F>> = Vec::new();
    for (op, eig) in [(a, eig_a), (astar, eig_s)] {
        if let Some(eig) = eig {
            candidates.extend(eig.eigenvalues.iter().map(|t| op.shift(t)));
        }
    }
    candidates.extend(algebra.as_matrices(n, n));
    let gens_t = [a.transpose(), astar.transpose()];
    for x in &candidates {
        let ker = x.kernel();
        if ker.len() != 1 {
            continue;
        }
        let span = vector_closure(&gens, &ker[0]);
        if proper(&span) {
            return Ok(Irreducibility::Reducible(rows_of(&span)));
        }
        let ker_t = x.transpose().kernel();
        let dual = vector_closure(&gens_t, &ker_t[0]);
        if !proper(&dual) {
            return Ok(Irreducibility::Irreducible);
        }
        // the annihilator of an invariant subspace of the transposes is invariant
        let rows: Vec<F::Elem> = dual.vectors().flat_map(|v| v.iter().cloned()).collect();
        let ann = Matrix::from_flat(field, dual.dim(), n, rows)?.kernel();
        let ann = SubspaceBasis::spanned_by(field, n, ann);
        return Ok(Irreducibility::Reducible(rows_of(&ann)));
    }
    Ok(Irreducibility::Undetermined)
}

fn rows_of<F: Field>(s: &SubspaceBasis<F>) -> Vec<Vec<F::Elem>> {
    s.vectors().map(<[_]>::to_vec).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    Diagonalizable,
    TridiagA,
    TridiagAstar,
    Irreducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: String,
}

/// Outcome of checking the four tridiagonal pair axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict<F: Field> {
    pub accepted: bool,
    pub diameter: Option<usize>,
    /// `dim E*_i V` along the first standard ordering of `A*`, on acceptance.
    pub shape: Option<Vec<usize>>,
    pub failures: Vec<AxiomFailure>,
    /// Standard orderings of the eigenvalues of `A` (w.r.t. `A*`) and of `A*`
    /// (w.r.t. `A`), when they exist.
    pub orderings_a: Vec<Vec<F::Elem>>,
    pub orderings_astar: Vec<Vec<F::Elem>>,
}

impl<F: Field> AxiomVerdict<F> {
    pub fn failed(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

fn describe_eigen<F: Field>(name: &str, outcome: &EigenOutcome<F>) -> Option<String> {
    match outcome {
        EigenOutcome::Diagonalizable(_) => None,
        EigenOutcome::NotDiagonalizable => Some(format!("{name} is not diagonalizable")),
        EigenOutcome::EigenvalueOutsideField => Some(format!(
            "the characteristic polynomial of {name} does not split over the field"
        )),
    }
}

/// Checks diagonalizability, both tridiagonality conditions, and
/// irreducibility. An undetermined irreducibility verdict rejects the pair.
pub fn verify_tridiagonal_pair<F: Field>(
    a: &Matrix<F>,
    astar: &Matrix<F>,
) -> Result<AxiomVerdict<F>> {
    if a.rows() == 0 {
        return Err(Error::invalid("V must have positive dimension"));
    }
    if !a.is_square() || a.rows() != astar.rows() || a.cols() != astar.cols() {
        return Err(Error::Shape(format!(
            "A is {}x{}, A* is {}x{}",
            a.rows(),
            a.cols(),
            astar.rows(),
            astar.cols()
        )));
    }
    if a.field() != astar.field() {
        return Err(Error::FieldMismatch("A and A* over different fields".into()));
    }
    let mut failures = Vec::new();
    let out_a = eigen_data(a)?;
    let out_s = eigen_data(astar)?;
    for (name, out) in [("A", &out_a), ("A*", &out_s)] {
        if let Some(w) = describe_eigen(name, out) {
            failures.push(AxiomFailure {
                axiom: Axiom::Diagonalizable,
                witness: w,
            });
        }
    }
    let eig_a = out_a.clone().data();
    let eig_s = out_s.clone().data();

    let mut orderings_a = Vec::new();
    let mut orderings_astar = Vec::new();
    for (axiom, op, other, eig, slot) in [
        (Axiom::TridiagA, a, astar, &eig_a, &mut orderings_a),
        (Axiom::TridiagAstar, astar, a, &eig_s, &mut orderings_astar),
    ] {
        let Some(eig) = eig else { continue };
        match orderings_from_eigen(eig, op, other)? {
            StandardOrderings::Found(o) => *slot = o,
            StandardOrderings::NoStandardOrdering(w) => failures.push(AxiomFailure { axiom, witness: w }),
        }
    }
    if let (Some(ea), Some(es)) = (&eig_a, &eig_s) {
        if ea.eigenvalues.len() != es.eigenvalues.len() {
            failures.push(AxiomFailure {
                axiom: Axiom::TridiagAstar,
                witness: format!(
                    "A has {} eigenspaces but A* has {}",
                    ea.eigenvalues.len(),
                    es.eigenvalues.len()
                ),
            });
        }
    }

    match irreducibility(a, astar, eig_a.as_ref(), eig_s.as_ref())? {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible(w) => failures.push(AxiomFailure {
            axiom: Axiom::Irreducible,
            witness: format!("invariant subspace of dimension {}: {}", w.len(), fmt_rows(&w)),
        }),
        Irreducibility::Undetermined => failures.push(AxiomFailure {
            axiom: Axiom::Irreducible,
            witness: "undetermined".into(),
        }),
    }

    let accepted = failures.is_empty();
    let (diameter, shape) = if accepted {
        let eig_s = eig_s.as_ref().expect("accepted implies diagonalizable");
        let shape = orderings_astar[0]
            .iter()
            .map(|t| {
                let k = eig_s.eigenvalues.iter().position(|x| x == t).expect("eigenvalue");
                eig_s.eigenspaces[k].len()
            })
            .collect();
        (Some(orderings_a[0].len() - 1), Some(shape))
    } else {
        (None, None)
    };
    Ok(AxiomVerdict {
        accepted,
        diameter,
        shape,
        failures,
        orderings_a,
        orderings_astar,
    })
}

fn fmt_rows<S: Scalar>(rows: &[Vec<S>]) -> String {
    let parts: Vec<String> = rows
        .iter()
        .map(|r| {
            let xs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("({})", xs.join(", "))
        })
        .collect();
    format!("span{{{}}}", parts.join(", "))
}

/// Verifies the pair and assembles the tridiagonal system for the selected
/// standard orderings (index 0 or 1, as returned by the ordering detection).
pub fn build_system<F: Field>(
    a: &Matrix<F>,
    astar: &Matrix<F>,
    choice_a: usize,
    choice_astar: usize,
) -> Result<TdSystem<F>> {
    let verdict = verify_tridiagonal_pair(a, astar)?;
    if !verdict.accepted {
        let reasons: Vec<String> = verdict
            .failures
            .iter()
            .map(|f| format!("{:?}: {}", f.axiom, f.witness))
            .collect();
        return Err(Error::invalid(format!(
            "not a tridiagonal pair ({})",
            reasons.join("; ")
        )));
    }
    build_from_verdict(a, astar, &verdict, choice_a, choice_astar)
}

pub(crate) fn build_from_verdict<F: Field>(
    a: &Matrix<F>,
    astar: &Matrix<F>,
    verdict: &AxiomVerdict<F>,
    choice_a: usize,
    choice_astar: usize,
) -> Result<TdSystem<F>> {
    let pick = |os: &[Vec<F::Elem>], k: usize, name: &str| {
        os.get(k).cloned().ok_or_else(|| {
            Error::invalid(format!(
                "ordering index {k} for {name} out of range ({} available)",
                os.len()
            ))
        })
    };
    let theta = pick(&verdict.orderings_a, choice_a, "A")?;
    let thetastar = pick(&verdict.orderings_astar, choice_astar, "A*")?;
    TdSystem::assemble(a.clone(), theta, astar.clone(), thetastar)
}
