use serde::Serialize;

use crate::exactla::{algebra_closure, multiplicative_closure, Field, Matrix, SubspaceBasis};
use crate::report::Verdict;

use super::system::TdSystem;

/// A violated vanishing `E*_i A^k E*_j = 0` (or its dual when `dual`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupertridViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub dual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupertridReport {
    pub triples_checked: usize,
    pub violations: Vec<SupertridViolation>,
}

impl SupertridReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::new("supertridiagonal", self.pass(), self)
    }
}

/// `E*_i A^k E*_j = 0` and `E_i A*^k E_j = 0` whenever `k < |i - j|`.
pub fn check_supertrid<F: Field>(sys: &TdSystem<F>) -> SupertridReport {
    let d = sys.d();
    let mut checked = 0;
    let mut violations = Vec::new();
    for (dual, idem, op) in [(false, sys.estar(), sys.a()), (true, sys.e(), sys.astar())] {
        let pows = op.powers(d);
        for i in 0..=d {
            for j in 0..=d {
                for (k, pk) in pows.iter().enumerate().take(i.abs_diff(j)) {
                    checked += 1;
                    if !idem[i].mul(pk).mul(&idem[j]).is_zero() {
                        violations.push(SupertridViolation { i, j, k, dual });
                    }
                }
            }
        }
    }
    SupertridReport {
        triples_checked: checked,
        violations,
    }
}

/// Instance data for the conjecture that `E*_0 T E*_0` is generated by
/// `E*_0 D E*_0`, `T` being the algebra generated by `A` and `A*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjectureProbe {
    pub generated: bool,
    /// dim of the algebra generated by `A`, `A*`.
    pub dim_algebra: usize,
    pub dim_e0_t_e0: usize,
    pub dim_subalgebra: usize,
}

impl ConjectureProbe {
    /// Reported as data; a negative instance is not a failed check.
    pub fn verdict(&self) -> Verdict {
        Verdict::new("conjecture_probe", true, self)
    }
}

pub fn probe_conjecture<F: Field>(sys: &TdSystem<F>) -> ConjectureProbe {
    let field = sys.field();
    let n = sys.n();
    let e0 = &sys.estar()[0];
    let algebra = algebra_closure(field, n, &[sys.a().clone(), sys.astar().clone()]);
    let corner = SubspaceBasis::spanned_by(
        field,
        n * n,
        algebra
            .as_matrices(n, n)
            .iter()
            .map(|t| e0.mul(t).mul(e0).into_entries()),
    );
    let gens: Vec<Matrix<F>> = sys
        .a()
        .powers(sys.d())
        .iter()
        .skip(1)
        .map(|p| e0.mul(p).mul(e0))
        .collect();
    let sub = multiplicative_closure(field, n, &gens, vec![e0.clone()]);
    ConjectureProbe {
        generated: corner.contains_all(&sub) && sub.dim() == corner.dim(),
        dim_algebra: algebra.dim(),
        dim_e0_t_e0: corner.dim(),
        dim_subalgebra: sub.dim(),
    }
}

/// Idempotent algebra of both sides, the standard-ordering count, and the
/// D4 relators evaluated on the system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub idempotents_a: bool,
    pub idempotents_astar: bool,
    pub orderings_a: usize,
    pub orderings_astar: usize,
    /// For `d ≥ 1`: exactly two orderings per side, each the reverse of the other.
    pub orderings_ok: bool,
    /// `(lhs, rhs, holds)` for each relator.
    pub relators: Vec<(String, String, bool)>,
}

impl StructureReport {
    pub fn pass(&self) -> bool {
        self.idempotents_a
            && self.idempotents_astar
            && self.orderings_ok
            && self.relators.iter().all(|r| r.2)
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::new("structure", self.pass(), self)
    }
}

fn idempotent_algebra<F: Field>(op: &Matrix<F>, theta: &[F::Elem], e: &[Matrix<F>]) -> bool {
    let field = op.field();
    let n = op.rows();
    let mut sum = Matrix::zeros(field, n, n);
    let mut weighted = Matrix::zeros(field, n, n);
    for (i, ei) in e.iter().enumerate() {
        sum = sum.add(ei);
        weighted = weighted.add(&ei.scale(&theta[i]));
        for (j, ej) in e.iter().enumerate() {
            let p = ei.mul(ej);
            let ok = if i == j { p == *ei } else { p.is_zero() };
            if !ok {
                return false;
            }
        }
    }
    sum == Matrix::identity(field, n) && weighted == *op
}

fn ordering_pair_ok<F: Field>(os: &[Vec<F::Elem>], d: usize) -> bool {
    if d == 0 {
        return os.len() == 1;
    }
    os.len() == 2 && os[0].iter().rev().eq(os[1].iter())
}

pub fn check_structure<F: Field>(sys: &TdSystem<F>) -> StructureReport {
    use super::d4::{apply_word, parse_word};
    use super::pair::{detect_standard_orderings, StandardOrderings};

    let count = |m: &Matrix<F>, n: &Matrix<F>| match detect_standard_orderings(m, n) {
        Ok(StandardOrderings::Found(os)) => os,
        _ => Vec::new(),
    };
    let oa = count(sys.a(), sys.astar());
    let oas = count(sys.astar(), sys.a());
    let d = sys.d();
    let relators = [
        ("**", ""),
        ("↓↓", ""),
        ("⇓⇓", ""),
        ("⇓*", "*↓"),
        ("↓*", "*⇓"),
        ("↓⇓", "⇓↓"),
    ]
    .into_iter()
    .map(|(l, r)| {
        let lhs = apply_word(sys, &parse_word(l).expect("relator word"));
        let rhs = apply_word(sys, &parse_word(r).expect("relator word"));
        let r = if r.is_empty() { "1" } else { r };
        (l.to_string(), r.to_string(), lhs == rhs)
    })
    .collect();
    StructureReport {
        idempotents_a: idempotent_algebra(sys.a(), sys.theta(), sys.e()),
        idempotents_astar: idempotent_algebra(sys.astar(), sys.thetastar(), sys.estar()),
        orderings_a: oa.len(),
        orderings_astar: oas.len(),
        orderings_ok: ordering_pair_ok::<F>(&oa, d) && ordering_pair_ok::<F>(&oas, d),
        relators,
    }
}
