//! Tridiagonal pairs and systems: axiom verification, standard orderings,
//! primitive idempotents, the D4 action, and system-level checks.

mod checks;
mod d4;
mod pair;
mod system;

pub use checks::{
    check_structure, check_supertrid, probe_conjecture, ConjectureProbe, StructureReport,
    SupertridReport, SupertridViolation,
};
pub use d4::{apply_word, d4_orbit, d4_relative, parse_word, D4Element, D4Letter};
pub use pair::{
    build_system, check_irreducible, detect_standard_orderings, primitive_idempotents,
    verify_tridiagonal_pair, Axiom, AxiomFailure, AxiomVerdict, Irreducibility,
    StandardOrderings,
};
pub(crate) use pair::build_from_verdict;
pub use system::TdSystem;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Field, Matrix, PrimeField, Scalar};
    use crate::{QMatrix, Rationals};

    fn q() -> Rationals {
        Rationals::new()
    }

    fn qm(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_i64(&q(), rows).unwrap()
    }

    fn pauli() -> (QMatrix, QMatrix) {
        (qm(&[&[0, 1], &[1, 0]]), qm(&[&[1, 0], &[0, -1]]))
    }

    fn kraw2<F: Field>(f: &F) -> (Matrix<F>, Matrix<F>) {
        (
            Matrix::from_i64(f, &[&[0, 2, 0], &[1, 0, 1], &[0, 2, 0]]).unwrap(),
            Matrix::from_i64(f, &[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]).unwrap(),
        )
    }

    fn vals<F: Field>(f: &F, xs: &[i64]) -> Vec<F::Elem> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    /// Index of the standard ordering starting with `first`.
    fn choice<F: Field>(os: &[Vec<F::Elem>], first: &F::Elem) -> usize {
        os.iter().position(|o| &o[0] == first).unwrap()
    }

    #[test]
    fn orderings_pauli() {
        let (a, s) = pauli();
        let os = detect_standard_orderings(&a, &s).unwrap().found().unwrap();
        assert_eq!(os, vec![vals(&q(), &[-1, 1]), vals(&q(), &[1, -1])]);
    }

    #[test]
    fn orderings_krawtchouk() {
        let f = q();
        let (a, s) = kraw2(&f);
        let os = detect_standard_orderings(&s, &a).unwrap().found().unwrap();
        assert_eq!(os, vec![vals(&f, &[-2, 0, 2]), vals(&f, &[2, 0, -2])]);
    }

    #[test]
    fn orderings_single_eigenspace() {
        let os = detect_standard_orderings(&qm(&[&[1, 0], &[0, 1]]), &qm(&[&[1, 2], &[3, 4]]))
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(os.len(), 1);
    }

    #[test]
    fn orderings_rejects_branching() {
        // N couples eigenvalue 0 to all of 1, 2, 3
        let m = qm(&[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 3]]);
        let n = qm(&[&[0, 1, 1, 1], &[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0]]);
        assert!(matches!(
            detect_standard_orderings(&m, &n).unwrap(),
            StandardOrderings::NoStandardOrdering(_)
        ));
        // cycle on three vertices
        let m = qm(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let n = qm(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert!(matches!(
            detect_standard_orderings(&m, &n).unwrap(),
            StandardOrderings::NoStandardOrdering(_)
        ));
    }

    #[test]
    fn idempotent_examples() {
        let f = q();
        let e = primitive_idempotents(&vals(&f, &[1, -1]), &qm(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!(e, vec![qm(&[&[1, 0], &[0, 0]]), qm(&[&[0, 0], &[0, 1]])]);

        let half = crate::Q::new(1.into(), 2.into());
        let e = primitive_idempotents(&vals(&f, &[1, -1]), &qm(&[&[0, 1], &[1, 0]])).unwrap();
        let h = |s: i64| half.clone() * f.from_i64(s);
        assert_eq!(
            e[0],
            Matrix::from_rows(&f, vec![vec![h(1), h(1)], vec![h(1), h(1)]]).unwrap()
        );
        assert_eq!(
            e[1],
            Matrix::from_rows(&f, vec![vec![h(1), h(-1)], vec![h(-1), h(1)]]).unwrap()
        );

        let e = primitive_idempotents(&vals(&f, &[5]), &qm(&[&[5]])).unwrap();
        assert_eq!(e, vec![qm(&[&[1]])]);

        assert!(primitive_idempotents(&vals(&f, &[1, 1]), &qm(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let (a, s) = pauli();
        assert_eq!(check_irreducible(&a, &s).unwrap(), Irreducibility::Irreducible);

        let id = qm(&[&[1, 0], &[0, 1]]);
        match check_irreducible(&id, &id).unwrap() {
            Irreducibility::Reducible(w) => assert_eq!(w, vec![vals(&q(), &[1, 0])]),
            other => panic!("{other:?}"),
        }
        match check_irreducible(&qm(&[&[1, 0], &[0, 2]]), &qm(&[&[3, 0], &[0, 4]])).unwrap() {
            Irreducibility::Reducible(w) => assert_eq!(w, vec![vals(&q(), &[1, 0])]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn irreducibility_witness_is_invariant() {
        // block diagonal sum of two copies of a pauli pair
        let a = qm(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let s = qm(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
        let Irreducibility::Reducible(w) = check_irreducible(&a, &s).unwrap() else {
            panic!("expected reducible");
        };
        assert!(!w.is_empty() && w.len() < 4);
        let span = crate::exactla::SubspaceBasis::spanned_by(&q(), 4, w.clone());
        for v in &w {
            assert!(span.contains(&a.mul_vec(v)));
            assert!(span.contains(&s.mul_vec(v)));
        }
    }

    #[test]
    fn verify_pauli() {
        let (a, s) = pauli();
        let v = verify_tridiagonal_pair(&a, &s).unwrap();
        assert!(v.accepted);
        assert_eq!(v.diameter, Some(1));
        assert_eq!(v.shape, Some(vec![1, 1]));
    }

    #[test]
    fn verify_nilpotent_rejected() {
        let v = verify_tridiagonal_pair(&qm(&[&[0, 1], &[0, 0]]), &pauli().1).unwrap();
        assert!(!v.accepted);
        assert!(v.failed(Axiom::Diagonalizable));
    }

    #[test]
    fn verify_krawtchouk_mod_13() {
        let f = PrimeField::new(13).unwrap();
        let (a, s) = kraw2(&f);
        let v = verify_tridiagonal_pair(&a, &s).unwrap();
        assert!(v.accepted, "{:?}", v.failures);
        assert_eq!(v.diameter, Some(2));
        assert_eq!(v.shape, Some(vec![1, 1, 1]));
    }

    #[test]
    fn verify_rejects_empty_and_mismatched() {
        let empty = Matrix::zeros(&q(), 0, 0);
        assert!(verify_tridiagonal_pair(&empty, &empty).is_err());
        assert!(verify_tridiagonal_pair(&qm(&[&[1]]), &pauli().0).is_err());
    }

    #[test]
    fn verify_scalar_pair_of_size_two_rejected() {
        let id = qm(&[&[1, 0], &[0, 1]]);
        let v = verify_tridiagonal_pair(&id, &id.scale(&q().from_i64(3))).unwrap();
        assert!(!v.accepted);
        assert!(v.failed(Axiom::Irreducible));
    }

    #[test]
    fn build_pauli_systems() {
        let f = q();
        let (a, s) = pauli();
        let v = verify_tridiagonal_pair(&a, &s).unwrap();
        let one = f.one();
        let ca = choice::<Rationals>(&v.orderings_a, &one);
        let cs = choice::<Rationals>(&v.orderings_astar, &one);
        let sys = build_system(&a, &s, ca, cs).unwrap();
        assert_eq!(sys.theta(), vals(&f, &[1, -1]).as_slice());
        assert_eq!(sys.thetastar(), vals(&f, &[1, -1]).as_slice());

        let flipped = build_system(&a, &s, 1 - ca, cs).unwrap();
        assert_eq!(flipped, sys.double_down());
        assert!(build_system(&a, &s, 2, 0).is_err());
    }

    #[test]
    fn build_d0_system() {
        let sys = build_system(&qm(&[&[2]]), &qm(&[&[3]]), 0, 0).unwrap();
        assert_eq!(sys.d(), 0);
        assert_eq!(sys.e(), &[qm(&[&[1]])]);
        assert_eq!(sys.estar(), &[qm(&[&[1]])]);
        let orbit = d4_orbit(&sys);
        let mut distinct: Vec<&TdSystem<Rationals>> = Vec::new();
        for (_, s) in &orbit {
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        assert!(distinct.len() <= 2);
    }

    #[test]
    fn d4_relators_fix_the_system() {
        let f = q();
        let (a, s) = kraw2(&f);
        let sys = build_system(&a, &s, 0, 0).unwrap();
        for w in ["**", "↓↓", "⇓⇓"] {
            assert_eq!(apply_word(&sys, &parse_word(w).unwrap()), sys, "{w}");
        }
        let lhs = apply_word(&sys, &parse_word("⇓*").unwrap());
        let rhs = apply_word(&sys, &parse_word("*↓").unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(d4_relative(&sys, D4Element::IDENTITY), sys);
        for (_, rel) in d4_orbit(&sys) {
            rel.validate().unwrap();
        }
    }

    #[test]
    fn shape_reverses_under_down() {
        let f = q();
        let (a, s) = kraw2(&f);
        let sys = build_system(&a, &s, 0, 0).unwrap();
        let mut r = sys.rho().to_vec();
        r.reverse();
        assert_eq!(sys.down().rho(), r.as_slice());
    }

    #[test]
    fn supertrid_examples() {
        let (a, s) = pauli();
        let sys = build_system(&a, &s, 0, 0).unwrap();
        let rep = check_supertrid(&sys);
        assert!(rep.pass());
        // k = 0 with |i - j| = 1, both orders, both dualities
        assert_eq!(rep.triples_checked, 4);

        let f = q();
        let (a, s) = kraw2(&f);
        let sys = build_system(&a, &s, 0, 0).unwrap();
        assert!(sys.estar()[0].mul(sys.a()).mul(&sys.estar()[2]).is_zero());
        assert!(check_supertrid(&sys).pass());
    }

    #[test]
    fn conjecture_probe_examples() {
        let (a, s) = pauli();
        let p = probe_conjecture(&build_system(&a, &s, 0, 0).unwrap());
        assert!(p.generated);
        assert_eq!((p.dim_e0_t_e0, p.dim_subalgebra), (1, 1));

        let p = probe_conjecture(&build_system(&qm(&[&[2]]), &qm(&[&[3]]), 0, 0).unwrap());
        assert!(p.generated);
        assert_eq!((p.dim_e0_t_e0, p.dim_subalgebra), (1, 1));

        let f = q();
        let (a, s) = kraw2(&f);
        assert!(probe_conjecture(&build_system(&a, &s, 0, 0).unwrap()).generated);
    }

    #[test]
    fn eigenvalue_check_over_prime_detects_collision() {
        // mod 3, the Krawtchouk d=2 eigenvalues 2, 0, -2 collapse to 2, 0, 1: still distinct,
        // but mod 2 they collide
        let f = PrimeField::new(2).unwrap();
        let (a, s) = kraw2(&f);
        let v = verify_tridiagonal_pair(&a, &s).unwrap();
        assert!(!v.accepted);
        assert!(f.from_i64(2).is_zero());
    }
}
