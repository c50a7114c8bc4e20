use proptest::prelude::*;

use tdlab::catalog::{self, AnyPair, Pair};
use tdlab::exactla::{char_poly, char_poly_by_minors, solve_combination, Scalar};
use tdlab::tensorspace::{transpose_dd, TensorElement};
use tdlab::{Field, Matrix, PrimeField, Rationals, Q};

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rationals>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), rows * cols).prop_map(move |xs| {
        let entries = xs.into_iter().map(|(n, d)| q(n, d)).collect();
        Matrix::from_flat(&Rationals::new(), rows, cols, entries).unwrap()
    })
}

fn square_rational(max: usize) -> impl Strategy<Value = Matrix<Rationals>> {
    (1..=max).prop_flat_map(|n| rational_matrix(n, n))
}

fn prime_matrix(p: u64, n: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
    let f = PrimeField::new(p).unwrap();
    prop::collection::vec(0..p, n * n).prop_map(move |xs| {
        Matrix::from_flat(&f, n, n, xs.into_iter().map(|x| f.elem(x)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rref_is_idempotent(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| rational_matrix(r, c))) {
        let once = m.rref();
        let twice = once.reduced.rref();
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.rank, twice.rank);
    }

    #[test]
    fn rank_of_transpose(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| rational_matrix(r, c))) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| rational_matrix(r, c))) {
        let ker = m.kernel();
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in ker {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn cayley_hamilton(m in square_rational(6)) {
        let p = char_poly(&m).unwrap();
        prop_assert!(p.eval_matrix(&m).is_zero());
        prop_assert_eq!(p.degree(), Some(m.rows()));
        prop_assert!(p.is_monic());
    }

    #[test]
    fn char_poly_agrees_with_minors(m in square_rational(5)) {
        prop_assert_eq!(char_poly(&m).unwrap(), char_poly_by_minors(&m).unwrap());
    }

    #[test]
    fn char_poly_mod_small_prime(m in (1usize..6).prop_flat_map(|n| prime_matrix(3, n))) {
        // p ≤ n takes the minors route; both must satisfy Cayley-Hamilton
        let p = char_poly(&m).unwrap();
        prop_assert!(p.eval_matrix(&m).is_zero());
        prop_assert_eq!(p, char_poly_by_minors(&m).unwrap());
    }

    #[test]
    fn rational_division_round_trips(a in (-50i64..50, 1i64..20), b in (1i64..50, 1i64..20)) {
        let f = Rationals::new();
        let (a, b) = (q(a.0, a.1), q(b.0, b.1));
        prop_assert_eq!(f.div(a.clone() * b.clone(), &b).unwrap(), a);
    }

    #[test]
    fn prime_division_round_trips(a in 0u64..101, b in 1u64..101) {
        let f = PrimeField::new(101).unwrap();
        let (a, b) = (f.elem(a), f.elem(b));
        prop_assert_eq!(f.div(a * b, &b).unwrap(), a);
        prop_assert!(f.div(a, &f.zero()).is_none());
    }

    #[test]
    fn solve_combination_recovers_targets(
        gens in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..4),
        coeffs in prop::collection::vec(-3i64..=3, 4),
    ) {
        let f = Rationals::new();
        let gens: Vec<Vec<Q>> = gens.iter().map(|g| g.iter().map(|&x| f.from_i64(x)).collect()).collect();
        let mut target = vec![f.zero(); 4];
        for (g, &c) in gens.iter().zip(&coeffs) {
            for (t, x) in target.iter_mut().zip(g) {
                *t = t.clone() + x.clone() * f.from_i64(c);
            }
        }
        let sol = solve_combination(&f, &gens, &target).expect("target is in the span");
        let mut back = vec![f.zero(); 4];
        for (g, c) in gens.iter().zip(&sol) {
            for (t, x) in back.iter_mut().zip(g) {
                *t = t.clone() + x.clone() * c.clone();
            }
        }
        prop_assert_eq!(back, target);
    }

    #[test]
    fn transpose_is_an_involution(d in 0usize..4, seed in prop::collection::vec(-5i64..=5, 64)) {
        let f = Rationals::new();
        let len = (d + 1).pow(3);
        let v = TensorElement::<Rationals>::from_coeffs(d, seed[..len].iter().map(|&x| f.from_i64(x)).collect()).unwrap();
        let t = transpose_dd(&v);
        prop_assert_eq!(transpose_dd(&t), v.clone());
        // the middle index is fixed
        for i in 0..=d {
            for s in 0..=d {
                for j in 0..=d {
                    prop_assert_eq!(t.coeff(i, s, j), v.coeff(j, s, i));
                }
            }
        }
    }

    #[test]
    fn documents_round_trip(a in rational_matrix(3, 3), b in rational_matrix(3, 3), label in "[a-z][a-z0-9-]{0,12}") {
        let pair = Pair { label, provenance: None, a, astar: b };
        let text = catalog::save(&pair);
        let back = catalog::load(&text).unwrap();
        prop_assert_eq!(&back, &AnyPair::Rational(pair));
        prop_assert_eq!(back.to_document(), text);
    }

    #[test]
    fn prime_documents_round_trip(a in prime_matrix(13, 3), b in prime_matrix(13, 3)) {
        let pair = Pair { label: "gf".into(), provenance: Some("random".into()), a, astar: b };
        let text = catalog::save(&pair);
        prop_assert_eq!(catalog::load(&text).unwrap(), AnyPair::Prime(pair));
    }
}

#[test]
fn fixtures_round_trip() {
    for (name, text) in catalog::FIXTURES {
        let pair = catalog::load(text).unwrap();
        assert_eq!(pair.to_document(), text, "{name}");
    }
}
