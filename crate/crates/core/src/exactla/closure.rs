use super::field::Field;
use super::matrix::Matrix;
use super::subspace::SubspaceBasis;

/// Span of all words in `gens` (including the empty word `I`), i.e. the
/// unital algebra they generate. Stops once a full generation adds nothing;
/// the dimension never exceeds `n^2`.
pub fn algebra_closure<F: Field>(field: &F, n: usize, gens: &[Matrix<F>]) -> SubspaceBasis<F> {
    let id = Matrix::identity(field, n);
    multiplicative_closure(field, n, gens, vec![id])
}

/// Span of `{ w s : s in seeds, w a word in gens }` where words act on the left.
pub fn multiplicative_closure<F: Field>(
    field: &F,
    n: usize,
    gens: &[Matrix<F>],
    seeds: Vec<Matrix<F>>,
) -> SubspaceBasis<F> {
    let mut span = SubspaceBasis::new(field, n * n);
    let mut frontier = Vec::new();
    for s in seeds {
        if span.insert(s.entries().to_vec()) {
            frontier.push(s);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = g.mul(x);
                if span.insert(y.entries().to_vec()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    span
}

/// Smallest subspace containing `v` and invariant under every generator.
pub fn vector_closure<F: Field>(gens: &[Matrix<F>], v: &[F::Elem]) -> SubspaceBasis<F> {
    let field = gens.first().expect("at least one generator").field();
    let mut span = SubspaceBasis::new(field, v.len());
    if !span.insert(v.to_vec()) {
        return span;
    }
    let mut frontier = vec![v.to_vec()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.mul_vec(&x);
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    span
}
