//! The space `𝒟 ⊗ 𝒟* ⊗ 𝒟`, the map `π`, the subspace `R` with its grading
//! `R = Σ_t R_t`, the transpose map `‡`, and certificates about them.
//!
//! Everything is coordinatized in the pure-power basis `A^i ⊗ A*^t ⊗ A^j`
//! at index `i(d+1)² + t(d+1) + j`. An element of `𝒟` (or `𝒟*`) is a
//! coefficient vector of length `d + 1` over `I, A, .., A^d`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Polynomial, Scalar, SubspaceBasis};
use crate::report::Verdict;
use crate::tdcore::TdSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement<F: Field> {
    d: usize,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> TensorElement<F> {
    pub fn zero(field: &F, d: usize) -> Self {
        TensorElement {
            d,
            coeffs: vec![field.zero(); (d + 1).pow(3)],
        }
    }

    pub fn from_coeffs(d: usize, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != (d + 1).pow(3) {
            return Err(Error::Shape(format!(
                "{} coefficients for diameter {d}, expected {}",
                coeffs.len(),
                (d + 1).pow(3)
            )));
        }
        Ok(TensorElement { d, coeffs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn index(d: usize, i: usize, t: usize, j: usize) -> usize {
        let m = d + 1;
        i * m * m + t * m + j
    }

    pub fn coeff(&self, i: usize, t: usize, j: usize) -> &F::Elem {
        &self.coeffs[Self::index(self.d, i, t, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        TensorElement {
            d: self.d,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(F::Elem, F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.d, other.d, "tensor diameters differ");
        TensorElement {
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a.clone(), b.clone()))
                .collect(),
        }
    }
}

fn pure_coeffs<F: Field>(x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() * y.len() * z.len());
    for a in x {
        for b in y {
            let ab = a.clone() * b.clone();
            out.extend(z.iter().map(|c| ab.clone() * c.clone()));
        }
    }
    out
}

/// `X ⊗ Y ⊗ Z` from power-basis coordinates of the three factors.
pub fn pure_tensor<F: Field>(
    x: &[F::Elem],
    y: &[F::Elem],
    z: &[F::Elem],
) -> Result<TensorElement<F>> {
    if x.is_empty() || x.len() != y.len() || y.len() != z.len() {
        return Err(Error::invalid(format!(
            "factor lengths {}, {}, {} must be equal and positive",
            x.len(),
            y.len(),
            z.len()
        )));
    }
    Ok(TensorElement {
        d: x.len() - 1,
        coeffs: pure_coeffs::<F>(x, y, z),
    })
}

/// `(i, t, j)` of the pure-power basis vector at `index`.
pub fn split_index(d: usize, index: usize) -> (usize, usize, usize) {
    let m = d + 1;
    (index / (m * m), (index / m) % m, index % m)
}

/// `‡`: swaps the outer tensor factors.
pub fn transpose_dd<F: Field>(v: &TensorElement<F>) -> TensorElement<F> {
    TensorElement {
        d: v.d,
        coeffs: transpose_coeffs::<F>(v.d, &v.coeffs),
    }
}

fn transpose_coeffs<F: Field>(d: usize, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..v.len())
        .map(|k| {
            let (i, t, j) = split_index(d, k);
            v[TensorElement::<F>::index(d, j, t, i)].clone()
        })
        .collect()
}

/// Middle factor of [`idempotent_tensor_coords`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddleKind {
    /// `A*^t`
    PowerT,
    /// `τ*_t(A*)`
    TauStarT,
    /// `E*_0` (the index `t` is ignored)
    EStar0,
}

/// Power-basis coordinates of the idempotents and `τ*` polynomials.
#[derive(Debug, Clone)]
struct Coords<F: Field> {
    field: F,
    d: usize,
    e: Vec<Vec<F::Elem>>,
    estar: Vec<Vec<F::Elem>>,
    taustar: Vec<Vec<F::Elem>>,
}

fn lagrange<F: Field>(field: &F, roots: &[F::Elem], i: usize) -> Vec<F::Elem> {
    let others: Vec<F::Elem> = roots
        .iter()
        .enumerate()
        .filter(|&(h, _)| h != i)
        .map(|(_, r)| r.clone())
        .collect();
    let p = Polynomial::from_roots(field, &others);
    let norm = p.eval(&roots[i]).inv().expect("distinct eigenvalues");
    p.scale(&norm).padded(roots.len())
}

impl<F: Field> Coords<F> {
    fn new(sys: &TdSystem<F>) -> Self {
        let field = sys.field().clone();
        let d = sys.d();
        let e = (0..=d).map(|i| lagrange(&field, sys.theta(), i)).collect();
        let estar = (0..=d).map(|i| lagrange(&field, sys.thetastar(), i)).collect();
        let taustar = (0..=d)
            .map(|t| Polynomial::from_roots(&field, &sys.thetastar()[..t]).padded(d + 1))
            .collect();
        Coords {
            field,
            d,
            e,
            estar,
            taustar,
        }
    }

    fn dim(&self) -> usize {
        (self.d + 1).pow(3)
    }

    fn unit(&self, k: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.d + 1];
        v[k] = self.field.one();
        v
    }

    fn pure(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vec<F::Elem> {
        pure_coeffs::<F>(x, y, z)
    }

    fn middle(&self, kind: MiddleKind, t: usize) -> Vec<F::Elem> {
        match kind {
            MiddleKind::PowerT => self.unit(t),
            MiddleKind::TauStarT => self.taustar[t].clone(),
            MiddleKind::EStar0 => self.estar[0].clone(),
        }
    }

    fn span(&self, vs: impl IntoIterator<Item = Vec<F::Elem>>) -> SubspaceBasis<F> {
        SubspaceBasis::spanned_by(&self.field, self.dim(), vs)
    }

    /// `E_i ⊗ τ*_t ⊗ E_j`
    fn ete(&self, i: usize, t: usize, j: usize) -> Vec<F::Elem> {
        self.pure(&self.e[i], &self.taustar[t], &self.e[j])
    }

    /// Generators of `R`: `A^i⊗E*_j⊗A^k` and `A^k⊗E*_j⊗A^i` for `i < j`,
    /// and `E_i⊗A*^t⊗E_j` for `t < |i - j|`.
    fn r_generators(&self) -> Vec<Vec<F::Elem>> {
        let d = self.d;
        let mut out = Vec::new();
        for j in 0..=d {
            for i in 0..j {
                for k in 0..=d {
                    out.push(self.pure(&self.unit(i), &self.estar[j], &self.unit(k)));
                    out.push(self.pure(&self.unit(k), &self.estar[j], &self.unit(i)));
                }
            }
        }
        for i in 0..=d {
            for j in 0..=d {
                for t in 0..i.abs_diff(j) {
                    out.push(self.pure(&self.e[i], &self.unit(t), &self.e[j]));
                }
            }
        }
        out
    }

    /// Generators of `R_t`: `A^i⊗τ*_t⊗𝒟` and `𝒟⊗τ*_t⊗A^i` for `i < t`,
    /// and `E_i⊗τ*_t⊗E_j` for `t < |i - j|`.
    fn rt_generators(&self, t: usize) -> Vec<Vec<F::Elem>> {
        let d = self.d;
        let ts = &self.taustar[t];
        let mut out = Vec::new();
        for i in 0..t {
            for k in 0..=d {
                out.push(self.pure(&self.unit(i), ts, &self.unit(k)));
                out.push(self.pure(&self.unit(k), ts, &self.unit(i)));
            }
        }
        for i in 0..=d {
            for j in 0..=d {
                if t < i.abs_diff(j) {
                    out.push(self.ete(i, t, j));
                }
            }
        }
        out
    }

    /// `𝒟 ⊗ τ*_t ⊗ 𝒟`
    fn slice_generators(&self, t: usize) -> Vec<Vec<F::Elem>> {
        let d = self.d;
        let mut out = Vec::new();
        for a in 0..=d {
            for b in 0..=d {
                out.push(self.pure(&self.unit(a), &self.taustar[t], &self.unit(b)));
            }
        }
        out
    }
}

pub fn idempotent_tensor_coords<F: Field>(
    sys: &TdSystem<F>,
    i: usize,
    t: usize,
    j: usize,
    middle: MiddleKind,
) -> TensorElement<F> {
    let c = Coords::new(sys);
    TensorElement {
        d: c.d,
        coeffs: c.pure(&c.e[i], &c.middle(middle, t), &c.e[j]),
    }
}

/// `π(X ⊗ Y ⊗ Z) = E*_0 X Y Z E*_0`, extended linearly.
pub fn pi_eval<F: Field>(sys: &TdSystem<F>, v: &TensorElement<F>) -> Result<Matrix<F>> {
    if v.d != sys.d() {
        return Err(Error::Shape(format!(
            "tensor of diameter {} for a system of diameter {}",
            v.d,
            sys.d()
        )));
    }
    Ok(PiImages::new(sys).apply(&v.coeffs))
}

/// The images `E*_0 A^i A*^t A^j E*_0` of the basis vectors.
struct PiImages<F: Field> {
    images: Vec<Matrix<F>>,
    zero: Matrix<F>,
}

impl<F: Field> PiImages<F> {
    fn new(sys: &TdSystem<F>) -> Self {
        let d = sys.d();
        let e0 = &sys.estar()[0];
        let left: Vec<Matrix<F>> = sys.a().powers(d).iter().map(|p| e0.mul(p)).collect();
        let right: Vec<Matrix<F>> = sys.a().powers(d).iter().map(|p| p.mul(e0)).collect();
        let mids = sys.astar().powers(d);
        let mut images = Vec::with_capacity((d + 1).pow(3));
        for l in &left {
            for m in &mids {
                let lm = l.mul(m);
                images.extend(right.iter().map(|r| lm.mul(r)));
            }
        }
        PiImages {
            images,
            zero: Matrix::zeros(sys.field(), sys.n(), sys.n()),
        }
    }

    fn apply(&self, v: &[F::Elem]) -> Matrix<F> {
        v.iter()
            .zip(&self.images)
            .filter(|(c, _)| !c.is_zero())
            .fold(self.zero.clone(), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

pub fn build_rt<F: Field>(sys: &TdSystem<F>, t: usize) -> Result<SubspaceBasis<F>> {
    if t > sys.d() {
        return Err(Error::invalid(format!("t = {t} exceeds d = {}", sys.d())));
    }
    let c = Coords::new(sys);
    Ok(c.span(c.rt_generators(t)))
}

/// `R` together with the dimensions of its homogeneous components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSpace<F: Field> {
    pub basis: SubspaceBasis<F>,
    pub slice_dims: Vec<usize>,
    /// `dim R = Σ_t dim R_t` and every `R_t ⊆ R`.
    pub graded: bool,
}

pub fn build_r<F: Field>(sys: &TdSystem<F>) -> RSpace<F> {
    TensorCertifier::new(sys).r_space()
}

/// Per-system cache of `R`, the `R_t` and the `π` images, shared by all
/// certificates below.
pub struct TensorCertifier<'a, F: Field> {
    sys: &'a TdSystem<F>,
    c: Coords<F>,
    rt: Vec<SubspaceBasis<F>>,
    r: SubspaceBasis<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceDims {
    pub t: usize,
    pub dim: usize,
    pub expected: usize,
    pub codim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimsReport {
    pub d: usize,
    pub slices: Vec<SliceDims>,
    #[serde(rename = "dimR")]
    pub dim_r: usize,
    #[serde(rename = "codimR")]
    pub codim_r: usize,
    pub expected_dim_r: usize,
    pub expected_codim_r: usize,
    pub graded: bool,
}

impl DimsReport {
    pub fn pass(&self) -> bool {
        self.graded
            && self.dim_r == self.expected_dim_r
            && self.codim_r == self.expected_codim_r
            && self
                .slices
                .iter()
                .all(|s| s.dim == s.expected && s.codim == self.d - s.t + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub vectors_checked: usize,
    /// Indices (into the RREF basis of `R`) of vectors with nonzero image.
    pub nonzero: Vec<usize>,
}

impl KernelReport {
    pub fn pass(&self) -> bool {
        self.nonzero.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransposeReport {
    pub involution: bool,
    pub r_invariant: bool,
    /// `‡(R_t) ⊆ R_t`, one flag per `t`.
    pub slices_invariant: Vec<bool>,
    pub basis_vectors_checked: usize,
    /// `(i, t, j)` of basis vectors `b` with `(1 - ‡)(b) ∉ R`.
    pub antisymmetric_failures: Vec<(usize, usize, usize)>,
}

impl TransposeReport {
    pub fn pass(&self) -> bool {
        self.involution
            && self.r_invariant
            && self.slices_invariant.iter().all(|&b| b)
            && self.antisymmetric_failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceComplement {
    pub t: usize,
    /// Sizes of `{A^i⊗τ*_t⊗A^j : j < t}`, `{A^i⊗τ*_t⊗A^j : i < t ≤ j}`,
    /// `{E_i⊗τ*_t⊗E_j : t < |i-j|}`, `{E_i⊗τ*_t⊗E_i : i ≤ d-t}`.
    pub cardinalities: [usize; 4],
    pub joint_rank: usize,
    /// The first three families span exactly `R_t`.
    pub spans_rt: bool,
    /// `dim(R_t + span{E_i⊗τ*_t⊗E_{i+t}})`
    pub diagonal_fill: usize,
    pub diagonal_independent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectComplement {
    pub size: usize,
    pub rank_union: usize,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementReport {
    pub d: usize,
    pub slices: Vec<SliceComplement>,
    /// `{E_i ⊗ τ*_{j-i} ⊗ E_j : i ≤ j}`
    pub tau_complement: DirectComplement,
    /// `{E_i ⊗ E*_0 ⊗ E_j : i ≤ j}`
    pub estar0_complement: DirectComplement,
}

impl ComplementReport {
    pub fn pass(&self) -> bool {
        let full = (self.d + 1).pow(2);
        let slices_ok = self.slices.iter().all(|s| {
            s.joint_rank == full
                && s.cardinalities.iter().sum::<usize>() == full
                && s.spans_rt
                && s.diagonal_fill == full
                && s.diagonal_independent
        });
        slices_ok && self.tau_complement.direct && self.estar0_complement.direct
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularityReport {
    pub t: usize,
    pub pairs_checked: usize,
    /// `(i, j)` for which one of the two expressions left the space.
    pub membership_failures: Vec<(usize, usize)>,
    /// Column `i` holds the coordinates of `E_i⊗τ*_t⊗E_{i+t} + R_t` in the
    /// basis `E_h⊗τ*_t⊗E_h + R_t`, as strings.
    pub change_matrix: Vec<Vec<String>>,
    pub upper_triangular: bool,
    pub diagonal_nonzero: bool,
}

impl TriangularityReport {
    pub fn pass(&self) -> bool {
        self.membership_failures.is_empty() && self.upper_triangular && self.diagonal_nonzero
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EStarShiftReport {
    pub checked: usize,
    /// `(t, i)` for which the difference is not in the space.
    pub failures: Vec<(usize, usize)>,
}

impl EStarShiftReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MainTheoremCert {
    #[serde(rename = "spanDDD")]
    pub span_ddd: usize,
    #[serde(rename = "spanDED")]
    pub span_ded: usize,
    pub commutator_max_rank: usize,
    pub equal: bool,
}

impl MainTheoremCert {
    pub fn pass(&self) -> bool {
        self.equal && self.commutator_max_rank == 0
    }
}

/// `f^t_{ij} = ∏_{h=i+1, h≠j}^{i+t} (x - θ_h)`
pub fn triangularity_poly<F: Field>(sys: &TdSystem<F>, t: usize, i: usize, j: usize) -> Polynomial<F> {
    let roots: Vec<F::Elem> = (i + 1..=i + t)
        .filter(|&h| h != j)
        .map(|h| sys.theta()[h].clone())
        .collect();
    Polynomial::from_roots(sys.field(), &roots)
}

/// `c_t = ∏_{k=1}^{t} (θ*_0 - θ*_k)`
pub fn estar0_shift_scalar<F: Field>(sys: &TdSystem<F>, t: usize) -> F::Elem {
    let ts = sys.thetastar();
    (1..=t).fold(sys.field().one(), |acc, k| acc * (ts[0].clone() - ts[k].clone()))
}

impl<'a, F: Field> TensorCertifier<'a, F> {
    pub fn new(sys: &'a TdSystem<F>) -> Self {
        let c = Coords::new(sys);
        let rt = (0..=c.d).map(|t| c.span(c.rt_generators(t))).collect();
        let r = c.span(c.r_generators());
        TensorCertifier { sys, c, rt, r }
    }

    pub fn r(&self) -> &SubspaceBasis<F> {
        &self.r
    }

    pub fn rt(&self, t: usize) -> &SubspaceBasis<F> {
        &self.rt[t]
    }

    pub fn r_space(&self) -> RSpace<F> {
        let slice_dims: Vec<usize> = self.rt.iter().map(SubspaceBasis::dim).collect();
        let mut sum = SubspaceBasis::new(&self.c.field, self.c.dim());
        for s in &self.rt {
            sum.extend_from(s);
        }
        let graded = slice_dims.iter().sum::<usize>() == self.r.dim() && sum == self.r;
        RSpace {
            basis: self.r.clone(),
            slice_dims,
            graded,
        }
    }

    pub fn dims(&self) -> DimsReport {
        let d = self.c.d;
        let space = self.r_space();
        let slices = space
            .slice_dims
            .iter()
            .enumerate()
            .map(|(t, &dim)| SliceDims {
                t,
                dim,
                expected: d * d + d + t,
                codim: (d + 1).pow(2) - dim,
            })
            .collect();
        DimsReport {
            d,
            slices,
            dim_r: self.r.dim(),
            codim_r: self.c.dim() - self.r.dim(),
            expected_dim_r: d * (d + 1) * (2 * d + 3) / 2,
            expected_codim_r: (d + 1) * (d + 2) / 2,
            graded: space.graded,
        }
    }

    pub fn kernel(&self) -> KernelReport {
        let pi = PiImages::new(self.sys);
        let nonzero = self
            .r
            .vectors()
            .enumerate()
            .filter(|(_, v)| !pi.apply(v).is_zero())
            .map(|(k, _)| k)
            .collect();
        KernelReport {
            vectors_checked: self.r.dim(),
            nonzero,
        }
    }

    pub fn transpose(&self) -> TransposeReport {
        let d = self.c.d;
        let tr = |v: &[F::Elem]| transpose_coeffs::<F>(d, v);
        let mut involution = true;
        let mut failures = Vec::new();
        for k in 0..self.c.dim() {
            let (i, t, j) = split_index(d, k);
            let mut b = vec![self.c.field.zero(); self.c.dim()];
            b[k] = self.c.field.one();
            let bt = tr(&b);
            involution &= tr(&bt) == b;
            let diff: Vec<F::Elem> = b.into_iter().zip(bt).map(|(x, y)| x - y).collect();
            if !self.r.contains(&diff) {
                failures.push((i, t, j));
            }
        }
        let invariant = |s: &SubspaceBasis<F>| s.vectors().all(|v| s.contains(&tr(v)));
        TransposeReport {
            involution,
            r_invariant: invariant(&self.r),
            slices_invariant: self.rt.iter().map(invariant).collect(),
            basis_vectors_checked: self.c.dim(),
            antisymmetric_failures: failures,
        }
    }

    fn direct(&self, family: Vec<Vec<F::Elem>>) -> DirectComplement {
        let size = family.len();
        let mut s = self.r.clone();
        for v in family {
            s.insert(v);
        }
        DirectComplement {
            size,
            rank_union: s.dim(),
            direct: s.dim() == self.r.dim() + size && s.is_full(),
        }
    }

    fn slice_complement(&self, t: usize) -> SliceComplement {
        let c = &self.c;
        let d = c.d;
        let ts = &c.taustar[t];
        let power = |i: usize, j: usize| c.pure(&c.unit(i), ts, &c.unit(j));
        let mut t1 = Vec::new();
        for i in 0..=d {
            for j in 0..t {
                t1.push(power(i, j));
            }
        }
        let mut t2 = Vec::new();
        for i in 0..t {
            for j in t..=d {
                t2.push(power(i, j));
            }
        }
        let mut s3 = Vec::new();
        for i in 0..=d {
            for j in 0..=d {
                if t < i.abs_diff(j) {
                    s3.push(c.ete(i, t, j));
                }
            }
        }
        let b: Vec<_> = (0..=d - t).map(|i| c.ete(i, t, i)).collect();
        let cardinalities = [t1.len(), t2.len(), s3.len(), b.len()];
        let first_three = c.span(t1.into_iter().chain(t2).chain(s3));
        let joint = first_three.sum(&c.span(b));
        let diagonal: Vec<_> = (0..=d - t).map(|i| c.ete(i, t, i + t)).collect();
        let k = diagonal.len();
        let mut filled = self.rt[t].clone();
        for v in diagonal {
            filled.insert(v);
        }
        SliceComplement {
            t,
            cardinalities,
            joint_rank: joint.dim(),
            spans_rt: first_three == self.rt[t],
            diagonal_fill: filled.dim(),
            diagonal_independent: filled.dim() == self.rt[t].dim() + k,
        }
    }

    pub fn complements(&self) -> ComplementReport {
        let c = &self.c;
        let d = c.d;
        let mut tau = Vec::new();
        let mut est = Vec::new();
        for i in 0..=d {
            for j in i..=d {
                tau.push(c.ete(i, j - i, j));
                est.push(c.pure(&c.e[i], &c.estar[0], &c.e[j]));
            }
        }
        ComplementReport {
            d,
            slices: (0..=d).map(|t| self.slice_complement(t)).collect(),
            tau_complement: self.direct(tau),
            estar0_complement: self.direct(est),
        }
    }

    pub fn triangularity(&self, t: usize) -> TriangularityReport {
        let c = &self.c;
        let d = c.d;
        let field = &c.field;
        let th = self.sys.theta();
        let mut pairs = 0;
        let mut membership_failures = Vec::new();
        let mut space = self.rt[t].clone();
        for i in 0..=d.saturating_sub(t) {
            if i > 0 {
                space.insert(c.ete(i - 1, t, i - 1));
            }
            if i + t > d {
                break;
            }
            for j in i + 1..=i + t {
                pairs += 1;
                let f = triangularity_poly(self.sys, t, i, j);
                let (fi, fj) = (f.eval(&th[i]), f.eval(&th[j]));
                let diag = c.ete(i, t, i);
                let comb = |other: Vec<F::Elem>| -> Vec<F::Elem> {
                    diag.iter()
                        .zip(other)
                        .map(|(x, y)| x.clone() * fi.clone() + y * fj.clone())
                        .collect()
                };
                let ok = space.contains(&comb(c.ete(i, t, j))) && space.contains(&comb(c.ete(j, t, i)));
                if !ok {
                    membership_failures.push((i, j));
                }
            }
        }

        let k = d - t + 1;
        let rt = &self.rt[t];
        let basis: Vec<Vec<F::Elem>> = (0..k).map(|h| rt.reduce(&c.ete(h, t, h))).collect();
        let mut columns = Vec::with_capacity(k);
        for i in 0..k {
            let target = rt.reduce(&c.ete(i, t, i + t));
            columns.push(crate::exactla::solve_combination(field, &basis, &target));
        }
        let solved = columns.iter().all(Option::is_some);
        let columns: Vec<Vec<F::Elem>> = columns
            .into_iter()
            .map(|col| col.unwrap_or_else(|| vec![field.zero(); k]))
            .collect();
        let upper = solved && (0..k).all(|i| (i + 1..k).all(|h| columns[i][h].is_zero()));
        let diag_nonzero = solved && (0..k).all(|i| !columns[i][i].is_zero());
        let change_matrix = (0..k)
            .map(|h| (0..k).map(|i| columns[i][h].to_string()).collect())
            .collect();
        TriangularityReport {
            t,
            pairs_checked: pairs,
            membership_failures,
            change_matrix,
            upper_triangular: upper,
            diagonal_nonzero: diag_nonzero,
        }
    }

    pub fn estar_shift(&self) -> EStarShiftReport {
        let c = &self.c;
        let d = c.d;
        let mut checked = 0;
        let mut failures = Vec::new();
        // R + Σ_{n > t} 𝒟⊗τ*_n⊗𝒟, built from t = d downwards
        let mut space = self.r.clone();
        for t in (0..=d).rev() {
            if t < d {
                for v in c.slice_generators(t + 1) {
                    space.insert(v);
                }
            }
            let ct = estar0_shift_scalar(self.sys, t);
            for i in 0..=d - t {
                checked += 1;
                let a = c.ete(i, t, i + t);
                let b = c.pure(&c.e[i], &c.estar[0], &c.e[i + t]);
                let diff: Vec<F::Elem> = a
                    .into_iter()
                    .zip(b)
                    .map(|(x, y)| x - ct.clone() * y)
                    .collect();
                if !space.contains(&diff) {
                    failures.push((t, i));
                }
            }
        }
        failures.sort_unstable();
        EStarShiftReport { checked, failures }
    }
}

pub fn check_kernel<F: Field>(sys: &TdSystem<F>) -> KernelReport {
    TensorCertifier::new(sys).kernel()
}

pub fn check_dd_properties<F: Field>(sys: &TdSystem<F>) -> TransposeReport {
    TensorCertifier::new(sys).transpose()
}

pub fn check_complements<F: Field>(sys: &TdSystem<F>) -> ComplementReport {
    TensorCertifier::new(sys).complements()
}

pub fn check_diagonal_triangularity<F: Field>(sys: &TdSystem<F>, t: usize) -> Result<TriangularityReport> {
    if t > sys.d() {
        return Err(Error::invalid(format!("t = {t} exceeds d = {}", sys.d())));
    }
    Ok(TensorCertifier::new(sys).triangularity(t))
}

pub fn check_estar0_shift<F: Field>(sys: &TdSystem<F>) -> EStarShiftReport {
    TensorCertifier::new(sys).estar_shift()
}

/// Compares `span{E*_0 A^i A*^t A^j E*_0}` with `span{E*_0 A^i E*_0 A^j E*_0}`
/// and checks that the matrices `E*_0 A^i E*_0 A^j E*_0` commute.
pub fn verify_theorem_main<F: Field>(sys: &TdSystem<F>) -> MainTheoremCert {
    let field = sys.field();
    let n = sys.n();
    let d = sys.d();
    let e0 = &sys.estar()[0];
    let pi = PiImages::new(sys);
    let ddd = SubspaceBasis::of_matrices(field, n * n, &pi.images);
    let corners: Vec<Matrix<F>> = sys.a().powers(d).iter().map(|p| e0.mul(p).mul(e0)).collect();
    let mut ded_mats = Vec::with_capacity((d + 1).pow(2));
    let mut max_rank = 0;
    for x in &corners {
        for y in &corners {
            let xy = x.mul(y);
            max_rank = max_rank.max(xy.sub(&y.mul(x)).rank());
            ded_mats.push(xy);
        }
    }
    let ded = SubspaceBasis::of_matrices(field, n * n, &ded_mats);
    MainTheoremCert {
        span_ddd: ddd.dim(),
        span_ded: ded.dim(),
        commutator_max_rank: max_rank,
        equal: ddd == ded,
    }
}

/// The tensor-space certificates in their fixed report order.
pub fn verdicts<F: Field>(sys: &TdSystem<F>) -> Vec<Verdict> {
    let cert = TensorCertifier::new(sys);
    let dims = cert.dims();
    let kernel = cert.kernel();
    let tr = cert.transpose();
    let comp = cert.complements();
    let tri: Vec<TriangularityReport> = (0..=sys.d()).map(|t| cert.triangularity(t)).collect();
    let shift = cert.estar_shift();
    let main = verify_theorem_main(sys);
    vec![
        Verdict::new("tensor.dims", dims.pass(), &dims),
        Verdict::new("tensor.kernel", kernel.pass(), &kernel),
        Verdict::new("tensor.transpose", tr.pass(), &tr),
        Verdict::new("tensor.complements", comp.pass(), &comp),
        Verdict::new(
            "tensor.diagonal_triangularity",
            tri.iter().all(TriangularityReport::pass),
            &tri,
        ),
        Verdict::new("tensor.estar0_shift", shift.pass(), &shift),
        Verdict::new("main.span_and_commute", main.pass(), main),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tdcore::build_system;
    use crate::{QMatrix, Rationals, Q};

    fn f() -> Rationals {
        Rationals::new()
    }

    fn qm(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_i64(&f(), rows).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| f().from_i64(x)).collect()
    }

    fn pauli() -> TdSystem<Rationals> {
        build_system(&qm(&[&[0, 1], &[1, 0]]), &qm(&[&[1, 0], &[0, -1]]), 1, 1).unwrap()
    }

    fn kraw2() -> TdSystem<Rationals> {
        build_system(
            &qm(&[&[0, 2, 0], &[1, 0, 1], &[0, 2, 0]]),
            &qm(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]),
            1,
            1,
        )
        .unwrap()
    }

    fn trivial() -> TdSystem<Rationals> {
        build_system(&qm(&[&[3]]), &qm(&[&[5]]), 0, 0).unwrap()
    }

    fn single(d: usize, i: usize, t: usize, j: usize) -> TensorElement<Rationals> {
        let mut v = TensorElement::zero(&f(), d);
        v.coeffs[TensorElement::<Rationals>::index(d, i, t, j)] = f().one();
        v
    }

    #[test]
    fn pure_tensor_examples() {
        let v = pure_tensor::<Rationals>(&ints(&[1, 0]), &ints(&[1, 0]), &ints(&[1, 0])).unwrap();
        assert_eq!(v, single(1, 0, 0, 0));
        let v = pure_tensor::<Rationals>(&ints(&[0, 1]), &ints(&[0, 1]), &ints(&[0, 1])).unwrap();
        assert_eq!(v, single(1, 1, 1, 1));
        let v = pure_tensor::<Rationals>(&ints(&[1, 1]), &ints(&[1, 0]), &ints(&[1, 0])).unwrap();
        assert_eq!(v, single(1, 0, 0, 0).add(&single(1, 1, 0, 0)));
        assert!(pure_tensor::<Rationals>(&ints(&[1]), &ints(&[1, 0]), &ints(&[1])).is_err());
    }

    #[test]
    fn idempotent_coords() {
        let sys = pauli();
        let v = idempotent_tensor_coords(&sys, 0, 0, 0, MiddleKind::PowerT);
        // E_0 = (A + I)/2 on both outer slots, I in the middle
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(v.coeff(i, 0, j), &q(1, 4));
                assert!(v.coeff(i, 1, j).is_zero());
            }
        }
        let v = idempotent_tensor_coords(&sys, 0, 0, 0, MiddleKind::TauStarT);
        assert!(v.coeff(0, 1, 0).is_zero());
        let v = idempotent_tensor_coords(&sys, 0, 5, 0, MiddleKind::EStar0);
        assert_eq!(v.coeff(0, 0, 0), &q(1, 8));
        assert_eq!(v.coeff(0, 1, 0), &q(1, 8));
    }

    #[test]
    fn pi_examples() {
        let sys = pauli();
        assert_eq!(pi_eval(&sys, &single(1, 0, 0, 0)).unwrap(), sys.estar()[0]);
        assert_eq!(pi_eval(&sys, &single(1, 1, 1, 1)).unwrap(), qm(&[&[-1, 0], &[0, 0]]));
        assert!(pi_eval(&sys, &TensorElement::zero(&f(), 1)).unwrap().is_zero());
        assert!(pi_eval(&sys, &TensorElement::zero(&f(), 2)).is_err());
    }

    #[test]
    fn dimensions() {
        let k2 = kraw2();
        assert_eq!(build_rt(&k2, 0).unwrap().dim(), 6);
        assert_eq!(build_rt(&k2, 2).unwrap().dim(), 8);
        assert!(build_rt(&k2, 3).is_err());
        let r = build_r(&k2);
        assert_eq!(r.basis.dim(), 21);
        assert_eq!(27 - r.basis.dim(), 6);
        assert!(r.graded);
        assert_eq!(build_r(&pauli()).basis.dim(), 5);
        assert_eq!(build_rt(&trivial(), 0).unwrap().dim(), 0);
        assert_eq!(build_r(&trivial()).basis.dim(), 0);
        assert!(TensorCertifier::new(&k2).dims().pass());
    }

    #[test]
    fn kernel_containment() {
        let r = check_kernel(&pauli());
        assert_eq!(r.vectors_checked, 5);
        assert!(r.pass());
        let r = check_kernel(&kraw2());
        assert_eq!(r.vectors_checked, 21);
        assert!(r.pass());
        assert_eq!(check_kernel(&trivial()).vectors_checked, 0);
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose_dd(&single(1, 1, 1, 0)), single(1, 0, 1, 1));
        let sym = single(2, 2, 1, 2);
        assert_eq!(transpose_dd(&sym), sym);
        let v = single(2, 0, 1, 2).add(&single(2, 1, 2, 0).scale(&q(3, 7)));
        assert_eq!(transpose_dd(&transpose_dd(&v)), v);

        // (1 - ‡)(A⊗I⊗I) ∈ R for d = 1
        let sys = pauli();
        let cert = TensorCertifier::new(&sys);
        let b = single(1, 1, 0, 0);
        assert!(cert.r().contains(b.sub(&transpose_dd(&b)).coeffs()));

        let rep = check_dd_properties(&kraw2());
        assert_eq!(rep.basis_vectors_checked, 27);
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn complement_sizes() {
        let rep = check_complements(&kraw2());
        assert_eq!(rep.slices[1].cardinalities, [3, 2, 2, 2]);
        assert_eq!(rep.tau_complement.size, 6);
        assert_eq!(rep.estar0_complement.size, 6);
        assert!(rep.pass(), "{rep:?}");
        let rep = check_complements(&trivial());
        assert_eq!(rep.estar0_complement.rank_union, 1);
        assert!(rep.pass());
    }

    #[test]
    fn triangularity_instances() {
        let sys = kraw2();
        let poly = triangularity_poly(&sys, 2, 0, 1);
        let th = sys.theta();
        assert_eq!(poly.degree(), Some(1));
        assert_eq!(poly.eval(&th[0]), th[0].clone() - th[2].clone());
        let r0 = check_diagonal_triangularity(&sys, 0).unwrap();
        assert_eq!(r0.pairs_checked, 0);
        assert!(r0.pass());
        for t in 1..=2 {
            let r = check_diagonal_triangularity(&sys, t).unwrap();
            assert!(r.pass(), "{r:?}");
        }
        assert!(check_diagonal_triangularity(&sys, 3).is_err());
    }

    #[test]
    fn estar0_shift_instances() {
        let sys = pauli();
        assert_eq!(estar0_shift_scalar(&sys, 0), f().one());
        assert_eq!(estar0_shift_scalar(&sys, 1), f().from_i64(2));
        assert!(check_estar0_shift(&sys).pass());
        assert!(check_estar0_shift(&kraw2()).pass());
        let r = check_estar0_shift(&trivial());
        assert_eq!(r.checked, 1);
        assert!(r.pass());
    }

    #[test]
    fn main_theorem() {
        let c = verify_theorem_main(&pauli());
        assert_eq!((c.span_ddd, c.span_ded), (1, 1));
        assert!(c.pass());
        assert!(verify_theorem_main(&kraw2()).pass());
        let c = verify_theorem_main(&trivial());
        assert_eq!((c.span_ddd, c.span_ded, c.commutator_max_rank), (1, 1, 0));
    }
}
