//! Structure-constant representations of hom-algebras and hom-coalgebras,
//! validators for their defining identities, and the classical constructions
//! built from them (Rota-Baxter and O-operator splittings, induced products,
//! finite-dimensional duality).
//!
//! Conventions: basis indices are 0-based; `alpha` acts on columns, so
//! `alpha(e_i) = sum_j alpha[(j, i)] e_j`. Product tensors are indexed
//! `[i][j][k]` for `e_i * e_j = sum_k t[i][j][k] e_k`; coproduct tensors are
//! indexed `[k][i][j]` for `Delta(e_k) = sum t[k][i][j] e_i (x) e_j`.
//! Every identity is checked on basis tuples only, which suffices by
//! multilinearity.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::linalg::{add_vectors, axpy, is_zero_vector, sub_vectors, zero_vector, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("entries from different fields")]
    FieldMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(ValidationReport),
    #[error("not a Rota-Baxter operator: {0}")]
    NotRotaBaxter(ValidationReport),
    #[error("not an O-operator: {0}")]
    NotOOperator(ValidationReport),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A dense 3-index tensor of scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dims: [usize; 3],
    field: Field,
    data: Vec<Scalar>,
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3{:?} {{", self.dims)?;
        for (idx, x) in self.nonzero() {
            write!(f, " {idx:?}:{x}")?;
        }
        write!(f, " }}")
    }
}

impl Tensor3 {
    pub fn zeros(field: Field, dims: [usize; 3]) -> Tensor3 {
        Tensor3 {
            dims,
            field,
            data: vec![Scalar::zero(field); dims[0] * dims[1] * dims[2]],
        }
    }

    /// Cube tensor `d x d x d` from `(i, j, k, coeff)` entries; repeated
    /// entries accumulate.
    pub fn from_entries(
        field: Field,
        dims: [usize; 3],
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Tensor3, StructureError> {
        let mut t = Tensor3::zeros(field, dims);
        for (i, j, k, c) in entries {
            if *i >= dims[0] || *j >= dims[1] || *k >= dims[2] {
                return Err(StructureError::ShapeMismatch(format!(
                    "entry ({i}, {j}, {k}) outside {dims:?}"
                )));
            }
            if c.field() != field {
                return Err(StructureError::FieldMismatch);
            }
            let slot = t.offset(*i, *j, *k);
            t.data[slot] = &t.data[slot] + c;
        }
        Ok(t)
    }

    /// Integer-coefficient convenience constructor for a `d x d x d` tensor.
    pub fn cube(field: Field, d: usize, entries: &[(usize, usize, usize, i64)]) -> Tensor3 {
        let entries: Vec<_> = entries
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, Scalar::from_i64(field, c)))
            .collect();
        Tensor3::from_entries(field, [d, d, d], &entries).expect("entries in range")
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        let o = self.offset(i, j, k);
        self.data[o] = x;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    /// Nonzero entries in index order.
    pub fn nonzero(&self) -> Vec<([usize; 3], &Scalar)> {
        let [a, b, c] = self.dims;
        let mut out = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let x = self.get(i, j, k);
                    if !x.is_zero() {
                        out.push(([i, j, k], x));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, other.dims);
        Tensor3 {
            data: add_vectors(&self.data, &other.data),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, other.dims);
        Tensor3 {
            data: sub_vectors(&self.data, &other.data),
            ..self.clone()
        }
    }

    /// Moves index `[i][j][k]` to position given by `perm`: the output
    /// satisfies `out[idx[perm[0]]][idx[perm[1]]][idx[perm[2]]] = self[idx]`.
    pub fn permute(&self, perm: [usize; 3]) -> Tensor3 {
        let mut dims = [0; 3];
        for (src, &dst) in perm.iter().enumerate() {
            dims[dst] = self.dims[src];
        }
        let mut out = Tensor3::zeros(self.field, dims);
        let [a, b, c] = self.dims;
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let idx = [i, j, k];
                    let mut o = [0; 3];
                    for s in 0..3 {
                        o[perm[s]] = idx[s];
                    }
                    out.set(o[0], o[1], o[2], self.get(i, j, k).clone());
                }
            }
        }
        out
    }

    /// Bilinear evaluation `sum x_i y_j t[i][j][.]`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let [a, b, c] = self.dims;
        let mut out = zero_vector(self.field, c);
        for i in 0..a {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..b {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                let start = self.offset(i, j, 0);
                axpy(&mut out, &w, &self.data[start..start + c]);
            }
        }
        out
    }

    /// Linear evaluation in the first index: `sum x_k t[k][.][.]`, flattened.
    pub fn co_apply(&self, x: &[Scalar]) -> Vector {
        let [a, b, c] = self.dims;
        let mut out = zero_vector(self.field, b * c);
        for k in 0..a {
            if !x[k].is_zero() {
                let start = self.offset(k, 0, 0);
                axpy(&mut out, &x[k], &self.data[start..start + b * c]);
            }
        }
        out
    }

    pub fn to_field(&self, field: Field) -> Result<Tensor3, FieldError> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_field(field))
            .collect::<Result<_, _>>()?;
        Ok(Tensor3 {
            dims: self.dims,
            field,
            data,
        })
    }
}

fn unit(field: Field, d: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, d);
    v[i] = Scalar::one(field);
    v
}

fn apply(m: &Matrix, v: &[Scalar]) -> Vector {
    m.mul_vec(v).expect("shape checked at construction")
}

/// `(M (x) N) v` for `v` flattened row-major in `C (x) C`.
fn apply_pair(m: &Matrix, n: &Matrix, v: &[Scalar]) -> Vector {
    let (a, b) = (m.cols(), n.cols());
    let (ra, rb) = (m.rows(), n.rows());
    let field = m.field();
    let mut out = zero_vector(field, ra * rb);
    for i in 0..a {
        for j in 0..b {
            let x = &v[i * b + j];
            if x.is_zero() {
                continue;
            }
            for p in 0..ra {
                let mp = &m[(p, i)];
                if mp.is_zero() {
                    continue;
                }
                let w = x * mp;
                for q in 0..rb {
                    let nq = &n[(q, j)];
                    if !nq.is_zero() {
                        out[p * rb + q] = &out[p * rb + q] + &(&w * nq);
                    }
                }
            }
        }
    }
    out
}

/// One failed identity with its witnessing basis tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub identity: String,
    pub basis: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.basis.iter().map(|i| format!("e{}", i + 1)).collect();
        let show = |v: &Vector| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{} at ({}): lhs ({}) != rhs ({})",
            self.identity,
            args.join(", "),
            show(&self.lhs),
            show(&self.rhs)
        )
    }
}

/// Outcome of a validator: empty iff every identity holds.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violations of a named identity.
    pub fn of(&self, identity: &str) -> impl Iterator<Item = &Violation> {
        let id = identity.to_string();
        self.violations.iter().filter(move |v| v.identity == id)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    fn compare(&mut self, identity: &str, basis: &[usize], lhs: Vector, rhs: Vector) {
        if lhs != rhs {
            self.violations.push(Violation {
                identity: identity.to_string(),
                basis: basis.to_vec(),
                lhs,
                rhs,
            });
        }
    }

    fn into_result(self) -> Result<(), StructureError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(StructureError::InvalidInput(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(8) {
            write!(f, "; {v}")?;
        }
        if self.violations.len() > 8 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// A vector space `K^d` with a twisting map `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomVectorSpace {
    alpha: Matrix,
}

impl HomVectorSpace {
    pub fn new(alpha: Matrix) -> Result<HomVectorSpace, StructureError> {
        if !alpha.is_square() || alpha.rows() == 0 {
            return Err(StructureError::ShapeMismatch(format!(
                "alpha must be square and nonempty, got {}x{}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        Ok(HomVectorSpace { alpha })
    }

    pub fn untwisted(field: Field, dim: usize) -> HomVectorSpace {
        HomVectorSpace::new(Matrix::identity(field, dim)).expect("identity is square")
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    fn check_cube(&self, t: &Tensor3, name: &str) -> Result<(), StructureError> {
        let d = self.dim();
        if t.dims() != [d, d, d] {
            return Err(StructureError::ShapeMismatch(format!(
                "{name} has shape {:?}, expected [{d}, {d}, {d}]",
                t.dims()
            )));
        }
        if t.field() != self.field() {
            return Err(StructureError::FieldMismatch);
        }
        Ok(())
    }
}

/// A square matrix viewed as a linear self-map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearEndo {
    matrix: Matrix,
}

impl LinearEndo {
    pub fn new(matrix: Matrix) -> Result<LinearEndo, StructureError> {
        if !matrix.is_square() {
            return Err(StructureError::ShapeMismatch(
                "endomorphism must be square".into(),
            ));
        }
        Ok(LinearEndo { matrix })
    }

    pub fn identity(field: Field, d: usize) -> LinearEndo {
        LinearEndo {
            matrix: Matrix::identity(field, d),
        }
    }

    pub fn zero(field: Field, d: usize) -> LinearEndo {
        LinearEndo {
            matrix: Matrix::zeros(field, d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        apply(&self.matrix, v)
    }

    pub fn compose(&self, other: &LinearEndo) -> LinearEndo {
        LinearEndo {
            matrix: self.matrix.mul(&other.matrix).expect("same size"),
        }
    }

    pub fn commutes_with(&self, alpha: &Matrix) -> bool {
        self.matrix.mul(alpha).ok() == alpha.mul(&self.matrix).ok()
    }
}

/// `(A, alpha, mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomAssocAlgebra {
    space: HomVectorSpace,
    mu: Tensor3,
}

/// `(A, alpha, <, >)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomDendAlgebra {
    space: HomVectorSpace,
    left: Tensor3,
    right: Tensor3,
}

/// `(C, alpha, Delta)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomAssocCoalgebra {
    space: HomVectorSpace,
    delta: Tensor3,
}

/// `(C, alpha, Delta_<, Delta_>)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomDendCoalgebra {
    space: HomVectorSpace,
    coleft: Tensor3,
    coright: Tensor3,
}

/// A representation `(M, beta, mu_l, mu_r)` of a hom-associative algebra.
/// `mul_left` has shape `[dA, dM, dM]`, `mul_right` has shape `[dM, dA, dM]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomRepresentation {
    base: HomAssocAlgebra,
    module: HomVectorSpace,
    mul_left: Tensor3,
    mul_right: Tensor3,
}

impl HomAssocAlgebra {
    pub fn new(space: HomVectorSpace, mu: Tensor3) -> Result<HomAssocAlgebra, StructureError> {
        space.check_cube(&mu, "mu")?;
        Ok(HomAssocAlgebra { space, mu })
    }

    pub fn space(&self) -> &HomVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn alpha(&self) -> &Matrix {
        self.space.alpha()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn mu(&self) -> &Tensor3 {
        &self.mu
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.mu.bilinear(x, y)
    }

    /// Hom-associativity and multiplicativity on all basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let f = self.field();
        let al = self.alpha();
        let e: Vec<Vector> = (0..d).map(|i| unit(f, d, i)).collect();
        let mut rep = ValidationReport::default();
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul(&e[a], &e[b]);
                for c in 0..d {
                    let lhs = self.mul(&apply(al, &e[a]), &self.mul(&e[b], &e[c]));
                    let rhs = self.mul(&ab, &apply(al, &e[c]));
                    rep.compare("hom-associativity", &[a, b, c], lhs, rhs);
                }
                let lhs = apply(al, &ab);
                let rhs = self.mul(&apply(al, &e[a]), &apply(al, &e[b]));
                rep.compare("multiplicativity", &[a, b], lhs, rhs);
            }
        }
        rep
    }

    /// The dual hom-associative coalgebra on `A*`.
    pub fn dual(&self) -> HomAssocCoalgebra {
        HomAssocCoalgebra {
            space: HomVectorSpace {
                alpha: self.alpha().transpose(),
            },
            delta: self.mu.permute([1, 2, 0]),
        }
    }

    /// Structure transported along the basis change `P` (new basis = columns of `P`).
    pub fn change_basis(&self, p: &Matrix) -> Result<HomAssocAlgebra, StructureError> {
        let (space, pinv) = transport_space(&self.space, p)?;
        let mu = transport_product(&self.mu, p, &pinv);
        Ok(HomAssocAlgebra { space, mu })
    }

    pub fn to_field(&self, field: Field) -> Result<HomAssocAlgebra, StructureError> {
        Ok(HomAssocAlgebra {
            space: HomVectorSpace {
                alpha: self.alpha().to_field(field)?,
            },
            mu: self.mu.to_field(field)?,
        })
    }
}

impl HomDendAlgebra {
    pub fn new(
        space: HomVectorSpace,
        left: Tensor3,
        right: Tensor3,
    ) -> Result<HomDendAlgebra, StructureError> {
        space.check_cube(&left, "left")?;
        space.check_cube(&right, "right")?;
        Ok(HomDendAlgebra { space, left, right })
    }

    pub fn zero(space: HomVectorSpace) -> HomDendAlgebra {
        let d = space.dim();
        let z = Tensor3::zeros(space.field(), [d, d, d]);
        HomDendAlgebra {
            space,
            left: z.clone(),
            right: z,
        }
    }

    pub fn space(&self) -> &HomVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn alpha(&self) -> &Matrix {
        self.space.alpha()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn left(&self) -> &Tensor3 {
        &self.left
    }

    pub fn right(&self) -> &Tensor3 {
        &self.right
    }

    pub fn prec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.left.bilinear(x, y)
    }

    pub fn succ(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.right.bilinear(x, y)
    }

    pub fn star(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        add_vectors(&self.prec(x, y), &self.succ(x, y))
    }

    /// The three dendriform defects on `(e_a, e_b, e_c)`, as
    /// `(lhs, rhs)` pairs for the three axioms.
    pub fn axiom_sides(&self, a: usize, b: usize, c: usize) -> [(Vector, Vector); 3] {
        let d = self.dim();
        let f = self.field();
        let al = self.alpha();
        let (ea, eb, ec) = (unit(f, d, a), unit(f, d, b), unit(f, d, c));
        let (aa, ac) = (apply(al, &ea), apply(al, &ec));
        let ab_l = self.prec(&ea, &eb);
        let ab_r = self.succ(&ea, &eb);
        let bc_l = self.prec(&eb, &ec);
        let bc_r = self.succ(&eb, &ec);
        [
            (
                self.prec(&ab_l, &ac),
                self.prec(&aa, &add_vectors(&bc_l, &bc_r)),
            ),
            (self.prec(&ab_r, &ac), self.succ(&aa, &bc_l)),
            (
                self.succ(&add_vectors(&ab_l, &ab_r), &ac),
                self.succ(&aa, &bc_r),
            ),
        ]
    }

    /// The three axioms only (no multiplicativity).
    pub fn validate_axioms(&self) -> ValidationReport {
        let d = self.dim();
        let mut rep = ValidationReport::default();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let [s1, s2, s3] = self.axiom_sides(a, b, c);
                    rep.compare("dendriform-1", &[a, b, c], s1.0, s1.1);
                    rep.compare("dendriform-2", &[a, b, c], s2.0, s2.1);
                    rep.compare("dendriform-3", &[a, b, c], s3.0, s3.1);
                }
            }
        }
        rep
    }

    /// The three axioms plus multiplicativity of both products.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.validate_axioms();
        let d = self.dim();
        let f = self.field();
        let al = self.alpha();
        for a in 0..d {
            for b in 0..d {
                let (ea, eb) = (unit(f, d, a), unit(f, d, b));
                let (aa, ab) = (apply(al, &ea), apply(al, &eb));
                rep.compare(
                    "multiplicativity-prec",
                    &[a, b],
                    apply(al, &self.prec(&ea, &eb)),
                    self.prec(&aa, &ab),
                );
                rep.compare(
                    "multiplicativity-succ",
                    &[a, b],
                    apply(al, &self.succ(&ea, &eb)),
                    self.succ(&aa, &ab),
                );
            }
        }
        rep
    }

    pub fn dual(&self) -> HomDendCoalgebra {
        HomDendCoalgebra {
            space: HomVectorSpace {
                alpha: self.alpha().transpose(),
            },
            coleft: self.left.permute([1, 2, 0]),
            coright: self.right.permute([1, 2, 0]),
        }
    }

    pub fn change_basis(&self, p: &Matrix) -> Result<HomDendAlgebra, StructureError> {
        let (space, pinv) = transport_space(&self.space, p)?;
        Ok(HomDendAlgebra {
            space,
            left: transport_product(&self.left, p, &pinv),
            right: transport_product(&self.right, p, &pinv),
        })
    }

    pub fn to_field(&self, field: Field) -> Result<HomDendAlgebra, StructureError> {
        Ok(HomDendAlgebra {
            space: HomVectorSpace {
                alpha: self.alpha().to_field(field)?,
            },
            left: self.left.to_field(field)?,
            right: self.right.to_field(field)?,
        })
    }

    /// `(A, alpha o <, alpha o >)` with a new twisting map `alpha`; a
    /// hom-dendriform algebra whenever `alpha` is an endomorphism of the
    /// untwisted dendriform algebra `self`.
    pub fn twist(&self, alpha: &Matrix) -> Result<HomDendAlgebra, StructureError> {
        let space = HomVectorSpace::new(alpha.clone())?;
        if space.dim() != self.dim() {
            return Err(StructureError::ShapeMismatch("twist dimension".into()));
        }
        Ok(HomDendAlgebra {
            left: post_compose(&self.left, alpha),
            right: post_compose(&self.right, alpha),
            space,
        })
    }

    /// Direct sum with block-diagonal twisting map.
    pub fn direct_sum(&self, other: &HomDendAlgebra) -> HomDendAlgebra {
        HomDendAlgebra {
            space: HomVectorSpace {
                alpha: block_diag(self.alpha(), other.alpha()),
            },
            left: sum_product(&self.left, &other.left),
            right: sum_product(&self.right, &other.right),
        }
    }
}

impl HomAssocCoalgebra {
    pub fn new(space: HomVectorSpace, delta: Tensor3) -> Result<HomAssocCoalgebra, StructureError> {
        space.check_cube(&delta, "delta")?;
        Ok(HomAssocCoalgebra { space, delta })
    }

    pub fn space(&self) -> &HomVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn alpha(&self) -> &Matrix {
        self.space.alpha()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn delta(&self) -> &Tensor3 {
        &self.delta
    }

    /// Hom-coassociativity `(Delta (x) alpha) Delta = (alpha (x) Delta) Delta`
    /// and comultiplicativity.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let f = self.field();
        let mut rep = ValidationReport::default();
        for k in 0..d {
            let ek = unit(f, d, k);
            let lhs = co_left_compose(&self.delta, &self.delta, self.alpha(), &ek);
            let rhs = co_right_compose(&self.delta, &self.delta, self.alpha(), &ek);
            rep.compare("hom-coassociativity", &[k], lhs, rhs);
            comultiplicativity(&mut rep, "comultiplicativity", &self.delta, self.alpha(), k);
        }
        rep
    }

    pub fn dual(&self) -> HomAssocAlgebra {
        HomAssocAlgebra {
            space: HomVectorSpace {
                alpha: self.alpha().transpose(),
            },
            mu: self.delta.permute([2, 0, 1]),
        }
    }

    /// Regarded as a hom-dendriform coalgebra with `Delta_> = 0`.
    pub fn as_dendriform(&self) -> HomDendCoalgebra {
        let d = self.dim();
        HomDendCoalgebra {
            space: self.space.clone(),
            coleft: self.delta.clone(),
            coright: Tensor3::zeros(self.field(), [d, d, d]),
        }
    }
}

impl HomDendCoalgebra {
    pub fn new(
        space: HomVectorSpace,
        coleft: Tensor3,
        coright: Tensor3,
    ) -> Result<HomDendCoalgebra, StructureError> {
        space.check_cube(&coleft, "coleft")?;
        space.check_cube(&coright, "coright")?;
        Ok(HomDendCoalgebra {
            space,
            coleft,
            coright,
        })
    }

    pub fn space(&self) -> &HomVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn alpha(&self) -> &Matrix {
        self.space.alpha()
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn coleft(&self) -> &Tensor3 {
        &self.coleft
    }

    pub fn coright(&self) -> &Tensor3 {
        &self.coright
    }

    /// The three coalgebra axioms (no comultiplicativity).
    pub fn validate_axioms(&self) -> ValidationReport {
        let d = self.dim();
        let f = self.field();
        let al = self.alpha();
        let total = self.coleft.add(&self.coright);
        let mut rep = ValidationReport::default();
        for k in 0..d {
            let ek = unit(f, d, k);
            rep.compare(
                "codendriform-1",
                &[k],
                co_left_compose(&self.coleft, &self.coleft, al, &ek),
                co_right_compose(&total, &self.coleft, al, &ek),
            );
            rep.compare(
                "codendriform-2",
                &[k],
                co_left_compose(&self.coright, &self.coleft, al, &ek),
                co_right_compose(&self.coleft, &self.coright, al, &ek),
            );
            rep.compare(
                "codendriform-3",
                &[k],
                co_left_compose(&total, &self.coright, al, &ek),
                co_right_compose(&self.coright, &self.coright, al, &ek),
            );
        }
        rep
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.validate_axioms();
        for k in 0..self.dim() {
            comultiplicativity(
                &mut rep,
                "comultiplicativity-prec",
                &self.coleft,
                self.alpha(),
                k,
            );
            comultiplicativity(
                &mut rep,
                "comultiplicativity-succ",
                &self.coright,
                self.alpha(),
                k,
            );
        }
        rep
    }

    pub fn dual(&self) -> HomDendAlgebra {
        HomDendAlgebra {
            space: HomVectorSpace {
                alpha: self.alpha().transpose(),
            },
            left: self.coleft.permute([2, 0, 1]),
            right: self.coright.permute([2, 0, 1]),
        }
    }

    /// `(C, alpha, Delta_< + Delta_>)`.
    pub fn induced_coassoc(&self) -> HomAssocCoalgebra {
        HomAssocCoalgebra {
            space: self.space.clone(),
            delta: self.coleft.add(&self.coright),
        }
    }

    pub fn to_field(&self, field: Field) -> Result<HomDendCoalgebra, StructureError> {
        Ok(HomDendCoalgebra {
            space: HomVectorSpace {
                alpha: self.alpha().to_field(field)?,
            },
            coleft: self.coleft.to_field(field)?,
            coright: self.coright.to_field(field)?,
        })
    }
}

/// `(outer (x) alpha) o inner` applied to `x`, flattened in `C^{(x)3}`.
/// `(outer (x) alpha) o inner`.
fn co_left_compose(outer: &Tensor3, inner: &Tensor3, alpha: &Matrix, x: &[Scalar]) -> Vector {
    let d = alpha.rows();
    let f = alpha.field();
    let first = inner.co_apply(x);
    let mut out = zero_vector(f, d * d * d);
    for i in 0..d {
        for j in 0..d {
            let w = &first[i * d + j];
            if w.is_zero() {
                continue;
            }
            let left = outer.co_apply(&unit(f, d, i));
            let right = alpha.column(j);
            for (ab, la) in left.iter().enumerate() {
                if la.is_zero() {
                    continue;
                }
                for (c, rc) in right.iter().enumerate() {
                    if !rc.is_zero() {
                        let o = ab * d + c;
                        out[o] = &out[o] + &(&(w * la) * rc);
                    }
                }
            }
        }
    }
    out
}

/// `(alpha (x) outer) o inner` applied to `x`.
/// `(alpha (x) outer) o inner`.
fn co_right_compose(outer: &Tensor3, inner: &Tensor3, alpha: &Matrix, x: &[Scalar]) -> Vector {
    let d = alpha.rows();
    let f = alpha.field();
    let first = inner.co_apply(x);
    let mut out = zero_vector(f, d * d * d);
    for i in 0..d {
        for j in 0..d {
            let w = &first[i * d + j];
            if w.is_zero() {
                continue;
            }
            let left = alpha.column(i);
            let right = outer.co_apply(&unit(f, d, j));
            for (a, la) in left.iter().enumerate() {
                if la.is_zero() {
                    continue;
                }
                for (bc, rb) in right.iter().enumerate() {
                    if !rb.is_zero() {
                        let o = a * d * d + bc;
                        out[o] = &out[o] + &(&(w * la) * rb);
                    }
                }
            }
        }
    }
    out
}

fn comultiplicativity(
    rep: &mut ValidationReport,
    name: &str,
    delta: &Tensor3,
    alpha: &Matrix,
    k: usize,
) {
    let d = alpha.rows();
    let ek = unit(alpha.field(), d, k);
    let lhs = apply_pair(alpha, alpha, &delta.co_apply(&ek));
    let rhs = delta.co_apply(&apply(alpha, &ek));
    rep.compare(name, &[k], lhs, rhs);
}

fn post_compose(t: &Tensor3, m: &Matrix) -> Tensor3 {
    let [a, b, _] = t.dims();
    let mut out = Tensor3::zeros(t.field(), [a, b, m.rows()]);
    for i in 0..a {
        for j in 0..b {
            let start = t.offset(i, j, 0);
            let v = apply(m, &t.data[start..start + t.dims()[2]]);
            for (k, x) in v.into_iter().enumerate() {
                out.set(i, j, k, x);
            }
        }
    }
    out
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.rows(), b.rows());
    let mut out = Matrix::zeros(a.field(), n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[(n + i, n + j)] = b[(i, j)].clone();
        }
    }
    out
}

fn sum_product(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    let (n, m) = (a.dims()[0], b.dims()[0]);
    let mut out = Tensor3::zeros(a.field(), [n + m; 3]);
    for ([i, j, k], x) in a.nonzero() {
        out.set(i, j, k, x.clone());
    }
    for ([i, j, k], x) in b.nonzero() {
        out.set(n + i, n + j, n + k, x.clone());
    }
    out
}

fn transport_space(
    space: &HomVectorSpace,
    p: &Matrix,
) -> Result<(HomVectorSpace, Matrix), StructureError> {
    let pinv = p
        .inverse()
        .ok_or_else(|| StructureError::ShapeMismatch("basis change is not invertible".into()))?;
    if p.rows() != space.dim() {
        return Err(StructureError::ShapeMismatch("basis change size".into()));
    }
    let alpha = pinv
        .mul(&space.alpha)
        .and_then(|m| m.mul(p))
        .expect("sizes agree");
    Ok((HomVectorSpace { alpha }, pinv))
}

/// `mu'(x, y) = P^{-1} mu(P x, P y)`.
fn transport_product(t: &Tensor3, p: &Matrix, pinv: &Matrix) -> Tensor3 {
    let d = p.rows();
    let f = p.field();
    let mut out = Tensor3::zeros(f, [d, d, d]);
    for a in 0..d {
        let pa = p.column(a);
        for b in 0..d {
            let v = apply(pinv, &t.bilinear(&pa, &p.column(b)));
            for (k, x) in v.into_iter().enumerate() {
                out.set(a, b, k, x);
            }
        }
    }
    out
}

/// The product tensor of `a * b = a < b + a > b`.
pub fn induced_assoc(a: &HomDendAlgebra) -> HomAssocAlgebra {
    HomAssocAlgebra {
        space: a.space.clone(),
        mu: a.left.add(&a.right),
    }
}

/// Like [`induced_assoc`] but refuses inputs that fail validation.
pub fn induced_assoc_checked(a: &HomDendAlgebra) -> Result<HomAssocAlgebra, StructureError> {
    a.validate().into_result()?;
    Ok(induced_assoc(a))
}

/// The left hom-preLie product `a <> b = a > b - b < a` and the check of
/// its defining identity on all basis triples.
#[derive(Debug, Clone)]
pub struct PreLieCheckReport {
    pub diamond: Tensor3,
    pub report: ValidationReport,
}

pub fn induced_prelie(a: &HomDendAlgebra) -> Result<PreLieCheckReport, StructureError> {
    a.validate().into_result()?;
    Ok(prelie_unchecked(a))
}

fn prelie_unchecked(a: &HomDendAlgebra) -> PreLieCheckReport {
    let d = a.dim();
    let f = a.field();
    let diamond = a.right.sub(&a.left.permute([1, 0, 2]));
    let al = a.alpha();
    let dia = |x: &[Scalar], y: &[Scalar]| diamond.bilinear(x, y);
    let mut report = ValidationReport::default();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (unit(f, d, i), unit(f, d, j), unit(f, d, k));
                let (ax, ay, az) = (apply(al, &x), apply(al, &y), apply(al, &z));
                let lhs = sub_vectors(&dia(&dia(&x, &y), &az), &dia(&ax, &dia(&y, &z)));
                let rhs = sub_vectors(&dia(&dia(&y, &x), &az), &dia(&ay, &dia(&x, &z)));
                report.compare("left-hom-prelie", &[i, j, k], lhs, rhs);
            }
        }
    }
    PreLieCheckReport { diamond, report }
}

/// Commutator brackets of `*` and of `<>`.
#[derive(Debug, Clone)]
pub struct BracketPair {
    pub from_assoc: Tensor3,
    pub from_prelie: Tensor3,
}

impl BracketPair {
    pub fn coincide(&self) -> bool {
        self.from_assoc == self.from_prelie
    }
}

pub fn induced_lie_brackets(a: &HomDendAlgebra) -> Result<BracketPair, StructureError> {
    a.validate().into_result()?;
    let star = a.left.add(&a.right);
    let diamond = a.right.sub(&a.left.permute([1, 0, 2]));
    Ok(BracketPair {
        from_assoc: star.sub(&star.permute([1, 0, 2])),
        from_prelie: diamond.sub(&diamond.permute([1, 0, 2])),
    })
}

/// Weight-zero Rota-Baxter identity and `alpha R = R alpha`.
pub fn check_rota_baxter(
    a: &HomAssocAlgebra,
    r: &LinearEndo,
) -> Result<ValidationReport, StructureError> {
    if r.dim() != a.dim() || r.matrix().field() != a.field() {
        return Err(StructureError::ShapeMismatch("operator size".into()));
    }
    let d = a.dim();
    let f = a.field();
    let mut rep = ValidationReport::default();
    let ar = a.alpha().mul(r.matrix()).expect("square");
    let ra = r.matrix().mul(a.alpha()).expect("square");
    for i in 0..d {
        rep.compare("alpha-commutes", &[i], ar.column(i), ra.column(i));
    }
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (unit(f, d, i), unit(f, d, j));
            let (rx, ry) = (r.apply(&x), r.apply(&y));
            let lhs = a.mul(&rx, &ry);
            let rhs = r.apply(&add_vectors(&a.mul(&x, &ry), &a.mul(&rx, &y)));
            rep.compare("rota-baxter", &[i, j], lhs, rhs);
        }
    }
    Ok(rep)
}

/// `a < b = a R(b)`, `a > b = R(a) b`.
pub fn from_rota_baxter(
    a: &HomAssocAlgebra,
    r: &LinearEndo,
) -> Result<HomDendAlgebra, StructureError> {
    let rep = check_rota_baxter(a, r)?;
    if !rep.is_valid() {
        return Err(StructureError::NotRotaBaxter(rep));
    }
    let regular = HomRepresentation::regular(a);
    Ok(split_by_operator(&regular, r.matrix()))
}

impl HomRepresentation {
    pub fn new(
        base: HomAssocAlgebra,
        module: HomVectorSpace,
        mul_left: Tensor3,
        mul_right: Tensor3,
    ) -> Result<HomRepresentation, StructureError> {
        let (da, dm) = (base.dim(), module.dim());
        if mul_left.dims() != [da, dm, dm] || mul_right.dims() != [dm, da, dm] {
            return Err(StructureError::ShapeMismatch(format!(
                "actions must have shapes [{da}, {dm}, {dm}] and [{dm}, {da}, {dm}]"
            )));
        }
        let f = base.field();
        if module.field() != f || mul_left.field() != f || mul_right.field() != f {
            return Err(StructureError::FieldMismatch);
        }
        Ok(HomRepresentation {
            base,
            module,
            mul_left,
            mul_right,
        })
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &HomAssocAlgebra) -> HomRepresentation {
        HomRepresentation {
            base: a.clone(),
            module: a.space.clone(),
            mul_left: a.mu.clone(),
            mul_right: a.mu.clone(),
        }
    }

    pub fn base(&self) -> &HomAssocAlgebra {
        &self.base
    }

    pub fn module(&self) -> &HomVectorSpace {
        &self.module
    }

    pub fn mul_left(&self) -> &Tensor3 {
        &self.mul_left
    }

    pub fn mul_right(&self) -> &Tensor3 {
        &self.mul_right
    }

    fn act_left(&self, a: &[Scalar], m: &[Scalar]) -> Vector {
        self.mul_left.bilinear(a, m)
    }

    fn act_right(&self, m: &[Scalar], a: &[Scalar]) -> Vector {
        self.mul_right.bilinear(m, a)
    }

    /// Base algebra validity, compatibility with `beta`, and the three module identities.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.base.validate();
        let (da, dm) = (self.base.dim(), self.module.dim());
        let f = self.base.field();
        let al = self.base.alpha();
        let be = self.module.alpha();
        for i in 0..da {
            let a = unit(f, da, i);
            let aa = apply(al, &a);
            for k in 0..dm {
                let m = unit(f, dm, k);
                let bm = apply(be, &m);
                rep.compare(
                    "beta-left",
                    &[i, k],
                    apply(be, &self.act_left(&a, &m)),
                    self.act_left(&aa, &bm),
                );
                rep.compare(
                    "beta-right",
                    &[k, i],
                    apply(be, &self.act_right(&m, &a)),
                    self.act_right(&bm, &aa),
                );
                for j in 0..da {
                    let b = unit(f, da, j);
                    let ab = apply(al, &b);
                    rep.compare(
                        "module-left",
                        &[i, j, k],
                        self.act_left(&self.base.mul(&a, &b), &bm),
                        self.act_left(&aa, &self.act_left(&b, &m)),
                    );
                    rep.compare(
                        "module-middle",
                        &[i, k, j],
                        self.act_right(&self.act_left(&a, &m), &ab),
                        self.act_left(&aa, &self.act_right(&m, &b)),
                    );
                    rep.compare(
                        "module-right",
                        &[k, i, j],
                        self.act_right(&self.act_right(&m, &a), &ab),
                        self.act_right(&bm, &self.base.mul(&a, &b)),
                    );
                }
            }
        }
        rep
    }
}

/// `alpha R = R beta` and `R(m) R(n) = R(m R(n) + R(m) n)` for `R: M -> A`
/// given as a `dA x dM` matrix.
pub fn check_o_operator(
    rep: &HomRepresentation,
    r: &Matrix,
) -> Result<ValidationReport, StructureError> {
    let (da, dm) = (rep.base.dim(), rep.module.dim());
    if r.rows() != da || r.cols() != dm || r.field() != rep.base.field() {
        return Err(StructureError::ShapeMismatch(format!(
            "O-operator must be {da}x{dm}"
        )));
    }
    let f = rep.base.field();
    let mut out = ValidationReport::default();
    let ar = rep.base.alpha().mul(r).expect("sizes");
    let rb = r.mul(rep.module.alpha()).expect("sizes");
    for k in 0..dm {
        out.compare("alpha-intertwines", &[k], ar.column(k), rb.column(k));
    }
    for k in 0..dm {
        for l in 0..dm {
            let (m, n) = (unit(f, dm, k), unit(f, dm, l));
            let (rm, rn) = (apply(r, &m), apply(r, &n));
            let lhs = rep.base.mul(&rm, &rn);
            let rhs = apply(
                r,
                &add_vectors(&rep.act_right(&m, &rn), &rep.act_left(&rm, &n)),
            );
            out.compare("o-operator", &[k, l], lhs, rhs);
        }
    }
    Ok(out)
}

/// `m < n = m R(n)`, `m > n = R(m) n` on `(M, beta)`.
pub fn from_o_operator(
    rep: &HomRepresentation,
    r: &Matrix,
) -> Result<HomDendAlgebra, StructureError> {
    let report = check_o_operator(rep, r)?;
    if !report.is_valid() {
        return Err(StructureError::NotOOperator(report));
    }
    Ok(split_by_operator(rep, r))
}

fn split_by_operator(rep: &HomRepresentation, r: &Matrix) -> HomDendAlgebra {
    let dm = rep.module.dim();
    let f = rep.base.field();
    let mut left = Tensor3::zeros(f, [dm, dm, dm]);
    let mut right = Tensor3::zeros(f, [dm, dm, dm]);
    for k in 0..dm {
        let m = unit(f, dm, k);
        let rm = apply(r, &m);
        for l in 0..dm {
            let n = unit(f, dm, l);
            let rn = apply(r, &n);
            for (o, x) in rep.act_right(&m, &rn).into_iter().enumerate() {
                left.set(k, l, o, x);
            }
            for (o, x) in rep.act_left(&rm, &n).into_iter().enumerate() {
                right.set(k, l, o, x);
            }
        }
    }
    HomDendAlgebra {
        space: rep.module.clone(),
        left,
        right,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn id_space(d: usize) -> HomVectorSpace {
        HomVectorSpace::untwisted(Q, d)
    }

    /// e1 e1 = e1, e1 e2 = e2 (0-based: 0*0=0, 0*1=1).
    fn example_assoc() -> HomAssocAlgebra {
        HomAssocAlgebra::new(
            id_space(2),
            Tensor3::cube(Q, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)]),
        )
        .unwrap()
    }

    fn example_r() -> LinearEndo {
        // R(e1) = e2, R(e2) = 0
        LinearEndo::new(Matrix::from_i64(Q, &[&[0, 0], &[1, 0]])).unwrap()
    }

    fn one_dim(left: i64, right: i64) -> HomDendAlgebra {
        HomDendAlgebra::new(
            id_space(1),
            Tensor3::cube(Q, 1, &[(0, 0, 0, left)]),
            Tensor3::cube(Q, 1, &[(0, 0, 0, right)]),
        )
        .unwrap()
    }

    #[test]
    fn hom_assoc_examples() {
        let zero = HomAssocAlgebra::new(
            HomVectorSpace::new(Matrix::from_i64(Q, &[&[2, 1], &[0, 3]])).unwrap(),
            Tensor3::zeros(Q, [2, 2, 2]),
        )
        .unwrap();
        assert!(zero.validate().is_valid());
        assert!(example_assoc().validate().is_valid());
        let bad = HomAssocAlgebra::new(
            id_space(2),
            Tensor3::cube(Q, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 1, 0, 1)]),
        )
        .unwrap();
        let rep = bad.validate();
        let v = rep
            .of("hom-associativity")
            .find(|v| v.basis == vec![1, 1, 1])
            .expect("violation at (e2,e2,e2)");
        // alpha(e2)(e2 e2) = e2 e1 = 0 ; (e2 e2) alpha(e2) = e1 e2 = e2
        assert_eq!(v.lhs, vec![Q.zero(), Q.zero()]);
        assert_eq!(v.rhs, vec![Q.zero(), Q.one()]);
    }

    #[test]
    fn hom_dend_examples() {
        let any_alpha = HomVectorSpace::new(Matrix::from_i64(Q, &[&[1, 2], &[3, 4]])).unwrap();
        assert!(HomDendAlgebra::zero(any_alpha).validate().is_valid());
        assert!(one_dim(1, 0).validate().is_valid());
        let bad = one_dim(1, 1).validate();
        let v = bad.of("dendriform-1").next().unwrap();
        assert_eq!(v.lhs, vec![Q.int(1)]);
        assert_eq!(v.rhs, vec![Q.int(2)]);
    }

    #[test]
    fn coalgebra_examples() {
        let z = HomDendCoalgebra::new(
            id_space(2),
            Tensor3::zeros(Q, [2, 2, 2]),
            Tensor3::zeros(Q, [2, 2, 2]),
        )
        .unwrap();
        assert!(z.validate().is_valid());
        let dend = from_rota_baxter(&example_assoc(), &example_r()).unwrap();
        let co = dend.dual();
        assert!(co.validate().is_valid());
        // Delta_<(e2*) = e1* (x) e1*
        assert_eq!(co.coleft().nonzero(), vec![([1, 0, 0], &Q.one())]);
        assert!(co.coright().is_zero());
        let assoc_co = example_assoc().dual();
        assert!(assoc_co.validate().is_valid());
        assert!(assoc_co.as_dendriform().validate().is_valid());
        assert_eq!(co.dual(), dend);
        assert_eq!(assoc_co.dual(), example_assoc());
    }

    #[test]
    fn induced_structures() {
        let d1 = one_dim(1, 0);
        assert_eq!(
            induced_assoc(&d1).mu(),
            &Tensor3::cube(Q, 1, &[(0, 0, 0, 1)])
        );
        let pl = induced_prelie(&d1).unwrap();
        assert_eq!(pl.diamond, Tensor3::cube(Q, 1, &[(0, 0, 0, -1)]));
        assert!(pl.report.is_valid());
        let br = induced_lie_brackets(&d1).unwrap();
        assert!(br.from_assoc.is_zero() && br.coincide());

        let z = HomDendAlgebra::zero(id_space(2));
        assert!(induced_assoc(&z).mu().is_zero());
        assert!(induced_prelie(&z).unwrap().diamond.is_zero());

        let rb = from_rota_baxter(&example_assoc(), &example_r()).unwrap();
        assert!(induced_prelie(&rb).unwrap().report.is_valid());
        assert!(induced_lie_brackets(&rb).unwrap().coincide());
        assert!(matches!(
            induced_prelie(&one_dim(1, 1)),
            Err(StructureError::InvalidInput(_))
        ));
    }

    #[test]
    fn rota_baxter_examples() {
        let a = example_assoc();
        assert!(check_rota_baxter(&a, &LinearEndo::zero(Q, 2))
            .unwrap()
            .is_valid());
        assert!(check_rota_baxter(&a, &example_r()).unwrap().is_valid());
        let bad = LinearEndo::new(Matrix::from_i64(Q, &[&[1, 0], &[0, 0]])).unwrap();
        let rep = check_rota_baxter(&a, &bad).unwrap();
        let v = rep
            .of("rota-baxter")
            .find(|v| v.basis == vec![0, 0])
            .unwrap();
        assert_eq!(v.lhs, vec![Q.int(1), Q.zero()]);
        assert_eq!(v.rhs, vec![Q.int(2), Q.zero()]);
        assert!(matches!(
            from_rota_baxter(&a, &bad),
            Err(StructureError::NotRotaBaxter(_))
        ));

        let zero = from_rota_baxter(&a, &LinearEndo::zero(Q, 2)).unwrap();
        assert!(zero.left().is_zero() && zero.right().is_zero());

        let d = from_rota_baxter(&a, &example_r()).unwrap();
        assert_eq!(d.left().nonzero(), vec![([0, 0, 1], &Q.one())]);
        assert!(d.right().is_zero());
        assert!(d.validate().is_valid());
    }

    #[test]
    fn regular_o_operator_matches_rota_baxter() {
        let a = example_assoc();
        let rep = HomRepresentation::regular(&a);
        assert!(rep.validate().is_valid());
        let via_o = from_o_operator(&rep, example_r().matrix()).unwrap();
        assert_eq!(via_o, from_rota_baxter(&a, &example_r()).unwrap());
        let zero = from_o_operator(&rep, &Matrix::zeros(Q, 2, 2)).unwrap();
        assert!(zero.left().is_zero() && zero.right().is_zero());
        assert!(matches!(
            check_o_operator(&rep, &Matrix::zeros(Q, 2, 3)),
            Err(StructureError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn shape_errors() {
        assert!(HomVectorSpace::new(Matrix::zeros(Q, 2, 3)).is_err());
        assert!(HomAssocAlgebra::new(id_space(2), Tensor3::zeros(Q, [2, 2, 3])).is_err());
        assert!(Tensor3::from_entries(Q, [2, 2, 2], &[(2, 0, 0, Q.one())]).is_err());
        let f = Field::prime(5).unwrap();
        assert!(matches!(
            HomAssocAlgebra::new(id_space(2), Tensor3::zeros(f, [2, 2, 2])),
            Err(StructureError::FieldMismatch)
        ));
    }

    #[test]
    fn basis_change_preserves_validity() {
        let d = from_rota_baxter(&example_assoc(), &example_r()).unwrap();
        let p = Matrix::from_i64(Q, &[&[1, 1], &[1, 2]]);
        let moved = d.change_basis(&p).unwrap();
        assert!(moved.validate().is_valid());
        let back = moved.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
