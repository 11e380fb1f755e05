//! Equivariant cochain bases, differential matrices, Betti numbers and
//! cohomology representatives, plus two oracles that avoid the operadic
//! composition code: the displayed explicit differential and a direct
//! derivation solver.

use std::sync::OnceLock;

use thiserror::Error;

use crate::combinat::{r0, ri, FormalLabelSum, Label};
use crate::field::{Field, Scalar};
use crate::linalg::{
    kernel_basis, solve, span_with_relations, zero_vector, LinalgError, Matrix, SubspaceBasis,
    Vector,
};
use crate::operad::{
    ambient_dim, Cochain, Flavor, OperadError, OperadWithMultiplication, TwistMode, TwistedOperad,
};
use crate::structures::{HomAssocAlgebra, HomDendAlgebra, Tensor3, ValidationReport};

pub const DEFAULT_DEGREE_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CohomologyError {
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid input: {0}")]
    InvalidInput(ValidationReport),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A basis of the `alpha`-equivariant degree-`n` cochains.
#[derive(Debug, Clone, PartialEq)]
pub struct CochainBasis {
    flavor: Flavor,
    dim: usize,
    degree: usize,
    basis: SubspaceBasis,
}

impl CochainBasis {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn subspace(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn cochain(&self, k: usize) -> Cochain {
        self.wrap(self.basis.vectors()[k].clone())
    }

    pub fn cochains(&self) -> Vec<Cochain> {
        (0..self.dim()).map(|k| self.cochain(k)).collect()
    }

    /// The cochain with the given coordinates.
    pub fn decode(&self, coords: &[Scalar]) -> Cochain {
        self.wrap(self.basis.combine(coords))
    }

    /// Coordinates of `f`, or `None` if it is not equivariant.
    pub fn coordinates(&self, f: &Cochain) -> Option<Vector> {
        self.basis
            .coordinates(f.coeffs())
            .expect("ambient length matches")
    }

    fn wrap(&self, v: Vector) -> Cochain {
        Cochain::from_coeffs(self.flavor, self.field(), self.dim, self.degree, v)
            .expect("basis vectors have ambient length")
    }
}

/// Kernel of `f -> alpha o f - f o alpha^{(x)n}` (coalgebra flavors:
/// `s -> alpha^{(x)n} o s - s o alpha`).
pub fn equivariant_basis(
    op: &TwistedOperad,
    n: usize,
    cap: usize,
) -> Result<CochainBasis, CohomologyError> {
    if n == 0 {
        return Err(CohomologyError::ZeroDegree);
    }
    if n > cap {
        return Err(CohomologyError::DegreeCapExceeded { degree: n, cap });
    }
    let (flavor, d, field) = (op.flavor(), op.dim(), op.field());
    let len = ambient_dim(flavor, d, n);
    let vacuous =
        op.mode() == TwistMode::Untwisted || op.alpha().is_identity() || op.alpha().is_zero();
    let basis = if vacuous {
        SubspaceBasis::full(field, len)
    } else {
        let images = (0..len)
            .map(|k| {
                let mut unit = zero_vector(field, len);
                unit[k] = Scalar::one(field);
                let c = Cochain::from_coeffs(flavor, field, d, n, unit).expect("length");
                op.equivariance_defect(&c).into_coeffs()
            })
            .collect();
        span_with_relations(field, len, images)?.1
    };
    Ok(CochainBasis {
        flavor,
        dim: d,
        degree: n,
        basis,
    })
}

/// Dimensions and representatives of `H^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyReport {
    pub flavor: Flavor,
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    /// Cocycles reduced modulo coboundaries, one per basis class.
    pub representatives: Vec<Cochain>,
}

/// Cohomology class data of a single cochain.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassInfo {
    pub is_cocycle: bool,
    /// Canonical form of the cochain modulo coboundaries.
    pub reduced: Cochain,
    pub is_coboundary: bool,
}

#[derive(Debug)]
struct DiffData {
    images: Vec<Cochain>,
    image: SubspaceBasis,
    cocycles: SubspaceBasis,
}

/// Lazily computed cohomology of one operad with multiplication.
#[derive(Debug)]
pub struct CohomologyEngine {
    owm: OperadWithMultiplication,
    cap: usize,
    bases: Vec<OnceLock<Result<CochainBasis, CohomologyError>>>,
    diffs: Vec<OnceLock<Result<DiffData, CohomologyError>>>,
}

impl CohomologyEngine {
    pub fn new(owm: OperadWithMultiplication) -> CohomologyEngine {
        CohomologyEngine::with_cap(owm, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(owm: OperadWithMultiplication, cap: usize) -> CohomologyEngine {
        CohomologyEngine {
            owm,
            cap,
            bases: (0..=cap).map(|_| OnceLock::new()).collect(),
            diffs: (0..=cap).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn owm(&self) -> &OperadWithMultiplication {
        &self.owm
    }

    pub fn flavor(&self) -> Flavor {
        self.owm.flavor()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_degree(&self, n: usize) -> Result<(), CohomologyError> {
        if n == 0 {
            return Err(CohomologyError::ZeroDegree);
        }
        if n > self.cap {
            return Err(CohomologyError::DegreeCapExceeded {
                degree: n,
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn basis(&self, n: usize) -> Result<&CochainBasis, CohomologyError> {
        self.check_degree(n)?;
        self.bases[n]
            .get_or_init(|| equivariant_basis(self.owm.operad(), n, self.cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn diff(&self, n: usize) -> Result<&DiffData, CohomologyError> {
        self.check_degree(n)?;
        self.diffs[n]
            .get_or_init(|| self.compute_diff(n))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_diff(&self, n: usize) -> Result<DiffData, CohomologyError> {
        let basis = self.basis(n)?;
        let op = self.owm.operad();
        let mut images = Vec::with_capacity(basis.dim());
        for (k, b) in basis.cochains().into_iter().enumerate() {
            let db = self.owm.differential(&b)?;
            if !op.is_equivariant(&db) {
                return Err(CohomologyError::InternalInconsistency(format!(
                    "differential of basis cochain {k} in degree {n} is not equivariant"
                )));
            }
            images.push(db);
        }
        let len = ambient_dim(self.flavor(), self.owm.dim(), n + 1);
        let vectors = images.iter().map(|c| c.coeffs().to_vec()).collect();
        let (image, cocycles) = span_with_relations(self.owm.field(), len, vectors)?;
        Ok(DiffData {
            images,
            image,
            cocycles,
        })
    }

    /// `delta` applied to each basis cochain of degree `n`.
    pub fn differential_images(&self, n: usize) -> Result<&[Cochain], CohomologyError> {
        Ok(&self.diff(n)?.images)
    }

    /// Rank of `delta^n`.
    pub fn rank(&self, n: usize) -> Result<usize, CohomologyError> {
        if n == 0 {
            return Ok(0);
        }
        Ok(self.diff(n)?.image.dim())
    }

    /// `delta^{n-1}(C^{n-1})` inside the ambient coefficient space of degree `n`.
    pub fn coboundaries(&self, n: usize) -> Result<SubspaceBasis, CohomologyError> {
        self.check_degree(n)?;
        if n == 1 {
            let len = ambient_dim(self.flavor(), self.owm.dim(), 1);
            return Ok(SubspaceBasis::zero(self.owm.field(), len));
        }
        Ok(self.diff(n - 1)?.image.clone())
    }

    /// Cocycles of degree `n`, in coordinates of [`CohomologyEngine::basis`].
    pub fn cocycle_coordinates(&self, n: usize) -> Result<&SubspaceBasis, CohomologyError> {
        Ok(&self.diff(n)?.cocycles)
    }

    pub fn betti(&self, n: usize) -> Result<usize, CohomologyError> {
        let cochains = self.basis(n)?.dim();
        Ok(cochains - self.rank(n)? - self.rank(n - 1)?)
    }

    pub fn report(&self, n: usize) -> Result<CohomologyReport, CohomologyError> {
        let basis = self.basis(n)?;
        let cocycle_coords = self.cocycle_coordinates(n)?;
        let coboundaries = self.coboundaries(n)?;
        let dim_cocycles = cocycle_coords.dim();
        let dim_coboundaries = coboundaries.dim();
        if dim_coboundaries > dim_cocycles {
            return Err(CohomologyError::InternalInconsistency(format!(
                "degree {n}: more coboundaries ({dim_coboundaries}) than cocycles ({dim_cocycles})"
            )));
        }
        let mut seen = coboundaries.clone();
        let mut representatives = Vec::new();
        for coords in cocycle_coords.vectors() {
            let z = basis.decode(coords);
            let (_, inside) = seen.coset_reduce(z.coeffs())?;
            if inside {
                continue;
            }
            let (reduced, _) = coboundaries.coset_reduce(z.coeffs())?;
            seen = seen.extend(vec![reduced.clone()])?;
            representatives.push(
                Cochain::from_coeffs(z.flavor(), z.field(), z.dim(), n, reduced)
                    .expect("same shape"),
            );
        }
        let betti = dim_cocycles - dim_coboundaries;
        if representatives.len() != betti {
            return Err(CohomologyError::InternalInconsistency(format!(
                "degree {n}: {} representatives for betti {betti}",
                representatives.len()
            )));
        }
        Ok(CohomologyReport {
            flavor: self.flavor(),
            degree: n,
            dim_cochains: basis.dim(),
            dim_cocycles,
            dim_coboundaries,
            betti,
            representatives,
        })
    }

    /// Matrix of `delta^n` from the degree-`n` basis to the degree-`n+1` basis.
    pub fn differential_matrix(&self, n: usize) -> Result<Matrix, CohomologyError> {
        let source = self.basis(n)?;
        let target = self.basis(n + 1)?;
        let images = self.differential_images(n)?;
        let mut columns = Vec::with_capacity(images.len());
        for (k, img) in images.iter().enumerate() {
            let coords = target.coordinates(img).ok_or_else(|| {
                CohomologyError::InternalInconsistency(format!(
                    "image of basis cochain {k} leaves the equivariant subspace"
                ))
            })?;
            columns.push(coords);
        }
        debug_assert_eq!(columns.len(), source.dim());
        Ok(Matrix::from_columns(
            self.owm.field(),
            target.dim(),
            &columns,
        ))
    }

    pub fn is_cocycle(&self, z: &Cochain) -> Result<bool, CohomologyError> {
        Ok(self.owm.differential(z)?.is_zero())
    }

    /// Cocycle test and canonical coset form modulo coboundaries.
    pub fn class_of(&self, z: &Cochain) -> Result<ClassInfo, CohomologyError> {
        let n = z.degree();
        let is_cocycle = self.is_cocycle(z)?;
        let (reduced, is_coboundary) = self.coboundaries(n)?.coset_reduce(z.coeffs())?;
        Ok(ClassInfo {
            is_cocycle,
            reduced: Cochain::from_coeffs(z.flavor(), z.field(), z.dim(), n, reduced)
                .expect("same shape"),
            is_coboundary,
        })
    }

    /// An equivariant `x` of degree `n` with `delta x = target` (degree
    /// `n + 1`), choosing zero for every free coordinate; `None` when
    /// `target` is not a coboundary.
    pub fn solve_coboundary(&self, target: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
        let n = target
            .degree()
            .checked_sub(1)
            .filter(|&n| n >= 1)
            .ok_or(CohomologyError::ZeroDegree)?;
        let images = self.differential_images(n)?;
        let rows = target.coeffs().len();
        let columns: Vec<Vector> = images.iter().map(|c| c.coeffs().to_vec()).collect();
        let m = Matrix::from_columns(self.owm.field(), rows, &columns);
        let Some(coords) = solve(&m, target.coeffs())? else {
            return Ok(None);
        };
        Ok(Some(self.basis(n)?.decode(&coords)))
    }
}

/// Derivations commuting with `alpha`, in the degree-1 cochain layout
/// (`phi[(p, q)]` at position `q * d + p`), solved directly from the
/// Leibniz rules of every given product.
fn derivations_of(alpha: &Matrix, products: &[&Tensor3]) -> SubspaceBasis {
    let d = alpha.rows();
    let f = alpha.field();
    let var = |q: usize, p: usize| q * d + p;
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut row = zero_vector(f, d * d);
            for l in 0..d {
                row[var(j, l)] = &row[var(j, l)] + &alpha[(i, l)];
                row[var(l, i)] = &row[var(l, i)] - &alpha[(l, j)];
            }
            rows.push(row);
        }
    }
    for t in products {
        for a in 0..d {
            for b in 0..d {
                for k in 0..d {
                    let mut row = zero_vector(f, d * d);
                    for c in 0..d {
                        row[var(c, k)] = &row[var(c, k)] + t.get(a, b, c);
                    }
                    for p in 0..d {
                        row[var(b, p)] = &row[var(b, p)] - t.get(a, p, k);
                        row[var(a, p)] = &row[var(a, p)] - t.get(p, b, k);
                    }
                    rows.push(row);
                }
            }
        }
    }
    let m = Matrix::from_rows(f, rows).expect("rows have d^2 entries");
    kernel_basis(&m)
}

/// Linear maps `phi` with `phi alpha = alpha phi` that are derivations of
/// both products.
pub fn derivation_space(a: &HomDendAlgebra) -> Result<SubspaceBasis, CohomologyError> {
    let rep = a.validate();
    if !rep.is_valid() {
        return Err(CohomologyError::InvalidInput(rep));
    }
    Ok(derivations_of(a.alpha(), &[a.left(), a.right()]))
}

/// Derivations of a hom-associative algebra commuting with `alpha`.
pub fn assoc_derivation_space(a: &HomAssocAlgebra) -> Result<SubspaceBasis, CohomologyError> {
    let rep = a.validate();
    if !rep.is_valid() {
        return Err(CohomologyError::InvalidInput(rep));
    }
    Ok(derivations_of(a.alpha(), &[a.mu()]))
}

/// Elements of `V^{(x)k}` as dense coordinate vectors.
fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Decomposes an elementary tensor index of `V^{(x)k}`.
fn digits(mut index: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for s in (0..k).rev() {
        out[s] = index % d;
        index /= d;
    }
    out
}

/// A linear map from `V` into some tensor power of `V`.
type FactorMap<'a> = &'a dyn Fn(&[Scalar]) -> Vector;

struct Evaluator<'a> {
    owm: &'a OperadWithMultiplication,
    d: usize,
    field: Field,
}

impl Evaluator<'_> {
    fn power(&self, k: usize) -> Matrix {
        let op = self.owm.operad();
        if op.mode() == TwistMode::Untwisted {
            Matrix::identity(self.field, self.d)
        } else {
            op.alpha().pow(k)
        }
    }

    fn unit(&self, i: usize) -> Vector {
        let mut v = zero_vector(self.field, self.d);
        v[i] = Scalar::one(self.field);
        v
    }

    /// `f(labels; args)` for an algebra-flavor cochain, linear in the label sum.
    fn alg(&self, f: &Cochain, labels: &FormalLabelSum, args: &[Vector]) -> Vector {
        let n = f.degree();
        let mut out = zero_vector(self.field, self.d);
        for (label, c) in labels.terms() {
            let label = if f.flavor().is_dendriform() {
                label.index()
            } else {
                0
            };
            for multi in 0..self.d.pow(n as u32) {
                let idx = digits(multi, self.d, n);
                let mut w = Scalar::from_i64(self.field, c);
                for (s, &i) in idx.iter().enumerate() {
                    w = &w * &args[s][i];
                }
                if w.is_zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let x = f.get(label, &idx, j);
                    if !x.is_zero() {
                        *o = &*o + &(&w * x);
                    }
                }
            }
        }
        out
    }

    /// `s(labels; v)` for a coalgebra-flavor cochain, as a vector of `V^{(x)n}`.
    fn co(&self, s: &Cochain, labels: &FormalLabelSum, v: &[Scalar]) -> Vector {
        let n = s.degree();
        let dn = self.d.pow(n as u32);
        let mut out = zero_vector(self.field, dn);
        for (label, c) in labels.terms() {
            let label = if s.flavor().is_dendriform() {
                label.index()
            } else {
                0
            };
            for (k, vk) in v.iter().enumerate() {
                if vk.is_zero() {
                    continue;
                }
                let w = &Scalar::from_i64(self.field, c) * vk;
                for (multi, o) in out.iter_mut().enumerate() {
                    let x = s.get(label, &digits(multi, self.d, n), k);
                    if !x.is_zero() {
                        *o = &*o + &(&w * x);
                    }
                }
            }
        }
        out
    }

    /// Applies `maps[s]` to tensor factor `s` of `v in V^{(x)k}`, where each
    /// map sends `V` to `V^{(x)width_s}`.
    fn factorwise(&self, v: &[Scalar], maps: &[FactorMap], out_len: usize) -> Vector {
        let k = maps.len();
        let mut out = zero_vector(self.field, out_len);
        for (index, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let idx = digits(index, self.d, k);
            let mut piece = vec![x.clone()];
            for (s, &i) in idx.iter().enumerate() {
                piece = kron(&piece, &maps[s](&self.unit(i)));
            }
            for (o, p) in out.iter_mut().zip(&piece) {
                if !p.is_zero() {
                    *o = &*o + p;
                }
            }
        }
        out
    }
}

fn label(value: usize, arity: usize) -> Label {
    Label::new(value, arity).expect("label in range")
}

fn labelled(flavor: Flavor, sum: FormalLabelSum) -> FormalLabelSum {
    if flavor.is_dendriform() {
        sum
    } else {
        FormalLabelSum::all(1)
    }
}

fn outer(flavor: Flavor, l: Label) -> FormalLabelSum {
    if flavor.is_dendriform() {
        FormalLabelSum::single(l)
    } else {
        FormalLabelSum::all(1)
    }
}

/// The explicit three-part differential formula evaluated term by term on
/// basis tuples: first term, alternating sum over adjacent products, last
/// term. Uses no partial composition code. For degree `n` it equals
/// `(-1)^(n-1)` times the operadic differential.
pub fn displayed_differential(
    owm: &OperadWithMultiplication,
    f: &Cochain,
) -> Result<Cochain, CohomologyError> {
    let op = owm.operad();
    if f.flavor() != op.flavor() {
        return Err(OperadError::FlavorMismatch(op.flavor(), f.flavor()).into());
    }
    if f.dim() != op.dim() || f.field() != op.field() {
        return Err(OperadError::StructureMismatch.into());
    }
    let flavor = f.flavor();
    let (d, field) = (op.dim(), op.field());
    let ev = Evaluator { owm, d, field };
    let n = f.degree();
    let total = n + 1;
    let pi = owm.pi();
    let a_n1 = ev.power(n - 1);
    let a1 = ev.power(1);
    let apply = |m: &Matrix, v: &[Scalar]| m.mul_vec(v).expect("square");
    let mut out = Cochain::zeros(flavor, field, d, total);
    let out_labels = flavor.labels(total);
    for r in 1..=out_labels {
        let rl = label(r, total);
        let first_outer = outer(flavor, r0(2, 2, n, rl).expect("range"));
        let first_inner = labelled(flavor, ri(2, 2, n, rl).expect("range"));
        let last_outer = outer(flavor, r0(2, 1, n, rl).expect("range"));
        let last_inner = labelled(flavor, ri(2, 1, n, rl).expect("range"));
        let middle: Vec<(FormalLabelSum, FormalLabelSum)> = (1..=n)
            .map(|i| {
                (
                    outer(flavor, r0(n, i, 2, rl).expect("range")),
                    labelled(flavor, ri(n, i, 2, rl).expect("range")),
                )
            })
            .collect();
        let sign = |k: usize, v: Vector| -> Vector {
            if k % 2 == 1 {
                v.iter().map(|x| -x).collect()
            } else {
                v
            }
        };
        let slot = r - 1;
        if !flavor.is_co() {
            for multi in 0..d.pow(total as u32) {
                let idx = digits(multi, d, total);
                let args: Vec<Vector> = idx.iter().map(|&i| ev.unit(i)).collect();
                let mut acc = ev.alg(
                    pi,
                    &first_outer,
                    &[apply(&a_n1, &args[0]), ev.alg(f, &first_inner, &args[1..])],
                );
                for (i, (o, inn)) in middle.iter().enumerate() {
                    let mut inputs: Vec<Vector> = Vec::with_capacity(n);
                    for arg in &args[..i] {
                        inputs.push(apply(&a1, arg));
                    }
                    inputs.push(ev.alg(pi, inn, &args[i..i + 2]));
                    for arg in &args[i + 2..] {
                        inputs.push(apply(&a1, arg));
                    }
                    let term = sign(i + 1, ev.alg(f, o, &inputs));
                    acc = acc.iter().zip(&term).map(|(a, b)| a + b).collect();
                }
                let last = sign(
                    n + 1,
                    ev.alg(
                        pi,
                        &last_outer,
                        &[ev.alg(f, &last_inner, &args[..n]), apply(&a_n1, &args[n])],
                    ),
                );
                acc = acc.iter().zip(&last).map(|(a, b)| a + b).collect();
                for (j, x) in acc.into_iter().enumerate() {
                    out.set(slot, &idx, j, x);
                }
            }
        } else {
            let width = d.pow(total as u32);
            for c in 0..d {
                let ec = ev.unit(c);
                let a_n1_map = |v: &[Scalar]| apply(&a_n1, v);
                let a1_map = |v: &[Scalar]| apply(&a1, v);
                let f_first = |v: &[Scalar]| ev.co(f, &first_inner, v);
                let mut acc =
                    ev.factorwise(&ev.co(pi, &first_outer, &ec), &[&a_n1_map, &f_first], width);
                for (i, (o, inn)) in middle.iter().enumerate() {
                    let pi_mid = |v: &[Scalar]| ev.co(pi, inn, v);
                    let mut maps: Vec<FactorMap> = Vec::with_capacity(n);
                    for s in 0..n {
                        maps.push(if s == i { &pi_mid } else { &a1_map });
                    }
                    let term = sign(i + 1, ev.factorwise(&ev.co(f, o, &ec), &maps, width));
                    acc = acc.iter().zip(&term).map(|(a, b)| a + b).collect();
                }
                let f_last = |v: &[Scalar]| ev.co(f, &last_inner, v);
                let last = sign(
                    n + 1,
                    ev.factorwise(&ev.co(pi, &last_outer, &ec), &[&f_last, &a_n1_map], width),
                );
                acc = acc.iter().zip(&last).map(|(a, b)| a + b).collect();
                for (multi, x) in acc.into_iter().enumerate() {
                    out.set(slot, &digits(multi, d, total), c, x);
                }
            }
        }
    }
    Ok(out)
}

/// The displayed formula rescaled by `(-1)^(n-1)`; agrees with
/// [`OperadWithMultiplication::differential`] coefficient by coefficient.
pub fn brute_force_differential(
    owm: &OperadWithMultiplication,
    f: &Cochain,
) -> Result<Cochain, CohomologyError> {
    let shown = displayed_differential(owm, f)?;
    Ok(if (f.degree() - 1) % 2 == 1 {
        shown.neg()
    } else {
        shown
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::HomVectorSpace;

    const Q: Field = Field::Rationals;

    fn d1(left: i64, right: i64) -> HomDendAlgebra {
        HomDendAlgebra::new(
            HomVectorSpace::untwisted(Q, 1),
            Tensor3::cube(Q, 1, &[(0, 0, 0, left)]),
            Tensor3::cube(Q, 1, &[(0, 0, 0, right)]),
        )
        .unwrap()
    }

    fn rb_example() -> HomDendAlgebra {
        HomDendAlgebra::new(
            HomVectorSpace::untwisted(Q, 2),
            Tensor3::cube(Q, 2, &[(0, 0, 1, 1)]),
            Tensor3::zeros(Q, [2, 2, 2]),
        )
        .unwrap()
    }

    fn engine(a: &HomDendAlgebra) -> CohomologyEngine {
        CohomologyEngine::new(OperadWithMultiplication::dendriform(a).unwrap())
    }

    #[test]
    fn basis_dimensions() {
        let id = TwistedOperad::new(Flavor::Dend, Matrix::identity(Q, 2));
        assert_eq!(equivariant_basis(&id, 2, 4).unwrap().dim(), 2 * 8);
        let zero = TwistedOperad::new(Flavor::Ass, Matrix::zeros(Q, 2, 2));
        assert_eq!(equivariant_basis(&zero, 3, 4).unwrap().dim(), 16);
        let diag = TwistedOperad::new(Flavor::Ass, Matrix::from_i64(Q, &[&[1, 0], &[0, 2]]));
        assert_eq!(equivariant_basis(&diag, 1, 4).unwrap().dim(), 2);
        assert!(matches!(
            equivariant_basis(&diag, 5, 4),
            Err(CohomologyError::DegreeCapExceeded { degree: 5, cap: 4 })
        ));
    }

    #[test]
    fn zero_structure_betti() {
        let z = HomDendAlgebra::zero(HomVectorSpace::untwisted(Q, 2));
        let e = engine(&z);
        for n in 1..=3 {
            assert_eq!(e.betti(n).unwrap(), n * 2usize.pow(n as u32 + 1));
            assert!(e.differential_matrix(n).unwrap().is_zero());
        }
        assert_eq!(derivation_space(&z).unwrap().dim(), 4);
    }

    #[test]
    fn one_dimensional_example() {
        let a = d1(1, 0);
        let e = engine(&a);
        assert_eq!(e.differential_matrix(1).unwrap().rank(), 1);
        let r = e.report(1).unwrap();
        assert_eq!(r.betti, 0);
        assert_eq!(derivation_space(&a).unwrap().dim(), 0);
        let dd = e
            .differential_matrix(2)
            .unwrap()
            .mul(&e.differential_matrix(1).unwrap());
        assert!(dd.unwrap().is_zero());
    }

    #[test]
    fn rota_baxter_example_h1_matches_derivations() {
        let a = rb_example();
        let e = engine(&a);
        assert_eq!(e.betti(1).unwrap(), derivation_space(&a).unwrap().dim());
        let r = e.report(2).unwrap();
        assert_eq!(r.betti, r.representatives.len());
        for z in &r.representatives {
            assert!(e.is_cocycle(z).unwrap());
            assert!(!e.class_of(z).unwrap().is_coboundary);
        }
    }

    #[test]
    fn displayed_degree_one_by_hand() {
        let a = d1(1, 0);
        let owm = OperadWithMultiplication::dendriform(&a).unwrap();
        let f = Cochain::from_endo(Flavor::Dend, &Matrix::from_i64(Q, &[&[3]]));
        let df = displayed_differential(&owm, &f).unwrap();
        // f(e) < e - f(e < e) + e < f(e) = 3 - 3 + 3 ; label [2] uses > = 0
        assert_eq!(df.get(0, &[0, 0], 0), &Q.int(3));
        assert_eq!(df.get(1, &[0, 0], 0), &Q.zero());
        assert_eq!(
            brute_force_differential(&owm, &f).unwrap(),
            owm.differential(&f).unwrap()
        );
    }

    #[test]
    fn displayed_sign_in_degree_two() {
        let a = rb_example();
        let owm = OperadWithMultiplication::dendriform(&a).unwrap();
        let e = engine(&a);
        for b in e.basis(2).unwrap().cochains().into_iter().take(6) {
            let op = owm.differential(&b).unwrap();
            assert_eq!(displayed_differential(&owm, &b).unwrap(), op.neg());
            assert_eq!(brute_force_differential(&owm, &b).unwrap(), op);
        }
    }

    #[test]
    fn coboundary_solver_round_trip() {
        let a = rb_example();
        let e = engine(&a);
        let phi = Cochain::from_endo(Flavor::Dend, &Matrix::from_i64(Q, &[&[1, 0], &[2, 3]]));
        let target = e.owm().differential(&phi).unwrap();
        let x = e.solve_coboundary(&target).unwrap().unwrap();
        assert_eq!(e.owm().differential(&x).unwrap(), target);
        let mut bad = e.owm().operad().zero(2);
        bad.set(0, &[1, 1], 1, Q.one());
        let info = e.class_of(&bad).unwrap();
        assert_eq!(
            e.solve_coboundary(&bad).unwrap().is_some(),
            info.is_coboundary
        );
    }
}
