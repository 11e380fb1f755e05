//! The four twisted operads (hom-associative, hom-dendriform and their
//! coalgebra duals) on coefficient tensors: partial compositions, the
//! signed sum, bracket, cup product, differential and the label-summing
//! morphism.
//!
//! Coefficient layouts, with `I = (i_1, .., i_n)` read as a base-`d` number
//! whose first slot is most significant and `r` a 0-based label:
//!
//! * algebra flavors: `f([r]; e_I) = sum_j c[(r * d^n + I) * d + j] e_j`
//! * coalgebra flavors: `s([r]; e_k) = sum_I c[(r * d + k) * d^n + I] e_I`
//!
//! Signs used below:
//!
//! | operation          | sign                                   |
//! |--------------------|----------------------------------------|
//! | `f . g` term `i`   | `(-1)^((i-1)(n-1))`, `n = deg g`       |
//! | `[f, g]`           | `f.g - (-1)^((m-1)(n-1)) g.f`          |
//! | `delta f`          | `pi.f - (-1)^(n-1) f.pi`               |
//! | `f cup g`          | `(-1)^m (pi o_2 g) o_1 f`              |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::combinat;
use crate::field::{Field, Scalar};
use crate::linalg::{is_zero_vector, zero_vector, Matrix, Vector};
use crate::structures::{
    HomAssocAlgebra, HomAssocCoalgebra, HomDendAlgebra, HomDendCoalgebra, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperadError {
    #[error("flavor mismatch: {0} vs {1}")]
    FlavorMismatch(Flavor, Flavor),
    #[error("cochains live over different structures (dimension or field differ)")]
    StructureMismatch,
    #[error("slot {slot} out of range for arity {arity}")]
    ArityMismatch { slot: usize, arity: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(ValidationReport),
    #[error("operation requires {0}")]
    Unsupported(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Ass,
    Dend,
    CoAss,
    CoDend,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Ass, Flavor::Dend, Flavor::CoAss, Flavor::CoDend];

    pub fn is_co(self) -> bool {
        matches!(self, Flavor::CoAss | Flavor::CoDend)
    }

    pub fn is_dendriform(self) -> bool {
        matches!(self, Flavor::Dend | Flavor::CoDend)
    }

    /// Number of labels carried by a degree-`n` cochain.
    pub fn labels(self, n: usize) -> usize {
        if self.is_dendriform() {
            n
        } else {
            1
        }
    }

    /// The flavor identified with this one by transposition.
    pub fn dual(self) -> Flavor {
        match self {
            Flavor::Ass => Flavor::CoAss,
            Flavor::Dend => Flavor::CoDend,
            Flavor::CoAss => Flavor::Ass,
            Flavor::CoDend => Flavor::Dend,
        }
    }

    /// Target of the label-summing morphism.
    pub fn summed(self) -> Flavor {
        match self {
            Flavor::Dend | Flavor::Ass => Flavor::Ass,
            Flavor::CoDend | Flavor::CoAss => Flavor::CoAss,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Ass => "ass",
            Flavor::Dend => "dend",
            Flavor::CoAss => "coass",
            Flavor::CoDend => "codend",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Flavor, String> {
        match s.to_ascii_lowercase().as_str() {
            "ass" => Ok(Flavor::Ass),
            "dend" => Ok(Flavor::Dend),
            "coass" => Ok(Flavor::CoAss),
            "codend" => Ok(Flavor::CoDend),
            other => Err(format!(
                "unknown flavor '{other}' (expected ass, dend, coass, codend)"
            )),
        }
    }
}

/// Length of the coefficient vector of a degree-`n` cochain.
pub fn ambient_dim(flavor: Flavor, d: usize, n: usize) -> usize {
    flavor.labels(n) * d.pow(n as u32 + 1)
}

/// Blocked view `(labels * pre, d^n, post)` of a coefficient vector.
#[derive(Debug, Clone, Copy)]
struct Shape {
    d: usize,
    n: usize,
    labels: usize,
    pre: usize,
    post: usize,
}

impl Shape {
    fn of(flavor: Flavor, d: usize, n: usize) -> Shape {
        let (pre, post) = if flavor.is_co() { (d, 1) } else { (1, d) };
        Shape {
            d,
            n,
            labels: flavor.labels(n),
            pre,
            post,
        }
    }

    fn multi(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// `(outer, inner)` sizes around argument slot `s`.
    fn around_slot(&self, s: usize) -> (usize, usize) {
        let outer = self.labels * self.pre * self.d.pow(s as u32);
        let inner = self.d.pow((self.n - 1 - s) as u32) * self.post;
        (outer, inner)
    }
}

/// `new[o][x][t] = sum_y m[(y, x)] old[o][y][t]`.
fn mode_product(data: &[Scalar], outer: usize, d: usize, inner: usize, m: &Matrix) -> Vec<Scalar> {
    let field = m.field();
    let mut out = zero_vector(field, data.len());
    for o in 0..outer {
        for y in 0..d {
            for t in 0..inner {
                let v = &data[(o * d + y) * inner + t];
                if v.is_zero() {
                    continue;
                }
                for x in 0..d {
                    let c = &m[(y, x)];
                    if !c.is_zero() {
                        let slot = (o * d + x) * inner + t;
                        out[slot] = &out[slot] + &(v * c);
                    }
                }
            }
        }
    }
    out
}

/// An element of `C^n` for one of the four flavors over a `d`-dimensional space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    flavor: Flavor,
    dim: usize,
    degree: usize,
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cochain({} deg {} dim {} {{",
            self.flavor, self.degree, self.dim
        )?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " {i}:{c}")?;
            }
        }
        write!(f, " }})")
    }
}

impl Cochain {
    pub fn zeros(flavor: Flavor, field: Field, dim: usize, degree: usize) -> Cochain {
        assert!(degree >= 1, "cochains start in degree 1");
        Cochain {
            flavor,
            dim,
            degree,
            field,
            coeffs: zero_vector(field, ambient_dim(flavor, dim, degree)),
        }
    }

    pub fn from_coeffs(
        flavor: Flavor,
        field: Field,
        dim: usize,
        degree: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<Cochain, OperadError> {
        if degree == 0 {
            return Err(OperadError::ZeroDegree);
        }
        let expected = ambient_dim(flavor, dim, degree);
        if coeffs.len() != expected {
            return Err(OperadError::CoefficientLength {
                expected,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(OperadError::StructureMismatch);
        }
        Ok(Cochain {
            flavor,
            dim,
            degree,
            field,
            coeffs,
        })
    }

    /// The degree-1 cochain of a linear map `phi` (either flavor direction).
    pub fn from_endo(flavor: Flavor, phi: &Matrix) -> Cochain {
        let d = phi.rows();
        let mut c = Cochain::zeros(flavor, phi.field(), d, 1);
        for q in 0..d {
            for p in 0..d {
                c.coeffs[q * d + p] = phi[(p, q)].clone();
            }
        }
        c
    }

    pub fn identity(flavor: Flavor, field: Field, dim: usize) -> Cochain {
        Cochain::from_endo(flavor, &Matrix::identity(field, dim))
    }

    /// The linear map of a degree-1 cochain.
    pub fn to_endo(&self) -> Option<Matrix> {
        if self.degree != 1 {
            return None;
        }
        let d = self.dim;
        let mut m = Matrix::zeros(self.field, d, d);
        for q in 0..d {
            for p in 0..d {
                m[(p, q)] = self.coeffs[q * d + p].clone();
            }
        }
        Some(m)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> usize {
        self.flavor.labels(self.degree)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    fn shape(&self) -> Shape {
        Shape::of(self.flavor, self.dim, self.degree)
    }

    /// Position of the coefficient for label `label` (0-based), argument
    /// multi-index `args`, and `single` (output basis index for algebra
    /// flavors, input basis index for coalgebra flavors).
    pub fn position(&self, label: usize, args: &[usize], single: usize) -> usize {
        debug_assert_eq!(args.len(), self.degree);
        let multi = args.iter().fold(0, |acc, &a| acc * self.dim + a);
        let d = self.dim;
        let dn = d.pow(self.degree as u32);
        if self.flavor.is_co() {
            (label * d + single) * dn + multi
        } else {
            (label * dn + multi) * d + single
        }
    }

    pub fn get(&self, label: usize, args: &[usize], single: usize) -> &Scalar {
        &self.coeffs[self.position(label, args, single)]
    }

    pub fn set(&mut self, label: usize, args: &[usize], single: usize, x: Scalar) {
        let p = self.position(label, args, single);
        self.coeffs[p] = x;
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    fn same_space(&self, other: &Cochain) -> Result<(), OperadError> {
        if self.flavor != other.flavor {
            return Err(OperadError::FlavorMismatch(self.flavor, other.flavor));
        }
        if self.dim != other.dim || self.field != other.field {
            return Err(OperadError::StructureMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert!(self.same_space(other).is_ok() && self.degree == other.degree);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cochain {
            coeffs,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert!(self.same_space(other).is_ok() && self.degree == other.degree);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cochain {
            coeffs,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    fn signed(self, negative: bool) -> Cochain {
        if negative {
            self.neg()
        } else {
            self
        }
    }

    /// Algebra flavors: `post o f o pre^{(x)n}`; coalgebra flavors:
    /// `post^{(x)n} o s o pre`.
    pub fn transform(&self, post: &Matrix, pre: &Matrix) -> Cochain {
        let (single, slot) = if self.flavor.is_co() {
            (pre, post)
        } else {
            (post, pre)
        };
        let slots = vec![slot; self.degree];
        self.transform_parts(single, &slots)
    }

    /// Algebra flavors: `single o f o (slots[0] (x) .. (x) slots[n-1])`;
    /// coalgebra flavors: `(slots[0] (x) .. (x) slots[n-1]) o s o single`.
    pub fn transform_parts(&self, single: &Matrix, slots: &[&Matrix]) -> Cochain {
        assert_eq!(slots.len(), self.degree, "one map per argument slot");
        let sh = self.shape();
        let d = self.dim;
        let co = self.flavor.is_co();
        let mut data = self.coeffs.clone();
        for (s, m) in slots.iter().enumerate() {
            if m.is_identity() {
                continue;
            }
            let (outer, inner) = sh.around_slot(s);
            data = if co {
                mode_product(&data, outer, d, inner, &m.transpose())
            } else {
                mode_product(&data, outer, d, inner, m)
            };
        }
        if !single.is_identity() {
            data = if co {
                mode_product(&data, sh.labels, d, sh.multi(), single)
            } else {
                mode_product(&data, sh.labels * sh.multi(), d, 1, &single.transpose())
            };
        }
        Cochain {
            coeffs: data,
            ..self.clone()
        }
    }

    /// The transposed cochain in the dual flavor.
    pub fn dualize(&self) -> Cochain {
        let d = self.dim;
        let dn = d.pow(self.degree as u32);
        let mut out = Cochain::zeros(self.flavor.dual(), self.field, d, self.degree);
        for r in 0..self.labels() {
            for multi in 0..dn {
                for s in 0..d {
                    let alg = (r * dn + multi) * d + s;
                    let co = (r * d + s) * dn + multi;
                    let (from, to) = if self.flavor.is_co() {
                        (co, alg)
                    } else {
                        (alg, co)
                    };
                    out.coeffs[to] = self.coeffs[from].clone();
                }
            }
        }
        out
    }

    /// The label-summing morphism: `f_[1] + .. + f_[n]`, landing in the
    /// associative (resp. coassociative) flavor.
    pub fn sum_labels(&self) -> Cochain {
        let block = self.dim.pow(self.degree as u32 + 1);
        let mut coeffs = zero_vector(self.field, block);
        for chunk in self.coeffs.chunks(block) {
            for (acc, x) in coeffs.iter_mut().zip(chunk) {
                if !x.is_zero() {
                    *acc = &*acc + x;
                }
            }
        }
        Cochain {
            flavor: self.flavor.summed(),
            coeffs,
            ..self.clone()
        }
    }

    pub fn to_field(&self, field: Field) -> Result<Cochain, crate::field::FieldError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.to_field(field))
            .collect::<Result<_, _>>()?;
        Ok(Cochain {
            field,
            coeffs,
            ..self.clone()
        })
    }
}

/// Whether compositions twist by powers of `alpha` (the default) or use the
/// plain untwisted formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistMode {
    Twisted,
    Untwisted,
}

const CACHED_POWERS: usize = 8;

/// The operad of `alpha`-equivariant cochains of one flavor on `(V, alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedOperad {
    flavor: Flavor,
    alpha: Matrix,
    powers: Vec<Matrix>,
    mode: TwistMode,
}

impl TwistedOperad {
    pub fn new(flavor: Flavor, alpha: Matrix) -> TwistedOperad {
        TwistedOperad::with_mode(flavor, alpha, TwistMode::Twisted)
    }

    pub fn with_mode(flavor: Flavor, alpha: Matrix, mode: TwistMode) -> TwistedOperad {
        assert!(alpha.is_square(), "alpha must be square");
        let mut powers = vec![Matrix::identity(alpha.field(), alpha.rows())];
        for k in 1..=CACHED_POWERS {
            let next = powers[k - 1].mul(&alpha).expect("square");
            powers.push(next);
        }
        TwistedOperad {
            flavor,
            alpha,
            powers,
            mode,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn mode(&self) -> TwistMode {
        self.mode
    }

    /// The same operad on the other flavor with the same twisting map.
    pub fn reflavor(&self, flavor: Flavor) -> TwistedOperad {
        TwistedOperad {
            flavor,
            ..self.clone()
        }
    }

    /// `alpha^k`, or `None` when it acts as the identity.
    fn twist(&self, k: usize) -> Option<Matrix> {
        if self.mode == TwistMode::Untwisted || k == 0 {
            return None;
        }
        let m = if k <= CACHED_POWERS {
            self.powers[k].clone()
        } else {
            self.alpha.pow(k)
        };
        if m.is_identity() {
            None
        } else {
            Some(m)
        }
    }

    pub fn zero(&self, degree: usize) -> Cochain {
        Cochain::zeros(self.flavor, self.field(), self.dim(), degree)
    }

    pub fn identity(&self) -> Cochain {
        Cochain::identity(self.flavor, self.field(), self.dim())
    }

    pub fn cochain(&self, degree: usize, coeffs: Vec<Scalar>) -> Result<Cochain, OperadError> {
        Cochain::from_coeffs(self.flavor, self.field(), self.dim(), degree, coeffs)
    }

    fn owns(&self, f: &Cochain) -> Result<(), OperadError> {
        if f.flavor != self.flavor {
            return Err(OperadError::FlavorMismatch(self.flavor, f.flavor));
        }
        if f.dim != self.dim() || f.field != self.field() {
            return Err(OperadError::StructureMismatch);
        }
        Ok(())
    }

    /// `alpha o f - f o alpha^{(x)n}` (coalgebra flavors:
    /// `alpha^{(x)n} o s - s o alpha`); zero exactly on equivariant cochains.
    /// Always zero in untwisted mode.
    pub fn equivariance_defect(&self, f: &Cochain) -> Cochain {
        if self.mode == TwistMode::Untwisted {
            return f.scale(&Scalar::zero(f.field));
        }
        let id = Matrix::identity(self.field(), self.dim());
        let a = &self.alpha;
        f.transform(a, &id).sub(&f.transform(&id, a))
    }

    pub fn is_equivariant(&self, f: &Cochain) -> bool {
        self.equivariance_defect(f).is_zero()
    }

    /// `f o_i g` with a 1-based slot `i`.
    pub fn partial_comp(&self, f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain, OperadError> {
        self.owns(f)?;
        self.owns(g)?;
        let (m, n) = (f.degree, g.degree);
        if i == 0 || i > m {
            return Err(OperadError::ArityMismatch { slot: i, arity: m });
        }
        let d = self.dim();
        let co = self.flavor.is_co();
        let p = m + n - 1;
        let sf = f.shape();

        let mut twisted = f.coeffs.clone();
        if let Some(a) = self.twist(n - 1) {
            let mm = if co { a.transpose() } else { a };
            for s in (0..m).filter(|&s| s != i - 1) {
                let (outer, inner) = sf.around_slot(s);
                twisted = mode_product(&twisted, outer, d, inner, &mm);
            }
        }

        let dn = d.pow(n as u32);
        let dm = d.pow(m as u32);
        let dp = d.pow(p as u32);
        let (pre, post) = (sf.pre, sf.post);
        let pre_len = d.pow(i as u32 - 1);
        let suf_len = d.pow((m - i) as u32);

        // weight[M * d + t]: coefficient of e_t in g(sum of labels; e_M),
        // resp. of e_M in g(sum of labels; e_t).
        let weight = |labels: &[usize]| -> Vec<Scalar> {
            let mut w = zero_vector(self.field(), dn * d);
            for &k in labels {
                for big_m in 0..dn {
                    for t in 0..d {
                        let src = if co {
                            (k * d + t) * dn + big_m
                        } else {
                            (k * dn + big_m) * d + t
                        };
                        let x = &g.coeffs[src];
                        if !x.is_zero() {
                            w[big_m * d + t] = &w[big_m * d + t] + x;
                        }
                    }
                }
            }
            w
        };

        let out_labels = self.flavor.labels(p);
        let (outer_of, inner_of): (Vec<usize>, Vec<Vec<usize>>) = if self.flavor.is_dendriform() {
            let routing = combinat::routing(m, i, n);
            (routing.outer, routing.inner)
        } else {
            (vec![0], vec![vec![0]])
        };
        let mut cache: Vec<(Vec<usize>, Vec<Scalar>)> = Vec::new();
        let mut out = zero_vector(self.field(), out_labels * pre * dp * post);
        for r in 0..out_labels {
            let q = outer_of[r];
            let pos = match cache.iter().position(|(k, _)| *k == inner_of[r]) {
                Some(pos) => pos,
                None => {
                    cache.push((inner_of[r].clone(), weight(&inner_of[r])));
                    cache.len() - 1
                }
            };
            let w = &cache[pos].1;
            for o in 0..pre {
                let src_base = (q * pre + o) * dm;
                let dst_base = (r * pre + o) * dp;
                for prefix in 0..pre_len {
                    for big_m in 0..dn {
                        for t in 0..d {
                            let c = &w[big_m * d + t];
                            if c.is_zero() {
                                continue;
                            }
                            for suffix in 0..suf_len {
                                let src = (src_base + (prefix * d + t) * suf_len + suffix) * post;
                                let dst =
                                    (dst_base + (prefix * dn + big_m) * suf_len + suffix) * post;
                                for x in 0..post {
                                    let v = &twisted[src + x];
                                    if !v.is_zero() {
                                        out[dst + x] = &out[dst + x] + &(c * v);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Cochain {
            flavor: self.flavor,
            dim: d,
            degree: p,
            field: self.field(),
            coeffs: out,
        })
    }

    /// `f . g = sum_i (-1)^((i-1)(n-1)) f o_i g`.
    pub fn circ(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, OperadError> {
        let n = g.degree;
        let mut acc: Option<Cochain> = None;
        for i in 1..=f.degree {
            let term = self
                .partial_comp(f, g, i)?
                .signed((i - 1) * (n - 1) % 2 == 1);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.ok_or(OperadError::ZeroDegree)
    }

    /// `[f, g] = f . g - (-1)^((m-1)(n-1)) g . f`.
    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, OperadError> {
        let fg = self.circ(f, g)?;
        let gf = self.circ(g, f)?;
        if (f.degree - 1) * (g.degree - 1) % 2 == 1 {
            Ok(fg.add(&gf))
        } else {
            Ok(fg.sub(&gf))
        }
    }
}

/// An operad together with a distinguished degree-2 element.
#[derive(Debug, Clone)]
pub struct OperadWithMultiplication {
    operad: TwistedOperad,
    pi: Cochain,
}

impl OperadWithMultiplication {
    /// Pairs an operad with any degree-2 element; no condition is checked.
    pub fn from_parts(operad: TwistedOperad, pi: Cochain) -> Result<Self, OperadError> {
        operad.owns(&pi)?;
        if pi.degree != 2 {
            return Err(OperadError::ArityMismatch {
                slot: 2,
                arity: pi.degree,
            });
        }
        Ok(OperadWithMultiplication { operad, pi })
    }

    pub fn dendriform(a: &HomDendAlgebra) -> Result<Self, OperadError> {
        let rep = a.validate();
        if !rep.is_valid() {
            return Err(OperadError::InvalidInput(rep));
        }
        Ok(Self::dendriform_unchecked(a, TwistMode::Twisted))
    }

    /// `pi([1]; a, b) = a < b`, `pi([2]; a, b) = a > b`.
    pub fn dendriform_unchecked(a: &HomDendAlgebra, mode: TwistMode) -> Self {
        let mut coeffs = a.left().entries().to_vec();
        coeffs.extend_from_slice(a.right().entries());
        Self::assemble(Flavor::Dend, a.alpha(), coeffs, mode)
    }

    pub fn associative(a: &HomAssocAlgebra) -> Result<Self, OperadError> {
        let rep = a.validate();
        if !rep.is_valid() {
            return Err(OperadError::InvalidInput(rep));
        }
        Ok(Self::associative_unchecked(a, TwistMode::Twisted))
    }

    pub fn associative_unchecked(a: &HomAssocAlgebra, mode: TwistMode) -> Self {
        Self::assemble(Flavor::Ass, a.alpha(), a.mu().entries().to_vec(), mode)
    }

    pub fn codendriform(c: &HomDendCoalgebra) -> Result<Self, OperadError> {
        let rep = c.validate();
        if !rep.is_valid() {
            return Err(OperadError::InvalidInput(rep));
        }
        Ok(Self::codendriform_unchecked(c, TwistMode::Twisted))
    }

    /// `Delta([1]; -) = Delta_<`, `Delta([2]; -) = Delta_>`.
    pub fn codendriform_unchecked(c: &HomDendCoalgebra, mode: TwistMode) -> Self {
        let mut coeffs = c.coleft().entries().to_vec();
        coeffs.extend_from_slice(c.coright().entries());
        Self::assemble(Flavor::CoDend, c.alpha(), coeffs, mode)
    }

    pub fn coassociative(c: &HomAssocCoalgebra) -> Result<Self, OperadError> {
        let rep = c.validate();
        if !rep.is_valid() {
            return Err(OperadError::InvalidInput(rep));
        }
        Ok(Self::coassociative_unchecked(c, TwistMode::Twisted))
    }

    pub fn coassociative_unchecked(c: &HomAssocCoalgebra, mode: TwistMode) -> Self {
        Self::assemble(Flavor::CoAss, c.alpha(), c.delta().entries().to_vec(), mode)
    }

    fn assemble(flavor: Flavor, alpha: &Matrix, coeffs: Vec<Scalar>, mode: TwistMode) -> Self {
        let operad = TwistedOperad::with_mode(flavor, alpha.clone(), mode);
        let pi = operad
            .cochain(2, coeffs)
            .expect("tensor sizes match the layout");
        OperadWithMultiplication { operad, pi }
    }

    pub fn operad(&self) -> &TwistedOperad {
        &self.operad
    }

    pub fn pi(&self) -> &Cochain {
        &self.pi
    }

    pub fn flavor(&self) -> Flavor {
        self.operad.flavor
    }

    pub fn dim(&self) -> usize {
        self.operad.dim()
    }

    pub fn field(&self) -> Field {
        self.operad.field()
    }

    /// `pi . pi`; zero iff `pi` is a multiplication (for coalgebra flavors
    /// this is `Delta o_1 Delta - Delta o_2 Delta`).
    pub fn pi_circ_pi(&self) -> Cochain {
        self.operad
            .circ(&self.pi, &self.pi)
            .expect("pi belongs to its operad")
    }

    pub fn is_multiplication(&self) -> bool {
        self.pi_circ_pi().is_zero()
    }

    /// The image under the label-summing morphism (dendriform flavors only).
    pub fn summed(&self) -> Result<OperadWithMultiplication, OperadError> {
        if !self.flavor().is_dendriform() {
            return Err(OperadError::Unsupported("a dendriform flavor"));
        }
        let operad = self.operad.reflavor(self.flavor().summed());
        Ok(OperadWithMultiplication {
            operad,
            pi: self.pi.sum_labels(),
        })
    }

    /// The transposed operad with multiplication on the dual space.
    pub fn dualize(&self) -> OperadWithMultiplication {
        let operad = TwistedOperad::with_mode(
            self.flavor().dual(),
            self.operad.alpha.transpose(),
            self.operad.mode,
        );
        OperadWithMultiplication {
            operad,
            pi: self.pi.dualize(),
        }
    }

    /// `delta f = pi . f - (-1)^(n-1) f . pi`.
    pub fn differential(&self, f: &Cochain) -> Result<Cochain, OperadError> {
        let pf = self.operad.circ(&self.pi, f)?;
        let fp = self.operad.circ(f, &self.pi)?;
        if (f.degree - 1) % 2 == 1 {
            Ok(pf.add(&fp))
        } else {
            Ok(pf.sub(&fp))
        }
    }

    /// `f . g = (-1)^m (pi o_2 g) o_1 f`.
    pub fn cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, OperadError> {
        let inner = self.operad.partial_comp(&self.pi, g, 2)?;
        Ok(self
            .operad
            .partial_comp(&inner, f, 1)?
            .signed(f.degree % 2 == 1))
    }

    pub fn partial_comp(&self, f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain, OperadError> {
        self.operad.partial_comp(f, g, i)
    }

    pub fn circ(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, OperadError> {
        self.operad.circ(f, g)
    }

    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, OperadError> {
        self.operad.bracket(f, g)
    }
}

/// Evaluates an algebra-flavor cochain on arbitrary vectors.
pub fn evaluate(f: &Cochain, label: usize, args: &[Vector]) -> Vector {
    assert!(!f.flavor.is_co() && args.len() == f.degree);
    let d = f.dim;
    let n = f.degree;
    let mut out = zero_vector(f.field, d);
    let dn = d.pow(n as u32);
    for multi in 0..dn {
        let mut w = Scalar::one(f.field);
        let mut rest = multi;
        for s in (0..n).rev() {
            let a = rest % d;
            rest /= d;
            w = &w * &args[s][a];
            if w.is_zero() {
                break;
            }
        }
        if w.is_zero() {
            continue;
        }
        let base = (label * dn + multi) * d;
        for j in 0..d {
            let c = &f.coeffs[base + j];
            if !c.is_zero() {
                out[j] = &out[j] + &(&w * c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{HomVectorSpace, Tensor3};

    const Q: Field = Field::Rationals;

    fn e(d: usize, i: usize) -> Vector {
        let mut v = zero_vector(Q, d);
        v[i] = Q.one();
        v
    }

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

    fn twisted_example() -> HomDendAlgebra {
        // e1 < e1 = e2 twisted by the grading scaling diag(1, 2)
        let alpha = Matrix::from_i64(Q, &[&[2, 0], &[0, 4]]);
        rb_example().twist(&alpha).unwrap()
    }

    #[test]
    fn unit_laws() {
        let op = OperadWithMultiplication::dendriform(&twisted_example()).unwrap();
        let o = op.operad();
        let id = o.identity();
        let pi = op.pi();
        for i in 1..=2 {
            assert_eq!(&o.partial_comp(pi, &id, i).unwrap(), pi);
        }
        assert_eq!(&o.partial_comp(&id, pi, 1).unwrap(), pi);
    }

    #[test]
    fn pi_pi_first_label_is_left_associator() {
        let a = twisted_example();
        let op = OperadWithMultiplication::dendriform(&a).unwrap();
        let pp = op.operad().partial_comp(op.pi(), op.pi(), 1).unwrap();
        let d = a.dim();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let lhs = evaluate(&pp, 0, &[e(d, x), e(d, y), e(d, z)]);
                    let ab = a.prec(&e(d, x), &e(d, y));
                    let want = a.prec(&ab, &a.alpha().mul_vec(&e(d, z)).unwrap());
                    assert_eq!(lhs, want);
                }
            }
        }
    }

    #[test]
    fn multiplication_condition() {
        assert!(OperadWithMultiplication::dendriform(&d1(1, 0))
            .unwrap()
            .is_multiplication());
        assert!(OperadWithMultiplication::dendriform(&twisted_example())
            .unwrap()
            .is_multiplication());
        let bad = OperadWithMultiplication::dendriform_unchecked(&d1(1, 1), TwistMode::Twisted);
        assert!(!bad.is_multiplication());
        let co = OperadWithMultiplication::codendriform(&twisted_example().dual()).unwrap();
        assert!(co.is_multiplication());
    }

    #[test]
    fn degree_one_bracket_is_commutator() {
        let o = TwistedOperad::new(Flavor::Ass, Matrix::identity(Q, 2));
        let f = Matrix::from_i64(Q, &[&[1, 2], &[0, 3]]);
        let g = Matrix::from_i64(Q, &[&[0, 1], &[1, 1]]);
        let (cf, cg) = (
            Cochain::from_endo(Flavor::Ass, &f),
            Cochain::from_endo(Flavor::Ass, &g),
        );
        let br = o.bracket(&cf, &cg).unwrap().to_endo().unwrap();
        let want = f.mul(&g).unwrap().sub(&g.mul(&f).unwrap()).unwrap();
        assert_eq!(br, want);
    }

    #[test]
    fn degree_one_differentials() {
        let a = rb_example();
        let op = OperadWithMultiplication::dendriform(&a).unwrap();
        let phi = Matrix::from_i64(Q, &[&[1, 0], &[5, 2]]);
        let f = Cochain::from_endo(Flavor::Dend, &phi);
        let df = op.differential(&f).unwrap();
        let fv = |v: &Vector| phi.mul_vec(v).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let (u, v) = (e(2, x), e(2, y));
                let want_l = crate::linalg::add_vectors(
                    &crate::linalg::sub_vectors(&a.prec(&fv(&u), &v), &fv(&a.prec(&u, &v))),
                    &a.prec(&u, &fv(&v)),
                );
                assert_eq!(evaluate(&df, 0, &[u.clone(), v.clone()]), want_l);
                let want_r = crate::linalg::add_vectors(
                    &crate::linalg::sub_vectors(&a.succ(&fv(&u), &v), &fv(&a.succ(&u, &v))),
                    &a.succ(&u, &fv(&v)),
                );
                assert_eq!(evaluate(&df, 1, &[u, v]), want_r);
            }
        }
    }

    #[test]
    fn cup_degree_one() {
        let a = crate::structures::induced_assoc(&rb_example());
        let op = OperadWithMultiplication::associative(&a).unwrap();
        let phi = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        let psi = Matrix::from_i64(Q, &[&[2, 0], &[1, 1]]);
        let (f, g) = (
            Cochain::from_endo(Flavor::Ass, &phi),
            Cochain::from_endo(Flavor::Ass, &psi),
        );
        let c = op.cup(&f, &g).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let got = evaluate(&c, 0, &[e(2, x), e(2, y)]);
                let want = a.mul(
                    &phi.mul_vec(&e(2, x)).unwrap(),
                    &psi.mul_vec(&e(2, y)).unwrap(),
                );
                assert_eq!(got, want.iter().map(|s| -s).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn zero_structure_has_zero_differential() {
        let alpha = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let z = HomDendAlgebra::zero(HomVectorSpace::new(alpha).unwrap());
        let op = OperadWithMultiplication::dendriform(&z).unwrap();
        let mut f = op.operad().zero(2);
        f.set(1, &[0, 1], 0, Q.int(3));
        assert!(op.differential(&f).unwrap().is_zero());
        assert!(op.pi().is_zero());
    }

    #[test]
    fn sum_of_pi_is_star() {
        let a = twisted_example();
        let op = OperadWithMultiplication::dendriform(&a).unwrap();
        let ass =
            OperadWithMultiplication::associative(&crate::structures::induced_assoc(&a)).unwrap();
        assert_eq!(op.pi().sum_labels(), *ass.pi());
    }

    #[test]
    fn errors() {
        let o = TwistedOperad::new(Flavor::Dend, Matrix::identity(Q, 2));
        let f = o.zero(2);
        assert!(matches!(
            o.partial_comp(&f, &f, 3),
            Err(OperadError::ArityMismatch { .. })
        ));
        let g = Cochain::zeros(Flavor::Ass, Q, 2, 2);
        assert!(matches!(
            o.partial_comp(&f, &g, 1),
            Err(OperadError::FlavorMismatch(..))
        ));
        let h = Cochain::zeros(Flavor::Dend, Q, 3, 1);
        assert!(matches!(
            o.partial_comp(&f, &h, 1),
            Err(OperadError::StructureMismatch)
        ));
        assert!(Cochain::from_coeffs(Flavor::Dend, Q, 2, 2, vec![Q.zero(); 3]).is_err());
    }

    #[test]
    fn flavor_parsing() {
        for f in Flavor::ALL {
            assert_eq!(f.name().parse::<Flavor>().unwrap(), f);
        }
        assert!("tri".parse::<Flavor>().is_err());
    }
}
