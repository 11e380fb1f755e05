//! Formal deformations truncated at a finite order: deformation equations,
//! infinitesimals, gauge equivalence, trivialization, obstructions and
//! order-by-order extension.
//!
//! A deformation is a list of degree-2 cochains `pi_0, .., pi_N` of one
//! flavor, `pi_0` being the undeformed multiplication. The deformation
//! equations at order `n` read `sum_{i+j=n} pi_i . pi_j = 0` for every flavor.
//!
//! Gauges act by pushforward. For algebras
//! `pi'_t = Phi_t o pi_t o (Phi_t^-1 (x) Phi_t^-1)`, whose first-order effect
//! is `pi'_1 = pi_1 - delta Phi_1`; for coalgebras
//! `Delta'_t = (Phi_t (x) Phi_t) o Delta_t o Phi_t^-1`, whose first-order
//! effect is `Delta'_1 = Delta_1 + delta Phi_1`.

use thiserror::Error;

use crate::cohomology::{CohomologyEngine, CohomologyError};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::operad::{Cochain, Flavor, OperadError, OperadWithMultiplication, TwistedOperad};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformationError {
    #[error("order mismatch: deformation has order {deformation}, automorphism has order {automorphism}")]
    OrderMismatch {
        deformation: usize,
        automorphism: usize,
    },
    #[error("component {0} of the automorphism does not commute with alpha")]
    NonCommutingComponent(usize),
    #[error("automorphism must start with the identity")]
    NotUnipotent,
    #[error("not a 2-cocycle")]
    NotCocycle,
    #[error("deformation equations fail at order(s) {0:?}")]
    DeformationInvalid(Vec<usize>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Operad(#[from] OperadError),
}

/// `pi_0 + t pi_1 + .. + t^N pi_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    terms: Vec<Cochain>,
}

impl TruncatedDeformation {
    /// `pi_0` is taken from `owm`; `higher` supplies `pi_1, .., pi_N`.
    pub fn new(
        owm: &OperadWithMultiplication,
        higher: Vec<Cochain>,
    ) -> Result<TruncatedDeformation, DeformationError> {
        let op = owm.operad();
        for (k, c) in higher.iter().enumerate() {
            if c.flavor() != op.flavor() || c.dim() != op.dim() || c.field() != op.field() {
                return Err(DeformationError::InvalidInput(format!(
                    "term {} does not live over the structure",
                    k + 1
                )));
            }
            if c.degree() != 2 {
                return Err(DeformationError::InvalidInput(format!(
                    "term {} has degree {}, expected 2",
                    k + 1,
                    c.degree()
                )));
            }
            if !op.is_equivariant(c) {
                return Err(DeformationError::InvalidInput(format!(
                    "term {} is not alpha-equivariant",
                    k + 1
                )));
            }
        }
        let mut terms = vec![owm.pi().clone()];
        terms.extend(higher);
        Ok(TruncatedDeformation { terms })
    }

    /// The deformation with `pi_i = 0` for `1 <= i <= order`.
    pub fn trivial(owm: &OperadWithMultiplication, order: usize) -> TruncatedDeformation {
        let zero = owm.operad().zero(2);
        let mut terms = vec![owm.pi().clone()];
        terms.extend(std::iter::repeat_n(zero, order));
        TruncatedDeformation { terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn flavor(&self) -> Flavor {
        self.terms[0].flavor()
    }

    pub fn term(&self, i: usize) -> &Cochain {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// Drops every term above `order`.
    pub fn truncate(&self, order: usize) -> TruncatedDeformation {
        TruncatedDeformation {
            terms: self.terms[..=order.min(self.order())].to_vec(),
        }
    }

    /// Appends `pi_{N+1}`.
    pub fn push(&self, term: Cochain) -> TruncatedDeformation {
        let mut terms = self.terms.clone();
        terms.push(term);
        TruncatedDeformation { terms }
    }

    /// Termwise transposition into the dual flavor.
    pub fn dualize(&self) -> TruncatedDeformation {
        TruncatedDeformation {
            terms: self.terms.iter().map(Cochain::dualize).collect(),
        }
    }

    /// Whether `pi_i = 0` for every `i >= 1`.
    pub fn is_trivial(&self) -> bool {
        self.terms[1..].iter().all(Cochain::is_zero)
    }

    fn check_base(&self, owm: &OperadWithMultiplication) -> Result<(), DeformationError> {
        if &self.terms[0] != owm.pi() {
            return Err(DeformationError::InvalidInput(
                "leading term differs from the structure's multiplication".into(),
            ));
        }
        Ok(())
    }
}

/// Failing deformation equation.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderDefect {
    pub order: usize,
    /// `sum_{i+j=order} pi_i . pi_j`.
    pub defect: Cochain,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DeformationReport {
    pub failures: Vec<OrderDefect>,
}

impl DeformationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failing_orders(&self) -> Vec<usize> {
        self.failures.iter().map(|f| f.order).collect()
    }
}

/// `sum_{i+j=n} pi_i . pi_j`.
pub fn equation_defect(
    op: &TwistedOperad,
    d: &TruncatedDeformation,
    n: usize,
) -> Result<Cochain, DeformationError> {
    let mut acc = op.zero(3);
    for i in 0..=n {
        let prod = op.circ(&d.terms[i], &d.terms[n - i])?;
        acc = acc.add(&prod);
    }
    Ok(acc)
}

/// Checks the deformation equations at every order `0..=N`.
pub fn check_deformation(
    op: &TwistedOperad,
    d: &TruncatedDeformation,
) -> Result<DeformationReport, DeformationError> {
    let mut report = DeformationReport::default();
    for n in 0..=d.order() {
        let defect = equation_defect(op, d, n)?;
        if !defect.is_zero() {
            report.failures.push(OrderDefect { order: n, defect });
        }
    }
    Ok(report)
}

/// Outcome of testing a degree-2 cochain as an infinitesimal.
#[derive(Debug, Clone, PartialEq)]
pub struct Infinitesimal {
    pub is_cocycle: bool,
    /// Canonical coset form modulo coboundaries, when a cocycle.
    pub class: Option<Cochain>,
    pub is_trivial_class: bool,
}

pub fn is_infinitesimal(
    engine: &CohomologyEngine,
    pi1: &Cochain,
) -> Result<Infinitesimal, DeformationError> {
    if pi1.degree() != 2 || !engine.owm().operad().is_equivariant(pi1) {
        return Err(DeformationError::InvalidInput(
            "infinitesimal must be an equivariant 2-cochain".into(),
        ));
    }
    let info = engine.class_of(pi1)?;
    Ok(Infinitesimal {
        is_cocycle: info.is_cocycle,
        class: info.is_cocycle.then_some(info.reduced),
        is_trivial_class: info.is_cocycle && info.is_coboundary,
    })
}

/// `Phi_t = id + t Phi_1 + .. + t^N Phi_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalAutomorphism {
    components: Vec<Matrix>,
}

impl FormalAutomorphism {
    /// Checks `Phi_0 = id` and that every component commutes with `alpha`.
    pub fn new(
        components: Vec<Matrix>,
        alpha: &Matrix,
    ) -> Result<FormalAutomorphism, DeformationError> {
        if components.first().map(Matrix::is_identity) != Some(true) {
            return Err(DeformationError::NotUnipotent);
        }
        for (i, c) in components.iter().enumerate() {
            if c.rows() != alpha.rows() || !c.is_square() {
                return Err(DeformationError::InvalidInput(format!(
                    "component {i} has the wrong size"
                )));
            }
            if c.mul(alpha).ok() != alpha.mul(c).ok() {
                return Err(DeformationError::NonCommutingComponent(i));
            }
        }
        Ok(FormalAutomorphism { components })
    }

    pub fn identity(field: Field, dim: usize, order: usize) -> FormalAutomorphism {
        let mut components = vec![Matrix::identity(field, dim)];
        components.extend(std::iter::repeat_n(Matrix::zeros(field, dim, dim), order));
        FormalAutomorphism { components }
    }

    /// `id + t^p phi`, truncated at `order`.
    pub fn elementary(phi: &Matrix, p: usize, order: usize) -> FormalAutomorphism {
        let mut a = FormalAutomorphism::identity(phi.field(), phi.rows(), order);
        if p >= 1 && p <= order {
            a.components[p] = phi.clone();
        }
        a
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, i: usize) -> &Matrix {
        &self.components[i]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components[1..].iter().all(Matrix::is_zero)
    }

    /// `(self o other)_n = sum_i self_i other_{n-i}`, truncated at the smaller order.
    pub fn compose(&self, other: &FormalAutomorphism) -> FormalAutomorphism {
        let order = self.order().min(other.order());
        let components = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        self.components[i]
                            .mul(&other.components[n - i])
                            .expect("square")
                    })
                    .reduce(|a, b| a.add(&b).expect("same size"))
                    .expect("nonempty")
            })
            .collect();
        FormalAutomorphism { components }
    }

    /// `Psi_0 = id`, `Psi_n = -sum_{i=1}^{n} Phi_i Psi_{n-i}`.
    pub fn invert(&self) -> FormalAutomorphism {
        let mut inv: Vec<Matrix> = vec![self.components[0].clone()];
        for n in 1..=self.order() {
            let mut acc = Matrix::zeros(inv[0].field(), inv[0].rows(), inv[0].cols());
            for i in 1..=n {
                acc = acc
                    .add(&self.components[i].mul(&inv[n - i]).expect("square"))
                    .expect("size");
            }
            inv.push(acc.scale(&Scalar::from_i64(acc.field(), -1)));
        }
        FormalAutomorphism { components: inv }
    }
}

/// Pushes `d` forward along `phi`, truncating at order `N`.
pub fn gauge_transform(
    op: &TwistedOperad,
    d: &TruncatedDeformation,
    phi: &FormalAutomorphism,
) -> Result<TruncatedDeformation, DeformationError> {
    if d.order() != phi.order() {
        return Err(DeformationError::OrderMismatch {
            deformation: d.order(),
            automorphism: phi.order(),
        });
    }
    for (i, c) in phi.components.iter().enumerate() {
        if c.mul(op.alpha()).ok() != op.alpha().mul(c).ok() {
            return Err(DeformationError::NonCommutingComponent(i));
        }
    }
    let psi = phi.invert();
    let order = d.order();
    let co = d.flavor().is_co();
    let mut terms = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = op.zero(2);
        for b in 0..=n {
            if d.terms[b].is_zero() {
                continue;
            }
            for a in 0..=n - b {
                for c in 0..=n - b - a {
                    let e = n - b - a - c;
                    let term = if co {
                        // (Phi_a (x) Phi_c) o Delta_b o Psi_e
                        d.terms[b].transform_parts(
                            &psi.components[e],
                            &[&phi.components[a], &phi.components[c]],
                        )
                    } else {
                        // Phi_a o pi_b o (Psi_c (x) Psi_e)
                        d.terms[b].transform_parts(
                            &phi.components[a],
                            &[&psi.components[c], &psi.components[e]],
                        )
                    };
                    acc = acc.add(&term);
                }
            }
        }
        terms.push(acc);
    }
    Ok(TruncatedDeformation { terms })
}

/// A witness `Phi_1` making two infinitesimals equivalent: `id + t Phi_1`
/// carries `(pi_0, pi_1)` to `(pi_0, pi_1')` modulo `t^2`.
pub fn equivalent_infinitesimals(
    engine: &CohomologyEngine,
    pi1: &Cochain,
    pi1_other: &Cochain,
) -> Result<Option<Matrix>, DeformationError> {
    for c in [pi1, pi1_other] {
        if c.degree() != 2 || !engine.is_cocycle(c)? {
            return Err(DeformationError::NotCocycle);
        }
    }
    let owm = engine.owm();
    let target = if owm.flavor().is_co() {
        pi1_other.sub(pi1)
    } else {
        pi1.sub(pi1_other)
    };
    let Some(x) = engine.solve_coboundary(&target)? else {
        return Ok(None);
    };
    let witness = x.to_endo().expect("degree one");
    let before = TruncatedDeformation::new(owm, vec![pi1.clone()])?;
    let after = TruncatedDeformation::new(owm, vec![pi1_other.clone()])?;
    let gauge = FormalAutomorphism::elementary(&witness, 1, 1);
    if gauge_transform(owm.operad(), &before, &gauge)? != after {
        return Err(DeformationError::AssertionFailure(
            "witness does not intertwine the infinitesimal deformations".into(),
        ));
    }
    Ok(Some(witness))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Every term up to the truncation order was gauged away.
    Trivial,
    /// The leading surviving term is a cocycle that is not a coboundary.
    Nontrivial { order: usize, class: Cochain },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trivialization {
    /// `gauge_transform(input, gauge)`.
    pub deformation: TruncatedDeformation,
    pub gauge: FormalAutomorphism,
    pub verdict: Verdict,
}

/// Gauges away leading terms one order at a time for as long as they are
/// coboundaries.
pub fn trivialize(
    engine: &CohomologyEngine,
    d: &TruncatedDeformation,
) -> Result<Trivialization, DeformationError> {
    let owm = engine.owm();
    let op = owm.operad();
    d.check_base(owm)?;
    let report = check_deformation(op, d)?;
    if !report.is_valid() {
        return Err(DeformationError::DeformationInvalid(
            report.failing_orders(),
        ));
    }
    let order = d.order();
    let co = owm.flavor().is_co();
    let mut current = d.clone();
    let mut gauge = FormalAutomorphism::identity(op.field(), op.dim(), order);
    loop {
        let Some(p) = (1..=order).find(|&p| !current.terms[p].is_zero()) else {
            return Ok(Trivialization {
                deformation: current,
                gauge,
                verdict: Verdict::Trivial,
            });
        };
        let lead = &current.terms[p];
        if !engine.is_cocycle(lead)? {
            return Err(DeformationError::AssertionFailure(format!(
                "leading term at order {p} is not a cocycle"
            )));
        }
        let target = if co { lead.neg() } else { lead.clone() };
        let Some(x) = engine.solve_coboundary(&target)? else {
            let class = engine.class_of(lead)?.reduced;
            return Ok(Trivialization {
                deformation: current,
                gauge,
                verdict: Verdict::Nontrivial { order: p, class },
            });
        };
        let step = FormalAutomorphism::elementary(&x.to_endo().expect("degree one"), p, order);
        current = gauge_transform(op, &current, &step)?;
        if !current.terms[p].is_zero() {
            return Err(DeformationError::AssertionFailure(format!(
                "gauge step failed to clear order {p}"
            )));
        }
        gauge = step.compose(&gauge);
    }
}

/// `Theta = -sum_{i+j=n+1, i,j>=1} pi_i . pi_j` and its class in `H^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionClass {
    pub order: usize,
    pub theta: Cochain,
    /// Canonical form of `Theta` modulo coboundaries.
    pub representative: Cochain,
    pub vanishes: bool,
}

pub fn obstruction(
    engine: &CohomologyEngine,
    d: &TruncatedDeformation,
) -> Result<ObstructionClass, DeformationError> {
    let owm = engine.owm();
    let op = owm.operad();
    d.check_base(owm)?;
    let report = check_deformation(op, d)?;
    if !report.is_valid() {
        return Err(DeformationError::DeformationInvalid(
            report.failing_orders(),
        ));
    }
    let n = d.order();
    let mut acc = op.zero(3);
    for i in 1..=n {
        let j = n + 1 - i;
        if j >= 1 && j <= n {
            acc = acc.add(&op.circ(&d.terms[i], &d.terms[j])?);
        }
    }
    let theta = acc.neg();
    if !engine.is_cocycle(&theta)? {
        return Err(DeformationError::AssertionFailure(
            "obstruction is not a cocycle".into(),
        ));
    }
    let info = engine.class_of(&theta)?;
    Ok(ObstructionClass {
        order: n,
        theta,
        representative: info.reduced,
        vanishes: info.is_coboundary,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Extension {
    /// The extended deformation, and the dimension of the space of
    /// 2-cocycles by which its new term may be shifted.
    Extended {
        deformation: TruncatedDeformation,
        solution_space_dim: usize,
    },
    Obstructed(ObstructionClass),
}

/// Solves `delta pi_{N+1} = Theta`.
pub fn extend(
    engine: &CohomologyEngine,
    d: &TruncatedDeformation,
) -> Result<Extension, DeformationError> {
    let obs = obstruction(engine, d)?;
    if !obs.vanishes {
        return Ok(Extension::Obstructed(obs));
    }
    let next = engine.solve_coboundary(&obs.theta)?.ok_or_else(|| {
        DeformationError::AssertionFailure("coboundary without a preimage".into())
    })?;
    let extended = d.push(next);
    let report = check_deformation(engine.owm().operad(), &extended)?;
    if !report.is_valid() {
        return Err(DeformationError::AssertionFailure(format!(
            "extension fails at order(s) {:?}",
            report.failing_orders()
        )));
    }
    Ok(Extension::Extended {
        deformation: extended,
        solution_space_dim: engine.cocycle_coordinates(2)?.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{HomDendAlgebra, HomVectorSpace, Tensor3};

    const Q: Field = Field::Rationals;

    fn rb_example() -> HomDendAlgebra {
        HomDendAlgebra::new(
            HomVectorSpace::untwisted(Q, 2),
            Tensor3::cube(Q, 2, &[(0, 0, 1, 1)]),
            Tensor3::zeros(Q, [2, 2, 2]),
        )
        .unwrap()
    }

    fn engine_of(a: &HomDendAlgebra) -> CohomologyEngine {
        CohomologyEngine::new(OperadWithMultiplication::dendriform(a).unwrap())
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Q, rows)
    }

    #[test]
    fn trivial_deformation_is_valid() {
        let e = engine_of(&rb_example());
        let d = TruncatedDeformation::trivial(e.owm(), 4);
        assert!(check_deformation(e.owm().operad(), &d).unwrap().is_valid());
        let t = trivialize(&e, &d).unwrap();
        assert_eq!(t.verdict, Verdict::Trivial);
        assert!(t.gauge.is_identity());
    }

    #[test]
    fn inversion_is_geometric_series() {
        let phi1 = m(&[&[1, 2], &[0, 1]]);
        let a = FormalAutomorphism::elementary(&phi1, 1, 3);
        let inv = a.invert();
        assert_eq!(inv.component(2), &phi1.mul(&phi1).unwrap());
        assert!(a.compose(&inv).is_identity());
        assert!(inv.compose(&a).is_identity());
    }

    #[test]
    fn first_order_gauge_effect() {
        let e = engine_of(&rb_example());
        let owm = e.owm();
        let phi1 = m(&[&[1, 0], &[3, -1]]);
        let d = TruncatedDeformation::trivial(owm, 1);
        let moved = gauge_transform(
            owm.operad(),
            &d,
            &FormalAutomorphism::elementary(&phi1, 1, 1),
        )
        .unwrap();
        let dphi = owm
            .differential(&Cochain::from_endo(Flavor::Dend, &phi1))
            .unwrap();
        assert_eq!(moved.term(0), owm.pi());
        assert_eq!(moved.term(1), &dphi.neg());
    }

    #[test]
    fn gauge_round_trip_and_triviality() {
        let e = engine_of(&rb_example());
        let owm = e.owm();
        let op = owm.operad();
        let phi = FormalAutomorphism::new(
            vec![
                Matrix::identity(Q, 2),
                m(&[&[1, 0], &[2, 1]]),
                m(&[&[0, 0], &[1, 3]]),
                m(&[&[2, 0], &[0, 1]]),
            ],
            op.alpha(),
        )
        .unwrap();
        let d = TruncatedDeformation::trivial(owm, 3);
        let moved = gauge_transform(op, &d, &phi).unwrap();
        assert!(check_deformation(op, &moved).unwrap().is_valid());
        assert_eq!(gauge_transform(op, &moved, &phi.invert()).unwrap(), d);
        let t = trivialize(&e, &moved).unwrap();
        assert_eq!(t.verdict, Verdict::Trivial);
        assert_eq!(gauge_transform(op, &moved, &t.gauge).unwrap(), d);
    }

    #[test]
    fn zero_structure_deformations() {
        let z = HomDendAlgebra::zero(HomVectorSpace::untwisted(Q, 1));
        let e = engine_of(&z);
        let owm = e.owm();
        // pi_1 = (e < e = e, e > e = 0) is itself dendriform
        let pi1 = owm.operad().cochain(2, vec![Q.one(), Q.zero()]).unwrap();
        let d = TruncatedDeformation::new(owm, vec![pi1.clone(), owm.operad().zero(2)]).unwrap();
        assert!(check_deformation(owm.operad(), &d).unwrap().is_valid());
        match extend(&e, &d.truncate(1)).unwrap() {
            Extension::Extended { deformation, .. } => assert!(deformation.term(2).is_zero()),
            Extension::Obstructed(_) => panic!("pi_1 . pi_1 = 0 so extension exists"),
        }
        let bad = owm.operad().cochain(2, vec![Q.one(), Q.one()]).unwrap();
        let d = TruncatedDeformation::new(owm, vec![bad, owm.operad().zero(2)]).unwrap();
        let rep = check_deformation(owm.operad(), &d).unwrap();
        assert_eq!(rep.failing_orders(), vec![2]);
    }

    #[test]
    fn infinitesimals() {
        let e = engine_of(&rb_example());
        let owm = e.owm();
        let inf = is_infinitesimal(&e, owm.pi()).unwrap();
        assert!(inf.is_cocycle);
        let phi1 = m(&[&[2, 0], &[1, 1]]);
        let dphi = owm
            .differential(&Cochain::from_endo(Flavor::Dend, &phi1))
            .unwrap();
        let inf = is_infinitesimal(&e, &dphi).unwrap();
        assert!(inf.is_cocycle && inf.is_trivial_class);

        let pi1 = owm.pi().clone();
        let other = pi1.sub(&dphi);
        let w = equivalent_infinitesimals(&e, &pi1, &other)
            .unwrap()
            .unwrap();
        let back = owm
            .differential(&Cochain::from_endo(Flavor::Dend, &w))
            .unwrap();
        assert_eq!(back, dphi);
        assert_eq!(
            equivalent_infinitesimals(&e, &pi1, &pi1).unwrap(),
            Some(Matrix::zeros(Q, 2, 2))
        );
    }

    #[test]
    fn non_commuting_gauge_rejected() {
        let alpha = m(&[&[1, 0], &[0, 2]]);
        let bad =
            FormalAutomorphism::new(vec![Matrix::identity(Q, 2), m(&[&[0, 1], &[0, 0]])], &alpha);
        assert_eq!(bad, Err(DeformationError::NonCommutingComponent(1)));
        assert_eq!(
            FormalAutomorphism::new(vec![m(&[&[2, 0], &[0, 2]])], &alpha),
            Err(DeformationError::NotUnipotent)
        );
    }
}
