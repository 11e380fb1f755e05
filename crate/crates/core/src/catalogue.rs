//! Small hand-built structures with integer (or half-integer) constants,
//! used as seeds by the random generators and as fixed examples.

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::structures::{
    from_rota_baxter, HomAssocAlgebra, HomDendAlgebra, HomRepresentation, HomVectorSpace,
    LinearEndo, Tensor3,
};

/// An untwisted dendriform algebra plus what is known about its endomorphisms.
#[derive(Debug, Clone)]
pub struct Seed {
    pub name: &'static str,
    pub algebra: HomDendAlgebra,
    /// Weights `w` making every product homogeneous, so that
    /// `diag(lambda^w)` is an endomorphism for every `lambda`.
    pub weights: Option<Vec<u32>>,
    /// True when both products vanish (every linear map is an endomorphism).
    pub any_alpha: bool,
    /// Further endomorphisms.
    pub extra_endos: Vec<Matrix>,
}

fn dend(
    field: Field,
    d: usize,
    left: &[(usize, usize, usize, i64)],
    right: &[(usize, usize, usize, i64)],
) -> HomDendAlgebra {
    HomDendAlgebra::new(
        HomVectorSpace::untwisted(field, d),
        Tensor3::cube(field, d, left),
        Tensor3::cube(field, d, right),
    )
    .expect("catalogue shapes")
}

fn assoc(field: Field, d: usize, mu: &[(usize, usize, usize, i64)]) -> HomAssocAlgebra {
    HomAssocAlgebra::new(
        HomVectorSpace::untwisted(field, d),
        Tensor3::cube(field, d, mu),
    )
    .expect("catalogue shapes")
}

/// `e1 e1 = e1, e2 e2 = e2`.
pub fn idempotents(field: Field) -> HomAssocAlgebra {
    assoc(field, 2, &[(0, 0, 0, 1), (1, 1, 1, 1)])
}

/// `e1 e1 = e1, e1 e2 = e2`.
pub fn unit_action(field: Field) -> HomAssocAlgebra {
    assoc(field, 2, &[(0, 0, 0, 1), (0, 1, 1, 1)])
}

/// Upper triangular 2x2 matrices on `E11, E12, E22`.
pub fn upper_triangular(field: Field) -> HomAssocAlgebra {
    assoc(
        field,
        3,
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
    )
}

/// `K[t]/(t^3)` on `1, t, t^2`.
pub fn truncated_polynomials(field: Field) -> HomAssocAlgebra {
    assoc(
        field,
        3,
        &[
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (0, 2, 2, 1),
            (2, 0, 2, 1),
            (1, 1, 2, 1),
        ],
    )
}

/// Integration `t^k -> t^(k+1) / (k+1)` on `K[t]/(t^3)`.
pub fn integration(field: Field) -> LinearEndo {
    let half = Scalar::from_ratio(field, 1, 2).expect("2 is invertible");
    let mut m = Matrix::zeros(field, 3, 3);
    m[(1, 0)] = Scalar::one(field);
    m[(2, 1)] = half;
    LinearEndo::new(m).expect("square")
}

fn endo(field: Field, rows: &[&[i64]]) -> LinearEndo {
    LinearEndo::new(Matrix::from_i64(field, rows)).expect("square")
}

/// The associative product `mu` as the dendriform pair `(mu, 0)`.
fn left_only(a: &HomAssocAlgebra) -> HomDendAlgebra {
    let d = a.dim();
    HomDendAlgebra::new(
        a.space().clone(),
        a.mu().clone(),
        Tensor3::zeros(a.field(), [d, d, d]),
    )
    .expect("same shapes")
}

/// The associative product `mu` as the dendriform pair `(0, mu)`.
fn right_only(a: &HomAssocAlgebra) -> HomDendAlgebra {
    let d = a.dim();
    HomDendAlgebra::new(
        a.space().clone(),
        Tensor3::zeros(a.field(), [d, d, d]),
        a.mu().clone(),
    )
    .expect("same shapes")
}

pub fn dendriform_seeds(field: Field) -> Vec<Seed> {
    let seed = |name, algebra, weights: Option<Vec<u32>>| Seed {
        name,
        algebra,
        weights,
        any_alpha: false,
        extra_endos: Vec::new(),
    };
    let swap = Matrix::from_i64(field, &[&[0, 1], &[1, 0]]);
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push(Seed {
            name: ["zero-1", "zero-2", "zero-3"][d - 1],
            algebra: HomDendAlgebra::zero(HomVectorSpace::untwisted(field, d)),
            weights: None,
            any_alpha: true,
            extra_endos: Vec::new(),
        });
    }
    out.push(seed(
        "left-unit-1",
        dend(field, 1, &[(0, 0, 0, 1)], &[]),
        None,
    ));
    out.push(seed(
        "right-unit-1",
        dend(field, 1, &[], &[(0, 0, 0, 1)]),
        None,
    ));
    out.push(seed(
        "nil-left-2",
        dend(field, 2, &[(0, 0, 1, 1)], &[]),
        Some(vec![1, 2]),
    ));
    out.push(seed(
        "nil-right-2",
        dend(field, 2, &[], &[(0, 0, 1, 1)]),
        Some(vec![1, 2]),
    ));
    out.push(seed(
        "nil-mixed-2",
        dend(field, 2, &[(0, 0, 1, 2)], &[(0, 0, 1, -3)]),
        Some(vec![1, 2]),
    ));
    out.push(Seed {
        extra_endos: vec![swap.clone()],
        ..seed("idempotents-left-2", left_only(&idempotents(field)), None)
    });
    out.push(Seed {
        extra_endos: vec![swap],
        ..seed("idempotents-right-2", right_only(&idempotents(field)), None)
    });
    out.push(seed(
        "unit-action-left-2",
        left_only(&unit_action(field)),
        Some(vec![0, 1]),
    ));
    out.push(seed(
        "unit-action-right-2",
        right_only(&unit_action(field)),
        Some(vec![0, 1]),
    ));
    out.push(seed(
        "upper-triangular-left-3",
        left_only(&upper_triangular(field)),
        Some(vec![0, 1, 0]),
    ));
    out.push(seed(
        "upper-triangular-right-3",
        right_only(&upper_triangular(field)),
        Some(vec![0, 1, 0]),
    ));
    out.push(seed(
        "integration-3",
        from_rota_baxter(&truncated_polynomials(field), &integration(field))
            .expect("integration is Rota-Baxter"),
        Some(vec![1, 2, 3]),
    ));
    out
}

/// Hom-associative algebras with a weight-zero Rota-Baxter operator.
pub fn rota_baxter_examples(field: Field) -> Vec<(&'static str, HomAssocAlgebra, LinearEndo)> {
    vec![
        (
            "unit-action-2",
            unit_action(field),
            endo(field, &[&[0, 0], &[1, 0]]),
        ),
        (
            "unit-action-2-zero",
            unit_action(field),
            LinearEndo::zero(field, 2),
        ),
        (
            "idempotents-2-zero",
            idempotents(field),
            LinearEndo::zero(field, 2),
        ),
        (
            "integration-3",
            truncated_polynomials(field),
            integration(field),
        ),
        (
            "upper-triangular-3",
            upper_triangular(field),
            endo(field, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]),
        ),
    ]
}

/// Left action by multiplication, zero right action.
pub fn left_regular(a: &HomAssocAlgebra) -> HomRepresentation {
    let d = a.dim();
    HomRepresentation::new(
        a.clone(),
        a.space().clone(),
        a.mu().clone(),
        Tensor3::zeros(a.field(), [d, d, d]),
    )
    .expect("same shapes")
}

/// Zero actions on `K^m` with the identity twisting map.
pub fn trivial_module(a: &HomAssocAlgebra, m: usize) -> HomRepresentation {
    let f = a.field();
    let da = a.dim();
    HomRepresentation::new(
        a.clone(),
        HomVectorSpace::untwisted(f, m),
        Tensor3::zeros(f, [da, m, m]),
        Tensor3::zeros(f, [m, da, m]),
    )
    .expect("shapes")
}

/// Representations with an O-operator `M -> A` (as a `dA x dM` matrix).
pub fn o_operator_examples(field: Field) -> Vec<(&'static str, HomRepresentation, Matrix)> {
    let ua = unit_action(field);
    let ut = upper_triangular(field);
    vec![
        (
            "regular-unit-action-2",
            HomRepresentation::regular(&ua),
            Matrix::from_i64(field, &[&[0, 0], &[1, 0]]),
        ),
        (
            "left-regular-unit-action-2",
            left_regular(&ua),
            Matrix::from_i64(field, &[&[0, 0], &[1, 0]]),
        ),
        (
            "trivial-module-upper-triangular-3x2",
            trivial_module(&ut, 2),
            Matrix::from_i64(field, &[&[0, 0], &[1, -2], &[0, 0]]),
        ),
        (
            "regular-integration-3",
            HomRepresentation::regular(&truncated_polynomials(field)),
            integration(field).matrix().clone(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{check_o_operator, check_rota_baxter};

    #[test]
    fn seeds_are_valid_with_their_endomorphisms() {
        let q = Field::Rationals;
        for s in dendriform_seeds(q) {
            assert!(s.algebra.validate().is_valid(), "{}", s.name);
            if let Some(w) = &s.weights {
                let lam: Vec<Scalar> = w.iter().map(|&k| q.int(2i64.pow(k))).collect();
                let alpha = Matrix::diagonal(q, &lam);
                assert!(
                    s.algebra.twist(&alpha).unwrap().validate().is_valid(),
                    "{}",
                    s.name
                );
            }
            for e in &s.extra_endos {
                assert!(
                    s.algebra.twist(e).unwrap().validate().is_valid(),
                    "{}",
                    s.name
                );
            }
        }
    }

    #[test]
    fn operators_are_valid() {
        for field in [Field::Rationals, Field::prime(101).unwrap()] {
            for (name, a, r) in rota_baxter_examples(field) {
                assert!(a.validate().is_valid(), "{name}");
                assert!(check_rota_baxter(&a, &r).unwrap().is_valid(), "{name}");
            }
            for (name, rep, r) in o_operator_examples(field) {
                assert!(rep.validate().is_valid(), "{name}");
                assert!(check_o_operator(&rep, &r).unwrap().is_valid(), "{name}");
            }
        }
    }
}
