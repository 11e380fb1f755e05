//! Seeded generators for structures, cochains, cocycles and gauges.
//!
//! Every generator draws only from the supplied RNG, so a fixed seed yields a
//! fixed sequence on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalogue::{self, Seed};
use crate::cohomology::{CochainBasis, CohomologyEngine, CohomologyError};
use crate::deformation::FormalAutomorphism;
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::operad::{Cochain, Flavor, OperadWithMultiplication, TwistedOperad};
use crate::structures::{
    check_o_operator, check_rota_baxter, induced_assoc, HomAssocAlgebra, HomDendAlgebra,
    HomRepresentation, HomVectorSpace, LinearEndo, Tensor3,
};

pub type SeededRng = ChaCha8Rng;

pub const GF101: u64 = 101;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Q` or `GF(101)` with equal probability.
pub fn any_field(rng: &mut SeededRng) -> Field {
    if rng.gen_bool(0.5) {
        Field::Rationals
    } else {
        Field::Prime(GF101)
    }
}

fn small(rng: &mut SeededRng, field: Field, bound: i64) -> Scalar {
    field.int(rng.gen_range(-bound..=bound))
}

/// A product of elementary integer matrices and a permutation: invertible
/// over `Z`, so it stays invertible after reduction modulo any prime.
pub fn unimodular(rng: &mut SeededRng, field: Field, d: usize) -> Matrix {
    let mut p = Matrix::identity(field, d);
    if d < 2 {
        return p;
    }
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(field, d, d);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = field.one();
    }
    p = p.mul(&m).expect("square");
    for _ in 0..rng.gen_range(1..=d) {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let mut e = Matrix::identity(field, d);
        e[(i, j)] = field.int(if rng.gen_bool(0.5) { 1 } else { -1 });
        p = p.mul(&e).expect("square");
    }
    p
}

fn random_matrix(
    rng: &mut SeededRng,
    field: Field,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = small(rng, field, bound);
        }
    }
    m
}

/// An endomorphism of the untwisted seed, or `None` to leave it untwisted.
fn seed_alpha(rng: &mut SeededRng, s: &Seed) -> Option<Matrix> {
    let f = s.algebra.field();
    let d = s.algebra.dim();
    match rng.gen_range(0..10) {
        0..=2 => None,
        3 => Some(Matrix::zeros(f, d, d)),
        _ if s.any_alpha => Some(random_matrix(rng, f, d, d, 1)),
        _ if s.weights.is_some() => {
            let lam = *[2i64, -1, 3, 0].choose(rng).expect("nonempty");
            let w = s.weights.as_ref().expect("checked");
            let diag: Vec<Scalar> = w.iter().map(|&k| f.int(lam.pow(k))).collect();
            Some(Matrix::diagonal(f, &diag))
        }
        _ => s.extra_endos.choose(rng).cloned(),
    }
}

/// `V = U + W` with products `U x U -> W` and everything else zero, so
/// every iterated product vanishes and any pair of products is dendriform.
fn square_zero(rng: &mut SeededRng, field: Field, d: usize) -> HomDendAlgebra {
    let u = rng.gen_range(1..d);
    let mut left = Tensor3::zeros(field, [d, d, d]);
    let mut right = Tensor3::zeros(field, [d, d, d]);
    for i in 0..u {
        for j in 0..u {
            for k in u..d {
                left.set(i, j, k, small(rng, field, 2));
                right.set(i, j, k, small(rng, field, 2));
            }
        }
    }
    let a = HomDendAlgebra::new(HomVectorSpace::untwisted(field, d), left, right).expect("shapes");
    if rng.gen_bool(0.5) {
        let lam = *[2i64, -1, 3].choose(rng).expect("nonempty");
        let diag: Vec<Scalar> = (0..d)
            .map(|k| field.int(if k < u { lam } else { lam * lam }))
            .collect();
        a.twist(&Matrix::diagonal(field, &diag))
            .expect("grading scaling")
    } else {
        a
    }
}

fn component(rng: &mut SeededRng, seeds: &[Seed], max_dim: usize) -> HomDendAlgebra {
    let field = seeds[0].algebra.field();
    if max_dim >= 2 && rng.gen_range(0..5) == 0 {
        let d = rng.gen_range(2..=max_dim);
        return square_zero(rng, field, d);
    }
    let fitting: Vec<&Seed> = seeds
        .iter()
        .filter(|s| s.algebra.dim() <= max_dim)
        .collect();
    let s = *fitting.choose(rng).expect("one-dimensional seeds exist");
    match seed_alpha(rng, s) {
        Some(alpha) => s.algebra.twist(&alpha).expect("catalogued endomorphism"),
        None => s.algebra.clone(),
    }
}

/// A valid hom-dendriform algebra of dimension at most `max_dim`: a seed or
/// a direct sum of two, twisted by an endomorphism and written in a random
/// integral basis.
pub fn dend_algebra(rng: &mut SeededRng, field: Field, max_dim: usize) -> HomDendAlgebra {
    assert!(max_dim >= 1);
    let seeds = catalogue::dendriform_seeds(Field::Rationals);
    let mut a = component(rng, &seeds, max_dim);
    if a.dim() < max_dim && rng.gen_bool(0.4) {
        let b = component(rng, &seeds, max_dim - a.dim());
        a = a.direct_sum(&b);
    }
    let p = unimodular(rng, Field::Rationals, a.dim());
    let a = a.change_basis(&p).expect("unimodular");
    a.to_field(field)
        .expect("denominators are units modulo 101")
}

/// `dend_algebra` with the identity twisting map.
pub fn untwisted_dend_algebra(rng: &mut SeededRng, field: Field, max_dim: usize) -> HomDendAlgebra {
    let seeds = catalogue::dendriform_seeds(Field::Rationals);
    let mut a = seeds.choose(rng).expect("nonempty").algebra.clone();
    while a.dim() > max_dim {
        a = seeds.choose(rng).expect("nonempty").algebra.clone();
    }
    if a.dim() < max_dim && rng.gen_bool(0.4) {
        let rest: Vec<&Seed> = seeds
            .iter()
            .filter(|s| s.algebra.dim() <= max_dim - a.dim())
            .collect();
        a = a.direct_sum(&rest.choose(rng).expect("nonempty").algebra);
    }
    let p = unimodular(rng, Field::Rationals, a.dim());
    a.change_basis(&p)
        .expect("unimodular")
        .to_field(field)
        .expect("units")
}

/// A valid structure of the given flavor built from `dend_algebra`.
pub fn structure(
    rng: &mut SeededRng,
    flavor: Flavor,
    field: Field,
    max_dim: usize,
) -> OperadWithMultiplication {
    let a = dend_algebra(rng, field, max_dim);
    let owm = match flavor {
        Flavor::Dend => OperadWithMultiplication::dendriform(&a),
        Flavor::Ass => OperadWithMultiplication::associative(&induced_assoc(&a)),
        Flavor::CoDend => OperadWithMultiplication::codendriform(&a.dual()),
        Flavor::CoAss => OperadWithMultiplication::coassociative(&induced_assoc(&a).dual()),
    };
    owm.expect("generated structures are valid")
}

/// Two products with entries in `{-1, 0, 1}`, mostly zero, and a random
/// twisting map; usually not dendriform.
pub fn tensor_pair(rng: &mut SeededRng, field: Field, d: usize) -> HomDendAlgebra {
    let draw = |rng: &mut SeededRng| {
        let mut t = Tensor3::zeros(field, [d, d, d]);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if rng.gen_range(0..3) == 0 {
                        t.set(i, j, k, small(rng, field, 1));
                    }
                }
            }
        }
        t
    };
    let left = draw(rng);
    let right = draw(rng);
    let alpha = if rng.gen_bool(0.5) {
        Matrix::identity(field, d)
    } else {
        random_matrix(rng, field, d, d, 1)
    };
    HomDendAlgebra::new(HomVectorSpace::new(alpha).expect("square"), left, right).expect("shapes")
}

/// A small-integer combination of the basis vectors.
pub fn equivariant_cochain(rng: &mut SeededRng, basis: &CochainBasis) -> Cochain {
    let f = basis.field();
    let coords: Vec<Scalar> = (0..basis.dim())
        .map(|_| {
            if rng.gen_bool(0.5) {
                small(rng, f, 2)
            } else {
                f.zero()
            }
        })
        .collect();
    basis.decode(&coords)
}

/// A cochain with arbitrary small coefficients (not necessarily equivariant).
pub fn cochain(rng: &mut SeededRng, op: &TwistedOperad, degree: usize) -> Cochain {
    let len = op.zero(degree).coeffs().len();
    let f = op.field();
    let coeffs: Vec<Scalar> = (0..len)
        .map(|_| {
            if rng.gen_range(0..3) == 0 {
                small(rng, f, 2)
            } else {
                f.zero()
            }
        })
        .collect();
    op.cochain(degree, coeffs).expect("length matches")
}

/// A random element of the cocycle space in degree `n`.
pub fn cocycle(
    rng: &mut SeededRng,
    engine: &CohomologyEngine,
    n: usize,
) -> Result<Cochain, CohomologyError> {
    let basis = engine.basis(n)?;
    let kernel = engine.cocycle_coordinates(n)?;
    let f = basis.field();
    let weights: Vec<Scalar> = (0..kernel.dim()).map(|_| small(rng, f, 2)).collect();
    let coords = kernel.combine(&weights);
    Ok(basis.decode(&coords))
}

/// `delta` of a random equivariant cochain of degree `n - 1`.
pub fn coboundary(
    rng: &mut SeededRng,
    engine: &CohomologyEngine,
    n: usize,
) -> Result<Cochain, CohomologyError> {
    let x = equivariant_cochain(rng, engine.basis(n - 1)?);
    Ok(engine.owm().differential(&x)?)
}

/// `id + t Phi_1 + .. + t^N Phi_N` with components in the commutant of `alpha`.
pub fn formal_automorphism(
    rng: &mut SeededRng,
    engine: &CohomologyEngine,
    order: usize,
) -> Result<FormalAutomorphism, CohomologyError> {
    let basis = engine.basis(1)?;
    let op = engine.owm().operad();
    let mut comps = vec![Matrix::identity(op.field(), op.dim())];
    for _ in 0..order {
        let c = equivariant_cochain(rng, basis);
        comps.push(c.to_endo().expect("degree one"));
    }
    Ok(FormalAutomorphism::new(comps, op.alpha()).expect("components commute with alpha"))
}

/// Hom-associative algebras of dimension at most three with a twisting map
/// that is an algebra endomorphism.
pub fn assoc_algebra(rng: &mut SeededRng, field: Field) -> HomAssocAlgebra {
    let a = dend_algebra(rng, field, 3);
    induced_assoc(&a)
}

fn all_matrices(field: Field, rows: usize, cols: usize, bound: i64) -> Vec<Matrix> {
    let n = rows * cols;
    let base = (2 * bound + 1) as usize;
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut m = Matrix::zeros(field, rows, cols);
            for k in 0..n {
                m[(k / cols, k % cols)] = field.int((code % base) as i64 - bound);
                code /= base;
            }
            m
        })
        .collect()
}

/// Nonzero Rota-Baxter operators with entries in `{-1, 0, 1}` on random
/// two-dimensional hom-associative algebras, found by exhaustive search.
pub fn rota_baxter_search(
    rng: &mut SeededRng,
    field: Field,
    count: usize,
) -> Vec<(HomAssocAlgebra, LinearEndo)> {
    let mut found = Vec::new();
    let candidates = all_matrices(field, 2, 2, 1);
    for _ in 0..200 {
        if found.len() >= count {
            break;
        }
        let a = induced_assoc(&dend_algebra(rng, field, 2));
        if a.dim() != 2 || a.mu().is_zero() {
            continue;
        }
        let mut hits: Vec<&Matrix> = candidates
            .iter()
            .filter(|m| !m.is_zero())
            .filter(|m| {
                let r = LinearEndo::new((*m).clone()).expect("square");
                check_rota_baxter(&a, &r)
                    .map(|rep| rep.is_valid())
                    .unwrap_or(false)
            })
            .collect();
        hits.shuffle(rng);
        for m in hits.into_iter().take(2) {
            if found.len() < count {
                found.push((a.clone(), LinearEndo::new(m.clone()).expect("square")));
            }
        }
    }
    found
}

/// Nonzero O-operators with entries in `{-1, 0, 1}` for the regular and
/// left-regular representations of random two-dimensional algebras.
pub fn o_operator_search(
    rng: &mut SeededRng,
    field: Field,
    count: usize,
) -> Vec<(HomRepresentation, Matrix)> {
    let mut found = Vec::new();
    let candidates = all_matrices(field, 2, 2, 1);
    for _ in 0..200 {
        if found.len() >= count {
            break;
        }
        let a = induced_assoc(&dend_algebra(rng, field, 2));
        if a.dim() != 2 || a.mu().is_zero() {
            continue;
        }
        let rep = if rng.gen_bool(0.5) {
            HomRepresentation::regular(&a)
        } else {
            catalogue::left_regular(&a)
        };
        if !rep.validate().is_valid() {
            continue;
        }
        let mut hits: Vec<&Matrix> = candidates
            .iter()
            .filter(|m| !m.is_zero())
            .filter(|m| {
                check_o_operator(&rep, m)
                    .map(|r| r.is_valid())
                    .unwrap_or(false)
            })
            .collect();
        hits.shuffle(rng);
        for m in hits.into_iter().take(2) {
            if found.len() < count {
                found.push((rep.clone(), m.clone()));
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_algebras_are_valid() {
        let mut rng = seeded(7);
        for _ in 0..200 {
            let field = any_field(&mut rng);
            let a = dend_algebra(&mut rng, field, 3);
            assert!(a.dim() <= 3);
            assert!(a.validate().is_valid(), "{a:?}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let run = |seed| {
            let mut rng = seeded(seed);
            (0..20)
                .map(|_| dend_algebra(&mut rng, Field::Rationals, 3))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
    }

    #[test]
    fn unimodular_matrices_are_invertible_mod_p() {
        let mut rng = seeded(1);
        for _ in 0..50 {
            let p = unimodular(&mut rng, Field::Prime(GF101), 3);
            assert!(p.inverse().is_some());
        }
    }

    #[test]
    fn searches_find_enough_operators() {
        let mut rng = seeded(11);
        assert_eq!(rota_baxter_search(&mut rng, Field::Rationals, 20).len(), 20);
        assert_eq!(o_operator_search(&mut rng, Field::Rationals, 20).len(), 20);
    }
}
