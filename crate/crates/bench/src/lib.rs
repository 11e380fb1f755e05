//! Fixed inputs shared by the benchmarks.

use homdend_core::random;
use homdend_core::{Field, Matrix, OperadWithMultiplication};

/// A dense `n x n` matrix with small random integer entries.
pub fn dense_matrix(field: Field, n: usize, seed: u64) -> Matrix {
    let mut rng = random::seeded(seed);
    let a = random::unimodular(&mut rng, field, n);
    let b = random::unimodular(&mut rng, field, n);
    a.mul(&b)
        .expect("square")
        .add(&Matrix::identity(field, n))
        .expect("square")
}

/// A generated dendriform structure of dimension at most `max_dim`.
pub fn dendriform(field: Field, max_dim: usize, seed: u64) -> OperadWithMultiplication {
    let mut rng = random::seeded(seed);
    let a = random::dend_algebra(&mut rng, field, max_dim);
    OperadWithMultiplication::dendriform(&a).expect("generated structures are valid")
}
