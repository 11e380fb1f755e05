//! Exact linear algebra, operadic cochain complexes, cohomology and formal
//! deformations for hom-dendriform algebras and coalgebras.

pub mod catalogue;
pub mod checks;
pub mod cohomology;
pub mod combinat;
pub mod deformation;
pub mod field;
pub mod linalg;
pub mod operad;
pub mod random;
pub mod structures;

pub use cohomology::{CohomologyEngine, CohomologyError, CohomologyReport, DEFAULT_DEGREE_CAP};
pub use deformation::{DeformationError, FormalAutomorphism, TruncatedDeformation};
pub use field::{Field, FieldError, Rational, Scalar};
pub use linalg::{Matrix, SubspaceBasis, Vector};
pub use operad::{
    Cochain, Flavor, OperadError, OperadWithMultiplication, TwistMode, TwistedOperad,
};
pub use structures::{
    HomAssocAlgebra, HomAssocCoalgebra, HomDendAlgebra, HomDendCoalgebra, HomRepresentation,
    HomVectorSpace, LinearEndo, StructureError, Tensor3, ValidationReport,
};
