//! Exact computations with isotropic subbundles of `TM ⊕ T*M`.

pub mod algebra;
pub mod big_tangent;
pub mod calculus;
pub mod canonical;
pub mod error;
pub mod random;
pub mod reduction;
pub mod structures;
pub mod transport;

pub use algebra::{Field, Matrix, Monomial, Polynomial, Rational, RationalFunction, Subspace};
pub use big_tangent::{BigVector, CharacteristicTriple, IsotropicData};
pub use calculus::{BigSection, Bivector, Chart, OneForm, ThreeForm, Trivector, TwoForm, VectorField};
pub use error::{Error, Result};
pub use transport::LinearMap;
