//! Exact-rational toolkit for the perverse-Hodge cube of hyperkähler
//! cohomology models.

pub mod cube;
pub mod filtration;
pub mod linalg;
pub mod llv;
pub mod models;
pub mod octahedron;
pub mod perverse;
pub mod render;
pub mod report;
pub mod suite;

pub use num_rational::BigRational;

/// The ground field used for every model.
pub type Rational = BigRational;
pub type MatrixQ = linalg::Matrix<Rational>;
pub type SubspaceQ = linalg::Subspace<Rational>;
pub type NilpotentOperatorQ = filtration::NilpotentOperator<Rational>;
pub type WeightFiltrationQ = filtration::WeightFiltration<Rational>;
