//! Exact common tangent hyperplanes of strongly separated polytope families.
//!
//! All geometry is generic over an ordered [`Field`]. The rational aliases
//! at the crate root are the scalar for every exact operation.
//!
//! ```
//! use polytangent::{tangents::all_tangents, QFamily, QVector};
//!
//! let square = |x: i64| -> Vec<QVector> {
//!     [[0, 0], [1, 0], [1, 1], [0, 1]]
//!         .iter()
//!         .map(|p| QVector::from_i64s(&[p[0] + x, p[1]]))
//!         .collect()
//! };
//! let family = QFamily::from_points(vec![square(0), square(3)]).unwrap();
//! assert_eq!(all_tangents(&family).unwrap().len(), 4);
//! ```

pub mod approx;
pub mod complex;
pub mod error;
pub mod exactnum;
pub mod family;
pub mod lpsolve;
pub mod polytope;
pub mod separation;
pub mod tangents;

use num_rational::BigRational;

pub use error::{Error, Result};
pub use exactnum::{Field, LinearSolution, Matrix, Sign, Vector};
pub use family::{Family, Member, MemberSet, Partition};
pub use polytope::{Facet, OrientedHyperplane, Polytope};

/// Exact scalar.
pub type Rational = BigRational;
pub type QVector = Vector<Rational>;
pub type QMatrix = Matrix<Rational>;
pub type QHyperplane = OrientedHyperplane<Rational>;
pub type QPolytope = Polytope<Rational>;
pub type QFamily = Family<Rational>;
pub type QTangentPair = tangents::TangentPair<Rational>;
pub type QTangentComplex = complex::TangentComplex<Rational>;
pub type QBodySpec = approx::BodySpec<Rational>;

pub type F64Vector = Vector<f64>;
pub type F64Polytope = Polytope<f64>;
