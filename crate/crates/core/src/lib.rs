//! Convolutional codes from unit schemes over finite fields.


pub mod card;
pub mod design;
pub mod distance;
pub mod duality;
pub mod field;
pub mod groupring;
pub mod matrix;
pub mod poly;
pub mod polymat;
pub mod repro;


pub use design::{auto_design, build_generator, gsb, ConvCode, DesignError, SelectionScheme, UnitScheme};
pub use distance::{free_distance, DistanceOptions, DistanceReport};
pub use field::{make_field, root_of_unity, Fe, Field, FieldError, FieldSpec};
pub use groupring::{GroupRingElement, GroupSpec};
pub use matrix::{Matrix, MatrixError};
pub use poly::Poly;
pub use polymat::{LaurentMatrix, PolyMatrix};
