//! Jet schemes and arcs: Hasse–Schmidt derivatives, jet ideals, evaluation
//! along arcs, contact orders and Jacobian minors.

mod arc;
mod hasse;
mod jacobian;
mod scheme;
mod space;

pub use arc::{eval_along_arc, ord_along_arc, truncate_arc, FormalArc, JetPoint, DEFAULT_PRECISION_CAP};
pub use hasse::{hs_derivative, hs_derivatives, jet_ideal};
pub use jacobian::{determinant, finiteness_warning, jacobian_ideal, jacobian_matrix, minors, subsets};
pub use scheme::AffineScheme;
pub use space::JetSpace;
