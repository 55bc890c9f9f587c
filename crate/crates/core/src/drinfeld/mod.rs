//! Drinfeld's finite-dimensional model of an arc space at a rational arc:
//! complete-intersection reduction, certified general projection, the model
//! `(Z, z)` and checks of its local invariants.

mod model;
mod projection;
mod verify;

pub use model::{build_drinfeld_model, DrinfeldModel, UnfoldedModel};
pub use projection::{
    certify_projection, choose_projection, ci_reduce, contact_order, random_unimodular, y_jacobian_determinant,
    GenericityOptions, ProjectionMap,
};
pub use verify::{
    construct_drinfeld, dim_bounds, drinfeld_report, drinfeld_tangent_check, jet_cotangent_map, jet_cotangent_matrix,
    projection_seed, tangent_map_matrix, verify_drinfeld_dims, DimsOptions, verify_drinfeld_dims_with, verify_drinfeld_edim,
    DrinfeldReport, DrinfeldRun, JetCotangentMap, TangentCheck,
};
