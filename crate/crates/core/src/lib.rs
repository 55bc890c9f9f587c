//! Local invariants of jet and arc spaces of affine schemes over Q.
//!
//! The crate is organized bottom-up:
//! - [`polyalg`]: exact polynomial arithmetic, Gröbner and Mora bases,
//!   truncated series.
//! - [`jets`]: Hasse–Schmidt derivatives, jet ideals, arcs and contact orders.
//! - [`localgeom`]: embedding dimension, tangent-cone dimension and embedding
//!   codimension at rational points.
//! - [`drinfeld`]: general projections and the finite-dimensional Drinfeld
//!   model of an arc, with checks of its invariants.

pub mod drinfeld;
pub mod error;
pub mod jets;
pub mod localgeom;
pub mod polyalg;

pub use error::{Error, Result};
