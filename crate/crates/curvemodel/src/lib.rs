//! Curve models: validated equations, cusps, involutions and marked points
//! for each supported level, together with reduction mod p, exact point
//! enumeration over small finite fields, and local power-series expansions
//! at reduced points.
//!
//! The crate is the single owner of the embedded model data files. Loading
//! re-verifies every claim the data makes (membership of marked points,
//! involution identities, homogeneity, divisor shapes) and fails loudly with
//! a complete list of violations, so that a defective data set is diagnosed
//! precisely rather than half-loaded.

pub mod data;
pub mod ecpoint;
pub mod enumerate;
pub mod error;
pub mod expand;
pub mod groebner;
pub mod model;
pub mod mpoly;
pub mod reduce;

pub use ecpoint::{EcPoint, Weierstrass};
pub use enumerate::{count_over, places_of_degree, points_of_system, points_over, PlacePoint};
pub use error::{Error, Issue, RejectReason, Result};
pub use expand::{local_expand, LocalExpansion};
pub use model::{
    load_model, load_model_from_str, levels, CurveModel, DivSite, DivTerm, FreeGen, FreeGenKind,
    Involution, IotaCheck, MarkedOrder, MarkedPoint, ModelData, QuadraticPoint, QuotientCurve,
    QuotientDesc, TorsionGen,
};
pub use mpoly::MPoly;
pub use reduce::{
    normalize_place, reduce_model, reduce_point, ReducedCurve, ReducedInvolution, ReducedPoint,
};
