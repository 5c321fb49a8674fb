//! Floating-point `su(3)` and the curvature check on `SU(3)//SU(2)`.

pub mod algebra;
pub mod o5;
pub mod verify;

pub use algebra::{
    bracket, g0, g_z, inner, inner_nu, project_k, CheegerMetric, Su3Element, Su3GroupElement,
};
pub use o5::{
    distance_to_torus, flat_plane_at_torus, flatness, horizontal_basis, min_flatness,
    principal_angle, stabilizer_check, torus_point, vertical_basis, FlatPlaneCertificate,
    MinFlatness, Plane,
};
pub use verify::{verify_o5, verify_o5_with, O5Config, O5Report, O5Tolerances};
