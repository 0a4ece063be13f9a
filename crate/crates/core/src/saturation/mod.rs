//! Properness and smoothness certificates, the duality data of a saturated
//! category with its triangle identities, and Euler characteristics computed
//! from Hochschild homology and from the duality composite.
mod duality;
mod euler;
mod smooth;

pub use duality::{dual_data, triangle_identity_check, DualData, Evidence, TriangleOutcome, TriangleReport};
pub use euler::{
    duality_extent, euler_report, euler_via_duality, euler_via_hh, EulerReport, EulerValue, FALLBACK_DEGREES,
};
pub use smooth::{
    properness_check, rep_saturated, saturation_report, smoothness_certify, PairDims, ProperReport,
    SaturationReport, Smoothness, DEFAULT_SMOOTHNESS_BOUND,
};
