//! Cyclic, negative cyclic and periodic cyclic homology from the mixed
//! complex `(C, b, B)` of the normalized cyclic bar construction.
mod mixed;
mod tower;

pub use mixed::{cyclic_operator, mixed_complex, verify_identities, CyclicOperator, IdentityReport, MixedComplex};
pub use tower::{
    hc_dims, hc_dims_with_bound, hcminus_dims, hcminus_hp_dims, hp_dims, tower, tower_with_bound, CyclicTowers, HcReport, TowerDegree, TowerKind,
    TowerReport, TowerStatus, LIM1_CAVEAT,
};
