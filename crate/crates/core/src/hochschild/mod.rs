//! Hochschild homology of finite dg categories via the cyclic bar
//! construction, the shuffle product and the degree-zero Chern character.

mod chains;
mod chern;
mod complex;
mod shuffle;

pub use chains::{collect_terms, CyclicBar, CyclicChain, Terms};
pub use complex::{
    auto_bar_bound, hh_dims, hh_dims_with_bound, hochschild_complex, unnormalized_complex, DimEntry, HhReport,
    HochschildComplex,
};
pub use chern::{ch0, endo_mul, Ch0, EndoMatrix};
pub use shuffle::{shuffle_map, shuffle_product, ShuffleDegree, ShuffleMap};
