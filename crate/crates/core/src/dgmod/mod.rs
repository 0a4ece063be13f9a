//! Right dg modules, bimodules, bar-construction Tor and the description of
//! modules over `S(n)^op ⊗ A` by maps of degree `n`.

mod bar;
mod bimodule;
mod module;
mod sn;

pub(crate) use bar::{assemble, BarBuilder, BarChain};
pub use bar::{bar_degree_tor, bar_tor, bar_tor_fixed, semisimple_module, BarTor, Soundness};
pub use bimodule::{diagonal_bimodule, external_tensor, restrict, Bimodule};
pub use module::{yoneda_module, DgModule, ModuleMap};
pub use sn::{induce_first, induce_second, sn_pack, sn_unpack};
