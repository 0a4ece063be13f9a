//! Exact computations with finite dg categories over `ℚ` and `F_p`.
//!
//! A [`DgCategory`] has finitely many objects and finite-dimensional hom
//! complexes given by structure constants. On top of exact sparse linear
//! algebra ([`exactfield`]) the crate computes:
//!
//! * Hochschild homology through the normalized cyclic bar construction,
//!   with the shuffle map and the degree-zero Chern character ([`hochschild`]);
//! * cyclic, negative cyclic and periodic cyclic homology from the mixed
//!   complex `(b, B)`, with stabilization certificates for the towers
//!   ([`cyclic`]);
//! * modules, bimodules and bar-construction Tor ([`dgmod`]);
//! * properness, smoothness, the triangle identities of the duality data and
//!   both Euler characteristics of a saturated category ([`saturation`]).
//!
//! Every dimension carries a [`dgmod::Soundness`] tag: `exact` when the
//! truncation provably does not affect it, `truncated` otherwise.
//!
//! ```
//! use dgcat_core::{corpus, hochschild::hh_dims, FieldSpec};
//!
//! let a = corpus::dual_numbers(FieldSpec::Rationals);
//! assert_eq!(hh_dims(&a, 4).unwrap().dims(), vec![2, 1, 1, 1, 1]);
//! ```

pub mod corpus;
pub mod cyclic;
pub mod dgcore;
pub mod dgmod;
pub mod error;
pub mod exactfield;
pub mod hochschild;
pub mod io;
pub mod saturation;
pub mod suites;

pub use dgcore::{DgCategory, DgFunctor, Finiteness, Presentation};
pub use dgmod::{Bimodule, DgModule};
pub use error::{Error, Result};
pub use exactfield::{ChainComplex, FieldSpec, Matrix, Scalar, SparseVec};
