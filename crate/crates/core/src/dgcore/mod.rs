//! Finite dg categories, functors, cells and presentations.

mod builder;
mod category;
mod cells;
mod functor;
mod presentation;
mod reduced;

pub use builder::CategoryBuilder;
pub use category::{BasisElement, CategoryParts, DgCategory, Finiteness, Hom, ValidationReport, Violation};
pub(crate) use category::graded_complex;
pub use cells::{cell_inclusion, disk_cell, sphere_cell, unit_category};
pub use functor::DgFunctor;
pub use presentation::{attach_object, pushout_attach, Generator, Poly, Presentation, Word};
pub use reduced::ReducedHoms;
pub use crate::saturation::rep_saturated;
