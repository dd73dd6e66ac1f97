//! Exact arithmetic over ordered abelian monoids with infinity: the catalog of
//! example semigroups, bounded comparison values, functionals, property
//! checks with certificates, and the verdict report.

pub mod catalog;
pub mod comparison;
pub mod error;
pub mod ext_rat;
pub mod functionals;
pub mod properties;
pub mod report;
pub mod semigroup;
pub mod series;
