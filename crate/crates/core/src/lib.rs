//! Computational toolkit for trigonal curves: congruence subgroups of the
//! modular group and their skeletons, braid monodromy in B3, dihedral and
//! Alexander invariants, Zariski-van Kampen presentations and a catalog of
//! universal curves.

pub mod braid;
pub mod catalog;
pub mod coset;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod modular;
pub mod presentation;

pub use error::{Error, Result};

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;
