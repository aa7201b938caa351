//! String-replication systems: a seed word closed under one family of
//! replication rules (end, tandem, reversed tandem, or gap replication).
//!
//! The crate enumerates closures exactly, runs the constructive procedures
//! that drive the capacity arguments, and turns each capacity statement
//! into a numeric [`capacity::CapacityReport`].

pub mod capacity;
pub mod closure;
pub mod construct;
pub mod cyclic;
pub mod error;
pub mod positions;
pub mod reference;
pub mod rules;
pub mod spectral;
pub mod word;

pub use closure::{enumerate_closure, membership, EnumerationBudget, LevelProfile, Membership};
pub use error::{Error, Result};
pub use rules::{ReplicationRule, RuleFamily, StringSystem, Variant};
pub use word::{Alphabet, Symbol, Word};
