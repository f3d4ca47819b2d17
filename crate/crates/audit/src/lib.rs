//! Seeded law auditing for sequential products.
//!
//! Each [`LawId`] is checked on a (product, algebra) pair over a number of
//! seeded trials; trial `i` draws its inputs from a generator seeded by
//! [`trial_seed`]`(seed, i)`, so results do not depend on scheduling. Rows
//! are grouped into a [`SuiteConfig`] and produce an [`AuditReport`]; a row
//! may be declared expected-to-fail, which is how the characterization demos
//! (twisted products violating invariance, symmetry and preservation of
//! inverses) are kept honest.

mod audit;
mod error;
mod law;
pub mod laws;
mod shorthand;
mod suite;
mod witness;

pub use audit::{
    audit_law, replay, trial_seed, AuditEntry, AuditRequest, EntryError, ErrorKind, Expectation, Verdict,
    VIOLATION_THRESHOLD,
};
pub use error::AuditError;
pub use law::LawId;
pub use laws::IsoChoice;
pub use suite::{
    characterization_rows, default_suite, demo_rows, reference_algebras, run_full_suite, without_timing,
    AuditReport, Status, SuiteConfig, SuiteRow, DEFAULT_TRIALS, DEMO_TRIALS, SCHEMA_VERSION, SEA_TRIALS,
};
pub use witness::{Inputs, Witness};
