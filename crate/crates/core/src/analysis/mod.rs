//! Locality profiles, statement verification and parameter sweeps.

mod locality;
mod report;
mod sweep;
mod verify;

pub use locality::{locality_profile, LocalityProfile};
pub use report::{Method, Quantity, Relation, Statement, VerificationReport};
pub use sweep::{sweep, sweep_cells, CodeReport, Family, Grid, SweepCell, SweepOutcome, SweepRow};
pub use verify::{standard_suite, verify, verify_all, Instance, NESTED_SEEDS};
