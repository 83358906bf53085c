//! File I/O, seeded random ensembles and the verification report.

mod ensemble;
mod io;
mod report;
mod verify;

pub use ensemble::{random_basepoint, random_graph, EnsembleSpec};
pub use io::{load_graph, save_graph};
pub use report::{format_sig, Row, Status, VerificationReport};
pub use verify::{epsilon_grid, verify, verify_instance, VerifyOptions};
