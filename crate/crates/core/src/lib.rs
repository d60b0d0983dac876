//! Exact computation of leaky completed-cycles double Hurwitz numbers.

pub mod error;
pub mod chambers;
pub mod cli;
pub mod exactmath;
pub mod fock;
pub mod formulas;
pub mod oracle;
pub mod query;
pub mod report;
pub mod spectral;
pub mod tropical;

pub use error::{Error, Result};
pub use query::{HurwitzQuery, Insertion, InsertionList};
pub use report::{Report, Status};
