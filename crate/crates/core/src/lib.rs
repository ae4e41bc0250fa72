//! Exact computations with representations of simple Lie algebras: root
//! systems, characters, plethysms, diagram induction, series tables and
//! extremal Casimir eigenspaces.

pub mod chars;
pub mod diagram;
pub mod error;
pub mod extremal;
pub mod induction;
pub mod plethysm;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod series;
pub mod suites;

pub use chars::{CasimirNormalization, Decomposition, FormalCharacter, Limits};
pub use error::{Error, Result};
pub use report::{CheckRecord, Report, Status};
pub use rootsys::{AlgebraType, RootSystem, Weight};
