//! Reports and tables built on the `systolic` kernel, shared by the binary
//! and the acceptance suite.

pub mod emit;
pub mod lemma;
pub mod ratio;
