//! Formulas, sequents, proof trees and their text format.

mod formula;
mod proof;
pub mod sexp;

pub use formula::{Formula, Sequent};
pub use proof::{check_proof, derivative_transform, CheckedProof, Proof, ProofError, Rule};
pub use sexp::{parse_formula, parse_proof, print_formula, print_proof};
