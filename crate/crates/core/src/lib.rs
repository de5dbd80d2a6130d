pub mod bang;
pub mod combinatorics;
pub mod encodings;
pub mod error;
pub mod exact;
pub mod laws;
pub mod lincomb;
pub mod poly;
pub mod semantics;
pub mod syntax;

pub use error::{Error, Result};
