pub mod error;
pub mod finite_lie;
pub mod formal_character;
pub mod frobenius;
pub mod galois_forms;
pub mod io;
pub mod linalg;
pub mod reconstruction;
pub mod root_datum;

pub use error::{Error, Result};
