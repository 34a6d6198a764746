pub mod error;
pub mod exact;
pub mod ring;
pub mod spectra;
pub mod hadamard;
pub mod generators;
pub mod io;
pub mod quotients;

pub use error::{Error, Result};
