//! Exact relative Hochschild and Cartier cohomology of finite-dimensional
//! algebra extensions and corings, with brace operations and duality checks.

pub mod algebra;
pub mod cli;
pub mod bimodule;
pub mod cochain;
pub mod coring;
pub mod deform;
pub mod duality;
pub mod entwining;
pub mod error;
pub mod exactlin;
pub mod operadic;

pub use error::{Error, Result};
