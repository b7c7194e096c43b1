#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod padic;
pub mod rootdata;
pub mod coxeter;
pub mod covertorus;
pub mod pseudospherical;
pub mod imhecke;
pub mod checks;
pub mod report;

pub use error::{Error, Result};
