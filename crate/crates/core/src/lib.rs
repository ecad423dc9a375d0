//! Computational toolkit for representations of `Out(F_n)`.

pub mod error;
pub mod exactla;
pub mod glrep;
pub mod graphact;
pub mod report;
pub mod word;

pub use error::{Error, Result};
