//! Exact symbol-level analysis of linear tableaux.

pub mod analysis;
pub mod charvar;
pub mod eikonal;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod gallery;
pub mod involutive;
pub mod moduli;
pub mod par;
pub mod polyring;
pub mod prolong;
pub mod tableau;

pub use error::{Error, Result};
