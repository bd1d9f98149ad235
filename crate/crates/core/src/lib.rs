//! Mosaics of combinatorial designs as security functions.
//!
//! The crate builds explicit mosaics of BIBDs and group divisible designs,
//! exposes their functional forms and randomized inverses, and evaluates
//! semantic-security quantities for wiretap and privacy-amplification
//! settings exactly.

pub mod designs;
pub mod error;
pub mod families;
pub mod field;
pub mod hashprops;
pub mod mosaics;
pub mod security;
pub mod simkit;

pub use error::{Error, Result};
