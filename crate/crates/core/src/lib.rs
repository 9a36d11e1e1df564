//! Exact symbolic toolkit for Greenberg algebras over truncations of a
//! complete discrete valuation ring, the Greenberg transform of affine
//! schemes, and Weil restriction along finite free ring extensions, with
//! brute-force point counting over small finite algebras as the verification
//! engine.

pub mod algebra;
pub mod cache;
pub mod config;
pub mod corpus;
pub mod error;
pub mod ff;
pub mod greenberg;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod scheme;
pub mod transform;
pub mod verify;
pub mod weil;
pub mod witt;

pub use error::{Error, Result};
