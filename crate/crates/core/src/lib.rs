//! Metric geometry of normed planes, finite metric spaces and discrete
//! fillings.

pub mod error;
pub mod filling;
pub mod finite_metric;
pub mod lp;
pub mod normed_plane;
pub mod scalar;
pub mod sparse;

pub use error::{Error, Result};

use sha2::{Digest, Sha256};

/// Hex SHA-256 of input bytes, embedded in reports.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
