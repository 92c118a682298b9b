//! Claim verification and randomized stress testing over the trefoil kernel.

pub mod claims;
pub mod stress;
