//! Optimal cyclic (r, δ) locally repairable codes over finite fields.
//!
//! Codes are described by sets of exponents of a primitive n-th root of
//! unity. The crate builds the generator polynomial for such a set, bounds and
//! computes the minimum distance, certifies (r, δ)-locality from a product of
//! two zero sets, and checks optimality against the Singleton-like bound
//! `d <= n - k - (ceil(k/r) - 1)(δ - 1) + 1`.

pub mod field;
pub mod num;
pub mod poly;
pub mod bounds;
pub mod cyclic;
pub mod distance;
pub mod linalg;
pub mod locality;
pub mod constructions;
pub mod cert;
pub mod golden;
pub mod search;
pub mod sweep;
