//! Exact arithmetic, estimates and finite oracles for the minimum number of
//! generators of direct powers of finite distributive lattices.

pub mod bigcomb;
pub mod error;
pub mod estimates;
pub mod gmin;
pub mod minsearch;
pub mod oracle;
pub mod report;

pub use bigcomb::Natural;
pub use error::{Error, Result};
