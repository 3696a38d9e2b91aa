//! Causal profit evaluation for uplift and predictive targeting models.
//!
//! The crate is `no_std` (it needs `alloc`) and carries the pure algorithmic
//! part of the toolkit:
//!
//! * [`numerics`]: special functions and reproducible samplers,
//! * [`profit`]: individual and campaign causal profit,
//! * [`curves`]: uplift curve, cost-sensitive empirical profit curve, AUPC,
//! * [`information`]: entropies and mutual information, including the
//!   closed-form Dirichlet conditional entropies,
//! * [`models`]: regularized logistic regression and the predictive /
//!   T-learner scoring strategies,
//! * [`sim`]: the normal-feature and Dirichlet simulation studies.
//!
//! File formats, the command-line front end and parallel grid execution live
//! in the `uplift-cli` crate.
#![no_std]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod curves;
mod error;
pub mod information;
pub mod models;
pub mod numerics;
pub mod profit;
pub mod sim;

pub use error::{Error, Result};
