//! Special functions and seeded samplers shared by the rest of the crate.

mod rng;
mod sample;
mod special;

pub use rng::RngStream;
pub use sample::{sample_binomial, sample_categorical, sample_dirichlet, sample_gamma};
pub use special::{digamma, normal_cdf};
