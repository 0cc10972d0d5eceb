//! Computable PAC learning over Cantor space.
//!
//! Hypotheses are points of `{0,1}^ℕ`, classes are closed sets presented
//! by full, positive or negative information, and learners are total maps
//! from finite labeled samples to hypotheses. The crate computes VC
//! dimensions, empirical and true risks, builds learners from VC witnesses
//! and witnesses from learners, checks the PAC condition on finite
//! distributions, and runs the reduction gadgets that place the learning
//! problems in the Weihrauch lattice.

pub mod bits;
pub mod class;
pub mod cli;
pub mod conat;
pub mod error;
pub mod gadgets;
pub mod hypothesis;
pub mod learning;
pub mod paccheck;
pub mod pairing;
pub mod risk;
pub mod vcdim;

pub use error::{Error, Result};
