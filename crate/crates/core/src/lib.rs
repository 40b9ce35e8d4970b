//! Core algorithms for measuring tabular dataset effect sizes and testing
//! whether they predict classifier performance or learning-curve shape.
//!
//! Everything in this crate is pure computation over in-memory data: CSV text
//! parsing and encoding ([`ingest`]), effect-size statistics ([`effects`]),
//! four deterministic reference classifiers ([`learners`]), learning curves
//! and their slope fits ([`curves`]), the experiment runners and correlation
//! summaries ([`experiments`]), and a synthetic-data oracle ([`synth`]).
//! File IO, the CLI, and report formats live in the companion `suffstat-cli`
//! crate.
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature and enable `libm` for embedded use. Every operation is a
//! deterministic function of its inputs and an explicit seed.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("suffstat-core: enable the `std` feature or the `libm` feature");

pub mod curves;
pub mod effects;
pub mod error;
pub mod experiments;
pub mod ingest;
pub mod learners;
pub(crate) mod math;
pub mod matrix;
pub mod rng;
pub mod synth;

pub use error::{Error, Result};
pub use matrix::Matrix;
