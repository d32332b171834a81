//! Exact computations in the positive part of quantized enveloping algebras:
//! PBW bases, the dual canonical basis, quantum flag minors and Dynkin quiver
//! combinatorics.

#![allow(clippy::type_complexity, clippy::needless_range_loop)]

pub mod canonical;
pub mod cli;
pub mod error;
pub mod multiplicativity;
pub mod pbw;
pub mod qea;
pub mod quiver;
pub mod rootdata;
pub mod scalars;
pub mod suites;

pub use error::{Error, Result};
