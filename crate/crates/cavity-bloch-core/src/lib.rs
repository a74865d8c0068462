//! Numerical core for cavity-QED condensed-matter spectra.
//!
//! The crate covers the free electron gas coupled to cavity modes (exact
//! single- and many-mode spectra, stability), its Kubo response functions,
//! the continuum-mode effective theory, Landau levels and Hall quantities, and
//! the QED-Bloch central equation with its Harper and polaritonic Harper
//! limits. Everything is `no_std` + `alloc`; the `std` feature (default) adds
//! `std::error::Error` impls and `parallel` enables rayon-backed sweeps.
#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is how inputs reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod cavity_gas;
pub mod constants;
pub mod eft;
pub mod error;
pub mod landau_hall;
pub mod lattice;
pub mod numerics;
pub mod qed_bloch;
pub mod response;

pub use error::{Error, Result};
pub use num_complex::Complex64;
