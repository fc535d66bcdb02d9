//! Enneper–Weierstrass machinery for branched minimal surfaces in the unit
//! ball, with numerical and exact checks of the free boundary conditions,
//! the Hopf differential and its behaviour under the Möbius deck map, and
//! closed-form Steklov spectra of flat cylinders and their Möbius quotients.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command line front end live in the `wlab` crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod annulus;
pub mod catalog;
pub mod checks;
pub mod error;
pub mod moebius;
pub mod quadrature;
pub mod rational;
pub mod sampling;
pub mod steklov;
pub mod vec3;
pub mod weierstrass;

pub use error::{Error, Result};

/// Double precision complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
