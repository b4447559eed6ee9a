//! Computational tools for value distribution theory of entire curves and
//! hyperbolicity criteria for complements of three plane curves.
//!
//! The crate is organised bottom-up: exact scalars and polynomials
//! ([`scalar`], [`poly`], [`mpoly`], [`cyclo`]), numerical helpers
//! ([`roots`], [`quad`]), exponential polynomials ([`expfun`]), and the
//! domain modules built on them.

pub mod borel;
pub mod chern;
pub mod covering;
pub mod cyclo;
pub mod error;
pub mod expfun;
pub mod mpoly;
pub mod nevanlinna;
pub mod planeconf;
pub mod poly;
pub mod quad;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
