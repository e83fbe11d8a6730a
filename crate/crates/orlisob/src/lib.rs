//! Numerical toolkit for fractional-order Orlicz–Sobolev embeddings:
//! Young-function calculus, growth-regime classification, optimal target
//! spaces, rearrangement-invariant norms, smoothness modulars, and the
//! one-dimensional reduction operator.

pub mod error;
pub mod experiments;
pub mod extreal;
pub mod functions;
pub mod gallery;
pub mod hardy;
pub mod monotone;
pub mod quad;
pub mod regime;
pub mod seminorm;
pub mod young;
pub mod space;
pub mod targets;

pub use error::{Error, Result};
pub use extreal::{ExtReal, LnValue};
pub use space::SpaceParams;
