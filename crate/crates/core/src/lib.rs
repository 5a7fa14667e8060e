//! Additive codes over the mixed alphabet `Z2^alpha x R^beta`, where
//! `R = Z2 + uZ2` with `u^2 = 0`.
//!
//! The crate covers ring arithmetic, spans and duals, the standard form of a
//! generator matrix, Lee weight enumerators and the MacWilliams transform,
//! one- and two-weight classification checks, and exhaustive/random searches.

pub mod classify;
pub mod code;
pub mod error;
pub mod harness;
pub mod matrix_file;
pub mod presets;
pub mod ring;
pub mod search;
pub mod standard_form;
pub mod weight;

pub use code::{dual_brute, min_lee_weight, span, AdditiveCode, AmbientShape, BitWord, MixedVector};
pub use error::{Error, Result};
pub use ring::RingElem;
pub use standard_form::{standard_form, type_of, CodeType, StandardFormMatrix};
pub use weight::{lee_enumerator, macwilliams, LeeEnumerator};
