//! Exact computations around the centre of two-parameter quantum groups
//! `U_{r,s}(g)`: root data, structure-constant matrices, torus characters,
//! weight multiplicities, Harish-Chandra images, the skew pairing between
//! the two halves, highest-weight modules and explicit central elements.

pub mod cache;
pub mod cli;
pub mod exact_arith;
pub mod error;
pub mod euler_form;
pub mod hc_center;
pub mod module_builder;
pub mod pairing_engine;
pub mod root_data;
pub mod u0_characters;
pub mod weight_mults;

pub use error::{Error, Result};
