//! Arithmetic and geometry in the word basis of `H^{⊗n}`.
//!
//! Basis words of order `n` are strings over `{1,2,4,7}` (equivalently
//! `i,j,k,e`). They multiply digitwise with a bitwise XNOR/AND rule, label
//! the tiles of a recursive triangular subdivision, and carry a digitwise
//! `S3` action whose reflections reverse multiplication order.
//!
//! ```
//! use floretion::basis::{word_mul, Word};
//!
//! let p = word_mul(Word::parse("iji").unwrap(), Word::parse("jek").unwrap()).unwrap();
//! assert_eq!(format!("{p:#}"), "-kjj");
//! ```

pub mod algebra;
pub mod basis;
pub mod centralizer;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod sequences;
pub mod svg;
pub mod symmetry;

pub use algebra::{Element, FloatElement, Rational};
pub use basis::{Digit, PackedWord, Sign, SignedWord, Word};
pub use error::{Error, Result};
