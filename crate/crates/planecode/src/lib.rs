//! Toolkit for the p-ary code of the projective plane over Z/pZ.
//!
//! The crate builds PG(2,p) with deterministic point and line indexing,
//! constructs the code spanned by the line indicators along with its dual,
//! provides the explicit codeword families realizing the small weights
//! (scalar multiples of lines, combinations of two lines, and the
//! weight-(3p-3) dual words), analyzes the geometry of codeword supports
//! (secant/tangent/passant profiles, tangent loci, pencil covering
//! witnesses), and runs weight-spectrum searches: exhaustive enumeration in
//! Gray order for tiny codes and certified low-weight enumeration over
//! systematic windows for the rest, with gap certification against the
//! conjectured spectral gaps.
//!
//! Start with [`code::Code::build`]:
//!
//! ```
//! use planecode::code::Code;
//!
//! let code = Code::build(5).unwrap();
//! assert_eq!(code.dimension(), 16);          // (p+1 choose 2) + 1
//! assert_eq!(code.plane().size(), 31);       // p^2 + p + 1
//! ```
//!
//! The `examples/` directory has one runnable program per capability; the
//! `planecode` binary exposes the same operations as subcommands.

pub mod code;
pub mod constructions;
pub mod error;
pub mod fp;
pub mod geometry;
pub mod plane;
pub mod search;

pub use error::{Error, Result};
