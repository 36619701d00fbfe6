//! Exact q-characters of snake modules over quantum affine algebras of
//! types A and B.
//!
//! The q-character of a snake module is a sum over tuples of
//! non-overlapping lattice paths ([`qchar::snake_qchar`]). Two independent
//! routes check it: the thin/special criteria verifier
//! ([`qchar::verify_theorem_a`]) and, for snakes that correspond to skew
//! diagrams, the skew-tableau sum ([`tableaux::tableaux_qchar`]).
//!
//! Spectral parameters are integers: `Y[i,k]` stands for `Y_{i, a q^k}` at
//! a single fixed anchor `a`.

pub mod cartan;
pub mod error;
pub mod lattice;
pub mod paths;
pub mod qchar;
pub mod sl2;
pub mod snakes;
pub mod tableaux;

pub use cartan::{CartanData, Kind, LieType, Weight};
pub use error::{Error, Result};
pub use lattice::{AExponent, LatticePoint, YMonomial};
pub use paths::{EpsRational, Path, PlanePoint};
pub use qchar::{PathTuple, QCharacter, TheoremAReport};
pub use snakes::Snake;
pub use tableaux::{Letter, SkewDiagram, SkewTableau};
