//! Exact symbolic laboratory for one-dimensional Clifford quantum cellular
//! automata.
//!
//! The crate is layered bottom-up:
//!
//! - [`laurent`]: Laurent polynomials over F2 on machine-word bitsets.
//! - [`phase_space`]: Pauli products as pairs of polynomials, and the
//!   symplectic form that encodes commutation.
//! - [`automaton`]: 2x2 polynomial matrices; validation, centering,
//!   composition, classification by trace, random sampling.
//! - [`stabilizer`]: translation-invariant stabilizer states, their
//!   evolution, ebit counts and logical-pair extraction.
//! - [`finite_chain`]: phase-tracked Pauli strings on open chains and rings,
//!   used as a brute-force oracle and for boundary effects.
//! - [`render`]: space-time diagrams as ASCII or binary PPM.
//!
//! ```
//! use cqca::{PhaseVector, ValidatedCqca, CqcaClass};
//!
//! let glider = ValidatedCqca::glider();
//! assert_eq!(glider.class(), CqcaClass::Glider(1));
//! let z: PhaseVector = "Z@0".parse().unwrap();
//! assert_eq!(glider.apply(&z).to_string(), "ZXZ@-1");
//! ```

mod bits;
pub mod gf2;

pub mod automaton;
pub mod finite_chain;
pub mod laurent;
pub mod phase_space;
pub mod render;
pub mod stabilizer;

pub use automaton::{
    random_cqca, CqcaClass, CqcaError, CqcaMatrix, MatrixParseError, Period, ValidatedCqca,
    WordFactor,
};
pub use finite_chain::{Boundary, FiniteChainError, FiniteOperator, FiniteRule};
pub use laurent::{Degree, LaurentPoly, ParsePolyError};
pub use phase_space::{symplectic_form, ObservableParseError, Pauli, PhaseVector};
pub use render::{DiagramFormat, SpaceTimeDiagram};
pub use stabilizer::{StateError, TIStabilizerState, TrajectoryRow};
