//! Proof checking and witness extraction for a classical first-order sequent
//! calculus, via realizers in a small typed lambda calculus with case terms.
//!
//! The pipeline: check a proof ([`proofs`]), optionally translate a two-sided
//! proof to the one-sided calculus ([`translate`]), build a realizer for any
//! formula occurrence of the end sequent ([`interp`]), normalize it
//! ([`reduce`]), confirm the corresponding disjunction of winning formulas is
//! a quantifier-free tautology ([`verify`]), and for a single existential goal
//! read the witnesses off the normal form ([`herbrand`]).

pub mod format;
pub mod gen;
pub mod herbrand;
pub mod interp;
pub mod logic;
pub mod proofs;
pub mod reduce;
pub mod samples;
pub mod sexp;
pub mod suites;
pub mod term;
pub mod translate;
pub mod typecheck;
pub mod verify;

pub use logic::{Formula, FoTerm, Sequent, Signature, TwoSequent};
pub use term::{Ident, Prop, Term, Type};
