//! Exact-arithmetic verification engine for the single-qubit stabilizer
//! subtheory.
//!
//! The crate is organised in four layers:
//!
//! - [`algebra`]: exact rationals, signed Pauli axes, and the 24-element
//!   single-qubit Clifford group represented as signed axis permutations.
//! - [`operational`]: the operational layer — Bloch-vector preparations,
//!   channels as convex mixtures of Cliffords, affine measurement effects,
//!   the Born rule, and operational-equivalence decisions.
//! - [`ontology`]: the 8-state ontological model over `{±1}³` — preparation
//!   densities, stochastic maps, response vectors, and the total-probability
//!   prediction rule, together with a checker that compares the model
//!   against the Born rule.
//! - [`nogo`]: mechanized contradiction replays — the preparation-
//!   noncontextuality partition, forced coarse-grained maps for the two
//!   operationally equivalent depolarizing channels, certificate emission,
//!   and an exhaustive relabeling search.
//!
//! Every probability in the crate is an exact rational; no floating point
//! is used anywhere.

pub mod algebra;
pub mod nogo;
pub mod ontology;
pub mod operational;

pub use algebra::{Axis, CliffordElement, Rational, Sign, SignedPauli};
pub use operational::{BlochState, Channel, Effect, Measurement};
