//! Embracing bases and embracing exchange sequences in oriented matroids.
//!
//! Three representations share one oracle interface ([`OrientedMatroid`]):
//!
//! * [`graphic`]: directed graphs, where bases are spanning trees and a tree
//!   is `st`-embracing when its `s`–`t` tree path is directed;
//! * [`affine`]: rational point configurations, where a simplex is
//!   `0`-embracing when it contains the anchor point in its interior;
//! * [`explicit`]: hand-written lists of signed circuits.
//!
//! On top of the oracles, [`distance`] provides exact breadth-first
//! distance oracles, and [`graphic::theorem2_sequence`] builds monotone
//! `st`-embracing exchange sequences of length at most `n - 1`.

pub mod affine;
pub mod distance;
pub mod explicit;
pub mod graphic;
pub mod om;
pub mod text;

pub use om::{
    is_embracing, validate_circuit_axioms, verify_exchange_sequence, Anchor, AxiomReport,
    BasisSet, ElementId, Exchange, ExchangeSequence, OmError, OrientedMatroid, SignedCircuit,
    VerificationReport, VertexId,
};
