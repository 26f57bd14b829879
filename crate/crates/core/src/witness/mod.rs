//! Witness descriptions: a small text format listing the structural claims
//! a limiting example must satisfy, a verifier for those claims, a
//! backtracking synthesiser, and the derivation of the 26-vertex `fig3` example.

pub mod derive;
pub mod spec;
pub mod synth;
pub mod verify;

pub use derive::derive_fig3;
pub use spec::WitnessSpec;
pub use synth::{synthesize, SynthOptions, SynthOutcome};
pub use verify::{verify, Clause, VerificationReport};
