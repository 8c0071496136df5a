//! The twisted bar spectral sequence: words up to the flip action, orbit
//! summands on `E¹`, typed `d₁` components, and bookkeeping for the longer
//! differentials it cannot compute.

mod ledger;
mod page;
mod words;

pub use ledger::{
    must_die_ledger, norm_candidate, underlying_fate, MustDie, MustDieLedger, NormCandidate,
    UnderlyingFate,
};
pub use page::{twisted_d1, twisted_e1, twisted_e2_dims};
pub use words::{sphere_degree, twisted_words, TwistedOrbits, TwistedWord};
