//! Finite quantum-logic structures.
//!
//! * [`lattice`]: bounded ortholattices, their constructors (MO_n, horizontal
//!   sums, products, Greechie pastings) and law checks.
//! * [`greechie`]: Greechie diagrams (atoms and contexts) and their text format.
//! * [`states`]: two-valued states on Greechie diagrams.
//! * [`rays`]: exact projective rays over Q(√2) and the Peres configuration.
//! * [`born`]: trace-rule probabilities and the "Ur"-operator.
//! * [`polytope`]: correlation polytopes, exact facet enumeration and
//!   classicality tests.
//! * [`kalmbach`]: Kalmbach embeddings of set-labelled posets.

pub mod born;
pub mod error;
pub mod greechie;
pub mod kalmbach;
pub mod lattice;
pub mod polytope;
pub mod rays;
pub mod states;

pub use error::{Error, Result};
pub use greechie::GreechieDiagram;
pub use lattice::{Lattice, OrthoLattice};

/// Version tag written into every JSON document.
pub const FORMAT_VERSION: u32 = 1;
