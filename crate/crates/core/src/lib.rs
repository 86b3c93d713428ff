//! Desk-scale checks of the causal axioms of local quantum physics.
//!
//! The crate is organized by subsystem:
//!
//! * [`geometry`]: causal relations, complements and domains of dependence on
//!   discretized 1+1D Minkowski windows.
//! * [`algebra`]: finite-dimensional *-algebras (closure, commutant, center,
//!   factors), states, Lüders maps and the no-signaling identity.
//! * [`lattice_field`]: the free lattice Klein-Gordon field.
//! * [`protocols`]: Sorkin's three-region protocol and Fermi's two-atom setup
//!   on exact-lightcone qubit circuits.
//! * [`net_verifier`]: a local net of algebras over a brick-wall circuit, the
//!   axiom checks and the cylinder/diamond proof replay.
//! * [`cli`]: suites, reports and the `verify` binary's plumbing.

pub mod algebra;
pub mod cli;
pub mod geometry;
pub mod lattice_field;
pub mod net_verifier;
pub mod protocols;
