//! Linear 90/150 cellular automaton models of LFSR-based nonlinear keystream
//! generators.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf2`]: polynomials over GF(2), GF(2^L) fields, Berlekamp–Massey,
//!   period measurement and a GF(2) linear solver.
//! * [`registers`]: bit-exact LFSR, shrinking generator and clock-controlled
//!   shrinking generator engines.
//! * [`automata`]: null-boundary hybrid 90/150 automata, characteristic
//!   polynomials, synthesis, concatenation, closed-form solutions, period and
//!   complexity predictions, cycle census and sequence embedding.
//! * [`modeler`]: turns a shrinking generator (or a CCSG) into a pair of
//!   linear automata and checks the model end to end.

pub mod automata;
pub mod gf2;
pub mod modeler;
pub mod registers;
