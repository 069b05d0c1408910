//! Null-boundary hybrid 90/150 cellular automata and the multiplicative
//! polynomial construction built from them.

mod census;
mod construct;
mod embed;
mod engine;
mod rules;
mod solution;

pub use census::{
    classify_state, enumerate_cycle_records, enumerate_cycles, enumerate_cycles_with, summarize,
    CensusOptions, CycleRecord, CycleSummary, PackedClassifier, StateClass,
    DEFAULT_ENUMERATION_BOUND,
};
pub use construct::{
    all_with_char_poly, build_mpca, ca_char_poly, concat_double, doublings_for, synthesize_ca,
    synthesize_ca_with_bound, DEFAULT_SYNTHESIS_BOUND,
};
pub use embed::{embed_sequence, embed_sequence_at};
pub use engine::{ca_step, cell_sequence, evolve, PackedCa};
pub use rules::{decode_hex, encode_hex, CaState, RuleVector};
pub use solution::{
    predict_counts, predict_lc, predict_period, solution_eval, solution_stream, PredictedCounts,
    SolutionCoeffs,
};

use thiserror::Error;

use crate::gf2::{AlgebraError, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("a rule vector needs at least one cell")]
    EmptyRuleVector,
    #[error("rule vector has {rules} cells but the state has {state}")]
    LengthMismatch { rules: usize, state: usize },
    #[error("cell {cell} is outside 1..={len}")]
    CellOutOfRange { cell: usize, len: usize },
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("hex value {text:?} does not fit in {len} cells")]
    HexOverflow { text: String, len: usize },
    #[error("expected a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial {0} is reducible")]
    Reducible(Poly),
    #[error("degree {degree} exceeds the synthesis search bound {bound}")]
    SynthesisBound { degree: usize, bound: usize },
    #[error("no 90/150 automaton found with characteristic polynomial {0}")]
    SynthesisFailed(Poly),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("all coefficients are zero: the null sequence has no period")]
    NullSolution,
    #[error("sequence counts for L={l}, p={p} overflow 128 bits")]
    CountOverflow { l: u32, p: u32 },
    #[error("{len} cells exceeds the enumeration bound of {bound}")]
    EnumerationBound { len: usize, bound: usize },
    #[error("automaton {0} has a singular transition matrix")]
    SingularTransition(crate::automata::RuleVector),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("sequence prefix has {got} bits but the automaton has {needed} cells")]
    PrefixTooShort { needed: usize, got: usize },
    #[error("sequence not producible at cell {cell} of this automaton")]
    NotProducible { cell: usize },
}
