//! Finding an initial state that makes a chosen cell emit a given sequence.

use super::engine::{cell_sequence, step_unchecked};
use super::rules::{CaState, RuleVector};
use super::AutomatonError;
use crate::gf2::{solve_linear, AlgebraError, BitMatrix, BitSequence};

/// Solves for an initial state whose cell-1 sequence starts with `prefix`.
pub fn embed_sequence(d: &RuleVector, prefix: &BitSequence) -> Result<CaState, AutomatonError> {
    embed_sequence_at(d, prefix, 1)
}

/// Solves for an initial state whose sequence at `cell` starts with `prefix`.
///
/// The readout of cell `c` at time `t` is the row `e_c · M^t` of the
/// transition matrix `M`. `M` is symmetric for null-boundary 90/150
/// automata, so that row is simply the state `e_c` stepped `t` times.
/// Every prefix bit contributes an equation; the solution is replayed
/// before it is returned.
pub fn embed_sequence_at(
    d: &RuleVector,
    prefix: &BitSequence,
    cell: usize,
) -> Result<CaState, AutomatonError> {
    let len = d.len();
    if cell == 0 || cell > len {
        return Err(AutomatonError::CellOutOfRange { cell, len });
    }
    if prefix.len() < len {
        return Err(AutomatonError::PrefixTooShort {
            needed: len,
            got: prefix.len(),
        });
    }
    let mut system = BitMatrix::zeros(prefix.len(), len);
    let mut row = vec![0u8; len];
    row[cell - 1] = 1;
    let mut row = CaState::new(row);
    for t in 0..prefix.len() {
        for (c, &b) in row.bits().iter().enumerate() {
            if b == 1 {
                system.set(t, c, true);
            }
        }
        row = step_unchecked(d.bits(), row.bits());
    }
    let solution = match solve_linear(&system, prefix.as_slice()) {
        Ok(s) => s,
        Err(AlgebraError::Inconsistent { .. }) => {
            return Err(AutomatonError::NotProducible { cell })
        }
        Err(e) => return Err(e.into()),
    };
    let state = CaState::new(solution.x);
    let replay = cell_sequence(d, &state, cell, prefix.len())?;
    if &replay != prefix {
        return Err(AutomatonError::NotProducible { cell });
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::berlekamp_massey;

    fn rv(s: &str) -> RuleVector {
        s.parse().unwrap()
    }

    #[test]
    fn recovers_table_state() {
        let s = embed_sequence(&rv("100"), &"110".parse().unwrap()).unwrap();
        assert_eq!(s.to_string(), "100");
        let s = embed_sequence(&rv("100"), &"1101001".parse().unwrap()).unwrap();
        assert_eq!(s.to_string(), "100");
    }

    #[test]
    fn rejects_sequences_beyond_capacity() {
        let seq: BitSequence = "000001000001".parse().unwrap();
        assert_eq!(berlekamp_massey(&seq).lc, 6);
        assert_eq!(
            embed_sequence(&rv("100"), &seq),
            Err(AutomatonError::NotProducible { cell: 1 })
        );
    }

    #[test]
    fn prefix_and_cell_checks() {
        assert!(matches!(
            embed_sequence(&rv("100"), &"11".parse().unwrap()),
            Err(AutomatonError::PrefixTooShort { needed: 3, got: 2 })
        ));
        assert!(embed_sequence_at(&rv("100"), &"110".parse().unwrap(), 5).is_err());
    }

    #[test]
    fn other_cells() {
        let d = rv("0111001110");
        let s0: CaState = "1011000110".parse().unwrap();
        for cell in 1..=10 {
            let seq = cell_sequence(&d, &s0, cell, 40).unwrap();
            let found = embed_sequence_at(&d, &seq, cell).unwrap();
            assert_eq!(cell_sequence(&d, &found, cell, 40).unwrap(), seq);
        }
    }
}
