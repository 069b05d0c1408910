//! Null-boundary hybrid 90/150 stepping.

use super::rules::{CaState, RuleVector};
use super::AutomatonError;
use crate::gf2::BitSequence;

/// One synchronous update. Cell `k` becomes `a_{k-1} + a_{k+1}`, plus its own
/// value when `d_k = 1`; neighbours beyond either end read as 0.
pub fn ca_step(d: &RuleVector, s: &CaState) -> Result<CaState, AutomatonError> {
    check_len(d, s)?;
    Ok(step_unchecked(d.bits(), s.bits()))
}

fn check_len(d: &RuleVector, s: &CaState) -> Result<(), AutomatonError> {
    if d.len() != s.len() {
        return Err(AutomatonError::LengthMismatch {
            rules: d.len(),
            state: s.len(),
        });
    }
    Ok(())
}

pub(crate) fn step_unchecked(rules: &[u8], cells: &[u8]) -> CaState {
    let n = cells.len();
    let next = (0..n)
        .map(|k| {
            let left = if k > 0 { cells[k - 1] } else { 0 };
            let right = if k + 1 < n { cells[k + 1] } else { 0 };
            left ^ right ^ (rules[k] & cells[k])
        })
        .collect();
    CaState::new(next)
}

/// States `s0, s1, …` for `steps` updates (`steps + 1` states in total).
pub fn evolve(d: &RuleVector, s0: &CaState, steps: usize) -> Result<Vec<CaState>, AutomatonError> {
    check_len(d, s0)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(s0.clone());
    for _ in 0..steps {
        let next = step_unchecked(d.bits(), out.last().unwrap().bits());
        out.push(next);
    }
    Ok(out)
}

/// The vertical sequence read at `cell` (1-based) over `n` time steps,
/// starting with the initial state.
pub fn cell_sequence(
    d: &RuleVector,
    s0: &CaState,
    cell: usize,
    n: usize,
) -> Result<BitSequence, AutomatonError> {
    check_len(d, s0)?;
    if cell == 0 || cell > d.len() {
        return Err(AutomatonError::CellOutOfRange { cell, len: d.len() });
    }
    if let Some(ca) = PackedCa::new(d) {
        let mut s = s0.to_packed().expect("length checked");
        let shift = d.len() - cell;
        return Ok((0..n)
            .map(|_| {
                let bit = ((s >> shift) & 1) as u8;
                s = ca.step(s);
                bit
            })
            .collect());
    }
    let mut s = s0.clone();
    Ok((0..n)
        .map(|_| {
            let bit = s.cell(cell);
            s = step_unchecked(d.bits(), s.bits());
            bit
        })
        .collect())
}

/// Word-level stepper for automata of at most 64 cells, cell 1 in the most
/// significant of `len` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PackedCa {
    rules: u64,
    mask: u64,
    len: usize,
}

impl PackedCa {
    pub fn new(d: &RuleVector) -> Option<Self> {
        let rules = d.to_packed()?;
        let len = d.len();
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Some(PackedCa { rules, mask, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn step(&self, s: u64) -> u64 {
        // s >> 1 brings cell k-1 under cell k; s << 1 brings cell k+1
        (s >> 1) ^ ((s << 1) & self.mask) ^ (s & self.rules)
    }
}
