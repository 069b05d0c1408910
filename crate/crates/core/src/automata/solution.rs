//! Closed-form solutions of `P(E)^p a_n = 0` and the period, complexity and
//! counting predictions derived from them.

use super::AutomatonError;
use crate::gf2::{binom_mod2, binom_period, BitSequence, FieldCtx, FieldElem};

/// Coefficients `A_0 … A_{p-1}` of
/// `a_n = Σ_i C(n, i) · Tr(A_i · α^n)` over the field of `ctx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCoeffs {
    pub ctx: FieldCtx,
    pub a: Vec<FieldElem>,
}

impl SolutionCoeffs {
    pub fn new(ctx: FieldCtx, a: Vec<FieldElem>) -> Result<Self, AutomatonError> {
        ctx.require_primitive()?;
        if a.is_empty() {
            return Err(AutomatonError::ZeroMultiplicity);
        }
        Ok(SolutionCoeffs { ctx, a })
    }

    pub fn multiplicity(&self) -> usize {
        self.a.len()
    }

    /// Which `A_i` are nonzero, in index order.
    pub fn nonzero_flags(&self) -> Vec<bool> {
        self.a.iter().map(|a| !a.is_zero()).collect()
    }
}

pub fn solution_eval(c: &SolutionCoeffs, n: u64) -> u8 {
    let alpha_n = c.ctx.alpha_pow(n);
    c.a.iter()
        .enumerate()
        .filter(|(i, a)| !a.is_zero() && binom_mod2(n, *i as u64) == 1)
        .fold(0u8, |acc, (_, &a)| acc ^ c.ctx.trace(c.ctx.mul(a, alpha_n)))
}

/// `solution_eval` for `n` in `0..len`.
pub fn solution_stream(c: &SolutionCoeffs, len: usize) -> BitSequence {
    let alpha = c.ctx.alpha();
    let mut cur: Vec<FieldElem> = c.a.clone();
    (0..len as u64)
        .map(|n| {
            let mut bit = 0u8;
            for (i, a) in cur.iter_mut().enumerate() {
                if binom_mod2(n, i as u64) == 1 {
                    bit ^= c.ctx.trace(*a);
                }
                *a = c.ctx.mul(*a, alpha);
            }
            bit
        })
        .collect()
}

fn highest_flag(flags: &[bool]) -> Result<usize, AutomatonError> {
    flags
        .iter()
        .rposition(|&f| f)
        .ok_or(AutomatonError::NullSolution)
}

/// `max { binom_period(i) · (2^L − 1) : A_i ≠ 0 }`.
pub fn predict_period(nonzero_flags: &[bool], l: u32) -> Result<u64, AutomatonError> {
    let i = highest_flag(nonzero_flags)?;
    // binom_period is monotone in i, so the highest flagged index wins
    Ok(binom_period(i as u64) * ((1u64 << l) - 1))
}

/// `(i_max + 1) · L`.
pub fn predict_lc(nonzero_flags: &[bool], l: u32) -> Result<u64, AutomatonError> {
    Ok((highest_flag(nonzero_flags)? as u64 + 1) * l as u64)
}

/// Number of distinct nonzero sequences per complexity class and in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedCounts {
    /// `N_i = 2^(iL) / binom_period(i)` for `i = 0 … p−1`.
    pub per_class: Vec<u128>,
    pub total: u128,
}

pub fn predict_counts(l: u32, p: u32) -> Result<PredictedCounts, AutomatonError> {
    if l == 0 || p == 0 {
        return Err(AutomatonError::ZeroMultiplicity);
    }
    if (p as u64 - 1) * l as u64 >= 127 {
        return Err(AutomatonError::CountOverflow { l, p });
    }
    let per_class: Vec<u128> = (0..p)
        .map(|i| (1u128 << (i * l)) / binom_period(i as u64) as u128)
        .collect();
    let total = per_class.iter().sum();
    Ok(PredictedCounts { per_class, total })
}
