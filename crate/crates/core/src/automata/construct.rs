//! Characteristic polynomials of 90/150 automata, synthesis from an
//! irreducible polynomial, and the doubling concatenation that squares the
//! characteristic polynomial.

use super::rules::RuleVector;
use super::AutomatonError;
use crate::gf2::{poly_is_irreducible, Poly};

/// Default largest degree handled by [`synthesize_ca`].
pub const DEFAULT_SYNTHESIS_BOUND: usize = 20;

/// `Δ_len` from `Δ_k = (X + d_k) Δ_{k-1} + Δ_{k-2}`, `Δ_{-1} = 0`, `Δ_0 = 1`.
pub fn ca_char_poly(d: &RuleVector) -> Poly {
    let (mut prev, mut cur) = (Poly::zero(), Poly::one());
    for &bit in d.bits() {
        let next = &Poly::linear(bit == 1).mul(&cur) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Recovers the rule vector whose last two sub-automaton polynomials are
/// `(top, below)`, or `None` if no 90/150 automaton has them.
///
/// Runs the recurrence backwards: dividing `Δ_k` by `Δ_{k-1}` must give the
/// quotient `X + d_k` and remainder `Δ_{k-2}` of degree exactly `k - 2`, down
/// to `Δ_1 = X + d_1` over `Δ_0 = 1`. The walk stops at the first quotient
/// that is not linear.
fn unwind(top: &Poly, below: &Poly) -> Option<Vec<u8>> {
    let len = top.deg()?;
    let mut rules = vec![0u8; len];
    let (mut a, mut b) = (top.clone(), below.clone());
    for k in (1..=len).rev() {
        if b.deg() != Some(k - 1) {
            return None;
        }
        let (q, r) = a.div_rem(&b).ok()?;
        if q.deg() != Some(1) {
            return None;
        }
        rules[k - 1] = q.coeff(0) as u8;
        let expected_rem = if k >= 2 { Some(k - 2) } else { None };
        if r.deg() != expected_rem {
            return None;
        }
        a = b;
        b = r;
    }
    Some(rules)
}

/// Every rule vector of length `deg q` whose characteristic polynomial is `q`,
/// ordered by `Δ_{len-1}` descending (the packed value of the
/// sub-automaton polynomial of the first `len - 1` cells).
///
/// Exhaustive over the `2^(len-1)` candidates for `Δ_{len-1}`.
pub fn all_with_char_poly(q: &Poly, bound: usize) -> Result<Vec<RuleVector>, AutomatonError> {
    let len = q.deg().ok_or(AutomatonError::ConstantPolynomial)?;
    if len == 0 {
        return Err(AutomatonError::ConstantPolynomial);
    }
    if len > bound || len > 63 {
        return Err(AutomatonError::SynthesisBound { degree: len, bound });
    }
    let top = 1u64 << (len - 1);
    let mut found = Vec::new();
    for low in (0..top).rev() {
        let below = Poly::from_u64(top | low);
        if let Some(rules) = unwind(q, &below) {
            found.push(RuleVector::new(rules).expect("nonempty"));
        }
    }
    Ok(found)
}

/// A pair of mutually reversed automata with characteristic polynomial `q`.
///
/// The first vector is the one whose leading sub-automaton polynomial
/// `Δ_{len-1}` is largest; the second is its reversal.
pub fn synthesize_ca(q: &Poly) -> Result<(RuleVector, RuleVector), AutomatonError> {
    synthesize_ca_with_bound(q, DEFAULT_SYNTHESIS_BOUND)
}

pub fn synthesize_ca_with_bound(
    q: &Poly,
    bound: usize,
) -> Result<(RuleVector, RuleVector), AutomatonError> {
    match q.deg() {
        Some(d) if d >= 1 => {}
        _ => return Err(AutomatonError::ConstantPolynomial),
    }
    if !poly_is_irreducible(q)? {
        return Err(AutomatonError::Reducible(q.clone()));
    }
    let candidates = all_with_char_poly(q, bound)?;
    let first = candidates
        .into_iter()
        .next()
        .ok_or_else(|| AutomatonError::SynthesisFailed(q.clone()))?;
    let second = first.reversed();
    for d in [&first, &second] {
        if &ca_char_poly(d) != q {
            return Err(AutomatonError::SynthesisFailed(q.clone()));
        }
    }
    Ok((first, second))
}

/// `(d_1, …, d_{L-1}, ¬d_L, ¬d_L, d_{L-1}, …, d_1)`: the automaton followed by
/// its reversal with both central rules complemented. Squares the
/// characteristic polynomial.
pub fn concat_double(d: &RuleVector) -> RuleVector {
    let l = d.len();
    let mut bits = Vec::with_capacity(2 * l);
    bits.extend_from_slice(&d.bits()[..l - 1]);
    let flipped = d.bits()[l - 1] ^ 1;
    bits.push(flipped);
    bits.push(flipped);
    bits.extend(d.bits()[..l - 1].iter().rev());
    RuleVector::new(bits).expect("nonempty")
}

/// Number of doublings needed for exponent `p`: `⌈log₂ p⌉`, 0 for `p = 1`.
pub fn doublings_for(p: u64) -> u32 {
    assert!(p >= 1);
    64 - (p - 1).leading_zeros()
}

/// Both synthesized automata for `p_basic`, each doubled `⌈log₂ p⌉` times.
/// Their characteristic polynomial is `p_basic^(2^q)`.
pub fn build_mpca(p_basic: &Poly, p: u64) -> Result<(RuleVector, RuleVector), AutomatonError> {
    if p == 0 {
        return Err(AutomatonError::ZeroMultiplicity);
    }
    let (mut a, mut b) = synthesize_ca(p_basic)?;
    for _ in 0..doublings_for(p) {
        a = concat_double(&a);
        b = concat_double(&b);
    }
    Ok((a, b))
}
