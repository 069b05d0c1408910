//! Irreducibility and primitivity tests, plus splitting a polynomial into
//! a power of a single irreducible factor.

use super::poly::{poly_gcd, Poly};
use super::AlgebraError;

/// Largest degree for which `2^L - 1` is factored by trial division.
pub const DEFAULT_PRIMITIVE_DEGREE_CAP: usize = 40;

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `X^(2^L) = X mod p` and `gcd(X^(2^(L/r)) - X, p) = 1` for every prime `r | L`.
pub fn poly_is_irreducible(p: &Poly) -> Result<bool, AlgebraError> {
    let l = match p.deg() {
        Some(d) if d >= 1 => d,
        _ => return Err(AlgebraError::ConstantPolynomial),
    };
    // X^(2^k) mod p for k = 0..=L
    let x = Poly::x().rem(p)?;
    let mut frob = Vec::with_capacity(l + 1);
    frob.push(x.clone());
    for k in 1..=l {
        let next = frob[k - 1].square().rem(p)?;
        frob.push(next);
    }
    if frob[l] != x {
        return Ok(false);
    }
    for r in prime_factors(l as u64) {
        let k = l / r as usize;
        let g = poly_gcd(&(&frob[k] + &x), p)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `X` generates the multiplicative group modulo an irreducible `p`,
/// with trial-division factoring of `2^L - 1` capped at `cap` bits.
pub fn poly_is_primitive_with_cap(p: &Poly, cap: usize) -> Result<bool, AlgebraError> {
    if !poly_is_irreducible(p)? {
        return Err(AlgebraError::Reducible(p.clone()));
    }
    let l = p.deg().expect("irreducible has a degree");
    if l > cap || l > 63 {
        return Err(AlgebraError::FactorizationBound { degree: l, cap });
    }
    let order = (1u64 << l) - 1;
    if l == 1 {
        // GF(2)^* is trivial; X = 1 mod (X + 1) generates it, X mod X does not exist.
        return Ok(p == &Poly::linear(true));
    }
    for q in prime_factors(order) {
        if Poly::x().pow_mod((order / q) as u128, p)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn poly_is_primitive(p: &Poly) -> Result<bool, AlgebraError> {
    poly_is_primitive_with_cap(p, DEFAULT_PRIMITIVE_DEGREE_CAP)
}

/// Writes `m` as `base^exponent` with `base` irreducible.
///
/// Even exponents are peeled off by GF(2) square roots; the remaining odd
/// power `R = Q^k` has radical `R / gcd(R, R')`.
pub fn irreducible_power(m: &Poly) -> Result<(Poly, u64), AlgebraError> {
    if m.deg().unwrap_or(0) == 0 {
        return Err(AlgebraError::NotAPrimePower {
            poly: m.clone(),
            found: "constant".into(),
        });
    }
    let mut rest = m.clone();
    let mut two_power = 1u64;
    while let Some(r) = rest.sqrt() {
        rest = r;
        two_power *= 2;
    }
    let g = poly_gcd(&rest, &rest.derivative())?;
    let (base, r) = rest.div_rem(&g)?;
    debug_assert!(r.is_zero());
    if !poly_is_irreducible(&base)? {
        return Err(AlgebraError::NotAPrimePower {
            poly: m.clone(),
            found: format!("radical {base} is reducible"),
        });
    }
    let mut k = 0u64;
    let mut cur = rest;
    while !cur.is_one() {
        let (q, r) = cur.div_rem(&base)?;
        if !r.is_zero() {
            return Err(AlgebraError::NotAPrimePower {
                poly: m.clone(),
                found: format!("leftover cofactor {cur} after dividing by {base}"),
            });
        }
        cur = q;
        k += 1;
    }
    Ok((base, k * two_power))
}
