//! Polynomials over GF(2), stored as packed coefficient bit vectors.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use super::AlgebraError;

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInf`],
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over GF(2). Bit `i` of the packed words is the coefficient of `X^i`.
///
/// The word vector is kept normalized (no trailing zero words), so derived
/// equality and hashing agree with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::from_u64(1)
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Poly::from_u64(2)
    }

    /// `X + c` for a bit `c`.
    pub fn linear(c: bool) -> Self {
        Poly::from_u64(2 | c as u64)
    }

    pub fn monomial(exp: usize) -> Self {
        let mut p = Poly::zero();
        p.set_coeff(exp, true);
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = Poly { words: vec![bits] };
        p.normalize();
        p
    }

    pub fn from_u128(bits: u128) -> Self {
        let mut p = Poly {
            words: vec![bits as u64, (bits >> 64) as u64],
        };
        p.normalize();
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Poly { words };
        p.normalize();
        p
    }

    /// Builds a polynomial from the exponents of its nonzero terms.
    /// Repeated exponents cancel in pairs.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Poly::zero();
        for &e in exps {
            p.toggle_coeff(e);
        }
        p
    }

    /// Builds a polynomial from coefficient bits, `bits[i]` being the coefficient of `X^i`.
    pub fn from_coeffs(bits: &[u8]) -> Self {
        let mut p = Poly::zero();
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                p.set_coeff(i, true);
            }
        }
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Packed value when the degree is below 64.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::NegInf,
            Some(&w) => {
                Degree::Finite((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
            }
        }
    }

    /// Degree as an integer, for callers that already excluded the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let w = i / 64;
        if value {
            if self.words.len() <= w {
                self.words.resize(w + 1, 0);
            }
            self.words[w] |= 1 << (i % 64);
        } else if w < self.words.len() {
            self.words[w] &= !(1 << (i % 64));
            self.normalize();
        }
    }

    fn toggle_coeff(&mut self, i: usize) {
        let v = self.coeff(i);
        self.set_coeff(i, !v);
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Exponents of the nonzero terms, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (wi, &w) in self.words.iter().enumerate().rev() {
            let mut w = w;
            while w != 0 {
                let top = 63 - w.leading_zeros() as usize;
                out.push(wi * 64 + top);
                w &= !(1 << top);
            }
        }
        out
    }

    /// `self ^= other << shift`
    fn xor_shifted(&mut self, other: &Poly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let needed = other.words.len() + ws + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.normalize();
    }

    pub fn shl(&self, shift: usize) -> Poly {
        let mut out = Poly::zero();
        out.xor_shifted(self, shift);
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let (small, big) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Poly::zero();
        for e in small.exponents() {
            out.xor_shifted(big, e);
        }
        out
    }

    /// Squaring spreads coefficient `i` to position `2i`.
    pub fn square(&self) -> Poly {
        let mut words = vec![0u64; self.words.len() * 2];
        for (i, &w) in self.words.iter().enumerate() {
            words[2 * i] = spread_bits(w as u32);
            words[2 * i + 1] = spread_bits((w >> 32) as u32);
        }
        Poly::from_words(words)
    }

    /// Inverse of [`Poly::square`]; `None` unless every odd coefficient is zero.
    pub fn sqrt(&self) -> Option<Poly> {
        let mut out = Poly::zero();
        for e in self.exponents() {
            if e % 2 == 1 {
                return None;
            }
            out.set_coeff(e / 2, true);
        }
        Some(out)
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn div_rem(&self, m: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let dm = m.deg().ok_or(AlgebraError::ZeroModulus)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(dr) = rem.deg() {
            if dr < dm {
                break;
            }
            let shift = dr - dm;
            rem.xor_shifted(m, shift);
            quot.set_coeff(shift, true);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, m: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.div_rem(m)?.1)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly, AlgebraError> {
        self.mul(other).rem(m)
    }

    /// `self^exp mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u128, m: &Poly) -> Result<Poly, AlgebraError> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one().rem(m)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square().rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Formal derivative: odd-exponent terms drop one degree, even ones vanish.
    pub fn derivative(&self) -> Poly {
        let mut out = Poly::zero();
        for e in self.exponents() {
            if e % 2 == 1 {
                out.set_coeff(e - 1, true);
            }
        }
        out
    }

    /// Coefficient reversal within degree `n`: `X^n · p(1/X)`.
    /// Terms above `n` are dropped.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut out = Poly::zero();
        for e in self.exponents() {
            if e <= n {
                out.set_coeff(n - e, true);
            }
        }
        out
    }

    /// Reciprocal with respect to the polynomial's own degree.
    pub fn reciprocal(&self) -> Poly {
        match self.deg() {
            None => Poly::zero(),
            Some(d) => self.reverse(d),
        }
    }

    /// Renders as `0x<hex>@<degree>`, the hex value holding bits b_L..b_0 MSB-first.
    pub fn to_hex_string(&self) -> String {
        let mut hex = String::new();
        let mut started = false;
        for &w in self.words.iter().rev() {
            if started {
                hex.push_str(&format!("{w:016x}"));
            } else if w != 0 {
                hex.push_str(&format!("{w:x}"));
                started = true;
            }
        }
        if hex.is_empty() {
            hex.push('0');
        }
        format!("0x{}@{}", hex, self.degree())
    }

    fn parse_hex(text: &str) -> Result<Poly, AlgebraError> {
        let bad = |why: &str| AlgebraError::PolyParse(format!("{text:?}: {why}"));
        let body = &text[2..];
        let (digits, deg) = body
            .split_once('@')
            .ok_or_else(|| bad("hex form needs an '@<degree>' annotation"))?;
        if digits.is_empty() {
            return Err(bad("no hex digits"));
        }
        let mut words = Vec::new();
        let chars: Vec<char> = digits.chars().collect();
        for chunk in chars.rchunks(16) {
            let s: String = chunk.iter().collect();
            words.push(u64::from_str_radix(&s, 16).map_err(|_| bad("invalid hex digit"))?);
        }
        let p = Poly::from_words(words);
        let declared = deg.trim();
        let matches = match p.degree() {
            Degree::NegInf => declared == "-inf",
            Degree::Finite(d) => {
                declared
                    .parse::<usize>()
                    .map_err(|_| bad("invalid degree"))?
                    == d
            }
        };
        if !matches {
            return Err(bad(&format!(
                "declared degree {declared} but value has degree {}",
                p.degree()
            )));
        }
        Ok(p)
    }

    fn parse_terms(text: &str) -> Result<Poly, AlgebraError> {
        let bad = |why: &str| AlgebraError::PolyParse(format!("{text:?}: {why}"));
        let compact: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        if compact == "0" {
            return Ok(Poly::zero());
        }
        let mut p = Poly::zero();
        for term in compact.split('+') {
            let exp = match term {
                "" => return Err(bad("empty term")),
                "1" => 0,
                "x" => 1,
                t => {
                    let e = t
                        .strip_prefix("x^")
                        .ok_or_else(|| bad(&format!("unrecognized term {t:?}")))?;
                    e.parse::<usize>()
                        .map_err(|_| bad(&format!("invalid exponent in {t:?}")))?
                }
            };
            p.toggle_coeff(exp);
        }
        Ok(p)
    }
}

impl FromStr for Poly {
    type Err = AlgebraError;

    /// Accepts the exponent form (`x^5+x^2+1`) or the hex form (`0x25@5`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.len() > 2 && (t.starts_with("0x") || t.starts_with("0X")) {
            Poly::parse_hex(t)
        } else {
            Poly::parse_terms(t)
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.xor_shifted(rhs, 0);
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

fn spread_bits(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Product in GF(2)[X].
pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    a.mul(b)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn poly_mod(a: &Poly, m: &Poly) -> Result<Poly, AlgebraError> {
    a.rem(m)
}

/// Monic greatest common divisor. Over GF(2) every nonzero polynomial is monic.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly, AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(poly_mul(&p("x+1"), &p("x+1")), p("x^2+1"));
        assert_eq!(poly_mul(&p("x^3+x^2+1"), &p("x^3+x^2+1")), p("x^6+x^4+1"));
        assert!(poly_mul(&Poly::zero(), &p("x^5+x^2+1")).is_zero());
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(poly_mod(&p("x^5"), &p("x^5+x^2+1")).unwrap(), p("x^2+1"));
        assert!(poly_mod(&p("x^3+x^2+1"), &p("x^3+x^2+1"))
            .unwrap()
            .is_zero());
        assert_eq!(poly_mod(&p("x"), &p("x^5+x^2+1")).unwrap(), p("x"));
        assert_eq!(
            poly_mod(&p("x"), &Poly::zero()),
            Err(AlgebraError::ZeroModulus)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("x^2+1"), &p("x+1")).unwrap(), p("x+1"));
        assert_eq!(
            poly_gcd(&p("x^3+x^2+1"), &p("x^3+x+1")).unwrap(),
            Poly::one()
        );
        assert_eq!(
            poly_gcd(&p("x^4+x+1"), &Poly::zero()).unwrap(),
            p("x^4+x+1")
        );
        assert_eq!(
            poly_gcd(&Poly::zero(), &Poly::zero()),
            Err(AlgebraError::GcdOfZeros)
        );
    }

    #[test]
    fn zero_degree_orders_below_everything() {
        assert_eq!(Poly::zero().degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(Poly::one().degree(), Degree::Finite(0));
        assert_eq!(Poly::monomial(130).degree(), Degree::Finite(130));
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("X^5 + x^2 + 1"), p("0x25@5"));
        assert_eq!(p("1+x^2+x^5").to_string(), "x^5+x^2+1");
        assert_eq!(p("x^5+x^2+1").to_hex_string(), "0x25@5");
        assert_eq!(p("x+1").to_string(), "x+1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("x^70+1").to_hex_string(), "0x400000000000000001@70");
        assert_eq!(p("0x400000000000000001@70"), p("x^70+1"));
        assert!("0x25@4".parse::<Poly>().is_err());
        assert!("x^5+y".parse::<Poly>().is_err());
        assert!("0x25".parse::<Poly>().is_err());
        assert!("".parse::<Poly>().is_err());
    }

    #[test]
    fn sqrt_inverts_square() {
        let a = p("x^9+x^4+x+1");
        assert_eq!(a.square().sqrt().unwrap(), a);
        assert!(p("x^3+1").sqrt().is_none());
    }

    #[test]
    fn reverse_and_derivative() {
        assert_eq!(p("x^3+x^2+1").reciprocal(), p("x^3+x+1"));
        assert_eq!(p("x^2+x").reverse(3), p("x^2+x"));
        assert_eq!(p("x^5+x^4+x^2+x+1").derivative(), p("x^4+1"));
    }
}
