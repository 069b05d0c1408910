//! Finite binary sequences and the analyses run on them: Berlekamp–Massey,
//! recurrence checking and period measurement.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use super::poly::Poly;
use super::AlgebraError;

/// A finite binary sequence `s_0, s_1, …`, one `u8` (0 or 1) per term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    pub fn new() -> Self {
        BitSequence::default()
    }

    /// Takes the low bit of each byte.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        BitSequence {
            bits: bits.into_iter().map(|b| b & 1).collect(),
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        BitSequence {
            bits: bits.into_iter().map(u8::from).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        BitSequence { bits: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: u8) {
        self.bits.push(bit & 1);
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn slice(&self, start: usize, end: usize) -> BitSequence {
        BitSequence {
            bits: self.bits[start..end].to_vec(),
        }
    }

    /// Left rotation by `k` positions.
    pub fn rotated(&self, k: usize) -> BitSequence {
        let mut bits = self.bits.clone();
        if !bits.is_empty() {
            bits.rotate_left(k % self.bits.len());
        }
        BitSequence { bits }
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.bits.iter().copied()
    }
}

impl Index<usize> for BitSequence {
    type Output = u8;
    fn index(&self, i: usize) -> &u8 {
        &self.bits[i]
    }
}

impl FromIterator<u8> for BitSequence {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        BitSequence::from_bits(iter)
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| (b'0' + b) as char).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSequence({self})")
    }
}

impl FromStr for BitSequence {
    type Err = AlgebraError;

    /// ASCII '0'/'1' characters; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() => {}
                c => {
                    return Err(AlgebraError::BitParse(format!(
                        "unexpected character {c:?} at offset {i}"
                    )))
                }
            }
        }
        Ok(BitSequence { bits })
    }
}

/// Linear complexity and minimal polynomial of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComplexity {
    pub lc: usize,
    /// Characteristic polynomial `X^L + Σ c_i X^(L-i)`, of degree exactly `lc`.
    pub charpoly: Poly,
}

impl LinearComplexity {
    /// The reciprocal connection polynomial `1 + Σ c_i X^i`.
    pub fn connection_poly(&self) -> Poly {
        connection_from_charpoly(&self.charpoly, self.lc)
    }
}

/// Converts a characteristic polynomial of degree `lc` to connection form.
pub fn connection_from_charpoly(charpoly: &Poly, lc: usize) -> Poly {
    charpoly.reverse(lc)
}

/// Converts a connection polynomial of LFSR length `lc` to characteristic form.
pub fn charpoly_from_connection(connection: &Poly, lc: usize) -> Poly {
    connection.reverse(lc)
}

/// Berlekamp–Massey over GF(2).
///
/// Returns the linear complexity together with the characteristic polynomial.
/// An all-zero (or empty) input yields `lc = 0` and the constant polynomial 1.
pub fn berlekamp_massey(s: &BitSequence) -> LinearComplexity {
    let n = s.len();
    // connection polynomials as little-endian coefficient bit vectors
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = 1usize;
    for i in 0..n {
        let mut d = s[i];
        for j in 1..=l {
            d ^= c[j] & s[i - j];
        }
        if d == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            for j in 0..=(n - m) {
                if b[j] == 1 && j + m <= n {
                    c[j + m] ^= 1;
                }
            }
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            for j in 0..=(n - m) {
                if b[j] == 1 && j + m <= n {
                    c[j + m] ^= 1;
                }
            }
            m += 1;
        }
    }
    let connection = Poly::from_coeffs(&c[..=l]);
    LinearComplexity {
        lc: l,
        charpoly: charpoly_from_connection(&connection, l),
    }
}

/// Checks `Σ_j q_j · s_{n+j} = 0` for every window that fits in the sequence.
pub fn satisfies_recurrence(s: &BitSequence, q: &Poly) -> Result<bool, AlgebraError> {
    let d = q.deg().ok_or(AlgebraError::ZeroRecurrence)?;
    if s.len() < d + 1 {
        return Err(AlgebraError::SequenceTooShort {
            needed: d + 1,
            got: s.len(),
        });
    }
    let taps: Vec<usize> = q.exponents();
    Ok((0..=s.len() - d - 1).all(|n| taps.iter().fold(0u8, |acc, &j| acc ^ s[n + j]) == 0))
}

/// Smallest divisor `T` of `bound` with `s_{n+T} = s_n` throughout the sequence.
///
/// The sequence must hold at least `2·bound` bits.
pub fn min_period(s: &BitSequence, bound: usize) -> Result<usize, AlgebraError> {
    if bound == 0 {
        return Err(AlgebraError::InvalidPeriodBound);
    }
    if s.len() < 2 * bound {
        return Err(AlgebraError::SequenceTooShort {
            needed: 2 * bound,
            got: s.len(),
        });
    }
    let bits = s.as_slice();
    let mut divisors: Vec<usize> = (1..=bound).filter(|t| bound.is_multiple_of(*t)).collect();
    divisors.sort_unstable();
    divisors
        .into_iter()
        .find(|&t| bits[t..].iter().zip(bits).all(|(a, b)| a == b))
        .ok_or(AlgebraError::NoPeriod { bound })
}
