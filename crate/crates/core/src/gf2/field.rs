//! GF(2^L) arithmetic modulo a fixed irreducible polynomial, for L ≤ 63.

use super::irreducible::{poly_is_irreducible, poly_is_primitive};
use super::poly::Poly;
use super::AlgebraError;

pub const MAX_FIELD_DEGREE: usize = 63;

/// An element of GF(2^L): a polynomial residue of degree < L, packed in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field GF(2)[X] / (modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    modulus: Poly,
    packed: u64,
    degree: usize,
    primitive: Option<bool>,
}

impl FieldCtx {
    pub fn new(modulus: Poly) -> Result<Self, AlgebraError> {
        let degree = match modulus.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(AlgebraError::ConstantPolynomial),
        };
        if degree > MAX_FIELD_DEGREE {
            return Err(AlgebraError::FieldTooLarge(degree));
        }
        if !poly_is_irreducible(&modulus)? {
            return Err(AlgebraError::Reducible(modulus));
        }
        // `None` when 2^L - 1 is beyond the factoring cap.
        let primitive = poly_is_primitive(&modulus).ok();
        let packed = modulus.to_u64().unwrap_or(0);
        Ok(FieldCtx {
            modulus,
            packed,
            degree,
            primitive,
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Size of the multiplicative group, `2^L - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.degree) - 1
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive == Some(true)
    }

    pub fn require_primitive(&self) -> Result<(), AlgebraError> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(AlgebraError::NotPrimitive(self.modulus.clone()))
        }
    }

    /// Residue class of `X`.
    pub fn alpha(&self) -> FieldElem {
        self.reduce(2)
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElem, AlgebraError> {
        if bits >> self.degree != 0 {
            return Err(AlgebraError::ElementOutOfRange {
                value: bits,
                degree: self.degree,
            });
        }
        Ok(FieldElem(bits))
    }

    pub fn from_poly(&self, p: &Poly) -> FieldElem {
        let r = p.rem(&self.modulus).expect("modulus is nonzero");
        FieldElem(r.to_u64().expect("residue fits the field width"))
    }

    pub fn to_poly(&self, a: FieldElem) -> Poly {
        Poly::from_u64(a.0)
    }

    fn reduce(&self, v: u64) -> FieldElem {
        self.reduce_wide(v as u128)
    }

    fn reduce_wide(&self, mut v: u128) -> FieldElem {
        let m = self.packed as u128 | (1u128 << self.degree);
        while v != 0 {
            let top = 127 - v.leading_zeros() as usize;
            if top < self.degree {
                break;
            }
            v ^= m << (top - self.degree);
        }
        FieldElem(v as u64)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (mut x, mut y) = (a.0 as u128, b.0);
        let mut acc = 0u128;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
        }
        self.reduce_wide(acc)
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElem, mut exp: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            exp >>= 1;
            base = self.square(base);
        }
        acc
    }

    /// `α^n` with the exponent reduced modulo the group order.
    pub fn alpha_pow(&self, n: u64) -> FieldElem {
        self.pow(self.alpha(), n % self.group_order())
    }

    pub fn inverse(&self, a: FieldElem) -> Result<FieldElem, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::ZeroInverse);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    /// Absolute trace `Σ_j a^(2^j)`, which always lands in GF(2).
    pub fn trace(&self, a: FieldElem) -> u8 {
        let mut acc = FieldElem::ZERO;
        let mut cur = a;
        for _ in 0..self.degree {
            acc = self.add(acc, cur);
            cur = self.square(cur);
        }
        debug_assert!(acc.0 <= 1, "trace left GF(2)");
        acc.0 as u8
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..=self.group_order()).map(FieldElem)
    }
}
