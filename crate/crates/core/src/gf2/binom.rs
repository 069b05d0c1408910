//! Binomial coefficients reduced modulo 2.

/// `C(n, i) mod 2`. By Lucas' theorem this is 1 exactly when every set bit
/// of `i` is also set in `n`.
pub fn binom_mod2(n: u64, i: u64) -> u8 {
    u8::from(i & !n == 0)
}

/// Period of `n ↦ C(n, i) mod 2`: 1 for `i = 0`, otherwise the smallest
/// power of two strictly greater than `i`.
pub fn binom_period(i: u64) -> u64 {
    if i == 0 {
        1
    } else {
        1u64 << (64 - i.leading_zeros())
    }
}
