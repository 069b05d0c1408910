//! Checks shared by the property and acceptance targets. Each returns the
//! number of cases examined, or a description of the first counterexample.
#![allow(dead_code)]

use mpca::automata::{ca_char_poly, ca_step, cell_sequence, concat_double, CaState, RuleVector};
use mpca::gf2::{
    berlekamp_massey, poly_is_irreducible, solve_linear, BitMatrix, BitSequence, Poly,
};

pub type Check = Result<usize, String>;

/// Rule vector or state bits for `v`, cell 1 taken from the top bit.
pub fn bits_of(v: u64, len: usize) -> Vec<u8> {
    (0..len).map(|k| ((v >> (len - 1 - k)) & 1) as u8).collect()
}

pub fn rule(v: u64, len: usize) -> RuleVector {
    RuleVector::new(bits_of(v, len)).unwrap()
}

pub fn all_rules(len: usize) -> impl Iterator<Item = RuleVector> {
    (0..1u64 << len).map(move |v| rule(v, len))
}

/// Every primitive polynomial of degree `l`.
pub fn primitives(l: usize) -> Vec<Poly> {
    (0..1u64 << l)
        .map(|low| Poly::from_u64((1 << l) | low))
        .filter(|q| poly_is_irreducible(q).unwrap() && mpca::gf2::poly_is_primitive(q).unwrap())
        .collect()
}

pub fn irreducibles(l: usize) -> Vec<Poly> {
    (0..1u64 << l)
        .map(|low| Poly::from_u64((1 << l) | low))
        .filter(|q| poly_is_irreducible(q).unwrap())
        .collect()
}

/// `ca_step` is linear, exhaustively for `len ≤ max_len`.
pub fn linearity_exhaustive(max_len: usize) -> Check {
    let mut cases = 0;
    for len in 1..=max_len {
        for d in all_rules(len) {
            for s in 0..1u64 << len {
                for t in 0..1u64 << len {
                    let (a, b) = (CaState::from_packed(s, len), CaState::from_packed(t, len));
                    let lhs = ca_step(&d, &a.xor(&b)).unwrap();
                    let rhs = ca_step(&d, &a).unwrap().xor(&ca_step(&d, &b).unwrap());
                    if lhs != rhs {
                        return Err(format!("rule {d}: states {a} and {b}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// Every cell's sequence satisfies the characteristic recurrence, for every
/// rule vector with `len ≤ max_len`.
pub fn annihilation_exhaustive(max_len: usize) -> Check {
    let mut cases = 0;
    for len in 1..=max_len {
        // a fixed state with cells of both values
        let s0 = CaState::new((0..len).map(|k| ((k * 7 + 3) % 5 < 2) as u8).collect());
        let s0 = if s0.is_zero() {
            CaState::new(vec![1; len])
        } else {
            s0
        };
        for d in all_rules(len) {
            let q = ca_char_poly(&d);
            for cell in 1..=len {
                let seq = cell_sequence(&d, &s0, cell, 3 * len + 2).unwrap();
                if !mpca::gf2::satisfies_recurrence(&seq, &q).unwrap() {
                    return Err(format!("rule {d}, cell {cell}: {seq} escapes {q}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Whether some monic recurrence of degree `d` generates `s`.
pub fn has_recurrence_of_degree(s: &BitSequence, d: usize) -> bool {
    if s.len() <= d {
        return true;
    }
    let rows = s.len() - d;
    if d == 0 {
        return s.iter().all(|b| b == 0);
    }
    let mut m = BitMatrix::zeros(rows, d);
    let mut rhs = vec![0u8; rows];
    for n in 0..rows {
        for j in 0..d {
            m.set(n, j, s[n + j] == 1);
        }
        rhs[n] = s[n + d];
    }
    solve_linear(&m, &rhs).is_ok()
}

/// Berlekamp–Massey output annihilates the sequence and nothing of lower
/// degree does; all sequences of length `≤ max_n`.
pub fn bm_minimality_exhaustive(max_n: usize) -> Check {
    let mut cases = 0;
    for n in 1..=max_n {
        for v in 0..1u64 << n {
            let s = BitSequence::from_bits(bits_of(v, n));
            cases += 1;
            bm_minimal_on(&s)?;
        }
    }
    Ok(cases)
}

pub fn bm_minimal_on(s: &BitSequence) -> Result<(), String> {
    let r = berlekamp_massey(s);
    if r.charpoly.deg() != Some(r.lc) {
        return Err(format!("{s}: degree of {} is not lc {}", r.charpoly, r.lc));
    }
    if s.len() > r.lc && !mpca::gf2::satisfies_recurrence(s, &r.charpoly).unwrap() {
        return Err(format!("{s}: {} does not annihilate", r.charpoly));
    }
    if r.lc >= 1 && has_recurrence_of_degree(s, r.lc - 1) {
        return Err(format!("{s}: a recurrence of degree {} exists", r.lc - 1));
    }
    Ok(())
}

pub fn reversal_exhaustive(max_len: usize) -> Check {
    let mut cases = 0;
    for len in 1..=max_len {
        for d in all_rules(len) {
            if ca_char_poly(&d) != ca_char_poly(&d.reversed()) {
                return Err(format!("rule {d}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// `ca_char_poly(concat_double(d)) = ca_char_poly(d)^2` for `len ≤ max_len`.
pub fn doubling_exhaustive(max_len: usize) -> Check {
    let mut cases = 0;
    for len in 1..=max_len {
        for d in all_rules(len) {
            let q = ca_char_poly(&d);
            if ca_char_poly(&concat_double(&d)) != q.square() {
                return Err(format!("rule {d}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// All cyclic rotations of a full-period sequence, canonicalized.
pub fn min_rotation(bits: &[u8]) -> Vec<u8> {
    (0..bits.len().max(1))
        .map(|k| {
            let mut v = bits.to_vec();
            v.rotate_left(k % bits.len().max(1));
            v
        })
        .min()
        .unwrap_or_default()
}
