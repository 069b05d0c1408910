//! Bit-exact LFSR, shrinking generator and clock-controlled shrinking
//! generator engines.
//!
//! Register stages are numbered 1…L. Stage 1 is output, every stage moves
//! one place towards stage 1, and stage L receives the feedback bit
//! `Σ_k q_k · stage_{k+1}` where `q_k` is the coefficient of `X^k` in the
//! characteristic polynomial `X^L + Σ c_i X^(L-i)`. States are written as
//! bit strings with stage 1 first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::{poly_is_primitive, AlgebraError, BitSequence, FieldCtx, FieldElem, Poly};

pub const MAX_REGISTER_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("register length {0} is outside 1..=64")]
    UnsupportedLength(usize),
    #[error("state has {got} stages but the characteristic polynomial has degree {expected}")]
    StateLength { expected: usize, got: usize },
    #[error("{0} is not primitive")]
    NotPrimitive(Poly),
    #[error("register {0} has the all-zero state")]
    ZeroState(&'static str),
    #[error("register lengths {l1} and {l2} are not coprime")]
    LengthsNotCoprime { l1: usize, l2: usize },
    #[error("decimation stage {stage} is outside 1..={len}")]
    StageOutOfRange { stage: usize, len: usize },
    #[error("decimation stage {0} listed twice")]
    DuplicateStage(usize),
    #[error("decimation base must be at least 1")]
    ZeroDecimationBase,
    #[error("invalid state string: {0}")]
    StateParse(String),
}

/// Register contents, stage 1 first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RegisterState(Vec<u8>);

impl RegisterState {
    pub fn new(bits: Vec<u8>) -> Self {
        RegisterState(bits.into_iter().map(|b| b & 1).collect())
    }

    pub fn ones(len: usize) -> Self {
        RegisterState(vec![1; len])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }
}

impl FromStr for RegisterState {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(GeneratorError::StateParse(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if bits.is_empty() {
            return Err(GeneratorError::StateParse(s.to_string()));
        }
        Ok(RegisterState(bits))
    }
}

impl fmt::Display for RegisterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|&b| write!(f, "{b}"))
    }
}

impl fmt::Debug for RegisterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegisterState({self})")
    }
}

/// A Fibonacci-style LFSR. Stage `k` lives in bit `k-1` of `state`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lfsr {
    charpoly: Poly,
    len: usize,
    taps: u64,
    state: u64,
}

impl Lfsr {
    pub fn new(charpoly: Poly, state: &RegisterState) -> Result<Self, GeneratorError> {
        let len = match charpoly.deg() {
            Some(d) if (1..=MAX_REGISTER_LEN).contains(&d) => d,
            Some(d) => return Err(GeneratorError::UnsupportedLength(d)),
            None => return Err(GeneratorError::UnsupportedLength(0)),
        };
        if state.len() != len {
            return Err(GeneratorError::StateLength {
                expected: len,
                got: state.len(),
            });
        }
        let words = charpoly.words();
        let low_mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let taps = words[0] & low_mask;
        let packed = state
            .bits()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Ok(Lfsr {
            charpoly,
            len,
            taps,
            state: packed,
        })
    }

    /// Same as [`Lfsr::new`] but insists on a primitive characteristic polynomial.
    pub fn maximal(charpoly: Poly, state: &RegisterState) -> Result<Self, GeneratorError> {
        if !poly_is_primitive(&charpoly)? {
            return Err(GeneratorError::NotPrimitive(charpoly));
        }
        Lfsr::new(charpoly, state)
    }

    pub fn charpoly(&self) -> &Poly {
        &self.charpoly
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self) -> RegisterState {
        RegisterState(
            (0..self.len)
                .map(|i| ((self.state >> i) & 1) as u8)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.state == 0
    }

    /// Current content of stage `k` (1-based).
    pub fn stage(&self, k: usize) -> u8 {
        ((self.state >> (k - 1)) & 1) as u8
    }

    /// Current output bit (stage 1) without clocking.
    pub fn peek(&self) -> u8 {
        (self.state & 1) as u8
    }

    /// Emits stage 1 and clocks once.
    pub fn clock(&mut self) -> u8 {
        let out = self.peek();
        let feedback = ((self.state & self.taps).count_ones() & 1) as u64;
        self.state = (self.state >> 1) | (feedback << (self.len - 1));
        out
    }

    pub fn bits(&mut self, n: usize) -> BitSequence {
        (0..n).map(|_| self.clock()).collect()
    }
}

/// First `n` output bits; the register is left in the advanced state.
pub fn lfsr_bits(r: &mut Lfsr, n: usize) -> BitSequence {
    r.bits(n)
}

/// `Tr(a · α^n)` in the field defined by `ctx`: the `n`-th term of the
/// PN-sequence whose starting point is fixed by `a`.
pub fn pn_trace_eval(ctx: &FieldCtx, a: FieldElem, n: u64) -> Result<u8, GeneratorError> {
    ctx.require_primitive()?;
    Ok(ctx.trace(ctx.mul(a, ctx.alpha_pow(n))))
}

/// The stream `n ↦ pn_trace_eval(ctx, a, n)` for `n` in `0..len`.
pub fn pn_trace_stream(
    ctx: &FieldCtx,
    a: FieldElem,
    len: usize,
) -> Result<BitSequence, GeneratorError> {
    ctx.require_primitive()?;
    let alpha = ctx.alpha();
    let mut cur = a;
    Ok((0..len)
        .map(|_| {
            let bit = ctx.trace(cur);
            cur = ctx.mul(cur, alpha);
            bit
        })
        .collect())
}

/// Keeps `data[t]` exactly when `control[t] = 1`, over the common prefix.
pub fn decimate_by(control: &BitSequence, data: &BitSequence) -> BitSequence {
    control
        .iter()
        .zip(data.iter())
        .filter(|(c, _)| *c == 1)
        .map(|(_, d)| d)
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Two maximal-length registers with coprime lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkConfig {
    pub sr1: Lfsr,
    pub sr2: Lfsr,
}

impl ShrinkConfig {
    pub fn new(sr1: Lfsr, sr2: Lfsr) -> Result<Self, GeneratorError> {
        for r in [&sr1, &sr2] {
            if !poly_is_primitive(r.charpoly())? {
                return Err(GeneratorError::NotPrimitive(r.charpoly().clone()));
            }
        }
        if gcd(sr1.len(), sr2.len()) != 1 {
            return Err(GeneratorError::LengthsNotCoprime {
                l1: sr1.len(),
                l2: sr2.len(),
            });
        }
        Ok(ShrinkConfig { sr1, sr2 })
    }

    /// Builds both registers from polynomials and optional seeds (all ones by default).
    pub fn from_parts(
        p1: Poly,
        s1: Option<RegisterState>,
        p2: Poly,
        s2: Option<RegisterState>,
    ) -> Result<Self, GeneratorError> {
        let sr1 = build_register(p1, s1)?;
        let sr2 = build_register(p2, s2)?;
        ShrinkConfig::new(sr1, sr2)
    }

    pub fn l1(&self) -> usize {
        self.sr1.len()
    }

    pub fn l2(&self) -> usize {
        self.sr2.len()
    }
}

fn build_register(p: Poly, seed: Option<RegisterState>) -> Result<Lfsr, GeneratorError> {
    let len = p.deg().unwrap_or(0);
    let seed = seed.unwrap_or_else(|| RegisterState::ones(len));
    Lfsr::new(p, &seed)
}

/// First `n` bits of the shrunken sequence. The configuration is not advanced.
pub fn shrink(cfg: &ShrinkConfig, n: usize) -> Result<BitSequence, GeneratorError> {
    let mut sr1 = cfg.sr1.clone();
    let mut sr2 = cfg.sr2.clone();
    if sr1.is_zero() {
        return Err(GeneratorError::ZeroState("SR1"));
    }
    if sr2.is_zero() {
        return Err(GeneratorError::ZeroState("SR2"));
    }
    let mut out = BitSequence::new();
    while out.len() < n {
        let c = sr1.clock();
        let d = sr2.clock();
        if c == 1 {
            out.push(d);
        }
    }
    Ok(out)
}

/// Clock-controlled shrinking generator: SR1 selects how far SR2 moves and
/// whether SR2's bit is kept.
///
/// At step `t` the decimation count is
/// `DF_t = df_base + Σ_k 2^k · stage(df_stages[k])` read from SR1's current
/// state. SR2's current bit is emitted when SR1's output bit is 1, then SR2
/// is clocked `DF_t` times and SR1 once. With no stages and base 1 this is
/// the plain shrinking generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcsgConfig {
    pub sr1: Lfsr,
    pub sr2: Lfsr,
    pub df_stages: Vec<usize>,
    pub df_base: u64,
}

impl CcsgConfig {
    pub fn new(
        sr1: Lfsr,
        sr2: Lfsr,
        df_stages: Vec<usize>,
        df_base: u64,
    ) -> Result<Self, GeneratorError> {
        for r in [&sr1, &sr2] {
            if !poly_is_primitive(r.charpoly())? {
                return Err(GeneratorError::NotPrimitive(r.charpoly().clone()));
            }
        }
        if df_base == 0 {
            return Err(GeneratorError::ZeroDecimationBase);
        }
        let mut seen = vec![false; sr1.len() + 1];
        for &s in &df_stages {
            if s == 0 || s > sr1.len() {
                return Err(GeneratorError::StageOutOfRange {
                    stage: s,
                    len: sr1.len(),
                });
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(GeneratorError::DuplicateStage(s));
            }
        }
        Ok(CcsgConfig {
            sr1,
            sr2,
            df_stages,
            df_base,
        })
    }

    pub fn from_parts(
        p1: Poly,
        s1: Option<RegisterState>,
        p2: Poly,
        s2: Option<RegisterState>,
        df_stages: Vec<usize>,
        df_base: u64,
    ) -> Result<Self, GeneratorError> {
        let sr1 = build_register(p1, s1)?;
        let sr2 = build_register(p2, s2)?;
        CcsgConfig::new(sr1, sr2, df_stages, df_base)
    }

    pub fn l1(&self) -> usize {
        self.sr1.len()
    }

    pub fn l2(&self) -> usize {
        self.sr2.len()
    }

    pub fn decimation(&self, sr1: &Lfsr) -> u64 {
        self.df_stages
            .iter()
            .enumerate()
            .fold(self.df_base, |acc, (k, &s)| {
                acc + ((sr1.stage(s) as u64) << k)
            })
    }
}

pub fn ccsg_generate(cfg: &CcsgConfig, n: usize) -> Result<BitSequence, GeneratorError> {
    let mut sr1 = cfg.sr1.clone();
    let mut sr2 = cfg.sr2.clone();
    if sr1.is_zero() {
        return Err(GeneratorError::ZeroState("SR1"));
    }
    if sr2.is_zero() {
        return Err(GeneratorError::ZeroState("SR2"));
    }
    let mut out = BitSequence::new();
    while out.len() < n {
        let df = cfg.decimation(&sr1);
        if sr1.clock() == 1 {
            out.push(sr2.peek());
        }
        for _ in 0..df {
            sr2.clock();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{berlekamp_massey, min_period, satisfies_recurrence};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn st(s: &str) -> RegisterState {
        s.parse().unwrap()
    }

    #[test]
    fn table_register_output() {
        let mut r = Lfsr::new(p("x^3+x^2+1"), &st("110")).unwrap();
        assert_eq!(lfsr_bits(&mut r, 7).to_string(), "1101001");
        assert_eq!(r.state(), st("110"));
    }

    #[test]
    fn table_register_states() {
        let mut r = Lfsr::new(p("x^3+x^2+1"), &st("110")).unwrap();
        let mut states = Vec::new();
        for _ in 0..7 {
            states.push(r.state().to_string());
            r.clock();
        }
        assert_eq!(states, ["110", "101", "010", "100", "001", "011", "111"]);
    }

    #[test]
    fn zero_state_is_silent() {
        let mut r = Lfsr::new(p("x^5+x^2+1"), &st("00000")).unwrap();
        assert_eq!(lfsr_bits(&mut r, 5).to_string(), "00000");
    }

    #[test]
    fn degree_five_period() {
        let mut r = Lfsr::new(p("x^5+x^4+x^2+x+1"), &st("10110")).unwrap();
        let s = lfsr_bits(&mut r, 62);
        assert_eq!(min_period(&s, 31).unwrap(), 31);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Lfsr::new(p("x^3+x^2+1"), &st("11")),
            Err(GeneratorError::StateLength {
                expected: 3,
                got: 2
            })
        ));
        assert!(matches!(
            Lfsr::maximal(p("x^4+x^3+x^2+x+1"), &st("1111")),
            Err(GeneratorError::NotPrimitive(_))
        ));
        assert!("1021".parse::<RegisterState>().is_err());
        assert!(matches!(
            ShrinkConfig::from_parts(p("x^2+x+1"), None, p("x^4+x+1"), None),
            Err(GeneratorError::LengthsNotCoprime { l1: 2, l2: 4 })
        ));
    }

    #[test]
    fn trace_stream_matches_register() {
        let ctx = FieldCtx::new(p("x^3+x^2+1")).unwrap();
        let pn = "1101001";
        let stream = pn_trace_stream(&ctx, FieldElem::ONE, 7)
            .unwrap()
            .to_string();
        assert!((0..7).any(|k| {
            let rotated: String = pn.chars().cycle().skip(k).take(7).collect();
            rotated == stream
        }));
        for n in 0..20 {
            assert_eq!(pn_trace_eval(&ctx, FieldElem::ZERO, n).unwrap(), 0);
        }
        for a in ctx.elements().skip(1) {
            let s = pn_trace_stream(&ctx, a, 30).unwrap();
            assert!(satisfies_recurrence(&s, ctx.modulus()).unwrap());
            assert_eq!(s[9], pn_trace_eval(&ctx, a, 9).unwrap());
        }
    }

    #[test]
    fn trace_needs_primitive_modulus() {
        let ctx = FieldCtx::new(p("x^4+x^3+x^2+x+1")).unwrap();
        assert!(pn_trace_eval(&ctx, FieldElem::ONE, 0).is_err());
    }

    fn reference_sg() -> ShrinkConfig {
        ShrinkConfig::from_parts(
            p("x^3+x^2+1"),
            Some(st("110")),
            p("x^5+x^4+x^2+x+1"),
            Some(st("11111")),
        )
        .unwrap()
    }

    #[test]
    fn shrunken_sequence_properties() {
        let s = shrink(&reference_sg(), 248).unwrap();
        assert_eq!(min_period(&s, 124).unwrap(), 124);
        let lc = berlekamp_massey(&s).lc;
        assert!(lc > 10 && lc <= 20, "lc = {lc}");
    }

    #[test]
    fn shrink_rejects_zero_states() {
        let cfg =
            ShrinkConfig::from_parts(p("x^3+x^2+1"), Some(st("000")), p("x^5+x^4+x^2+x+1"), None)
                .unwrap();
        assert_eq!(shrink(&cfg, 4), Err(GeneratorError::ZeroState("SR1")));
    }

    #[test]
    fn emitted_count_equals_control_weight() {
        let cfg = reference_sg();
        let n_clocks = 500;
        let control = cfg.sr1.clone().bits(n_clocks);
        let data = cfg.sr2.clone().bits(n_clocks);
        let manual = decimate_by(&control, &data);
        assert_eq!(manual.len(), control.weight());
        assert_eq!(shrink(&cfg, manual.len()).unwrap(), manual);
    }

    #[test]
    fn all_ones_control_passes_data_through() {
        let data: BitSequence = "1011001110".parse().unwrap();
        let control: BitSequence = "1111111111".parse().unwrap();
        assert_eq!(decimate_by(&control, &data), data);
    }

    #[test]
    fn unit_clocking_ccsg_is_shrinking_generator() {
        let cfg = CcsgConfig::from_parts(
            p("x^3+x^2+1"),
            Some(st("110")),
            p("x^5+x^4+x^2+x+1"),
            Some(st("11111")),
            vec![],
            1,
        )
        .unwrap();
        let out = ccsg_generate(&cfg, 200).unwrap();
        let sg = ShrinkConfig::new(cfg.sr1.clone(), cfg.sr2.clone()).unwrap();
        assert_eq!(out, shrink(&sg, 200).unwrap());
    }

    #[test]
    fn ccsg_validation() {
        let mk = |stages: Vec<usize>, base| {
            CcsgConfig::from_parts(p("x^3+x^2+1"), None, p("x^5+x^2+1"), None, stages, base)
        };
        assert!(matches!(
            mk(vec![4], 1),
            Err(GeneratorError::StageOutOfRange { stage: 4, len: 3 })
        ));
        assert!(matches!(
            mk(vec![1, 1], 1),
            Err(GeneratorError::DuplicateStage(1))
        ));
        assert!(matches!(
            mk(vec![], 0),
            Err(GeneratorError::ZeroDecimationBase)
        ));
        let zero = CcsgConfig::from_parts(
            p("x^3+x^2+1"),
            None,
            p("x^5+x^2+1"),
            Some(st("00000")),
            vec![1],
            1,
        )
        .unwrap();
        assert_eq!(
            ccsg_generate(&zero, 3),
            Err(GeneratorError::ZeroState("SR2"))
        );
    }

    #[test]
    fn decimation_count() {
        let cfg = CcsgConfig::from_parts(
            p("x^3+x^2+1"),
            Some(st("101")),
            p("x^5+x^2+1"),
            None,
            vec![1, 2, 3],
            2,
        )
        .unwrap();
        // stage1 = 1, stage2 = 0, stage3 = 1 → 2 + 1 + 0 + 4
        assert_eq!(cfg.decimation(&cfg.sr1), 7);
    }
}
