//! Linear models of shrinking and clock-controlled shrinking generators.
//!
//! A shrinking generator with register lengths `L1`, `L2` produces a sequence
//! whose minimal polynomial is `P(X)^p` with `2^(L1-2) < p ≤ 2^(L1-1)`, where
//! `P` is the minimal polynomial of `α^E`, `E = 2^L1 - 1`, and `α` a root of
//! SR2's polynomial. Synthesizing a 90/150 automaton for `P` and doubling it
//! `L1 - 1` times gives an automaton that can emit the keystream.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::automata::{
    build_mpca, ca_char_poly, cell_sequence, embed_sequence, AutomatonError, CaState, RuleVector,
};
use crate::gf2::{
    berlekamp_massey, irreducible_power, min_period, poly_is_primitive, AlgebraError, FieldCtx,
    FieldElem, Poly,
};
use crate::registers::{ccsg_generate, shrink, CcsgConfig, GeneratorError, ShrinkConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("coset leader {e} is outside 1..{order}")]
    CosetOutOfRange { e: u64, order: u64 },
    #[error("register lengths {l1} and {l2} are not coprime")]
    LengthsNotCoprime { l1: u32, l2: u32 },
    #[error("register lengths must satisfy L1 >= {min_l1} and L2 >= 2 (got {l1}, {l2})")]
    LengthsTooSmall { l1: u32, l2: u32, min_l1: u32 },
    #[error("{0} is not primitive")]
    NotPrimitive(Poly),
    #[error("coefficient of X^{degree} left GF(2) while expanding the coset product")]
    CoefficientOutsideGf2 { degree: usize },
    #[error("coset of {e} has {size} members, expected {expected}")]
    DegenerateCoset {
        e: u64,
        size: usize,
        expected: usize,
    },
    #[error("minimal polynomial {poly} is not a power of one irreducible: {found}")]
    NotPrimePower { poly: Poly, found: String },
    #[error("keystream of {0} bits is too long to analyze")]
    KeystreamTooLong(u64),
}

/// The orbit of `E` under doubling modulo `2^L - 1`, in generation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpec {
    pub e: u64,
    pub l: u32,
    pub members: Vec<u64>,
}

impl CosetSpec {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn member_set(&self) -> BTreeSet<u64> {
        self.members.iter().copied().collect()
    }
}

pub fn cyclotomic_coset(e: u64, l: u32) -> Result<CosetSpec, ModelError> {
    if l == 0 || l > 63 {
        return Err(ModelError::CosetOutOfRange { e, order: 0 });
    }
    let order = (1u64 << l) - 1;
    if e == 0 || e >= order {
        return Err(ModelError::CosetOutOfRange { e, order });
    }
    let mut members = vec![e];
    let mut cur = (e * 2) % order;
    while cur != e {
        members.push(cur);
        cur = (cur * 2) % order;
    }
    Ok(CosetSpec { e, l, members })
}

/// `Π_{e ∈ coset(E)} (X + α^e)` expanded over GF(2^L); the coefficients are
/// checked to land in GF(2).
pub fn coset_char_poly(ctx: &FieldCtx, e: u64) -> Result<Poly, ModelError> {
    if !ctx.is_primitive() {
        return Err(ModelError::NotPrimitive(ctx.modulus().clone()));
    }
    let coset = cyclotomic_coset(e, ctx.degree() as u32)?;
    // coefficients over GF(2^L), index = exponent of X
    let mut coeffs = vec![FieldElem::ONE];
    for &m in &coset.members {
        let root = ctx.alpha_pow(m);
        let mut next = vec![FieldElem::ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], c);
            next[i] = ctx.add(next[i], ctx.mul(c, root));
        }
        coeffs = next;
    }
    let mut out = Poly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        match c.0 {
            0 => {}
            1 => out.set_coeff(i, true),
            _ => return Err(ModelError::CoefficientOutsideGf2 { degree: i }),
        }
    }
    Ok(out)
}

/// Closed-form properties of a shrinking generator with coprime lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SgPrediction {
    pub e: u64,
    pub period: u64,
    /// Exclusive lower bound on the linear complexity.
    pub lc_low: u64,
    pub lc_high: u64,
    /// Exclusive lower bound on the multiplicity `p`.
    pub p_low: u64,
    pub p_high: u64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn sg_predicted_props(l1: u32, l2: u32) -> Result<SgPrediction, ModelError> {
    if l1 < 2 || l2 < 2 || l1 > 32 || l2 > 32 {
        return Err(ModelError::LengthsTooSmall { l1, l2, min_l1: 2 });
    }
    if gcd(l1, l2) != 1 {
        return Err(ModelError::LengthsNotCoprime { l1, l2 });
    }
    let p_low = 1u64 << (l1 - 2);
    let p_high = 1u64 << (l1 - 1);
    Ok(SgPrediction {
        e: (1u64 << l1) - 1,
        period: ((1u64 << l2) - 1) * p_high,
        lc_low: l2 as u64 * p_low,
        lc_high: l2 as u64 * p_high,
        p_low,
        p_high,
    })
}

/// Primitive polynomial used for SR1 when none is given: the one of degree
/// `l` with the largest packed coefficient value (`X^3+X^2+1` for `l = 3`).
pub fn default_control_poly(l: u32) -> Result<Poly, ModelError> {
    if l == 0 || l > 32 {
        return Err(ModelError::LengthsTooSmall {
            l1: l,
            l2: 0,
            min_l1: 1,
        });
    }
    let top = 1u64 << l;
    for low in (0..top).rev() {
        let q = Poly::from_u64(top | low);
        if poly_is_primitive(&q).unwrap_or(false) {
            return Ok(q);
        }
    }
    unreachable!("every degree has a primitive polynomial")
}

/// The pair of automata modeling a shrinking generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgModel {
    pub basic_poly: Poly,
    pub ca1: RuleVector,
    pub ca2: RuleVector,
    pub p: u64,
}

/// Builds the model for SR1 length `l1` and SR2 polynomial `p2`.
pub fn model_shrinking_generator(l1: u32, p2: &Poly) -> Result<SgModel, ModelError> {
    let l2 = p2.deg().ok_or(AlgebraError::ConstantPolynomial)? as u32;
    if l1 == 0 || l1 > 32 {
        return Err(ModelError::LengthsTooSmall { l1, l2, min_l1: 1 });
    }
    if gcd(l1, l2) != 1 {
        return Err(ModelError::LengthsNotCoprime { l1, l2 });
    }
    if !poly_is_primitive(p2)? {
        return Err(ModelError::NotPrimitive(p2.clone()));
    }
    let ctx = FieldCtx::new(p2.clone())?;
    let order = ctx.group_order();
    let e = ((1u64 << l1) - 1) % order;
    let coset = cyclotomic_coset(e, l2)?;
    if coset.size() != l2 as usize {
        return Err(ModelError::DegenerateCoset {
            e,
            size: coset.size(),
            expected: l2 as usize,
        });
    }
    let basic_poly = coset_char_poly(&ctx, e)?;
    let p = 1u64 << (l1 - 1);
    let (ca1, ca2) = build_mpca(&basic_poly, p)?;
    Ok(SgModel {
        basic_poly,
        ca1,
        ca2,
        p,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictedProps {
    pub period: u64,
    pub lc_low: u64,
    pub lc_high: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredProps {
    /// 0 when no divisor of the predicted period fits the keystream.
    pub period: u64,
    pub lc: u64,
    pub minimal_poly: Poly,
    /// `k` with `minimal_poly = basic_poly^k`, when that holds.
    pub exponent: Option<u64>,
}

/// Outcome of checking a shrinking-generator model against the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgModelReport {
    /// Irreducible base of the automaton's characteristic polynomial.
    pub basic_poly: Option<Poly>,
    pub ca_pair: (RuleVector, RuleVector),
    pub p_used: u64,
    pub predicted: PredictedProps,
    pub measured: MeasuredProps,
    pub embedding_state: Option<CaState>,
    pub verdict: bool,
    pub diagnostics: Vec<String>,
}

fn render_opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

impl SgModelReport {
    /// `key=value` lines in a fixed order.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        kv("basic_poly", render_opt(&self.basic_poly));
        kv("ca1", self.ca_pair.0.to_string());
        kv("ca2", self.ca_pair.1.to_string());
        kv("p", self.p_used.to_string());
        kv("predicted_period", self.predicted.period.to_string());
        kv("measured_period", self.measured.period.to_string());
        kv("lc", self.measured.lc.to_string());
        kv("minimal_poly", self.measured.minimal_poly.to_string());
        kv("verdict", self.verdict.to_string());
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "basic polynomial   : {}\n",
            render_opt(&self.basic_poly)
        ));
        out.push_str(&format!("automaton 1        : {}\n", self.ca_pair.0));
        out.push_str(&format!("automaton 2        : {}\n", self.ca_pair.1));
        out.push_str(&format!("concatenation p    : {}\n", self.p_used));
        out.push_str(&format!(
            "predicted          : period {} lc in ({}, {}]\n",
            self.predicted.period, self.predicted.lc_low, self.predicted.lc_high
        ));
        out.push_str(&format!(
            "measured           : period {} lc {}\n",
            self.measured.period, self.measured.lc
        ));
        let min_poly = match (&self.basic_poly, self.measured.exponent) {
            (Some(b), Some(k)) => format!("({b})^{k}"),
            _ => self.measured.minimal_poly.to_string(),
        };
        out.push_str(&format!("minimal polynomial : {min_poly}\n"));
        out.push_str(&format!(
            "embedding state    : {}\n",
            render_opt(&self.embedding_state)
        ));
        for d in &self.diagnostics {
            out.push_str(&format!("note               : {d}\n"));
        }
        out.push_str(&format!(
            "verdict            : {}\n",
            if self.verdict { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Whether `d` replays `keystream` at cell 1 from some initial state.
fn replay_check(d: &RuleVector, keystream: &crate::gf2::BitSequence) -> Result<CaState, String> {
    let state = embed_sequence(d, keystream).map_err(|e| format!("automaton {d}: {e}"))?;
    let replay = cell_sequence(d, &state, 1, keystream.len()).map_err(|e| e.to_string())?;
    if &replay != keystream {
        return Err(format!("automaton {d}: replay diverges"));
    }
    Ok(state)
}

/// Generates two predicted periods of keystream (plus `len(d)` bits), measures
/// period, complexity and minimal polynomial, and embeds the keystream into
/// `d` and its reversal. Model failures are reported in the verdict, not as errors.
pub fn verify_model(cfg: &ShrinkConfig, d: &RuleVector) -> Result<SgModelReport, ModelError> {
    let pred = sg_predicted_props(cfg.l1() as u32, cfg.l2() as u32)?;
    let n = 2 * pred.period + d.len() as u64;
    if n > 1 << 26 {
        return Err(ModelError::KeystreamTooLong(n));
    }
    let keystream = shrink(cfg, n as usize)?;
    let mut diagnostics = Vec::new();

    let measured_period = match min_period(&keystream, pred.period as usize) {
        Ok(t) => t as u64,
        Err(e) => {
            diagnostics.push(format!("period: {e}"));
            0
        }
    };
    let bm = berlekamp_massey(&keystream);

    let basic_poly = match irreducible_power(&ca_char_poly(d)) {
        Ok((base, _)) => Some(base),
        Err(e) => {
            diagnostics.push(format!("automaton characteristic polynomial: {e}"));
            None
        }
    };
    let exponent = match (&basic_poly, irreducible_power(&bm.charpoly)) {
        (Some(b), Ok((base, k))) if &base == b => Some(k),
        (Some(b), Ok((base, k))) => {
            diagnostics.push(format!(
                "minimal polynomial is ({base})^{k}, not a power of {b}"
            ));
            None
        }
        (_, Err(e)) => {
            diagnostics.push(format!("minimal polynomial: {e}"));
            None
        }
        (None, Ok(_)) => None,
    };

    let embedding_state = match replay_check(d, &keystream) {
        Ok(s) => Some(s),
        Err(e) => {
            diagnostics.push(e);
            None
        }
    };
    // the partner automaton of the model pair, or the reversal for foreign vectors
    let partner = match model_shrinking_generator(cfg.l1() as u32, cfg.sr2.charpoly()) {
        Ok(m) if &m.ca1 == d => m.ca2,
        Ok(m) if &m.ca2 == d => m.ca1,
        _ => d.reversed(),
    };
    let reverse_ok = match replay_check(&partner, &keystream) {
        Ok(_) => true,
        Err(e) => {
            diagnostics.push(e);
            false
        }
    };

    let lc = bm.lc as u64;
    if measured_period != pred.period && measured_period != 0 {
        diagnostics.push(format!(
            "measured period {measured_period} differs from predicted {}",
            pred.period
        ));
    }
    if !(pred.lc_low < lc && lc <= pred.lc_high) {
        diagnostics.push(format!(
            "linear complexity {lc} outside ({}, {}]",
            pred.lc_low, pred.lc_high
        ));
    }
    let verdict = measured_period == pred.period
        && pred.lc_low < lc
        && lc <= pred.lc_high
        && exponent.is_some()
        && embedding_state.is_some()
        && reverse_ok;

    Ok(SgModelReport {
        basic_poly,
        ca_pair: (d.clone(), partner),
        p_used: 1u64 << (cfg.l1() - 1),
        predicted: PredictedProps {
            period: pred.period,
            lc_low: pred.lc_low,
            lc_high: pred.lc_high,
        },
        measured: MeasuredProps {
            period: measured_period,
            lc,
            minimal_poly: bm.charpoly,
            exponent,
        },
        embedding_state,
        verdict,
        diagnostics,
    })
}

/// Measured model of a clock-controlled shrinking generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcsgModel {
    pub basic_poly: Poly,
    pub p: u64,
    pub ca1: RuleVector,
    pub ca2: RuleVector,
    pub report: CcsgReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcsgReport {
    /// Bound used for the period search: `2^(L1-1) (2^L2 - 1)`.
    pub period_bound: u64,
    pub measured_period: u64,
    pub lc: u64,
    pub minimal_poly: Poly,
    pub embedding_state: Option<CaState>,
    pub verdict: bool,
    pub diagnostics: Vec<String>,
}

impl CcsgModel {
    pub fn to_kv(&self) -> String {
        let r = &self.report;
        [
            ("basic_poly", self.basic_poly.to_string()),
            ("ca1", self.ca1.to_string()),
            ("ca2", self.ca2.to_string()),
            ("p", self.p.to_string()),
            ("predicted_period", "none".to_string()),
            ("measured_period", r.measured_period.to_string()),
            ("lc", r.lc.to_string()),
            ("minimal_poly", r.minimal_poly.to_string()),
            ("verdict", r.verdict.to_string()),
        ]
        .iter()
        .map(|(k, v)| format!("{k}={v}\n"))
        .collect()
    }

    pub fn to_text(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        out.push_str(&format!("basic polynomial   : {}\n", self.basic_poly));
        out.push_str(&format!("multiplicity p     : {}\n", self.p));
        out.push_str(&format!("automaton 1        : {}\n", self.ca1));
        out.push_str(&format!("automaton 2        : {}\n", self.ca2));
        out.push_str(&format!(
            "measured           : period {} lc {}\n",
            r.measured_period, r.lc
        ));
        out.push_str(&format!(
            "minimal polynomial : ({})^{}\n",
            self.basic_poly, self.p
        ));
        out.push_str(&format!(
            "embedding state    : {}\n",
            render_opt(&r.embedding_state)
        ));
        for d in &r.diagnostics {
            out.push_str(&format!("note               : {d}\n"));
        }
        out.push_str(&format!(
            "verdict            : {}\n",
            if r.verdict { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Runs the generator, reads its minimal polynomial `Q^p` off Berlekamp–Massey,
/// builds the automaton pair for `(Q, p)` and checks the embedding.
pub fn model_ccsg(cfg: &CcsgConfig) -> Result<CcsgModel, ModelError> {
    let bound = (1u64 << (cfg.l1() - 1)) * ((1u64 << cfg.l2()) - 1);
    let n = (2 * bound).max(512);
    if n > 1 << 26 {
        return Err(ModelError::KeystreamTooLong(n));
    }
    let keystream = ccsg_generate(cfg, n as usize)?;
    let bm = berlekamp_massey(&keystream);
    let (basic_poly, p) = irreducible_power(&bm.charpoly).map_err(|e| match e {
        AlgebraError::NotAPrimePower { poly, found } => ModelError::NotPrimePower { poly, found },
        other => other.into(),
    })?;
    let (ca1, ca2) = build_mpca(&basic_poly, p)?;

    let mut diagnostics = Vec::new();
    let measured_period = match min_period(&keystream, bound as usize) {
        Ok(t) => t as u64,
        Err(e) => {
            diagnostics.push(format!("period: {e}"));
            0
        }
    };
    let embedding_state = match replay_check(&ca1, &keystream) {
        Ok(s) => Some(s),
        Err(e) => {
            diagnostics.push(e);
            None
        }
    };
    let reverse_ok = match replay_check(&ca2, &keystream) {
        Ok(_) => true,
        Err(e) => {
            diagnostics.push(e);
            false
        }
    };
    let verdict = measured_period != 0 && embedding_state.is_some() && reverse_ok;
    Ok(CcsgModel {
        basic_poly,
        p,
        ca1,
        ca2,
        report: CcsgReport {
            period_bound: bound,
            measured_period,
            lc: bm.lc as u64,
            minimal_poly: bm.charpoly,
            embedding_state,
            verdict,
            diagnostics,
        },
    })
}
