//! Rule vectors and automaton states, with their binary, hex and 90/150 word
//! text forms.
//!
//! Cell 1 is the leftmost cell. In hex form cell 1 is the most significant
//! bit of a `len`-bit value, so `8C031@20` is `10001100000000110001`.

use std::fmt;
use std::str::FromStr;

use super::AutomatonError;

fn parse_binary(text: &str) -> Option<Vec<u8>> {
    if text.is_empty() || !text.chars().all(|c| c == '0' || c == '1') {
        return None;
    }
    Some(text.bytes().map(|b| b - b'0').collect())
}

/// Decodes `len` cells from a hex string, most significant bit first.
pub fn decode_hex(text: &str, len: usize) -> Result<Vec<u8>, AutomatonError> {
    let bad = |why: String| AutomatonError::Parse(format!("{text:?}: {why}"));
    let digits = text.trim();
    let digits = digits
        .strip_prefix("0x")
        .or_else(|| digits.strip_prefix("0X"))
        .unwrap_or(digits);
    if digits.is_empty() {
        return Err(bad("no hex digits".into()));
    }
    if 4 * digits.len() < len {
        return Err(bad(format!(
            "{} hex digits cannot hold {len} cells",
            digits.len()
        )));
    }
    let mut bits = Vec::with_capacity(4 * digits.len());
    for c in digits.chars() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| bad(format!("invalid hex digit {c:?}")))?;
        bits.extend((0..4).rev().map(|k| ((v >> k) & 1) as u8));
    }
    let excess = bits.len() - len;
    if bits[..excess].contains(&1) {
        return Err(AutomatonError::HexOverflow {
            text: text.to_string(),
            len,
        });
    }
    Ok(bits.split_off(excess))
}

/// Encodes cells as uppercase hex, `ceil(len / 4)` digits, no length suffix.
pub fn encode_hex(bits: &[u8]) -> String {
    let pad = (4 - bits.len() % 4) % 4;
    let padded: Vec<u8> = std::iter::repeat_n(0, pad)
        .chain(bits.iter().copied())
        .collect();
    padded
        .chunks(4)
        .map(|nib| {
            let v = nib.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
            char::from_digit(v, 16).unwrap().to_ascii_uppercase()
        })
        .collect()
}

fn parse_hex_with_len(text: &str) -> Result<Option<Vec<u8>>, AutomatonError> {
    let Some((digits, len)) = text.split_once('@') else {
        return Ok(None);
    };
    let len: usize = len
        .trim()
        .parse()
        .map_err(|_| AutomatonError::Parse(format!("{text:?}: invalid cell count")))?;
    decode_hex(digits, len).map(Some)
}

fn render_binary(bits: &[u8], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    bits.iter().try_for_each(|&b| write!(f, "{b}"))
}

/// The 90/150 descriptor `(d_1, …, d_len)`: 0 = rule 90, 1 = rule 150.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleVector(Vec<u8>);

impl RuleVector {
    pub fn new(bits: Vec<u8>) -> Result<Self, AutomatonError> {
        if bits.is_empty() {
            return Err(AutomatonError::EmptyRuleVector);
        }
        Ok(RuleVector(bits.into_iter().map(|b| b & 1).collect()))
    }

    pub fn from_hex(text: &str, len: usize) -> Result<Self, AutomatonError> {
        RuleVector::new(decode_hex(text, len)?)
    }

    /// Parses a space- or comma-separated list of `90` / `150`.
    pub fn from_words(text: &str) -> Result<Self, AutomatonError> {
        let bits = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
            .map(|w| match w {
                "90" => Ok(0),
                "150" => Ok(1),
                _ => Err(AutomatonError::Parse(format!(
                    "{w:?} is not rule 90 or 150"
                ))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        RuleVector::new(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Rule of cell `k` (1-based).
    pub fn rule(&self, k: usize) -> u8 {
        self.0[k - 1]
    }

    pub fn reversed(&self) -> RuleVector {
        RuleVector(self.0.iter().rev().copied().collect())
    }

    pub fn to_hex(&self) -> String {
        format!("{}@{}", encode_hex(&self.0), self.len())
    }

    pub fn to_words(&self) -> String {
        self.0
            .iter()
            .map(|&b| if b == 1 { "150" } else { "90" })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Packed with cell 1 in the most significant of `len` bits.
    pub fn to_packed(&self) -> Option<u64> {
        pack(&self.0)
    }
}

impl FromStr for RuleVector {
    type Err = AutomatonError;

    /// Accepts `10001100…`, `8C031@20` or `150 90 90`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(bits) = parse_hex_with_len(t)? {
            return RuleVector::new(bits);
        }
        if let Some(bits) = parse_binary(t) {
            return RuleVector::new(bits);
        }
        RuleVector::from_words(t)
    }
}

impl fmt::Display for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_binary(&self.0, f)
    }
}

impl fmt::Debug for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleVector({self})")
    }
}

/// Cell contents of an automaton, cell 1 first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaState(Vec<u8>);

impl CaState {
    pub fn new(bits: Vec<u8>) -> Self {
        CaState(bits.into_iter().map(|b| b & 1).collect())
    }

    pub fn zeros(len: usize) -> Self {
        CaState(vec![0; len])
    }

    pub fn from_hex(text: &str, len: usize) -> Result<Self, AutomatonError> {
        Ok(CaState(decode_hex(text, len)?))
    }

    /// Inverse of [`CaState::to_packed`].
    pub fn from_packed(value: u64, len: usize) -> Self {
        CaState(
            (0..len)
                .map(|k| ((value >> (len - 1 - k)) & 1) as u8)
                .collect(),
        )
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

    pub fn cell(&self, k: usize) -> u8 {
        self.0[k - 1]
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn xor(&self, other: &CaState) -> CaState {
        CaState(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn to_hex(&self) -> String {
        format!("{}@{}", encode_hex(&self.0), self.len())
    }

    pub fn to_packed(&self) -> Option<u64> {
        pack(&self.0)
    }
}

impl FromStr for CaState {
    type Err = AutomatonError;

    /// Accepts `1100…` or `CCF33@20`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(bits) = parse_hex_with_len(t)? {
            return Ok(CaState(bits));
        }
        parse_binary(t)
            .map(CaState)
            .ok_or_else(|| AutomatonError::Parse(format!("{t:?} is not a state")))
    }
}

impl fmt::Display for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_binary(&self.0, f)
    }
}

impl fmt::Debug for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CaState({self})")
    }
}

fn pack(bits: &[u8]) -> Option<u64> {
    (bits.len() <= 64).then(|| bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
}
