//! State classification and the full cycle census of small automata.

use std::fmt;

use rayon::prelude::*;

use super::construct::ca_char_poly;
use super::engine::PackedCa;
use super::rules::{CaState, RuleVector};
use super::AutomatonError;

pub const DEFAULT_ENUMERATION_BOUND: usize = 24;

/// Symmetry class of a state. For odd lengths only `Zero`, `Palindromic`
/// and `Generic` occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateClass {
    Zero,
    /// `h ‖ h` with `h` a palindrome.
    DoublySymmetric,
    /// Equal to its own reversal, not doubly symmetric.
    Palindromic,
    /// `h ‖ h`, not doubly symmetric.
    Repetitive,
    Generic,
}

impl StateClass {
    pub const ALL: [StateClass; 5] = [
        StateClass::Zero,
        StateClass::DoublySymmetric,
        StateClass::Palindromic,
        StateClass::Repetitive,
        StateClass::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateClass::Zero => "zero",
            StateClass::DoublySymmetric => "doubly_symmetric",
            StateClass::Palindromic => "palindromic",
            StateClass::Repetitive => "repetitive",
            StateClass::Generic => "generic",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_state(s: &CaState) -> StateClass {
    let bits = s.bits();
    if s.is_zero() {
        return StateClass::Zero;
    }
    let palindrome = bits.iter().eq(bits.iter().rev());
    let n = bits.len();
    let repeated = n.is_multiple_of(2) && bits[..n / 2] == bits[n / 2..];
    match (palindrome, repeated) {
        // a repeated palindromic half is itself a palindrome and vice versa
        (true, true) => StateClass::DoublySymmetric,
        (true, false) => StateClass::Palindromic,
        (false, true) => StateClass::Repetitive,
        (false, false) => StateClass::Generic,
    }
}

/// Packed classifier; cell 1 in the most significant of `len` bits.
#[derive(Clone, Copy, Debug)]
pub struct PackedClassifier {
    len: usize,
}

impl PackedClassifier {
    pub fn new(len: usize) -> Self {
        assert!((1..=64).contains(&len));
        PackedClassifier { len }
    }

    #[inline]
    pub fn classify(&self, s: u64) -> StateClass {
        if s == 0 {
            return StateClass::Zero;
        }
        let n = self.len;
        let palindrome = s.reverse_bits() >> (64 - n) == s;
        let repeated = n.is_multiple_of(2) && {
            let half = n / 2;
            let low = s & ((1u64 << half) - 1);
            s >> half == low
        };
        match (palindrome, repeated) {
            (true, true) => StateClass::DoublySymmetric,
            (true, false) => StateClass::Palindromic,
            (false, true) => StateClass::Repetitive,
            (false, false) => StateClass::Generic,
        }
    }
}

/// One closed cycle of the state graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    /// Smallest packed state on the cycle; cycles are ordered by it.
    pub min_state: u64,
    pub length: u64,
    /// State counts indexed like [`StateClass::ALL`].
    pub class_counts: [u64; 5],
}

impl CycleRecord {
    pub fn count(&self, class: StateClass) -> u64 {
        self.class_counts[class.index()]
    }

    /// Most frequent class on the cycle; ties go to the earlier class in
    /// [`StateClass::ALL`].
    pub fn dominant_class(&self) -> StateClass {
        let mut best = StateClass::Zero;
        for c in StateClass::ALL {
            if self.count(c) > self.count(best) {
                best = c;
            }
        }
        best
    }

    pub fn is_pure(&self) -> bool {
        self.class_counts.iter().filter(|&&c| c > 0).count() == 1
    }
}

/// Cycles grouped by `(length, dominant class)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSummary {
    pub cycle_length: u64,
    pub state_class: StateClass,
    /// Minimal state of the first cycle in the group.
    pub representative: CaState,
    pub count_of_cycles: u64,
    pub total_states: u64,
    /// States on the grouped cycles, per class, indexed like [`StateClass::ALL`].
    pub class_counts: [u64; 5],
}

impl fmt::Display for CycleSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "len={} class={} cycles={} states={} representative={}",
            self.cycle_length,
            self.state_class,
            self.count_of_cycles,
            self.total_states,
            self.representative.to_hex()
        )
    }
}

/// Census options. `jobs > 1` spreads the walk over a thread pool; the
/// result is identical either way.
#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub max_len: usize,
    pub jobs: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_len: DEFAULT_ENUMERATION_BOUND,
            jobs: 1,
        }
    }
}

/// Every cycle of the automaton, ordered by minimal state.
pub fn enumerate_cycle_records(
    d: &RuleVector,
    opts: CensusOptions,
) -> Result<Vec<CycleRecord>, AutomatonError> {
    if d.len() > opts.max_len || d.len() > 32 {
        return Err(AutomatonError::EnumerationBound {
            len: d.len(),
            bound: opts.max_len.min(32),
        });
    }
    // A singular transition has transient states, so the state graph is not
    // a union of cycles.
    if !ca_char_poly(d).coeff(0) {
        return Err(AutomatonError::SingularTransition(d.clone()));
    }
    let ca = PackedCa::new(d).expect("length checked");
    let classifier = PackedClassifier::new(d.len());
    let records = if opts.jobs > 1 {
        parallel_census(ca, classifier, opts.jobs)?
    } else {
        serial_census(ca, classifier)
    };
    Ok(records)
}

fn walk(ca: PackedCa, classifier: PackedClassifier, start: u64) -> CycleRecord {
    let mut counts = [0u64; 5];
    let mut length = 0u64;
    let mut s = start;
    loop {
        counts[classifier.classify(s).index()] += 1;
        length += 1;
        s = ca.step(s);
        if s == start {
            break;
        }
    }
    CycleRecord {
        min_state: start,
        length,
        class_counts: counts,
    }
}

fn serial_census(ca: PackedCa, classifier: PackedClassifier) -> Vec<CycleRecord> {
    let total = 1u64 << ca.len();
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut records = Vec::new();
    for start in 0..total {
        if (visited[(start / 64) as usize] >> (start % 64)) & 1 == 1 {
            continue;
        }
        let mut s = start;
        loop {
            visited[(s / 64) as usize] |= 1 << (s % 64);
            s = ca.step(s);
            if s == start {
                break;
            }
        }
        // scanning upwards, the first unvisited state is the cycle minimum
        records.push(walk(ca, classifier, start));
    }
    records
}

fn parallel_census(
    ca: PackedCa,
    classifier: PackedClassifier,
    jobs: usize,
) -> Result<Vec<CycleRecord>, AutomatonError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| AutomatonError::ThreadPool(e.to_string()))?;
    let total = 1u64 << ca.len();
    // A state leads its cycle when no later state on the cycle is smaller.
    let is_leader = |start: u64| {
        let mut s = ca.step(start);
        while s != start {
            if s < start {
                return false;
            }
            s = ca.step(s);
        }
        true
    };
    Ok(pool.install(|| {
        (0..total)
            .into_par_iter()
            .filter(|&s| is_leader(s))
            .map(|s| walk(ca, classifier, s))
            .collect()
    }))
}

/// Cycle census grouped by `(cycle length, dominant class)`, sorted by
/// length then class.
pub fn enumerate_cycles(d: &RuleVector) -> Result<Vec<CycleSummary>, AutomatonError> {
    enumerate_cycles_with(d, CensusOptions::default())
}

pub fn enumerate_cycles_with(
    d: &RuleVector,
    opts: CensusOptions,
) -> Result<Vec<CycleSummary>, AutomatonError> {
    let records = enumerate_cycle_records(d, opts)?;
    Ok(summarize(&records, d.len()))
}

pub fn summarize(records: &[CycleRecord], len: usize) -> Vec<CycleSummary> {
    let mut groups: std::collections::BTreeMap<(u64, StateClass), CycleSummary> =
        Default::default();
    for r in records {
        let class = r.dominant_class();
        let entry = groups
            .entry((r.length, class))
            .or_insert_with(|| CycleSummary {
                cycle_length: r.length,
                state_class: class,
                representative: CaState::from_packed(r.min_state, len),
                count_of_cycles: 0,
                total_states: 0,
                class_counts: [0; 5],
            });
        entry.count_of_cycles += 1;
        entry.total_states += r.length;
        for (acc, c) in entry.class_counts.iter_mut().zip(r.class_counts) {
            *acc += c;
        }
    }
    groups.into_values().collect()
}
