//! Weight-spectrum machinery: exhaustive enumeration in Gray order for tiny
//! codes, certified low-weight enumeration over systematic windows for the
//! rest, the exact MacWilliams transform, and gap certification.
//!
//! The census search enumerates messages of bounded weight over several
//! disjoint information windows. After finishing radius r, any codeword not
//! yet discovered has weight at least the sum over windows of
//! max(0, r+1 - (k - rank_i)), so the class list is provably complete for
//! every weight below that bound. Gap verdicts never rely on uncertified
//! output: an interval is only certified once the bound covers its right
//! endpoint and both neighboring weights have explicit witnesses.

mod bz;
mod enumerator;
mod macwilliams;

pub use bz::{bz_low_weight, estimate_candidates, information_windows};
pub use enumerator::{dual_spectrum, exhaustive_spectrum, span_spectrum};
pub use macwilliams::macwilliams;

use std::collections::BTreeMap;

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};

/// Exact weight distribution of a code: counts of codewords per weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    n: usize,
    q: u64,
    dim: usize,
    counts: BTreeMap<usize, u128>,
}

impl WeightEnumerator {
    pub fn new(n: usize, q: u64, dim: usize) -> Self {
        WeightEnumerator {
            n,
            q,
            dim,
            counts: BTreeMap::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn field_size(&self) -> u64 {
        self.q
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn add(&mut self, weight: usize, count: u128) {
        if count > 0 {
            *self.counts.entry(weight).or_insert(0) += count;
        }
    }

    pub fn count(&self, weight: usize) -> u128 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// Weight/count pairs in increasing weight order, nonzero counts only.
    pub fn counts(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.counts.iter().map(|(&w, &c)| (w, c))
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// q^dim, the expected total of a complete enumerator.
    pub fn expected_total(&self) -> Option<u128> {
        checked_pow(self.q as u128, self.dim)
    }

    pub fn is_complete(&self) -> bool {
        self.expected_total() == Some(self.total())
    }

    pub fn present_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// Maximal absent intervals between present weights. Requires a
    /// complete enumerator; partial counts cannot certify absence.
    pub fn gaps(&self) -> Result<Vec<(usize, usize)>> {
        if !self.is_complete() {
            return Err(Error::InconsistentEnumerator(
                "gaps require a complete enumerator".into(),
            ));
        }
        Ok(spectrum_gaps(&self.present_weights(), None))
    }
}

pub(crate) fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// One scalar class of low-weight codewords: the representative is scaled
/// so its first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordClass {
    pub weight: usize,
    pub word: Codeword,
}

/// Information windows used by the census, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowInfo {
    pub columns: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusStats {
    pub windows: Vec<WindowInfo>,
    /// Message-weight radius reached.
    pub radius: usize,
    /// Messages expanded across all windows and radii.
    pub candidates: u128,
}

/// Result of a certified low-weight enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowWeightCensus {
    pub wmax: usize,
    /// One representative per scalar class, sorted by weight then
    /// lexicographically; all weights are <= wmax.
    pub classes: Vec<WordClass>,
    /// Whether the class list is complete for every weight <= wmax.
    pub certified: bool,
    /// The list is complete for every weight <= this bound.
    pub certified_through: usize,
    pub stats: CensusStats,
}

impl LowWeightCensus {
    pub fn classes_of_weight(&self, weight: usize) -> impl Iterator<Item = &WordClass> {
        self.classes.iter().filter(move |c| c.weight == weight)
    }

    /// Weights known to be present: zero plus the class weights.
    pub fn present_weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = std::iter::once(0)
            .chain(self.classes.iter().map(|c| c.weight))
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Gaps certifiable from this census: intervals of absent weights whose
    /// right neighbor is present and which lie inside the certified region.
    pub fn gaps(&self) -> Vec<(usize, usize)> {
        spectrum_gaps(&self.present_weights(), Some(self.certified_through))
    }
}

/// Maximal intervals of absent weights between present weights. With a
/// trusted bound, only intervals whose absence is certified are reported.
pub fn spectrum_gaps(present: &[usize], trusted_through: Option<usize>) -> Vec<(usize, usize)> {
    let mut gaps = Vec::new();
    for pair in present.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi > lo + 1 {
            if let Some(t) = trusted_through {
                if hi - 1 > t {
                    continue;
                }
            }
            gaps.push((lo + 1, hi - 1));
        }
    }
    gaps
}

/// The conjectured gap intervals [kp+2, (k+1)(p+1-k)-1] for
/// 1 <= k <= sqrt(p-2). The range condition makes every interval nonempty.
pub fn conjectured_gaps(p: u64) -> Result<Vec<(usize, usize)>> {
    if p < 5 {
        return Err(Error::Unsupported(format!(
            "conjectured gaps are defined for p >= 5, got {p}"
        )));
    }
    let p = p as usize;
    let mut intervals = Vec::new();
    let mut k = 1usize;
    while k * k <= p - 2 {
        let lo = k * p + 2;
        let hi = (k + 1) * (p + 1 - k) - 1;
        debug_assert!(lo <= hi);
        intervals.push((lo, hi));
        k += 1;
    }
    Ok(intervals)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapStatus {
    /// The interval is a certified gap, with codewords of weight a-1 and b+1.
    Certified {
        lower_witness: Codeword,
        upper_witness: Codeword,
    },
    /// A codeword with weight inside the interval.
    Refuted { witness: Codeword },
    Undecided { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub interval: (usize, usize),
    pub status: GapStatus,
}

impl GapReport {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, GapStatus::Certified { .. })
    }
}

/// Decide a gap interval against a census. Witnesses for the endpoint
/// weights a-1 and b+1 may be supplied; otherwise they are taken from the
/// census (the zero word serves for weight 0).
pub fn certify_gap(
    code: &Code,
    interval: (usize, usize),
    census: &LowWeightCensus,
    witnesses: Option<(&Codeword, &Codeword)>,
) -> Result<GapReport> {
    let (a, b) = interval;
    if a > b || a == 0 {
        return Err(Error::Unsupported(format!(
            "invalid gap interval [{a},{b}]"
        )));
    }

    if let Some(hit) = census.classes.iter().find(|c| (a..=b).contains(&c.weight)) {
        return Ok(GapReport {
            interval,
            status: GapStatus::Refuted {
                witness: hit.word.clone(),
            },
        });
    }

    let validate = |w: &Codeword, expected: usize| -> Result<Codeword> {
        if w.weight() != expected {
            return Err(Error::WitnessWeight {
                expected,
                got: w.weight(),
            });
        }
        if code.is_member(w)?.is_none() {
            return Err(Error::WitnessNotCodeword);
        }
        Ok(w.clone())
    };

    let (lower, upper) = match witnesses {
        Some((lo, hi)) => (Some(validate(lo, a - 1)?), Some(validate(hi, b + 1)?)),
        None => {
            let lower = if a == 1 {
                Some(Codeword::zero(code.plane().size()))
            } else {
                census
                    .classes_of_weight(a - 1)
                    .next()
                    .map(|c| c.word.clone())
            };
            let upper = census
                .classes_of_weight(b + 1)
                .next()
                .map(|c| c.word.clone());
            (lower, upper)
        }
    };

    if census.certified_through < b {
        return Ok(GapReport {
            interval,
            status: GapStatus::Undecided {
                reason: format!(
                    "certification bound {} is below the right endpoint {b}",
                    census.certified_through
                ),
            },
        });
    }
    match (lower, upper) {
        (Some(lower_witness), Some(upper_witness)) => Ok(GapReport {
            interval,
            status: GapStatus::Certified {
                lower_witness,
                upper_witness,
            },
        }),
        (lower, _) => Ok(GapReport {
            interval,
            status: GapStatus::Undecided {
                reason: format!(
                    "no witness of weight {} available",
                    if lower.is_none() { a - 1 } else { b + 1 }
                ),
            },
        }),
    }
}
