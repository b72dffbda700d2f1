//! Certified low-weight enumeration over systematic windows.
//!
//! Disjoint column windows are carved greedily left to right: each round
//! row-reduces the generator basis with the still-unused columns first, and
//! the pivots landing in unused columns form the next window. A message of
//! weight r relative to a window's adapted basis produces a codeword whose
//! restriction to the window's pivot columns has weight at least
//! r - (k - rank); enumerating all messages of weight <= r over every
//! window therefore proves that any undiscovered codeword has weight at
//! least sum_i max(0, r+1 - (k - rank_i)).
//!
//! Work is partitioned deterministically by (window, first message
//! position); merging is a keyed set union, so results are identical for
//! any worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::code::{Code, Codeword};
use crate::fp::{Fp, FpMatrix, FpVector};
use crate::search::enumerator::{add_row, SparseRow};
use crate::search::{CensusStats, LowWeightCensus, WindowInfo, WordClass};

/// One systematic window: the adapted basis is row-reduced so that rows
/// 0..rank have their pivots inside `columns` and the remaining rows vanish
/// on all of `columns`.
#[derive(Debug, Clone)]
pub struct Window {
    pub info: WindowInfo,
    adapted: FpMatrix,
}

impl Window {
    pub fn adapted(&self) -> &FpMatrix {
        &self.adapted
    }
}

/// Greedy disjoint information windows over the columns of the basis.
pub fn information_windows(basis: &FpMatrix, fp: &Fp) -> Vec<Window> {
    let k = basis.row_count();
    let n = basis.col_count();
    let mut used = vec![false; n];
    let mut windows = Vec::new();
    loop {
        let order: Vec<usize> = (0..n)
            .filter(|&c| !used[c])
            .chain((0..n).filter(|&c| used[c]))
            .collect();
        let reduced = basis.rref_with_order(fp, &order);
        debug_assert_eq!(reduced.rank, k);
        let fresh: Vec<usize> = reduced
            .pivots
            .iter()
            .take_while(|&&c| !used[c])
            .copied()
            .collect();
        if fresh.is_empty() {
            break;
        }
        for &c in &fresh {
            used[c] = true;
        }
        windows.push(Window {
            info: WindowInfo {
                rank: fresh.len(),
                columns: fresh,
            },
            adapted: reduced.matrix,
        });
    }
    windows
}

/// Leading-one messages of weight exactly r over k positions:
/// C(k,r) * (q-1)^(r-1).
fn candidates_at_radius(k: usize, q: u64, r: usize) -> u128 {
    if r > k {
        return 0;
    }
    let mut binom: u128 = 1;
    for i in 0..r {
        binom = binom * (k - i) as u128 / (i + 1) as u128;
    }
    let mut scale: u128 = 1;
    for _ in 1..r {
        scale *= (q - 1) as u128;
    }
    binom * scale
}

/// Messages expanded per window when running radii 1..=r.
pub fn estimate_candidates(k: usize, q: u64, r: usize) -> u128 {
    (1..=r).map(|j| candidates_at_radius(k, q, j)).sum()
}

struct Dfs<'a> {
    rows: &'a [SparseRow],
    p: u16,
    q: u64,
    k: usize,
    radius: usize,
    wmax: usize,
    fp: &'a Fp,
    word: Vec<u8>,
    weight: usize,
    found: BTreeMap<Vec<u8>, usize>,
    candidates: u128,
}

impl Dfs<'_> {
    fn record(&mut self) {
        self.candidates += 1;
        if self.weight > self.wmax || self.weight == 0 {
            return;
        }
        let lead = self
            .word
            .iter()
            .position(|&e| e != 0)
            .expect("positive weight");
        let key = if self.word[lead] == 1 {
            self.word.clone()
        } else {
            let inv = self.fp.inv(self.word[lead] as u64).expect("nonzero");
            self.word
                .iter()
                .map(|&e| (e as u64 * inv % self.q) as u8)
                .collect()
        };
        self.found.insert(key, self.weight);
    }

    /// Extend the current message over support positions >= start.
    fn extend(&mut self, start: usize, depth: usize) {
        let remaining = self.radius - depth;
        for i in start..=self.k - remaining {
            // walk the coefficient through 1..q-1 by repeated addition;
            // the final extra addition wraps it back to 0
            for _ in 1..self.q {
                let row = &self.rows[i];
                add_row(&mut self.word, row, self.p, &mut self.weight);
                if depth + 1 == self.radius {
                    self.record();
                } else {
                    self.extend(i + 1, depth + 1);
                }
            }
            add_row(&mut self.word, &self.rows[i], self.p, &mut self.weight);
        }
    }
}

fn run_task(
    rows: &[SparseRow],
    fp: &Fp,
    n: usize,
    radius: usize,
    first: usize,
    wmax: usize,
) -> (BTreeMap<Vec<u8>, usize>, u128) {
    let q = fp.modulus();
    let k = rows.len();
    let mut dfs = Dfs {
        rows,
        p: q as u16,
        q,
        k,
        radius,
        wmax,
        fp,
        word: vec![0u8; n],
        weight: 0,
        found: BTreeMap::new(),
        candidates: 0,
    };
    // the first support position carries coefficient 1: one representative
    // per scalar class
    add_row(&mut dfs.word, &rows[first], q as u16, &mut dfs.weight);
    if radius == 1 {
        dfs.record();
    } else {
        dfs.extend(first + 1, 1);
    }
    (dfs.found, dfs.candidates)
}

/// Enumerate scalar classes of codewords of weight <= wmax, raising the
/// message radius until the completeness bound passes wmax or the radius
/// cap is reached. Uncertified results are returned as such, never
/// silently promoted.
pub fn bz_low_weight(code: &Code, wmax: usize, max_radius: usize, workers: usize) -> LowWeightCensus {
    let fp = code.fp();
    let k = code.dimension();
    let n = code.plane().size();
    let windows = information_windows(code.basis(), fp);
    let window_rows: Vec<Vec<SparseRow>> = windows
        .iter()
        .map(|w| {
            (0..k)
                .map(|i| SparseRow::from_dense(w.adapted.row(i)))
                .collect()
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");

    let mut found: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut candidates: u128 = 0;
    let mut certified_through = 0usize;
    let mut radius = 0usize;

    for r in 1..=max_radius.min(k) {
        let tasks: Vec<(usize, usize)> = (0..windows.len())
            .flat_map(|w| (0..=k - r).map(move |first| (w, first)))
            .collect();
        let results: Vec<(BTreeMap<Vec<u8>, usize>, u128)> = pool.install(|| {
            tasks
                .par_iter()
                .map(|&(w, first)| run_task(&window_rows[w], fp, n, r, first, wmax))
                .collect()
        });
        for (map, c) in results {
            found.extend(map);
            candidates += c;
        }
        radius = r;
        certified_through = if r == k {
            n
        } else {
            windows
                .iter()
                .map(|w| (r + 1).saturating_sub(k - w.info.rank))
                .sum::<usize>()
                .saturating_sub(1)
        };
        if certified_through >= wmax {
            break;
        }
    }

    let mut classes: Vec<WordClass> = found
        .into_iter()
        .map(|(bytes, weight)| WordClass {
            weight,
            word: Codeword::from_vector(
                FpVector::from_entries(fp, bytes).expect("canonical residues"),
            ),
        })
        .collect();
    classes.sort_by(|a, b| {
        a.weight
            .cmp(&b.weight)
            .then_with(|| a.word.vector().cmp(b.word.vector()))
    });

    LowWeightCensus {
        wmax,
        classes,
        certified: certified_through >= wmax,
        certified_through,
        stats: CensusStats {
            windows: windows.into_iter().map(|w| w.info).collect(),
            radius,
            candidates,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::exhaustive_spectrum;

    #[test]
    fn windows_are_disjoint_and_systematic() {
        let code = Code::build(5).unwrap();
        let windows = information_windows(code.basis(), code.fp());
        assert_eq!(windows.len(), 2);
        assert_eq!(windows[0].info.rank, 16);
        assert_eq!(windows[1].info.rank, 15);
        let mut seen = vec![false; 31];
        for w in &windows {
            assert_eq!(w.info.columns.len(), w.info.rank);
            for &c in &w.info.columns {
                assert!(!seen[c], "column {c} reused");
                seen[c] = true;
            }
            // rows beyond the window rank vanish on the window columns
            for i in w.info.rank..code.dimension() {
                for &c in &w.info.columns {
                    assert_eq!(w.adapted.get(i, c), 0);
                }
            }
            // the window rows are systematic on the window columns
            for (j, &c) in w.info.columns.iter().enumerate() {
                for i in 0..code.dimension() {
                    let expected = if i == j { 1 } else { 0 };
                    assert_eq!(w.adapted.get(i, c), expected);
                }
            }
            // the adapted rows still span the code
            assert_eq!(w.adapted.rank(code.fp()), code.dimension());
        }
    }

    #[test]
    fn census_matches_exhaustive_p3() {
        let code = Code::build(3).unwrap();
        let spec = exhaustive_spectrum(&code, 1 << 20, 1).unwrap();
        let census = bz_low_weight(&code, 13, 7, 1);
        assert!(census.certified);
        assert!(census.certified_through >= 13);
        let mut by_weight: BTreeMap<usize, usize> = BTreeMap::new();
        for c in &census.classes {
            assert_eq!(c.word.weight(), c.weight);
            *by_weight.entry(c.weight).or_insert(0) += 1;
        }
        for (w, count) in spec.counts() {
            if w == 0 {
                continue;
            }
            // each scalar class accounts for q-1 words
            assert_eq!(count, 2 * by_weight[&w] as u128, "weight {w}");
        }
        assert_eq!(
            by_weight.values().sum::<usize>(),
            census.classes.len()
        );
    }

    #[test]
    fn census_classes_are_distinct_representatives() {
        let code = Code::build(3).unwrap();
        let census = bz_low_weight(&code, 13, 7, 1);
        for pair in census.classes.windows(2) {
            assert_ne!(pair[0].word, pair[1].word);
        }
        for c in &census.classes {
            let lead = c.word.vector().first_nonzero().unwrap();
            assert_eq!(c.word.vector().get(lead), 1);
            assert!(code.is_member(&c.word).unwrap().is_some());
        }
    }

    #[test]
    fn uncertified_when_effort_is_too_small() {
        let code = Code::build(5).unwrap();
        let census = bz_low_weight(&code, 12, 2, 1);
        assert!(!census.certified);
        assert!(census.certified_through < 12);
        // the lines are still found
        assert!(census.classes.iter().any(|c| c.weight == 6));
    }

    #[test]
    fn candidate_estimates() {
        // leading-one messages over k=16, q=5, radii 1..=6
        assert_eq!(estimate_candidates(16, 5, 1), 16);
        assert_eq!(estimate_candidates(16, 5, 6), 9_444_336);
    }
}
