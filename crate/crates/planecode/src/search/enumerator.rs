//! Exhaustive spectrum computation by Gray-order message stepping: every
//! step updates the running word by adding one generator row, and the
//! Hamming weight is maintained incrementally over that row's support.

use rayon::prelude::*;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::fp::{Fp, FpMatrix};
use crate::search::{checked_pow, WeightEnumerator};

/// A generator row stored as (position, value) pairs.
#[derive(Debug, Clone)]
pub(crate) struct SparseRow {
    pub entries: Vec<(u32, u8)>,
}

impl SparseRow {
    pub(crate) fn from_dense(row: &[u8]) -> Self {
        SparseRow {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i as u32, v))
                .collect(),
        }
    }
}

/// word += row, updating the weight over the row's support only.
#[inline]
pub(crate) fn add_row(word: &mut [u8], row: &SparseRow, p: u16, weight: &mut usize) {
    for &(i, v) in &row.entries {
        let idx = i as usize;
        let old = word[idx] as u16;
        let mut new = old + v as u16;
        if new >= p {
            new -= p;
        }
        word[idx] = new as u8;
        if new != 0 && old == 0 {
            *weight += 1;
        } else if new == 0 && old != 0 {
            *weight -= 1;
        }
    }
}

/// Visit every word `prefix . suffix` where the prefix digits are fixed and
/// the suffix digits run over all of F_q^(rows.len()-prefix.len()), in
/// modular reflected Gray order. Each state is visited exactly once; after
/// the final wrap step the running word returns to its initial value.
pub(crate) fn enumerate_block<F: FnMut(&[u8], usize)>(
    n: usize,
    q: u64,
    rows: &[SparseRow],
    prefix: &[u8],
    visit: &mut F,
) {
    let p = q as u16;
    let mut word = vec![0u8; n];
    let mut weight = 0usize;
    for (digit, row) in prefix.iter().zip(rows) {
        for _ in 0..*digit {
            add_row(&mut word, row, p, &mut weight);
        }
    }
    let initial = word.clone();
    visit(&word, weight);

    let free = rows.len() - prefix.len();
    if free == 0 {
        return;
    }
    let suffix = &rows[prefix.len()..];
    let steps = checked_pow(q as u128, free).expect("block size fits u128") - 1;
    let mut odometer = vec![0u8; free];
    let top = (q - 1) as u8;
    let mut done: u128 = 0;
    while done < steps {
        // the digit where the base-q odometer carry stops is the digit
        // that advances in the Gray sequence
        let mut d = 0;
        while odometer[d] == top {
            odometer[d] = 0;
            d += 1;
        }
        odometer[d] += 1;
        add_row(&mut word, &suffix[d], p, &mut weight);
        visit(&word, weight);
        done += 1;
    }
    // cyclic wrap: one more advance of the most significant digit
    add_row(&mut word, &suffix[free - 1], p, &mut weight);
    assert_eq!(word, initial, "Gray enumeration must return to its start");
}

fn prefix_tuples(q: u64, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * q as usize);
        for t in out {
            for d in 0..q as u8 {
                let mut e = t.clone();
                e.push(d);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Exact weight distribution of the row space of an independent set of rows.
pub fn span_spectrum(
    rows: &FpMatrix,
    fp: &Fp,
    budget: u128,
    workers: usize,
) -> Result<WeightEnumerator> {
    let k = rows.row_count();
    let n = rows.col_count();
    let q = fp.modulus();
    if rows.rank(fp) != k {
        return Err(Error::ShapeMismatch(
            "spectrum enumeration requires independent rows".into(),
        ));
    }
    let Some(total) = checked_pow(q as u128, k) else {
        return Err(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        });
    };
    if total > budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }

    let sparse: Vec<SparseRow> = (0..k).map(|i| SparseRow::from_dense(rows.row(i))).collect();

    // split off enough leading message digits to keep all workers busy
    let workers = workers.max(1);
    let mut split = 0usize;
    if workers > 1 {
        while split < k && checked_pow(q as u128, split).is_some_and(|b| b < 4 * workers as u128) {
            split += 1;
        }
    }
    let prefixes = prefix_tuples(q, split);

    let count_block = |prefix: &Vec<u8>| -> Vec<u128> {
        let mut counts = vec![0u128; n + 1];
        enumerate_block(n, q, &sparse, prefix, &mut |_, w| counts[w] += 1);
        counts
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let per_block: Vec<Vec<u128>> = pool.install(|| prefixes.par_iter().map(count_block).collect());

    let mut merged = vec![0u128; n + 1];
    for block in per_block {
        for (w, c) in block.into_iter().enumerate() {
            merged[w] += c;
        }
    }
    let mut enumerator = WeightEnumerator::new(n, q, k);
    for (w, c) in merged.into_iter().enumerate() {
        enumerator.add(w, c);
    }
    debug_assert_eq!(enumerator.total(), total);
    Ok(enumerator)
}

/// Complete spectrum of the code, enumerating all q^dim words.
pub fn exhaustive_spectrum(code: &Code, budget: u128, workers: usize) -> Result<WeightEnumerator> {
    span_spectrum(code.basis(), code.fp(), budget, workers)
}

/// Complete spectrum of the dual code.
pub fn dual_spectrum(code: &Code, budget: u128, workers: usize) -> Result<WeightEnumerator> {
    let rows = FpMatrix::from_rows(
        code.dual_basis()
            .into_iter()
            .map(|w| w.vector().clone())
            .collect(),
    )?;
    span_spectrum(&rows, code.fp(), budget, workers)
}
