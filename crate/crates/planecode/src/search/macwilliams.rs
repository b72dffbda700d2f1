//! Exact MacWilliams transform via the Krawtchouk sum, in arbitrary
//! precision integers. The division by |C| must be exact; a remainder
//! signals an inconsistent input enumerator.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::search::WeightEnumerator;

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::from(0); n + 1]; n + 1];
    for row in table.iter_mut() {
        row[0] = BigInt::from(1);
    }
    for i in 1..=n {
        for j in 1..=i {
            let prev = table[i - 1][j - 1].clone() + table[i - 1][j].clone();
            table[i][j] = prev;
        }
    }
    table
}

/// Transform a complete weight enumerator into the enumerator of the dual
/// code with the given dimension.
pub fn macwilliams(w: &WeightEnumerator, dual_dim: usize) -> Result<WeightEnumerator> {
    let n = w.length();
    let q = w.field_size();
    let code_size = w
        .expected_total()
        .ok_or_else(|| Error::InconsistentEnumerator("q^dim overflows".into()))?;
    if w.total() != code_size {
        return Err(Error::InconsistentEnumerator(format!(
            "total {} differs from q^dim = {}",
            w.total(),
            code_size
        )));
    }
    if w.count(0) != 1 {
        return Err(Error::InconsistentEnumerator(
            "a linear code contains the zero word exactly once".into(),
        ));
    }

    let binom = binomial_table(n);
    let mut qm1_pow = vec![BigInt::from(1); n + 1];
    for j in 1..=n {
        qm1_pow[j] = &qm1_pow[j - 1] * BigInt::from(q - 1);
    }
    let divisor = BigInt::from(code_size);

    let mut out = WeightEnumerator::new(n, q, dual_dim);
    for j in 0..=n {
        let mut acc = BigInt::from(0);
        for (wt, count) in w.counts() {
            // Krawtchouk value K_j(wt) = sum_s (-1)^s (q-1)^(j-s) C(wt,s) C(n-wt,j-s)
            let mut kraw = BigInt::from(0);
            for s in 0..=j.min(wt) {
                if j - s > n - wt {
                    continue;
                }
                let term = &qm1_pow[j - s] * &binom[wt][s] * &binom[n - wt][j - s];
                if s % 2 == 0 {
                    kraw += term;
                } else {
                    kraw -= term;
                }
            }
            acc += BigInt::from(count) * kraw;
        }
        let (quot, rem) = (acc.clone() / &divisor, acc % &divisor);
        if rem != BigInt::from(0) || quot < BigInt::from(0) {
            return Err(Error::InconsistentEnumerator(format!(
                "non-integer count at weight {j}"
            )));
        }
        let count: u128 = quot
            .try_into()
            .map_err(|_| Error::InconsistentEnumerator(format!("count overflow at weight {j}")))?;
        out.add(j, count);
    }

    if !out.is_complete() {
        return Err(Error::InconsistentEnumerator(format!(
            "transform total {} differs from q^dual_dim",
            out.total()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Code;
    use crate::search::{dual_spectrum, exhaustive_spectrum};

    #[test]
    fn zero_code_transforms_to_full_space() {
        let mut w = WeightEnumerator::new(4, 3, 0);
        w.add(0, 1);
        let full = macwilliams(&w, 4).unwrap();
        assert_eq!(full.total(), 81);
        // binomial(n,w) * (q-1)^w words of each weight
        let expected = [(0usize, 1u128), (1, 8), (2, 24), (3, 32), (4, 16)];
        for (wt, c) in expected {
            assert_eq!(full.count(wt), c);
        }
    }

    #[test]
    fn fano_transform_matches_exhaustive_dual() {
        let code = Code::build(2).unwrap();
        let primal = exhaustive_spectrum(&code, 1 << 20, 1).unwrap();
        let dual = dual_spectrum(&code, 1 << 20, 1).unwrap();
        let transformed = macwilliams(&primal, 3).unwrap();
        assert_eq!(transformed, dual);
    }

    #[test]
    fn p3_round_trip() {
        let code = Code::build(3).unwrap();
        let primal = exhaustive_spectrum(&code, 1 << 20, 1).unwrap();
        let dual = macwilliams(&primal, 6).unwrap();
        let dual_direct = dual_spectrum(&code, 1 << 20, 1).unwrap();
        assert_eq!(dual, dual_direct);
        let back = macwilliams(&dual, 7).unwrap();
        assert_eq!(back, primal);
    }

    #[test]
    fn rejects_incomplete_input() {
        let mut w = WeightEnumerator::new(7, 2, 4);
        w.add(0, 1);
        w.add(3, 7);
        assert!(matches!(
            macwilliams(&w, 3),
            Err(Error::InconsistentEnumerator(_))
        ));
    }

    #[test]
    fn rejects_inconsistent_input() {
        // right total, wrong distribution: the transform hits a non-integer
        let mut w = WeightEnumerator::new(7, 2, 4);
        w.add(0, 1);
        w.add(1, 15);
        assert!(matches!(
            macwilliams(&w, 3),
            Err(Error::InconsistentEnumerator(_))
        ));
    }
}
