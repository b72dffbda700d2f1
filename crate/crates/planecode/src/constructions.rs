//! Canonical codewords realizing each weight in the hierarchy: scalar
//! multiples of lines (weight p+1), combinations of two lines (weights 2p
//! and 2p+1), and the weight-(3p-3) dual words built from three concurrent
//! lines punctured by a fourth; plus the decomposition test recognizing
//! combinations of at most two lines.

use crate::code::Codeword;
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, FpVector};
use crate::plane::PlaneModel;

/// lambda times the indicator of a line: weight p+1 when lambda != 0.
pub fn line_word(plane: &PlaneModel, line: u32, coeff: u64) -> Codeword {
    Codeword::line_indicator(plane, line).scaled(plane.fp().reduce(coeff), plane.fp())
}

/// A linear combination of two distinct lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoLineSpec {
    pub first: u32,
    pub second: u32,
    pub first_coeff: u64,
    pub second_coeff: u64,
}

/// The word c1*l1 + c2*l2. Off the common point it carries c1 on l1 and c2
/// on l2; at the common point it carries c1+c2. Weight is 2p when both
/// coefficients are nonzero and cancel at the meet, 2p+1 when all three
/// values are nonzero.
pub fn two_line_word(plane: &PlaneModel, spec: &TwoLineSpec) -> Result<Codeword> {
    if spec.first == spec.second {
        return Err(Error::EqualLines);
    }
    let fp = plane.fp();
    let mut w = line_word(plane, spec.first, spec.first_coeff);
    w.add_scaled(
        &Codeword::line_indicator(plane, spec.second),
        fp.reduce(spec.second_coeff),
        fp,
    );
    Ok(w)
}

/// Frame for the weight-(3p-3) construction: three distinct lines through
/// an apex point, punctured by a line missing the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BagchiFrame {
    pub apex: u32,
    pub pencil: [u32; 3],
    pub off_line: u32,
}

impl BagchiFrame {
    pub fn validate(&self, plane: &PlaneModel) -> Result<()> {
        let n = plane.size() as u32;
        let bad = |msg: String| Err(Error::InvalidFrame(msg));
        if self.apex >= n || self.off_line >= n || self.pencil.iter().any(|&l| l >= n) {
            return bad("index out of range".into());
        }
        if self.pencil[0] == self.pencil[1]
            || self.pencil[0] == self.pencil[2]
            || self.pencil[1] == self.pencil[2]
        {
            return bad("pencil lines are not distinct".into());
        }
        for &l in &self.pencil {
            if !plane.incident(self.apex, l) {
                return bad(format!("line {l} does not pass through the apex"));
            }
        }
        if plane.incident(self.apex, self.off_line) {
            return bad(format!("line {} passes through the apex", self.off_line));
        }
        Ok(())
    }
}

/// The weight-(3p-3) dual word of a frame.
///
/// The word is defined by an explicit formula in the reference frame where
/// the pencil lines are X=0, Y=0, X=Y and the puncturing line is Z=0: it
/// takes value t at [0:1:t] and [1:0:t] and -t at [1:1:t] for t != 0. An
/// arbitrary frame is carried to the reference frame by the projectivity
/// fixed by mapping the apex to [0:0:1] and the three punctured pencil
/// points to [0:1:0], [1:0:0], [1:1:0] (the scaling is determined by
/// solving for the third point in the span of the first two), and the
/// formula is pulled back through it.
pub fn bagchi_word(plane: &PlaneModel, frame: &BagchiFrame) -> Result<Codeword> {
    let p = plane.p();
    if p == 2 {
        return Err(Error::RequiresOddPrime);
    }
    frame.validate(plane)?;
    let fp = plane.fp();

    let q1 = plane.meet(frame.off_line, frame.pencil[0])?;
    let q2 = plane.meet(frame.off_line, frame.pencil[1])?;
    let q3 = plane.meet(frame.off_line, frame.pencil[2])?;
    let u1 = plane.point(q1).coords();
    let u2 = plane.point(q2).coords();
    let u3 = plane.point(q3).coords();

    // alpha*u2 + beta*u1 = u3 has a unique solution with both scalars
    // nonzero: the three points are distinct and collinear on the
    // puncturing line.
    let columns = FpMatrix::from_rows(vec![
        FpVector::from_entries(fp, vec![u2[0] as u8, u1[0] as u8])?,
        FpVector::from_entries(fp, vec![u2[1] as u8, u1[1] as u8])?,
        FpVector::from_entries(fp, vec![u2[2] as u8, u1[2] as u8])?,
    ])?;
    let rhs = FpVector::from_entries(fp, vec![u3[0] as u8, u3[1] as u8, u3[2] as u8])?;
    let sol = columns
        .solve(&rhs, fp)?
        .expect("three collinear points force a solution");
    let (alpha, beta) = (sol.get(0), sol.get(1));
    debug_assert!(alpha != 0 && beta != 0);

    let apex = plane.point(frame.apex).coords();
    // columns of the frame map: alpha*u2, beta*u1, apex
    let m = [
        [fp.mul(alpha, u2[0]), fp.mul(beta, u1[0]), apex[0]],
        [fp.mul(alpha, u2[1]), fp.mul(beta, u1[1]), apex[1]],
        [fp.mul(alpha, u2[2]), fp.mul(beta, u1[2]), apex[2]],
    ];
    let apply = |src: [u64; 3]| -> [u64; 3] {
        [
            fp.reduce(m[0][0] * src[0] + m[0][1] * src[1] + m[0][2] * src[2]),
            fp.reduce(m[1][0] * src[0] + m[1][1] * src[1] + m[1][2] * src[2]),
            fp.reduce(m[2][0] * src[0] + m[2][1] * src[1] + m[2][2] * src[2]),
        ]
    };

    let mut w = Codeword::zero(plane.size());
    for t in 1..p {
        for (src, value) in [
            ([0, 1, t], t),
            ([1, 0, t], t),
            ([1, 1, t], p - t),
        ] {
            let idx = plane.point_index(apply(src))?;
            debug_assert_eq!(w.get(idx), 0);
            w.set(idx, value);
        }
    }
    debug_assert_eq!(w.weight(), 3 * p as usize - 3);
    Ok(w)
}

/// A representation of a word as a combination of at most two lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoLineDecomposition {
    Zero,
    Single {
        line: u32,
        coeff: u64,
    },
    /// first < second by line index.
    Pair {
        first: u32,
        first_coeff: u64,
        second: u32,
        second_coeff: u64,
    },
}

impl TwoLineDecomposition {
    pub fn reconstruct(&self, plane: &PlaneModel) -> Codeword {
        match *self {
            TwoLineDecomposition::Zero => Codeword::zero(plane.size()),
            TwoLineDecomposition::Single { line, coeff } => line_word(plane, line, coeff),
            TwoLineDecomposition::Pair {
                first,
                first_coeff,
                second,
                second_coeff,
            } => {
                let mut w = line_word(plane, first, first_coeff);
                w.add_scaled(
                    &Codeword::line_indicator(plane, second),
                    plane.fp().reduce(second_coeff),
                    plane.fp(),
                );
                w
            }
        }
    }
}

/// Express a word as a combination of at most two lines, if possible.
///
/// A nonzero two-line combination meets some line of the plane in at least
/// p support points, so candidates are scarce: for each line meeting the
/// support that often, subtract each value it carries and check that the
/// residual is a scalar multiple of a single line or zero.
pub fn decompose_two_lines(plane: &PlaneModel, w: &Codeword) -> Option<TwoLineDecomposition> {
    let weight = w.weight();
    if weight == 0 {
        return Some(TwoLineDecomposition::Zero);
    }
    let p = plane.p() as usize;
    if weight > 2 * p + 1 {
        return None;
    }
    let fp = plane.fp();
    for cand in 0..plane.size() as u32 {
        let meets = plane
            .line(cand)
            .points()
            .iter()
            .filter(|&&pt| w.get(pt) != 0)
            .count();
        if meets < p {
            continue;
        }
        let mut values: Vec<u64> = plane
            .line(cand)
            .points()
            .iter()
            .map(|&pt| w.get(pt))
            .filter(|&v| v != 0)
            .collect();
        values.sort_unstable();
        values.dedup();
        for v in values {
            let mut residual = w.clone();
            residual.add_scaled(&Codeword::line_indicator(plane, cand), fp.neg(v), fp);
            if residual.is_zero() {
                return Some(TwoLineDecomposition::Single {
                    line: cand,
                    coeff: v,
                });
            }
            let support = residual.support();
            if support.len() != p + 1 {
                continue;
            }
            let coeff = residual.get(support[0]);
            if support.iter().any(|&pt| residual.get(pt) != coeff) {
                continue;
            }
            let Ok(other) = plane.join(support[0], support[1]) else {
                continue;
            };
            if plane.line(other).points() != support.as_slice() {
                continue;
            }
            let (first, first_coeff, second, second_coeff) = if cand < other {
                (cand, v, other, coeff)
            } else {
                (other, coeff, cand, v)
            };
            return Some(TwoLineDecomposition::Pair {
                first,
                first_coeff,
                second,
                second_coeff,
            });
        }
    }
    None
}
