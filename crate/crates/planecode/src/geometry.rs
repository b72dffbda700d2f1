//! Geometry of point sets against the lines of the plane: secant, tangent
//! and passant classification, intersection profiles, tangent loci, and the
//! pencil covering witness that bounds small supports from below.

use crate::code::Codeword;
use crate::error::{Error, Result};
use crate::plane::PlaneModel;

/// A set of point indices with O(1) membership.
#[derive(Debug, Clone)]
pub struct SupportSet {
    indices: Vec<u32>,
    mask: Vec<bool>,
}

impl SupportSet {
    pub fn new(plane: &PlaneModel, points: impl IntoIterator<Item = u32>) -> Result<Self> {
        let n = plane.size();
        let mut mask = vec![false; n];
        for pt in points {
            if pt as usize >= n {
                return Err(Error::IndexRange {
                    what: "point",
                    index: pt as u64,
                });
            }
            mask[pt as usize] = true;
        }
        let indices = (0..n as u32).filter(|&i| mask[i as usize]).collect();
        Ok(SupportSet { indices, mask })
    }

    pub fn from_codeword(w: &Codeword) -> Self {
        let indices = w.support();
        let mut mask = vec![false; w.len()];
        for &i in &indices {
            mask[i as usize] = true;
        }
        SupportSet { indices, mask }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    #[inline]
    pub fn contains(&self, point: u32) -> bool {
        self.mask[point as usize]
    }

    /// Sorted point indices.
    pub fn indices(&self) -> &[u32] {
        &self.indices
    }
}

/// How a line meets a point set, named for the small intersection sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineClass {
    Passant,
    Tangent,
    Secant,
    /// Meets the set in i >= 3 points.
    MultiSecant(usize),
}

impl LineClass {
    pub fn from_count(i: usize) -> Self {
        match i {
            0 => LineClass::Passant,
            1 => LineClass::Tangent,
            2 => LineClass::Secant,
            i => LineClass::MultiSecant(i),
        }
    }

    pub fn count(&self) -> usize {
        match *self {
            LineClass::Passant => 0,
            LineClass::Tangent => 1,
            LineClass::Secant => 2,
            LineClass::MultiSecant(i) => i,
        }
    }
}

/// Number of points of S on the line.
pub fn line_meet_count(plane: &PlaneModel, line: u32, s: &SupportSet) -> usize {
    plane
        .line(line)
        .points()
        .iter()
        .filter(|&&pt| s.contains(pt))
        .count()
}

pub fn classify_line(plane: &PlaneModel, line: u32, s: &SupportSet) -> LineClass {
    LineClass::from_count(line_meet_count(plane, line, s))
}

/// e_i = number of lines meeting the set in exactly i points, i = 0..=p+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    counts: Vec<u64>,
}

impl IntersectionProfile {
    /// e_i
    pub fn count(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Count lines by intersection size. The two counting identities
/// sum e_i = p^2+p+1 and sum i*e_i = (p+1)|S| are checked on every call.
pub fn intersection_profile(plane: &PlaneModel, s: &SupportSet) -> IntersectionProfile {
    let p = plane.p() as usize;
    let mut counts = vec![0u64; p + 2];
    for l in 0..plane.size() as u32 {
        counts[line_meet_count(plane, l, s)] += 1;
    }
    let total: u64 = counts.iter().sum();
    assert_eq!(total, plane.size() as u64, "line count identity");
    let incidences: u64 = counts
        .iter()
        .enumerate()
        .map(|(i, &e)| i as u64 * e)
        .sum();
    assert_eq!(
        incidences,
        (p as u64 + 1) * s.len() as u64,
        "incidence count identity"
    );
    IntersectionProfile { counts }
}

/// The tangent locus of x against S: points of S joined to x by a tangent
/// when x is outside S, or by a secant when x belongs to S. Lines through
/// x meeting S three or more times contribute nothing in either case. For
/// supports of codewords with p >= 3 the locus is contained in a line.
pub fn tangent_locus(plane: &PlaneModel, x: u32, s: &SupportSet) -> Vec<u32> {
    let inside = s.contains(x);
    let mut locus = Vec::new();
    for &y in s.indices() {
        if y == x {
            continue;
        }
        let line = plane.join(x, y).expect("distinct points");
        let class = classify_line(plane, line, s);
        let qualifies = if inside {
            class == LineClass::Secant
        } else {
            class == LineClass::Tangent
        };
        if qualifies {
            locus.push(y);
        }
    }
    locus
}

/// Whether the points (as a set) all lie on one line.
pub fn collinear(plane: &PlaneModel, points: &[u32]) -> bool {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return true;
    }
    let line = plane.join(pts[0], pts[1]).expect("distinct points");
    pts[2..].iter().all(|&y| plane.incident(y, line))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// x outside S: k lines through x with at least p+2-k points of S each.
    OutsideSupport,
    /// x in S, no pencil line inside S: k lines with at least p+3-k points.
    InsideSupport,
}

/// A witness that many lines through a point are rich in S. Implies
/// |S| >= k(p+2-k), strictly in the inside case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KWitness {
    pub case: WitnessCase,
    /// Minimal k for which the pencil condition holds.
    pub k: usize,
    /// All pencil lines meeting the threshold, sorted by index; at least k.
    pub lines: Vec<u32>,
    /// k(p+2-k)
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KWitnessOutcome {
    Found(KWitness),
    /// x lies in S and some pencil line is contained in S, which the
    /// inside case excludes; the smallest such line is reported.
    PencilLineInside(u32),
    NotFound,
}

/// Search the pencil of x for the minimal k making the covering condition
/// hold. For the support of a nonzero codeword a witness always exists.
pub fn k_witness(plane: &PlaneModel, x: u32, s: &SupportSet) -> KWitnessOutcome {
    let p = plane.p() as usize;
    let pencil = plane.lines_through(x);
    let counts: Vec<usize> = pencil
        .iter()
        .map(|&l| line_meet_count(plane, l, s))
        .collect();
    let inside = s.contains(x);
    if inside {
        if let Some(i) = counts.iter().position(|&c| c == p + 1) {
            return KWitnessOutcome::PencilLineInside(pencil[i]);
        }
    }
    let (k_min, extra) = if inside { (3, 1) } else { (2, 0) };
    for k in k_min..=p + 1 {
        let threshold = p + 2 + extra - k;
        let qualifying: Vec<u32> = pencil
            .iter()
            .zip(&counts)
            .filter(|(_, &c)| c >= threshold)
            .map(|(&l, _)| l)
            .collect();
        if qualifying.len() >= k {
            let case = if inside {
                WitnessCase::InsideSupport
            } else {
                WitnessCase::OutsideSupport
            };
            return KWitnessOutcome::Found(KWitness {
                case,
                k,
                lines: qualifying,
                bound: k * (p + 2 - k),
            });
        }
    }
    KWitnessOutcome::NotFound
}

/// Classification counts of the pencil of a point against a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PencilCounts {
    pub secants: usize,
    pub tangents: usize,
    pub passants: usize,
    /// Lines meeting the set in three or more points.
    pub higher: usize,
}

pub fn pencil_counts(plane: &PlaneModel, x: u32, s: &SupportSet) -> PencilCounts {
    let mut c = PencilCounts {
        secants: 0,
        tangents: 0,
        passants: 0,
        higher: 0,
    };
    for &l in plane.lines_through(x) {
        match classify_line(plane, l, s) {
            LineClass::Passant => c.passants += 1,
            LineClass::Tangent => c.tangents += 1,
            LineClass::Secant => c.secants += 1,
            LineClass::MultiSecant(_) => c.higher += 1,
        }
    }
    debug_assert_eq!(
        c.secants + c.tangents + c.passants + c.higher,
        plane.p() as usize + 1
    );
    c
}

/// Whether the set meets every line in at least two points.
pub fn is_double_blocking(plane: &PlaneModel, s: &SupportSet) -> bool {
    let profile = intersection_profile(plane, s);
    profile.count(0) == 0 && profile.count(1) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Code;
    use crate::constructions::{bagchi_word, two_line_word, BagchiFrame, TwoLineSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn support(plane: &PlaneModel, pts: &[u32]) -> SupportSet {
        SupportSet::new(plane, pts.iter().copied()).unwrap()
    }

    fn bagchi_support_p5(plane: &PlaneModel) -> (BagchiFrame, SupportSet) {
        let frame = BagchiFrame {
            apex: plane.point_index([0, 0, 1]).unwrap(),
            pencil: [
                plane.line_index([1, 0, 0]).unwrap(),
                plane.line_index([0, 1, 0]).unwrap(),
                plane.line_index([1, 4, 0]).unwrap(),
            ],
            off_line: plane.line_index([0, 0, 1]).unwrap(),
        };
        let w = bagchi_word(plane, &frame).unwrap();
        (frame, SupportSet::from_codeword(&w))
    }

    #[test]
    fn classification() {
        let plane = PlaneModel::build(5).unwrap();
        let empty = support(&plane, &[]);
        assert!((0..31).all(|l| classify_line(&plane, l, &empty) == LineClass::Passant));

        let one = support(&plane, &[8]);
        for l in 0..31u32 {
            let expected = if plane.incident(8, l) {
                LineClass::Tangent
            } else {
                LineClass::Passant
            };
            assert_eq!(classify_line(&plane, l, &one), expected);
        }

        let (frame, s) = bagchi_support_p5(&plane);
        assert_eq!(
            classify_line(&plane, frame.pencil[0], &s),
            LineClass::MultiSecant(4)
        );
    }

    #[test]
    fn profiles() {
        let plane = PlaneModel::build(5).unwrap();
        let line_set = support(&plane, plane.line(3).points());
        let profile = intersection_profile(&plane, &line_set);
        assert_eq!(profile.count(1), 30);
        assert_eq!(profile.count(6), 1);
        assert_eq!(profile.count(0) + profile.count(2), 0);

        let empty = support(&plane, &[]);
        assert_eq!(intersection_profile(&plane, &empty).count(0), 31);

        let (_, s) = bagchi_support_p5(&plane);
        assert_eq!(intersection_profile(&plane, &s).count(0), 4);
    }

    #[test]
    fn tangent_loci() {
        let plane = PlaneModel::build(5).unwrap();
        let empty = support(&plane, &[]);
        assert!(tangent_locus(&plane, 0, &empty).is_empty());

        let one = support(&plane, &[9]);
        assert_eq!(tangent_locus(&plane, 2, &one), vec![9]);

        // codeword supports have collinear loci for odd p
        let code = Code::build(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let mut w = Codeword::zero(31);
            for _ in 0..rng.gen_range(1..=4) {
                let l = rng.gen_range(0..31);
                let c = rng.gen_range(1..5);
                w.add_scaled(&Codeword::line_indicator(code.plane(), l), c, code.fp());
            }
            let s = SupportSet::from_codeword(&w);
            let x = rng.gen_range(0..31);
            let locus = tangent_locus(code.plane(), x, &s);
            assert!(collinear(code.plane(), &locus));
        }
    }

    #[test]
    fn collinearity() {
        let plane = PlaneModel::build(3).unwrap();
        assert!(collinear(&plane, &[]));
        assert!(collinear(&plane, &[5]));
        assert!(collinear(&plane, &[5, 9]));
        assert!(collinear(&plane, plane.line(6).points()));
        // three points not on a common line
        let l = plane.line(0).points().to_vec();
        let off = (0..13u32).find(|&pt| !plane.incident(pt, 0)).unwrap();
        assert!(!collinear(&plane, &[l[0], l[1], off]));
    }

    #[test]
    fn fano_complement_violates_tangent_locus_collinearity() {
        // the known p=2 exception: the complement of a line supports a
        // codeword whose tangent locus is not collinear for any x inside
        let code = Code::build(2).unwrap();
        let plane = code.plane();
        let mut w = Codeword::zero(7);
        for pt in 0..7u32 {
            if !plane.incident(pt, 0) {
                w.set(pt, 1);
            }
        }
        assert!(code.is_member(&w).unwrap().is_some());
        let s = SupportSet::from_codeword(&w);
        for &x in s.indices() {
            let locus = tangent_locus(plane, x, &s);
            assert!(!collinear(plane, &locus), "x={x}");
        }
    }

    #[test]
    fn k_witness_examples() {
        let plane = PlaneModel::build(5).unwrap();

        // a full line not through x: every pencil line is a tangent, k = p+1
        let line_set = support(&plane, plane.line(0).points());
        let x = (0..31u32).find(|&pt| !plane.incident(pt, 0)).unwrap();
        match k_witness(&plane, x, &line_set) {
            KWitnessOutcome::Found(w) => {
                assert_eq!(w.case, WitnessCase::OutsideSupport);
                assert_eq!(w.k, 6);
                assert_eq!(w.lines.len(), 6);
                assert_eq!(w.bound, 6);
            }
            other => panic!("expected witness, got {other:?}"),
        }

        // weight-2p word, x at the meet of the two lines: both pencil lines
        // carry p points of S, so k = 2
        let w = two_line_word(
            &plane,
            &TwoLineSpec {
                first: 0,
                second: 1,
                first_coeff: 1,
                second_coeff: 4,
            },
        )
        .unwrap();
        assert_eq!(w.weight(), 10);
        let s = SupportSet::from_codeword(&w);
        let meet = plane.meet(0, 1).unwrap();
        assert!(!s.contains(meet));
        match k_witness(&plane, meet, &s) {
            KWitnessOutcome::Found(wit) => {
                assert_eq!(wit.k, 2);
                assert_eq!(wit.lines, vec![0, 1]);
                assert_eq!(wit.bound, 10);
                assert!(s.len() >= wit.bound);
            }
            other => panic!("expected witness, got {other:?}"),
        }

        // inside case with a pencil line contained in S is flagged
        let line_set = support(&plane, plane.line(4).points());
        let inside = plane.line(4).points()[0];
        assert_eq!(
            k_witness(&plane, inside, &line_set),
            KWitnessOutcome::PencilLineInside(4)
        );

        // the empty set has no witness
        assert_eq!(
            k_witness(&plane, 0, &support(&plane, &[])),
            KWitnessOutcome::NotFound
        );
    }

    #[test]
    fn k_witness_bounds_on_random_codewords() {
        let code = Code::build(5).unwrap();
        let plane = code.plane();
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..60 {
            let mut w = Codeword::zero(31);
            for _ in 0..rng.gen_range(1..=4) {
                let l = rng.gen_range(0..31);
                let c = rng.gen_range(1..5);
                w.add_scaled(&Codeword::line_indicator(plane, l), c, code.fp());
            }
            if w.is_zero() {
                continue;
            }
            let s = SupportSet::from_codeword(&w);
            let x = rng.gen_range(0..31);
            match k_witness(plane, x, &s) {
                KWitnessOutcome::Found(wit) => match wit.case {
                    WitnessCase::OutsideSupport => assert!(s.len() >= wit.bound),
                    WitnessCase::InsideSupport => assert!(s.len() > wit.bound),
                },
                KWitnessOutcome::PencilLineInside(l) => {
                    assert!(plane.line(l).points().iter().all(|&pt| s.contains(pt)));
                }
                KWitnessOutcome::NotFound => {
                    panic!("witness must exist for a nonzero codeword support")
                }
            }
        }
    }

    #[test]
    fn pencil_count_examples() {
        let plane = PlaneModel::build(5).unwrap();
        let empty = support(&plane, &[]);
        assert_eq!(
            pencil_counts(&plane, 3, &empty),
            PencilCounts {
                secants: 0,
                tangents: 0,
                passants: 6,
                higher: 0
            }
        );

        let one = support(&plane, &[3]);
        assert_eq!(
            pencil_counts(&plane, 3, &one),
            PencilCounts {
                secants: 0,
                tangents: 6,
                passants: 0,
                higher: 0
            }
        );

        // a full line seen from outside: every pencil line meets it once
        let line_set = support(&plane, plane.line(0).points());
        let x = (0..31u32).find(|&pt| !plane.incident(pt, 0)).unwrap();
        assert_eq!(
            pencil_counts(&plane, x, &line_set),
            PencilCounts {
                secants: 0,
                tangents: 6,
                passants: 0,
                higher: 0
            }
        );
    }

    #[test]
    fn double_blocking() {
        let plane = PlaneModel::build(5).unwrap();
        let all = support(&plane, &(0..31u32).collect::<Vec<_>>());
        assert!(is_double_blocking(&plane, &all));
        let line_set = support(&plane, plane.line(0).points());
        assert!(!is_double_blocking(&plane, &line_set));
        let (_, s) = bagchi_support_p5(&plane);
        assert!(!is_double_blocking(&plane, &s));
    }
}
