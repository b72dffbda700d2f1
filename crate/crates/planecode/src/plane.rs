//! The projective plane PG(2,p): canonical indexing of points and lines,
//! incidence, join of points, meet of lines.
//!
//! Points and lines are homogeneous triples normalized so the first nonzero
//! coordinate is 1, then ranked in ascending order as 3-digit base-p numbers
//! with the X coordinate most significant. That rank is the index, so
//! indices (and every file format built on them) are bit-exact across runs.

use crate::error::{Error, Result};
use crate::fp::{Fp, FpMatrix, FpVector};

/// A point of PG(2,p) in normalized homogeneous coordinates [X:Y:Z].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: [u8; 3],
    index: u32,
}

impl ProjPoint {
    pub fn coords(&self) -> [u64; 3] {
        [
            self.coords[0] as u64,
            self.coords[1] as u64,
            self.coords[2] as u64,
        ]
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

/// A line of PG(2,p): the normalized coefficients of aX + bY + cZ = 0 and
/// the sorted indices of its p+1 incident points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjLine {
    coeffs: [u8; 3],
    index: u32,
    points: Vec<u32>,
}

impl ProjLine {
    pub fn coeffs(&self) -> [u64; 3] {
        [
            self.coeffs[0] as u64,
            self.coeffs[1] as u64,
            self.coeffs[2] as u64,
        ]
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Sorted indices of the p+1 points on this line.
    pub fn points(&self) -> &[u32] {
        &self.points
    }
}

/// PG(2,p) with incidence precomputed in both directions.
#[derive(Debug, Clone)]
pub struct PlaneModel {
    fp: Fp,
    size: usize,
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
    lines_through: Vec<Vec<u32>>,
}

/// Scale a nonzero triple so its first nonzero coordinate is 1.
fn normalize(fp: &Fp, t: [u64; 3]) -> Option<[u8; 3]> {
    let r = [fp.reduce(t[0]), fp.reduce(t[1]), fp.reduce(t[2])];
    let lead = r.iter().position(|&c| c != 0)?;
    let inv = fp.inv(r[lead]).expect("leading coordinate is nonzero");
    Some([
        fp.mul(r[0], inv) as u8,
        fp.mul(r[1], inv) as u8,
        fp.mul(r[2], inv) as u8,
    ])
}

/// Rank of a normalized triple in the canonical base-p order.
fn triple_rank(p: u64, t: [u8; 3]) -> u32 {
    let (x, y, z) = (t[0] as u64, t[1] as u64, t[2] as u64);
    if x == 1 {
        (1 + p + y * p + z) as u32
    } else if y == 1 {
        (1 + z) as u32
    } else {
        0 // [0:0:1]
    }
}

/// Normalized triples in ascending canonical order.
fn canonical_triples(p: u64) -> Vec<[u8; 3]> {
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    out.push([0, 0, 1]);
    for z in 0..p {
        out.push([0, 1, z as u8]);
    }
    for y in 0..p {
        for z in 0..p {
            out.push([1, y as u8, z as u8]);
        }
    }
    out
}

fn cross(fp: &Fp, a: [u64; 3], b: [u64; 3]) -> [u64; 3] {
    [
        fp.sub(fp.mul(a[1], b[2]), fp.mul(a[2], b[1])),
        fp.sub(fp.mul(a[2], b[0]), fp.mul(a[0], b[2])),
        fp.sub(fp.mul(a[0], b[1]), fp.mul(a[1], b[0])),
    ]
}

impl PlaneModel {
    /// Construct PG(2,p) for a prime 2 <= p <= 101.
    pub fn build(p: u64) -> Result<Self> {
        if !(2..=101).contains(&p) {
            return Err(Error::PrimeRange(p));
        }
        let fp = Fp::new(p)?;
        let size = (p * p + p + 1) as usize;

        let triples = canonical_triples(p);
        let points: Vec<ProjPoint> = triples
            .iter()
            .enumerate()
            .map(|(i, &coords)| ProjPoint {
                coords,
                index: i as u32,
            })
            .collect();

        // For each point, the pencil of p+1 lines through it is the
        // projectivization of the orthogonal 2-space of its triple.
        let mut lines_through: Vec<Vec<u32>> = vec![Vec::with_capacity(p as usize + 1); size];
        let mut line_points: Vec<Vec<u32>> = vec![Vec::with_capacity(p as usize + 1); size];
        for pt in &points {
            let row = FpVector::from_entries(
                &fp,
                vec![pt.coords[0], pt.coords[1], pt.coords[2]],
            )?;
            let kernel = FpMatrix::from_rows(vec![row])?.kernel_basis(&fp);
            debug_assert_eq!(kernel.len(), 2);
            let u = [kernel[0].get(0), kernel[0].get(1), kernel[0].get(2)];
            let w = [kernel[1].get(0), kernel[1].get(1), kernel[1].get(2)];
            let mut pencil = Vec::with_capacity(p as usize + 1);
            pencil.push(triple_rank(p, normalize(&fp, u).expect("kernel vector nonzero")));
            for t in 0..p {
                let combo = [
                    fp.add(w[0], fp.mul(t, u[0])),
                    fp.add(w[1], fp.mul(t, u[1])),
                    fp.add(w[2], fp.mul(t, u[2])),
                ];
                pencil.push(triple_rank(p, normalize(&fp, combo).expect("combination nonzero")));
            }
            pencil.sort_unstable();
            for &l in &pencil {
                line_points[l as usize].push(pt.index);
            }
            lines_through[pt.index as usize] = pencil;
        }

        let lines: Vec<ProjLine> = triples
            .iter()
            .enumerate()
            .map(|(i, &coeffs)| {
                let mut pts = std::mem::take(&mut line_points[i]);
                pts.sort_unstable();
                ProjLine {
                    coeffs,
                    index: i as u32,
                    points: pts,
                }
            })
            .collect();

        // Construction invariants: p+1 points per line, p+1 lines per point.
        for l in &lines {
            assert_eq!(l.points.len(), p as usize + 1, "line {} incidence", l.index);
        }
        for through in &lines_through {
            assert_eq!(through.len(), p as usize + 1);
        }

        Ok(PlaneModel {
            fp,
            size,
            points,
            lines,
            lines_through,
        })
    }

    pub fn p(&self) -> u64 {
        self.fp.modulus()
    }

    pub fn fp(&self) -> &Fp {
        &self.fp
    }

    /// p^2 + p + 1, the common number of points and lines.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn point(&self, index: u32) -> &ProjPoint {
        &self.points[index as usize]
    }

    pub fn line(&self, index: u32) -> &ProjLine {
        &self.lines[index as usize]
    }

    /// Index of the point with the given homogeneous coordinates.
    pub fn point_index(&self, coords: [u64; 3]) -> Result<u32> {
        normalize(&self.fp, coords)
            .map(|t| triple_rank(self.p(), t))
            .ok_or(Error::IndexRange {
                what: "point (zero triple)",
                index: 0,
            })
    }

    /// Index of the line aX + bY + cZ = 0.
    pub fn line_index(&self, coeffs: [u64; 3]) -> Result<u32> {
        normalize(&self.fp, coeffs)
            .map(|t| triple_rank(self.p(), t))
            .ok_or(Error::IndexRange {
                what: "line (zero triple)",
                index: 0,
            })
    }

    /// The unique line through two distinct points.
    pub fn join(&self, a: u32, b: u32) -> Result<u32> {
        if a == b {
            return Err(Error::EqualPoints);
        }
        let c = cross(&self.fp, self.point(a).coords(), self.point(b).coords());
        self.line_index(c).map_err(|_| Error::EqualPoints)
    }

    /// The unique point common to two distinct lines.
    pub fn meet(&self, a: u32, b: u32) -> Result<u32> {
        if a == b {
            return Err(Error::EqualLines);
        }
        let c = cross(&self.fp, self.line(a).coeffs(), self.line(b).coeffs());
        self.point_index(c).map_err(|_| Error::EqualLines)
    }

    /// The p+1 lines through a point, sorted by line index.
    pub fn lines_through(&self, x: u32) -> &[u32] {
        &self.lines_through[x as usize]
    }

    /// Whether point x lies on line l.
    pub fn incident(&self, x: u32, l: u32) -> bool {
        let pt = self.point(x).coords();
        let ln = self.line(l).coeffs();
        self.fp
            .reduce(pt[0] * ln[0] + pt[1] * ln[1] + pt[2] * ln[2])
            == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn plane_sizes() {
        let plane = PlaneModel::build(2).unwrap();
        assert_eq!(plane.size(), 7);
        assert_eq!(plane.points().len(), 7);
        assert_eq!(plane.lines().len(), 7);
        assert!(plane.lines().iter().all(|l| l.points().len() == 3));

        let plane = PlaneModel::build(5).unwrap();
        assert_eq!(plane.size(), 31);
        assert!(plane.lines().iter().all(|l| l.points().len() == 6));

        assert!(matches!(PlaneModel::build(4), Err(Error::NotPrime(4))));
        assert!(matches!(PlaneModel::build(103), Err(Error::PrimeRange(103))));
    }

    #[test]
    fn every_line_pair_meets_once_p3() {
        let plane = PlaneModel::build(3).unwrap();
        let n = plane.size();
        let mut pairs = 0;
        for a in 0..n as u32 {
            for b in (a + 1)..n as u32 {
                let common: Vec<u32> = plane
                    .line(a)
                    .points()
                    .iter()
                    .filter(|x| plane.line(b).points().contains(x))
                    .copied()
                    .collect();
                assert_eq!(common.len(), 1, "lines {a} and {b}");
                assert_eq!(plane.meet(a, b).unwrap(), common[0]);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 78);
    }

    #[test]
    fn join_examples() {
        let plane = PlaneModel::build(5).unwrap();
        let a = plane.point_index([1, 0, 0]).unwrap();
        let b = plane.point_index([0, 1, 0]).unwrap();
        let l = plane.join(a, b).unwrap();
        assert_eq!(plane.line(l).coeffs(), [0, 0, 1]); // the line Z = 0
        assert!(matches!(plane.join(a, a), Err(Error::EqualPoints)));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = rng.gen_range(0..plane.size() as u32);
            let y = rng.gen_range(0..plane.size() as u32);
            if x == y {
                continue;
            }
            assert_eq!(plane.join(x, y).unwrap(), plane.join(y, x).unwrap());
        }

        // p=3: the unique line through [1:1:1] and [1:2:0], found by scanning all 13 lines
        let plane = PlaneModel::build(3).unwrap();
        let a = plane.point_index([1, 1, 1]).unwrap();
        let b = plane.point_index([1, 2, 0]).unwrap();
        let joined = plane.join(a, b).unwrap();
        let scan: Vec<u32> = (0..plane.size() as u32)
            .filter(|&l| plane.line(l).points().contains(&a) && plane.line(l).points().contains(&b))
            .collect();
        assert_eq!(scan, vec![joined]);
    }

    #[test]
    fn meet_examples() {
        let plane = PlaneModel::build(5).unwrap();
        let x0 = plane.line_index([1, 0, 0]).unwrap(); // X = 0
        let y0 = plane.line_index([0, 1, 0]).unwrap(); // Y = 0
        let m = plane.meet(x0, y0).unwrap();
        assert_eq!(plane.point(m).coords(), [0, 0, 1]);
        assert!(matches!(plane.meet(x0, x0), Err(Error::EqualLines)));

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = rng.gen_range(0..plane.size() as u32);
            let b = rng.gen_range(0..plane.size() as u32);
            if a == b {
                continue;
            }
            let m = plane.meet(a, b).unwrap();
            assert_eq!(plane.meet(b, a).unwrap(), m);
            let common: Vec<u32> = plane
                .line(a)
                .points()
                .iter()
                .filter(|x| plane.line(b).points().contains(x))
                .copied()
                .collect();
            assert_eq!(common, vec![m]);
        }
    }

    #[test]
    fn pencils() {
        let plane = PlaneModel::build(2).unwrap();
        for x in 0..plane.size() as u32 {
            assert_eq!(plane.lines_through(x).len(), 3);
        }

        // the pencil covers the plane, with the center counted p+1 times
        let plane = PlaneModel::build(5).unwrap();
        for x in [0u32, 7, 30] {
            let mut counts = vec![0usize; plane.size()];
            for &l in plane.lines_through(x) {
                for &pt in plane.line(l).points() {
                    counts[pt as usize] += 1;
                }
            }
            for (pt, &c) in counts.iter().enumerate() {
                let expected = if pt as u32 == x { 6 } else { 1 };
                assert_eq!(c, expected);
            }
        }

        // p=5, x=[0:0:1]: the pencil is X=0, Y=0 and X=tY for t in 1..=4
        let x = plane.point_index([0, 0, 1]).unwrap();
        let mut expected: Vec<u32> = vec![
            plane.line_index([1, 0, 0]).unwrap(),
            plane.line_index([0, 1, 0]).unwrap(),
        ];
        for t in 1..5u64 {
            // X = tY is X - tY = 0
            expected.push(plane.line_index([1, 5 - t, 0]).unwrap());
        }
        expected.sort_unstable();
        assert_eq!(plane.lines_through(x), expected.as_slice());
    }

    #[test]
    fn join_meet_adjunction() {
        let plane = PlaneModel::build(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = rng.gen_range(0..plane.size() as u32);
            let b = rng.gen_range(0..plane.size() as u32);
            if a == b {
                continue;
            }
            let l = plane.join(a, b).unwrap();
            assert!(plane.incident(a, l) && plane.incident(b, l));
            // any line containing both equals the join
            for c in 0..plane.size() as u32 {
                if plane.incident(a, c) && plane.incident(b, c) {
                    assert_eq!(c, l);
                }
            }
        }
    }

    #[test]
    fn duality() {
        // swapping the two index families yields an incidence structure
        // satisfying the same axioms
        for p in [2u64, 3, 5, 7] {
            let plane = PlaneModel::build(p).unwrap();
            let n = plane.size();
            // dual "lines" are pencils: any two distinct pencils share exactly one line
            for a in 0..n as u32 {
                for b in (a + 1)..n as u32 {
                    let common = plane
                        .lines_through(a)
                        .iter()
                        .filter(|l| plane.lines_through(b).contains(l))
                        .count();
                    assert_eq!(common, 1, "p={p} points {a},{b}");
                }
            }
        }
    }

    #[test]
    fn index_maps_are_bijections() {
        for p in [2u64, 3, 5] {
            let plane = PlaneModel::build(p).unwrap();
            for (i, pt) in plane.points().iter().enumerate() {
                assert_eq!(pt.index() as usize, i);
                assert_eq!(plane.point_index(pt.coords()).unwrap() as usize, i);
            }
            for (i, l) in plane.lines().iter().enumerate() {
                assert_eq!(l.index() as usize, i);
                assert_eq!(plane.line_index(l.coeffs()).unwrap() as usize, i);
            }
        }
    }
}
