//! The p-ary code of the plane and its dual: construction, dimension,
//! membership criteria, Moorhouse bases, and supported-subspace queries.
//!
//! Membership is decided by the line-sum criterion: a vector belongs to the
//! code iff its inner product with every line indicator is the same constant,
//! and that constant is the sum of all entries. The row-space solve is kept
//! in `fp` as an independent cross-check oracle.

use crate::error::{Error, Result};
use crate::fp::{Fp, FpMatrix, FpVector, Rref};
use crate::plane::PlaneModel;

/// A word of F_p^P, indexed by canonical point order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    entries: FpVector,
}

impl Codeword {
    pub fn zero(len: usize) -> Self {
        Codeword {
            entries: FpVector::zeros(len),
        }
    }

    pub fn from_vector(entries: FpVector) -> Self {
        Codeword { entries }
    }

    pub fn from_residues(fp: &Fp, entries: Vec<u8>) -> Result<Self> {
        Ok(Codeword {
            entries: FpVector::from_entries(fp, entries)?,
        })
    }

    /// Indicator function of a line, as a vector.
    pub fn line_indicator(plane: &PlaneModel, line: u32) -> Self {
        let mut v = FpVector::zeros(plane.size());
        for &pt in plane.line(line).points() {
            v.set(pt as usize, 1);
        }
        Codeword { entries: v }
    }

    pub fn vector(&self) -> &FpVector {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, point: u32) -> u64 {
        self.entries.get(point as usize)
    }

    pub fn set(&mut self, point: u32, value: u64) {
        self.entries.set(point as usize, value);
    }

    pub fn weight(&self) -> usize {
        self.entries.weight()
    }

    pub fn support(&self) -> Vec<u32> {
        self.entries.support().into_iter().map(|i| i as u32).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn add_scaled(&mut self, other: &Codeword, c: u64, fp: &Fp) {
        self.entries.add_scaled(&other.entries, c, fp);
    }

    pub fn scaled(&self, c: u64, fp: &Fp) -> Codeword {
        Codeword {
            entries: self.entries.scaled(c, fp),
        }
    }

    /// Scalar-class representative: first nonzero entry scaled to 1.
    pub fn canonicalized(&self, fp: &Fp) -> Codeword {
        Codeword {
            entries: self.entries.canonicalized(fp),
        }
    }

    /// Space-separated residues in canonical point order.
    pub fn to_text(&self) -> String {
        self.entries
            .as_bytes()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Choice data for a Moorhouse basis: a base line with an ordering of its
/// points x_0..x_p, a set of i lines (other than the base) through x_i for
/// each i >= 1, and one extra line through x_0.
#[derive(Debug, Clone)]
pub struct MoorhouseSpec {
    pub base_line: u32,
    /// x_0..x_p, a permutation of the base line's point set.
    pub point_order: Vec<u32>,
    /// pencil_sets[i-1] holds the i chosen lines through x_i, i = 1..=p.
    pub pencil_sets: Vec<Vec<u32>>,
    /// A line through x_0; may equal the base line.
    pub extra_line: u32,
}

impl MoorhouseSpec {
    pub fn validate(&self, plane: &PlaneModel) -> Result<()> {
        let p = plane.p() as usize;
        let n = plane.size() as u32;
        let bad = |msg: String| Err(Error::InvalidMoorhouseSpec(msg));

        if self.base_line >= n {
            return bad(format!("base line {} out of range", self.base_line));
        }
        let base_points = plane.line(self.base_line).points();
        if self.point_order.len() != p + 1 {
            return bad(format!(
                "point order has {} entries, expected {}",
                self.point_order.len(),
                p + 1
            ));
        }
        let mut sorted = self.point_order.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.as_slice() != base_points {
            return bad("point order is not a permutation of the base line's points".into());
        }
        if self.pencil_sets.len() != p {
            return bad(format!(
                "{} pencil sets given, expected {}",
                self.pencil_sets.len(),
                p
            ));
        }
        for (i, set) in self.pencil_sets.iter().enumerate() {
            let idx = i + 1;
            let x = self.point_order[idx];
            if set.len() != idx {
                return bad(format!(
                    "pencil set {} has {} lines, expected {}",
                    idx,
                    set.len(),
                    idx
                ));
            }
            let mut dedup = set.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != set.len() {
                return bad(format!("pencil set {idx} contains duplicate lines"));
            }
            for &l in set {
                if l >= n {
                    return bad(format!("line {l} out of range in pencil set {idx}"));
                }
                if l == self.base_line {
                    return bad(format!("pencil set {idx} contains the base line"));
                }
                if !plane.incident(x, l) {
                    return bad(format!(
                        "line {l} in pencil set {idx} does not pass through point {x}"
                    ));
                }
            }
        }
        if self.extra_line >= n {
            return bad(format!("extra line {} out of range", self.extra_line));
        }
        if !plane.incident(self.point_order[0], self.extra_line) {
            return bad(format!(
                "extra line {} does not pass through x_0 = {}",
                self.extra_line, self.point_order[0]
            ));
        }
        Ok(())
    }

    /// The chosen lines in basis order: the extra line, then the pencil sets.
    pub fn basis_lines(&self) -> Vec<u32> {
        let mut all = vec![self.extra_line];
        for set in &self.pencil_sets {
            all.extend_from_slice(set);
        }
        all
    }
}

/// The code generated by all lines of a plane.
#[derive(Debug, Clone)]
pub struct Code {
    plane: PlaneModel,
    generators: FpMatrix,
    reduced: Rref,
    basis: FpMatrix,
    dimension: usize,
}

impl Code {
    /// Build the code of a plane. The computed dimension is checked against
    /// the closed formula (p+1 choose 2)+1 and any mismatch is a hard error.
    pub fn new(plane: PlaneModel) -> Result<Self> {
        let n = plane.size();
        let rows: Vec<FpVector> = (0..n as u32)
            .map(|l| Codeword::line_indicator(&plane, l).entries)
            .collect();
        let generators = FpMatrix::from_rows(rows)?;
        let reduced = generators.rref(plane.fp());
        let dimension = reduced.rank;
        let p = plane.p() as usize;
        let expected = p * (p + 1) / 2 + 1;
        if dimension != expected {
            return Err(Error::DimensionInvariant {
                computed: dimension,
                expected,
            });
        }
        let basis = FpMatrix::from_rows(
            (0..dimension).map(|i| reduced.matrix.row_vector(i)).collect(),
        )?;
        Ok(Code {
            plane,
            generators,
            reduced,
            basis,
            dimension,
        })
    }

    /// Convenience: build the plane and its code in one step.
    pub fn build(p: u64) -> Result<Self> {
        Code::new(PlaneModel::build(p)?)
    }

    pub fn plane(&self) -> &PlaneModel {
        &self.plane
    }

    pub fn fp(&self) -> &Fp {
        self.plane.fp()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// All p^2+p+1 line indicators, one per row.
    pub fn generator_matrix(&self) -> &FpMatrix {
        &self.generators
    }

    pub fn reduced(&self) -> &Rref {
        &self.reduced
    }

    /// Row basis of the code (the nonzero rows of the reduced generators).
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Basis of the dual code, computed as the kernel of the generator matrix.
    pub fn dual_basis(&self) -> Vec<Codeword> {
        self.generators
            .kernel_basis(self.fp())
            .into_iter()
            .map(Codeword::from_vector)
            .collect()
    }

    fn check_len(&self, w: &Codeword) -> Result<()> {
        if w.len() != self.plane.size() {
            return Err(Error::LengthMismatch {
                expected: self.plane.size(),
                got: w.len(),
            });
        }
        Ok(())
    }

    /// Sum of the word over the points of a line.
    pub fn line_sum(&self, w: &Codeword, line: u32) -> u64 {
        let mut acc = 0u64;
        for &pt in self.plane.line(line).points() {
            acc += w.get(pt);
        }
        self.fp().reduce(acc)
    }

    /// Line-sum membership criterion: returns the common line sum if the
    /// word pairs to the same value against every line, which holds exactly
    /// for members of the code. The common value equals the sum of all
    /// entries.
    pub fn is_member(&self, w: &Codeword) -> Result<Option<u64>> {
        self.check_len(w)?;
        let sigma = self.line_sum(w, 0);
        for l in 1..self.plane.size() as u32 {
            if self.line_sum(w, l) != sigma {
                return Ok(None);
            }
        }
        debug_assert_eq!(
            sigma,
            self.fp()
                .reduce(w.vector().as_bytes().iter().map(|&e| e as u64).sum()),
        );
        Ok(Some(sigma))
    }

    /// Dual membership: the word pairs to zero against every line.
    pub fn is_dual_member(&self, w: &Codeword) -> Result<bool> {
        self.check_len(w)?;
        Ok((0..self.plane.size() as u32).all(|l| self.line_sum(w, l) == 0))
    }

    /// The words of a validated Moorhouse spec, checked to be a basis.
    pub fn moorhouse_basis(&self, spec: &MoorhouseSpec) -> Result<Vec<Codeword>> {
        spec.validate(&self.plane)?;
        let words: Vec<Codeword> = spec
            .basis_lines()
            .iter()
            .map(|&l| Codeword::line_indicator(&self.plane, l))
            .collect();
        let m = FpMatrix::from_rows(words.iter().map(|w| w.entries.clone()).collect())?;
        let rank = m.rank(self.fp());
        if rank != self.dimension {
            return Err(Error::NotABasis {
                rank,
                expected: self.dimension,
            });
        }
        Ok(words)
    }

    fn outside_columns(&self, support: &[u32]) -> Vec<usize> {
        let mut inside = vec![false; self.plane.size()];
        for &s in support {
            inside[s as usize] = true;
        }
        (0..self.plane.size()).filter(|&i| !inside[i]).collect()
    }

    /// Basis of the subspace of codewords whose support lies inside S,
    /// computed as the kernel of the restriction-to-complement map pulled
    /// back through the code basis.
    pub fn words_supported_in(&self, support: &[u32]) -> Vec<Codeword> {
        let outside = self.outside_columns(support);
        let restricted = self.basis.select_cols(&outside);
        let coeffs = restricted.transpose().kernel_basis(self.fp());
        debug_assert_eq!(
            coeffs.len(),
            self.dimension - restricted.rank(self.fp())
        );
        coeffs
            .into_iter()
            .map(|c| Codeword::from_vector(self.basis.combine_rows(&c, self.fp())))
            .collect()
    }

    /// Whether the code restricted to the complement of S keeps full
    /// dimension; equivalently, whether S contains no nonzero codeword's
    /// support.
    pub fn subsystem_full_rank(&self, support: &[u32]) -> bool {
        let outside = self.outside_columns(support);
        self.basis.select_cols(&outside).rank(self.fp()) == self.dimension
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dimensions() {
        assert_eq!(Code::build(2).unwrap().dimension(), 4);
        assert_eq!(Code::build(3).unwrap().dimension(), 7);
        assert_eq!(Code::build(5).unwrap().dimension(), 16);
    }

    #[test]
    fn incidence_rank_and_kernel_p3() {
        let code = Code::build(3).unwrap();
        assert_eq!(code.generator_matrix().row_count(), 13);
        assert_eq!(code.generator_matrix().col_count(), 13);
        assert_eq!(code.reduced().rank, 7);
        // 13 - 7 kernel vectors by rank-nullity
        assert_eq!(code.dual_basis().len(), 6);
    }

    #[test]
    fn membership_examples() {
        for p in [2u64, 3, 5] {
            let code = Code::build(p).unwrap();
            // a line indicator meets every line once and itself p+1 = 1 (mod p) times
            let w = Codeword::line_indicator(code.plane(), 0);
            assert_eq!(code.is_member(&w).unwrap(), Some(1));
            // a single point indicator is never a member
            let mut pt = Codeword::zero(code.plane().size());
            pt.set(3 % code.plane().size() as u32, 1);
            assert_eq!(code.is_member(&pt).unwrap(), None);
        }
        let code = Code::build(3).unwrap();
        let short = Codeword::zero(5);
        assert!(matches!(
            code.is_member(&short),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn membership_agrees_with_row_space_oracle() {
        for p in [3u64, 5] {
            let code = Code::build(p).unwrap();
            let n = code.plane().size();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for trial in 0..200 {
                let mut w = Codeword::zero(n);
                let terms = rng.gen_range(1..=4);
                for _ in 0..terms {
                    let l = rng.gen_range(0..n as u32);
                    let c = rng.gen_range(1..p);
                    w.add_scaled(&Codeword::line_indicator(code.plane(), l), c, code.fp());
                }
                if trial % 2 == 1 {
                    // perturb one coordinate; the result is never a member
                    let i = rng.gen_range(0..n as u32);
                    w.set(i, code.fp().add(w.get(i), 1));
                }
                let member = code.is_member(&w).unwrap();
                let oracle = code
                    .generator_matrix()
                    .in_row_space(w.vector(), code.fp())
                    .unwrap();
                assert_eq!(member.is_some(), oracle.is_some(), "p={p} trial={trial}");
                if let Some(sigma) = member {
                    let total = code
                        .fp()
                        .reduce(w.vector().as_bytes().iter().map(|&e| e as u64).sum());
                    assert_eq!(sigma, total);
                }
            }
        }
    }

    #[test]
    fn dual_membership_examples() {
        let code = Code::build(5).unwrap();
        let l0 = Codeword::line_indicator(code.plane(), 0);
        let l1 = Codeword::line_indicator(code.plane(), 1);
        let mut diff = l0.clone();
        diff.add_scaled(&l1, code.fp().neg(1), code.fp());
        assert!(code.is_dual_member(&diff).unwrap());
        assert!(!code.is_dual_member(&l0).unwrap());
        // difference of lines is also a member with sigma = 0
        assert_eq!(code.is_member(&diff).unwrap(), Some(0));
    }

    #[test]
    fn dual_is_subcode() {
        for p in [3u64, 5] {
            let code = Code::build(p).unwrap();
            let duals = code.dual_basis();
            let expected = (p as usize) * (p as usize + 1) / 2;
            assert_eq!(duals.len(), expected);
            for w in &duals {
                assert_eq!(code.is_member(w).unwrap(), Some(0));
                assert!(code.is_dual_member(w).unwrap());
            }
        }
    }

    fn simple_spec(plane: &PlaneModel) -> MoorhouseSpec {
        let p = plane.p() as usize;
        let base_line = 0u32;
        let point_order: Vec<u32> = plane.line(base_line).points().to_vec();
        let pencil_sets: Vec<Vec<u32>> = (1..=p)
            .map(|i| {
                let x = point_order[i];
                plane
                    .lines_through(x)
                    .iter()
                    .copied()
                    .filter(|&l| l != base_line)
                    .take(i)
                    .collect()
            })
            .collect();
        MoorhouseSpec {
            base_line,
            point_order,
            pencil_sets,
            extra_line: base_line,
        }
    }

    #[test]
    fn moorhouse_examples() {
        let code = Code::build(3).unwrap();
        let words = code.moorhouse_basis(&simple_spec(code.plane())).unwrap();
        assert_eq!(words.len(), 7);

        let code = Code::build(2).unwrap();
        let words = code.moorhouse_basis(&simple_spec(code.plane())).unwrap();
        assert_eq!(words.len(), 4);
    }

    #[test]
    fn moorhouse_rejects_bad_specs() {
        let code = Code::build(3).unwrap();
        let plane = code.plane();
        let good = simple_spec(plane);

        let mut wrong_size = good.clone();
        wrong_size.pencil_sets[2].pop();
        let err = code.moorhouse_basis(&wrong_size).unwrap_err();
        assert!(err.to_string().contains("pencil set 3"));

        let mut has_base = good.clone();
        has_base.pencil_sets[1][0] = good.base_line;
        let err = code.moorhouse_basis(&has_base).unwrap_err();
        assert!(err.to_string().contains("base line"));

        let mut wrong_pencil = good.clone();
        // a line through x_1 does not in general pass through x_2
        wrong_pencil.pencil_sets[1] = wrong_pencil.pencil_sets[0]
            .iter()
            .copied()
            .chain(std::iter::once({
                let x1 = good.point_order[1];
                plane
                    .lines_through(x1)
                    .iter()
                    .copied()
                    .find(|&l| l != good.base_line)
                    .unwrap()
            }))
            .collect();
        assert!(code.moorhouse_basis(&wrong_pencil).is_err());

        let mut dup = good.clone();
        dup.pencil_sets[2][1] = dup.pencil_sets[2][0];
        let err = code.moorhouse_basis(&dup).unwrap_err();
        assert!(err.to_string().contains("duplicate"));

        let mut bad_extra = good;
        bad_extra.extra_line = {
            let x0 = bad_extra.point_order[0];
            (0..plane.size() as u32)
                .find(|&l| !plane.incident(x0, l))
                .unwrap()
        };
        let err = code.moorhouse_basis(&bad_extra).unwrap_err();
        assert!(err.to_string().contains("extra line"));
    }

    #[test]
    fn supported_words() {
        let code = Code::build(5).unwrap();
        // a full line supports exactly the scalar multiples of that line
        let s: Vec<u32> = code.plane().line(4).points().to_vec();
        let words = code.words_supported_in(&s);
        assert_eq!(words.len(), 1);
        let fp = code.fp();
        assert_eq!(
            words[0].canonicalized(fp),
            Codeword::line_indicator(code.plane(), 4)
        );
        // all points support the whole code
        let all: Vec<u32> = (0..code.plane().size() as u32).collect();
        assert_eq!(code.words_supported_in(&all).len(), code.dimension());
    }

    #[test]
    fn subsystem_rank_examples() {
        let code = Code::build(5).unwrap();
        assert!(code.subsystem_full_rank(&[]));
        let line_pts: Vec<u32> = code.plane().line(2).points().to_vec();
        assert!(!code.subsystem_full_rank(&line_pts));
    }

    #[test]
    fn supported_words_match_subsystem_rank() {
        for p in [3u64, 5] {
            let code = Code::build(p).unwrap();
            let n = code.plane().size();
            let mut rng = ChaCha8Rng::seed_from_u64(19);
            for _ in 0..60 {
                let size = rng.gen_range(0..=n);
                let mut s: Vec<u32> = (0..n as u32).collect();
                for i in (1..s.len()).rev() {
                    s.swap(i, rng.gen_range(0..=i));
                }
                s.truncate(size);
                let words = code.words_supported_in(&s);
                assert_eq!(words.is_empty(), code.subsystem_full_rank(&s));
                let mask: Vec<bool> = {
                    let mut m = vec![false; n];
                    for &i in &s {
                        m[i as usize] = true;
                    }
                    m
                };
                for w in &words {
                    assert!(w.support().iter().all(|&i| mask[i as usize]));
                    assert!(code.is_member(w).unwrap().is_some());
                }
            }
        }
    }
}
