//! Exact arithmetic in Z/pZ and dense linear algebra over it.
//!
//! The modulus lives in an [`Fp`] context validated once at creation;
//! elements everywhere else are plain residues. Vectors and matrices store
//! one byte per entry (enough for the target primes, all below 256), while
//! scalar arithmetic accepts any 16-bit prime. All products go through
//! 64-bit intermediates, so no reduction step can overflow.

use crate::error::{Error, Result};

/// Arithmetic context for the prime field Z/pZ.
///
/// Inverses are precomputed in a table of size p at construction, so
/// `inv` is a branch-free lookup afterwards.
#[derive(Debug, Clone)]
pub struct Fp {
    p: u64,
    inv_table: Vec<u16>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Largest supported modulus (16-bit bound; target primes are far smaller).
    pub const MAX_MODULUS: u64 = u16::MAX as u64;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX_MODULUS {
            return Err(Error::ModulusRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // inv[a] = -(p/a) * inv[p mod a], the standard linear-time recurrence.
        let mut inv_table = vec![0u16; p as usize];
        if p > 1 {
            inv_table[1] = 1;
        }
        for a in 2..p {
            let v = (p - (p / a) * inv_table[(p % a) as usize] as u64 % p) % p;
            inv_table[a as usize] = v as u16;
        }
        Ok(Fp { p, inv_table })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary unsigned value to a residue.
    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduce a signed value to a residue in [0, p).
    #[inline]
    pub fn reduce_signed(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (((a % p) + p) % p) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        a * b % self.p
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> Result<u64> {
        debug_assert!(a < self.p);
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_table[a as usize] as u64)
    }

    fn check_byte_storage(&self) -> Result<()> {
        if self.p >= 256 {
            return Err(Error::ByteStorage(self.p));
        }
        Ok(())
    }
}

/// Dense vector of residues mod p, one byte per entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    entries: Vec<u8>,
}

impl FpVector {
    pub fn zeros(len: usize) -> Self {
        FpVector {
            entries: vec![0; len],
        }
    }

    pub fn from_entries(fp: &Fp, entries: Vec<u8>) -> Result<Self> {
        fp.check_byte_storage()?;
        if let Some(bad) = entries.iter().find(|&&e| e as u64 >= fp.modulus()) {
            return Err(Error::ShapeMismatch(format!(
                "entry {bad} is not a residue mod {}",
                fp.modulus()
            )));
        }
        Ok(FpVector { entries })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        self.entries[i] as u64
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u64) {
        debug_assert!(value < 256);
        self.entries[i] = value as u8;
    }

    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|&e| e != 0)
    }

    /// Standard bilinear form sum of entrywise products.
    pub fn dot(&self, other: &FpVector, fp: &Fp) -> u64 {
        debug_assert_eq!(self.len(), other.len());
        let mut acc: u64 = 0;
        for (&a, &b) in self.entries.iter().zip(&other.entries) {
            acc += a as u64 * b as u64;
        }
        fp.reduce(acc)
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &FpVector, c: u64, fp: &Fp) {
        debug_assert_eq!(self.len(), other.len());
        let p = fp.modulus();
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            let v = (*a as u64 + c * b as u64) % p;
            *a = v as u8;
        }
    }

    pub fn scaled(&self, c: u64, fp: &Fp) -> FpVector {
        let p = fp.modulus();
        FpVector {
            entries: self
                .entries
                .iter()
                .map(|&a| (a as u64 * c % p) as u8)
                .collect(),
        }
    }

    /// Representative of the scalar class: scaled so the first nonzero
    /// entry equals 1. The zero vector is its own representative.
    pub fn canonicalized(&self, fp: &Fp) -> FpVector {
        match self.first_nonzero() {
            None => self.clone(),
            Some(i) => {
                let c = fp.inv(self.get(i)).expect("nonzero entry");
                self.scaled(c, fp)
            }
        }
    }
}

/// Result of a full row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    /// Pivot columns in elimination order (ascending for the natural order).
    pub pivots: Vec<usize>,
}

/// Dense row-major matrix over Z/pZ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<FpVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, FpVector::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row length {} differs from {}",
                bad.len(),
                cols
            )));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            data.extend_from_slice(r.as_bytes());
        }
        Ok(FpMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn row_count(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn col_count(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> FpVector {
        FpVector {
            entries: self.row(i).to_vec(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j] as u64
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        debug_assert!(value < 256);
        self.data[i * self.cols + j] = value as u8;
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// New matrix keeping only the given columns, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.rows, keep.len());
        for i in 0..self.rows {
            let src = self.row(i);
            for (jj, &j) in keep.iter().enumerate() {
                out.data[i * keep.len() + jj] = src[j];
            }
        }
        out
    }

    /// coeffs^T * self, a row-space element.
    pub fn combine_rows(&self, coeffs: &FpVector, fp: &Fp) -> FpVector {
        debug_assert_eq!(coeffs.len(), self.rows);
        let mut out = FpVector::zeros(self.cols);
        for i in 0..self.rows {
            let c = coeffs.get(i);
            if c != 0 {
                out.add_scaled(&self.row_vector(i), c, fp);
            }
        }
        out
    }

    /// Reduced row echelon form, eliminating columns left to right.
    ///
    /// Pivot selection is the first row (in order) with a nonzero entry,
    /// so pivot columns are reproducible across runs and platforms.
    pub fn rref(&self, fp: &Fp) -> Rref {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(fp, &order)
    }

    /// Reduced row echelon form with a custom column elimination order.
    ///
    /// The output stays in the original column indexing; only the order in
    /// which pivots are sought changes. `pivots` lists pivot columns in
    /// elimination order.
    pub fn rref_with_order(&self, fp: &Fp, order: &[usize]) -> Rref {
        let p = fp.modulus();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for &c in order {
            if next_row == m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(next_row, pr);
            let inv = fp.inv(m.get(next_row, c)).expect("pivot is nonzero");
            if inv != 1 {
                for j in 0..m.cols {
                    let v = m.get(next_row, j) * inv % p;
                    m.set(next_row, j, v);
                }
            }
            for i in 0..m.rows {
                if i == next_row {
                    continue;
                }
                let f = m.get(i, c);
                if f != 0 {
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (p - f) * m.get(next_row, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        Rref {
            matrix: m,
            rank: next_row,
            pivots,
        }
    }

    pub fn rank(&self, fp: &Fp) -> usize {
        self.rref(fp).rank
    }

    /// Basis of the right kernel: independent vectors v with self * v = 0,
    /// exactly `cols - rank` of them.
    pub fn kernel_basis(&self, fp: &Fp) -> Vec<FpVector> {
        let r = self.rref(fp);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &r.pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::with_capacity(self.cols - r.rank);
        for f in 0..self.cols {
            if pivot_set[f] {
                continue;
            }
            let mut v = FpVector::zeros(self.cols);
            v.set(f, 1);
            for (j, &pc) in r.pivots.iter().enumerate() {
                v.set(pc, fp.neg(r.matrix.get(j, f)));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = rhs; free variables are set to zero.
    pub fn solve(&self, rhs: &FpVector, fp: &Fp) -> Result<Option<FpVector>> {
        if rhs.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "rhs length {} does not match row count {}",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = FpMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, rhs.get(i));
        }
        let r = aug.rref(fp);
        if r.pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = FpVector::zeros(self.cols);
        for (j, &pc) in r.pivots.iter().enumerate() {
            x.set(pc, r.matrix.get(j, self.cols));
        }
        Ok(Some(x))
    }

    /// Coefficients c with c^T * self = v, if v lies in the row space.
    pub fn in_row_space(&self, v: &FpVector, fp: &Fp) -> Result<Option<FpVector>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector length {} does not match column count {}",
                v.len(),
                self.cols
            )));
        }
        self.transpose().solve(v, fp)
    }
}
