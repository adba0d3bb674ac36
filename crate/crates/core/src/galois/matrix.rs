use crate::bits::BitVec;
use crate::error::{Error, Result};
use std::fmt;

/// Dense matrix over GF(2), stored row-major as bit vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Output of Gaussian elimination: reduced rows plus pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BinaryMatrix { cols, rows }
    }

    /// One row per string of '0'/'1'.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed: Option<Vec<BitVec>> = rows.iter().map(|r| BitVec::parse(r)).collect();
        let parsed = parsed.ok_or_else(|| Error::Parse("matrix rows must contain only 0/1".into()))?;
        let cols = parsed.first().map_or(0, |r| r.len());
        if parsed.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Self::from_rows(cols, parsed))
    }

    /// Text form: one row per line.
    pub fn parse_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        Self::from_strs(&lines)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn push_row(&mut self, r: BitVec) {
        assert_eq!(r.len(), self.cols);
        self.rows.push(r);
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(c) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product M·v.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Row-vector product vᵀ·M (combination of rows selected by v).
    pub fn combine_rows(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.cols);
        for i in v.ones_iter() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self.rows.iter().map(|r| other.combine_rows(r)).collect();
        BinaryMatrix { cols: other.cols, rows }
    }

    pub fn stack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BinaryMatrix { cols: self.cols, rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Total number of ones.
    pub fn weight(&self) -> usize {
        self.rows.iter().map(BitVec::weight).sum()
    }

    pub fn permute_columns(&self, perm: &[usize]) -> BinaryMatrix {
        let rows = self.rows.iter().map(|r| r.permuted(perm)).collect();
        BinaryMatrix { cols: perm.len(), rows }
    }

    /// Reduced row echelon form with leftmost pivots; zero rows dropped.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else { continue };
            rows.swap(r, p);
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pr);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { matrix: BinaryMatrix { cols: self.cols, rows }, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of {v : M·v = 0}.
    pub fn kernel(&self) -> BinaryMatrix {
        let e = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (i, &p) in e.pivots.iter().enumerate() {
                if e.matrix.get(i, f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BinaryMatrix { cols: self.cols, rows: basis }
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        let e = self.echelon();
        reduce_against(&e, v).is_zero()
    }

    /// Row spaces equal.
    pub fn same_row_space(&self, other: &BinaryMatrix) -> bool {
        let a = self.echelon();
        let b = other.echelon();
        a.pivots == b.pivots && a.matrix == b.matrix
    }

    /// Brings a full-row-rank matrix to `[I | A]`.
    ///
    /// Returns the standardized matrix and `perm`, where standardized column `j`
    /// is original column `perm[j]`.
    pub fn standard_form(&self) -> Result<(BinaryMatrix, Vec<usize>)> {
        let e = self.echelon();
        if e.pivots.len() < self.nrows() {
            return Err(Error::Rank { rows: self.nrows(), rank: e.pivots.len() });
        }
        let mut perm: Vec<usize> = (0..self.cols).collect();
        for (i, &p) in e.pivots.iter().enumerate() {
            perm.swap(i, p);
        }
        Ok((e.matrix.permute_columns(&perm), perm))
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<BinaryMatrix> {
        let n = self.nrows();
        if n != self.cols {
            return Err(Error::Invariant("inverse of non-square matrix".into()));
        }
        let mut aug = Vec::with_capacity(n);
        for (i, r) in self.rows.iter().enumerate() {
            let mut e = BitVec::zeros(n);
            e.set(i, true);
            aug.push(BitVec::concat(&[r, &e]));
        }
        let m = BinaryMatrix { cols: 2 * n, rows: aug }.echelon();
        if m.pivots.len() < n || m.pivots[n - 1] >= n {
            return Err(Error::Rank { rows: n, rank: m.pivots.iter().filter(|&&p| p < n).count() });
        }
        let rows = m.matrix.rows.iter().map(|r| r.slice(n, n)).collect();
        Ok(BinaryMatrix { cols: n, rows })
    }
}

/// Reduces `v` by an echelon basis; zero iff `v` is in the row space.
pub fn reduce_against(e: &Echelon, v: &BitVec) -> BitVec {
    let mut r = v.clone();
    for (i, &p) in e.pivots.iter().enumerate() {
        if r.get(p) {
            r.xor_assign(e.matrix.row(i));
        }
    }
    r
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}
