use std::fmt::Write as _;

use super::int::Int;
use crate::error::{Error, Result};

/// Sparse integer matrix in compressed-row form.
///
/// Rows are stored with strictly increasing column indices and no explicit
/// zeros, so structural equality is matrix equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, row_ptr: vec![0; rows + 1], col_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Int::ONE)
    }

    pub fn scalar(n: usize, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        IntMatrix {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            vals: vec![c.clone(); n],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut per_row: Vec<Vec<(usize, Int)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            if !v.is_zero() {
                per_row[r].push((c, v));
            }
        }
        Self::from_sparse_rows(cols, per_row)
    }

    /// Builds a matrix from unsorted per-row entry lists. Duplicates are summed.
    pub fn from_sparse_rows(cols: usize, mut per_row: Vec<Vec<(usize, Int)>>) -> Self {
        let rows = per_row.len();
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in per_row.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut i = 0;
            while i < row.len() {
                let c = row[i].0;
                debug_assert!(c < cols);
                let mut acc = std::mem::take(&mut row[i].1);
                let mut j = i + 1;
                while j < row.len() && row[j].0 == c {
                    acc += &row[j].1;
                    j += 1;
                }
                if !acc.is_zero() {
                    col_idx.push(c);
                    vals.push(acc);
                }
                i = j;
            }
            row_ptr.push(col_idx.len());
        }
        IntMatrix { rows, cols, row_ptr, col_idx, vals }
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Int>]) -> Self {
        assert_eq!(data.len(), rows);
        let per_row = data
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
            })
            .collect();
        Self::from_sparse_rows(cols, per_row)
    }

    /// Convenience constructor from small literals; `cols` is taken from the first row.
    pub fn from_i64_rows(data: &[Vec<i64>]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Int>> = data.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect();
        Self::from_dense(data.len(), cols, &dense)
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let n = entries.len();
        Self::from_triplets(n, n, entries.iter().enumerate().map(|(i, v)| (i, i, v.clone())))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Int)> + '_ {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.col_idx[a..b].iter().copied().zip(self.vals[a..b].iter())
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col_idx[a..b].binary_search(&j) {
            Ok(k) => self.vals[a + k].clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Int)> + '_ {
        (0..self.rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Rows as owned sparse vectors, the working format of the eliminators.
    pub fn to_sparse_rows(&self) -> Vec<Vec<(usize, Int)>> {
        (0..self.rows).map(|i| self.row(i).map(|(j, v)| (j, v.clone())).collect()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut per_col: Vec<Vec<(usize, Int)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.triplets() {
            per_col[j].push((i, v.clone()));
        }
        IntMatrix::from_sparse_rows(self.rows, per_col)
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::ZERO;
                for (j, v) in self.row(i) {
                    if !x[j].is_zero() {
                        acc += &(v * &x[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix: returns `y^T * self`.
    pub fn left_mul_vec(&self, y: &[Int]) -> Vec<Int> {
        assert_eq!(y.len(), self.rows, "dimension mismatch in left_mul_vec");
        let mut out = vec![Int::ZERO; self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, v) in self.row(i) {
                out[j] += &(v * yi);
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut acc: Vec<Int> = vec![Int::ZERO; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.cols];
        let mut per_row = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !mark[j] {
                        mark[j] = true;
                        touched.push(j);
                    }
                    acc[j] += &(a * b);
                }
            }
            let mut row = Vec::with_capacity(touched.len());
            for &j in &touched {
                mark[j] = false;
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            touched.clear();
            per_row.push(row);
        }
        IntMatrix::from_sparse_rows(other.cols, per_row)
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        if c.is_zero() {
            return IntMatrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in out.vals.iter_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        self.combine(other, &Int::ONE)
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        self.combine(other, &Int::from(-1))
    }

    fn combine(&self, other: &IntMatrix, sign: &Int) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let trip = self
            .triplets()
            .map(|(i, j, v)| (i, j, v.clone()))
            .chain(other.triplets().map(|(i, j, v)| (i, j, v * sign)));
        IntMatrix::from_triplets(self.rows, self.cols, trip)
    }

    /// Places `blocks` side by side. All blocks must share the row count.
    pub fn hstack(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut off = 0;
        let mut trip = Vec::new();
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            trip.extend(b.triplets().map(|(i, j, v)| (i, j + off, v.clone())));
            off += b.cols;
        }
        IntMatrix::from_triplets(rows, off, trip)
    }

    /// Places `blocks` on top of each other. All blocks must share the column count.
    pub fn vstack(blocks: &[&IntMatrix]) -> IntMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut off = 0;
        let mut trip = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            trip.extend(b.triplets().map(|(i, j, v)| (i + off, j, v.clone())));
            off += b.rows;
        }
        IntMatrix::from_triplets(off, cols, trip)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let trip = self.triplets().flat_map(|(i, j, a)| {
            other
                .triplets()
                .map(move |(k, l, b)| (i * other.rows + k, j * other.cols + l, a * b))
        });
        IntMatrix::from_triplets(self.rows * other.rows, self.cols * other.cols, trip.collect::<Vec<_>>())
    }

    /// Plain-text dump: a `# rows cols` header, then one `row col value` line per entry.
    pub fn to_triplet_text(&self) -> String {
        let mut s = format!("# {} {}\n", self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            let _ = writeln!(s, "{i} {j} {v}");
        }
        s
    }

    pub fn from_triplet_text(text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let dims: Vec<usize> = header
            .trim_start_matches('#')
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad header: {e}")))?;
        if dims.len() != 2 {
            return Err(Error::Parse("header must be `# rows cols`".into()));
        }
        let mut trip = Vec::new();
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad triplet line `{l}`")));
            }
            let i: usize = parts[0].parse().map_err(|_| Error::Parse(format!("bad row in `{l}`")))?;
            let j: usize = parts[1].parse().map_err(|_| Error::Parse(format!("bad col in `{l}`")))?;
            let v: Int = parts[2].parse().map_err(|_| Error::Parse(format!("bad value in `{l}`")))?;
            if i >= dims[0] || j >= dims[1] {
                return Err(Error::Parse(format!("entry ({i}, {j}) out of range")));
            }
            trip.push((i, j, v));
        }
        Ok(IntMatrix::from_triplets(dims[0], dims[1], trip))
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.rows <= 12 && self.cols <= 12 {
            writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
            for r in self.to_dense() {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
            write!(f, "]")
        } else {
            write!(f, "IntMatrix {}x{} ({} nonzeros)", self.rows, self.cols, self.nnz())
        }
    }
}

pub fn vec_is_zero(v: &[Int]) -> bool {
    v.iter().all(Int::is_zero)
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}
