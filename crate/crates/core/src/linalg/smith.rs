//! Smith normal form over the integers.
//!
//! The unimodular transforms are never stored densely. Every elimination
//! step is logged as an elementary operation on two lines (rows or
//! columns), and `U`, `V` and their inverses are applied to vectors by
//! replaying the log. Cochain differentials have thousands of rows, so a
//! dense `U` would dominate both memory and time.
//!
//! Two eliminators share the log format: a dense one for matrices with a
//! short side of at most [`DENSE_CROSSOVER`], and a sparse one with
//! Markowitz pivoting above that.

use super::int::Int;
use super::matrix::IntMatrix;

/// Short-side dimension up to which the dense eliminator is used.
pub const DENSE_CROSSOVER: usize = 512;

/// An elementary unimodular operation on two lines `i`, `j` of a matrix.
///
/// As a row operation it is left multiplication by a matrix `E` that acts as
/// the 2x2 block `T` on coordinates `(i, j)`. As a column operation it is right
/// multiplication by `T^T`, i.e. the same linear combination of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Swap(usize, usize),
    /// `line[dst] += c * line[src]`
    Add { src: usize, dst: usize, c: Int },
    Neg(usize),
    /// `(line[i], line[j]) <- (a*line[i] + b*line[j], c*line[i] + d*line[j])` with `ad - bc = 1`.
    Mix { i: usize, j: usize, a: Int, b: Int, c: Int, d: Int },
}

impl ElemOp {
    /// `x <- T x`
    pub fn apply(&self, x: &mut [Int]) {
        match self {
            ElemOp::Swap(i, j) => x.swap(*i, *j),
            ElemOp::Add { src, dst, c } => {
                if !x[*src].is_zero() {
                    let t = c * &x[*src];
                    x[*dst] += &t;
                }
            }
            ElemOp::Neg(i) => x[*i] = -&x[*i],
            ElemOp::Mix { i, j, a, b, c, d } => mix(x, *i, *j, a, b, c, d),
        }
    }

    /// `x <- T^{-1} x`
    pub fn apply_inv(&self, x: &mut [Int]) {
        match self {
            ElemOp::Swap(..) | ElemOp::Neg(_) => self.apply(x),
            ElemOp::Add { src, dst, c } => {
                if !x[*src].is_zero() {
                    let t = c * &x[*src];
                    x[*dst] -= &t;
                }
            }
            ElemOp::Mix { i, j, a, b, c, d } => mix(x, *i, *j, d, &-b, &-c, a),
        }
    }

    /// `x <- T^T x`
    pub fn apply_transpose(&self, x: &mut [Int]) {
        match self {
            ElemOp::Swap(..) | ElemOp::Neg(_) => self.apply(x),
            ElemOp::Add { src, dst, c } => {
                if !x[*dst].is_zero() {
                    let t = c * &x[*dst];
                    x[*src] += &t;
                }
            }
            ElemOp::Mix { i, j, a, b, c, d } => mix(x, *i, *j, a, c, b, d),
        }
    }

    /// `x <- T^{-T} x`
    pub fn apply_inv_transpose(&self, x: &mut [Int]) {
        match self {
            ElemOp::Swap(..) | ElemOp::Neg(_) => self.apply(x),
            ElemOp::Add { src, dst, c } => {
                if !x[*dst].is_zero() {
                    let t = c * &x[*dst];
                    x[*src] -= &t;
                }
            }
            ElemOp::Mix { i, j, a, b, c, d } => mix(x, *i, *j, d, &-c, &-b, a),
        }
    }
}

fn mix(x: &mut [Int], i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
    let (xi, xj) = (x[i].clone(), x[j].clone());
    x[i] = &(a * &xi) + &(b * &xj);
    x[j] = &(c * &xi) + &(d * &xj);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnfStrategy {
    Auto,
    Dense,
    Sparse,
}

#[derive(Clone, Copy, Debug)]
pub struct SnfOptions {
    pub strategy: SnfStrategy,
    pub track_rows: bool,
    pub track_cols: bool,
}

impl Default for SnfOptions {
    fn default() -> Self {
        SnfOptions { strategy: SnfStrategy::Auto, track_rows: true, track_cols: true }
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | ... | d_r`, followed by zeros.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    rows: usize,
    cols: usize,
    diag: Vec<Int>,
    rank: usize,
    row_ops: Vec<ElemOp>,
    col_ops: Vec<ElemOp>,
    rows_tracked: bool,
    cols_tracked: bool,
}

impl SmithDecomposition {
    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Diagonal of `D`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> &[Int] {
        &self.diag
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[Int] {
        &self.diag[..self.rank]
    }

    pub fn row_op_count(&self) -> usize {
        self.row_ops.len()
    }

    pub fn col_op_count(&self) -> usize {
        self.col_ops.len()
    }

    fn need_rows(&self) {
        assert!(self.rows_tracked, "row transform was not tracked");
    }

    fn need_cols(&self) {
        assert!(self.cols_tracked, "column transform was not tracked");
    }

    /// `U x`
    pub fn u_mul(&self, x: &mut [Int]) {
        self.need_rows();
        for op in &self.row_ops {
            op.apply(x);
        }
    }

    /// `U^{-1} x`
    pub fn u_inv_mul(&self, x: &mut [Int]) {
        self.need_rows();
        for op in self.row_ops.iter().rev() {
            op.apply_inv(x);
        }
    }

    /// `U^T x`; with `x = e_k` this is row `k` of `U`.
    pub fn u_t_mul(&self, x: &mut [Int]) {
        self.need_rows();
        for op in self.row_ops.iter().rev() {
            op.apply_transpose(x);
        }
    }

    /// Row `k` of `U`, applied to many basis vectors at once.
    pub fn u_rows(&self, ks: &[usize]) -> Vec<Vec<Int>> {
        ks.iter()
            .map(|&k| {
                let mut e = vec![Int::ZERO; self.rows];
                e[k] = Int::ONE;
                self.u_t_mul(&mut e);
                e
            })
            .collect()
    }

    /// `V x`
    pub fn v_mul(&self, x: &mut [Int]) {
        self.need_cols();
        for op in self.col_ops.iter().rev() {
            op.apply_transpose(x);
        }
    }

    /// `V^{-1} x`
    pub fn v_inv_mul(&self, x: &mut [Int]) {
        self.need_cols();
        for op in &self.col_ops {
            op.apply_inv_transpose(x);
        }
    }

    /// `(V^{-1})^T x`
    pub fn v_inv_t_mul(&self, x: &mut [Int]) {
        self.need_cols();
        for op in self.col_ops.iter().rev() {
            op.apply_inv(x);
        }
    }

    fn materialize(n: usize, f: impl Fn(&mut [Int])) -> IntMatrix {
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Int::ZERO; n];
            e[j] = Int::ONE;
            f(&mut e);
            cols.push(e);
        }
        let trip = cols
            .into_iter()
            .enumerate()
            .flat_map(|(j, c)| c.into_iter().enumerate().map(move |(i, v)| (i, j, v)));
        IntMatrix::from_triplets(n, n, trip.collect::<Vec<_>>())
    }

    pub fn u(&self) -> IntMatrix {
        Self::materialize(self.rows, |x| self.u_mul(x))
    }

    pub fn u_inv(&self) -> IntMatrix {
        Self::materialize(self.rows, |x| self.u_inv_mul(x))
    }

    pub fn v(&self) -> IntMatrix {
        Self::materialize(self.cols, |x| self.v_mul(x))
    }

    pub fn v_inv(&self) -> IntMatrix {
        Self::materialize(self.cols, |x| self.v_inv_mul(x))
    }

    pub fn d(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.diag.iter().enumerate().map(|(i, v)| (i, i, v.clone())).collect::<Vec<_>>(),
        )
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    smith_normal_form_with(m, SnfOptions::default())
}

pub fn smith_normal_form_with(m: &IntMatrix, opts: SnfOptions) -> SmithDecomposition {
    let dense = match opts.strategy {
        SnfStrategy::Dense => true,
        SnfStrategy::Sparse => false,
        SnfStrategy::Auto => m.nrows().min(m.ncols()) <= DENSE_CROSSOVER,
    };
    let mut log = OpLog { rows: Vec::new(), cols: Vec::new(), track_rows: opts.track_rows, track_cols: opts.track_cols };
    let pivots = if dense { dense::eliminate(m, &mut log) } else { sparse::eliminate(m, &mut log) };
    finish(m.nrows(), m.ncols(), pivots, log)
}

/// Invariant factors only; skips transform bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let snf = smith_normal_form_with(m, SnfOptions { track_rows: false, track_cols: false, ..Default::default() });
    snf.invariant_factors().to_vec()
}

pub(crate) struct OpLog {
    rows: Vec<ElemOp>,
    cols: Vec<ElemOp>,
    track_rows: bool,
    track_cols: bool,
}

impl OpLog {
    fn row(&mut self, op: ElemOp) {
        if self.track_rows {
            self.rows.push(op);
        }
    }

    fn col(&mut self, op: ElemOp) {
        if self.track_cols {
            self.cols.push(op);
        }
    }
}

/// A pivot left by an eliminator: after elimination, `(row, col)` is the only
/// nonzero entry in its row and column.
struct Pivot {
    row: usize,
    col: usize,
    value: Int,
}

/// Moves pivots onto the diagonal, fixes signs and enforces the
/// divisibility chain with 2x2 gcd/lcm steps.
fn finish(rows: usize, cols: usize, pivots: Vec<Pivot>, mut log: OpLog) -> SmithDecomposition {
    let r = pivots.len();
    let mut row_at: Vec<usize> = (0..rows).collect();
    let mut row_pos: Vec<usize> = (0..rows).collect();
    let mut col_at: Vec<usize> = (0..cols).collect();
    let mut col_pos: Vec<usize> = (0..cols).collect();
    let mut d: Vec<Int> = Vec::with_capacity(r);
    for (k, p) in pivots.into_iter().enumerate() {
        let pr = row_pos[p.row];
        if pr != k {
            log.row(ElemOp::Swap(k, pr));
            let (a, b) = (row_at[k], row_at[pr]);
            row_at.swap(k, pr);
            row_pos[a] = pr;
            row_pos[b] = k;
        }
        let pc = col_pos[p.col];
        if pc != k {
            log.col(ElemOp::Swap(k, pc));
            let (a, b) = (col_at[k], col_at[pc]);
            col_at.swap(k, pc);
            col_pos[a] = pc;
            col_pos[b] = k;
        }
        let mut v = p.value;
        if v.is_negative() {
            log.row(ElemOp::Neg(k));
            v = -v;
        }
        d.push(v);
    }
    for i in 0..r {
        if d[i].is_one() {
            continue;
        }
        for j in i + 1..r {
            if d[i].divides(&d[j]) {
                continue;
            }
            let (a, b) = (d[i].clone(), d[j].clone());
            let (g, s, t) = a.extended_gcd(&b);
            log.col(ElemOp::Add { src: j, dst: i, c: Int::ONE });
            log.row(ElemOp::Mix { i, j, a: s, b: t.clone(), c: -b.div_exact(&g), d: a.div_exact(&g) });
            log.col(ElemOp::Add { src: i, dst: j, c: -(&t * &b.div_exact(&g)) });
            d[j] = a.div_exact(&g) * &b;
            d[i] = g;
            if d[i].is_one() {
                break;
            }
        }
    }
    let mut diag = d;
    diag.resize(rows.min(cols), Int::ZERO);
    SmithDecomposition {
        rows,
        cols,
        diag,
        rank: r,
        row_ops: log.rows,
        col_ops: log.cols,
        rows_tracked: log.track_rows,
        cols_tracked: log.track_cols,
    }
}

/// Orders candidate pivots: smallest magnitude, then Markowitz fill-in
/// estimate, then lowest row and column index.
fn better(cand: (&Int, usize, usize, usize), best: &Option<(Int, usize, usize, usize)>) -> bool {
    match best {
        None => true,
        Some((bv, bc, br, bcol)) => match cand.0.cmp_abs(bv) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => (cand.1, cand.2, cand.3) < (*bc, *br, *bcol),
        },
    }
}

/// Nearest-integer quotient `q` of `x / p`, so that `|x - q p| <= |p| / 2`.
fn nearest_quotient(x: &Int, p: &Int) -> Int {
    let q = x.div_floor(p);
    let r = x - &(&q * p);
    let twice = &r + &r;
    if twice.cmp_abs(p) == std::cmp::Ordering::Greater {
        &q + &Int::ONE
    } else {
        q
    }
}

// Both eliminators clear a pivot's column and row by subtracting
// nearest-integer multiples. A nonzero remainder is smaller than the pivot in
// magnitude, so re-selecting the globally smallest entry terminates; the pivot
// is only retired once its row and column are clear. Bezout combinations
// would finish a pivot in one pass but multiply whole rows by the pivot size,
// which makes entries grow exponentially on dense input.

mod dense {
    use super::*;

    pub(super) fn eliminate(m: &IntMatrix, log: &mut OpLog) -> Vec<Pivot> {
        let (rows, cols) = (m.nrows(), m.ncols());
        let mut a = m.to_dense();
        let mut row_nz: Vec<usize> = (0..rows).map(|i| m.row_len(i)).collect();
        let mut col_nz = vec![0usize; cols];
        for (_, j, _) in m.triplets() {
            col_nz[j] += 1;
        }
        let mut row_active = vec![true; rows];
        let mut col_active = vec![true; cols];
        let mut active_rows: Vec<usize> = (0..rows).collect();
        let mut pivots = Vec::new();

        loop {
            active_rows.retain(|&i| row_active[i] && row_nz[i] > 0);
            let mut best: Option<(Int, usize, usize, usize)> = None;
            'search: for &i in &active_rows {
                for j in 0..cols {
                    let v = &a[i][j];
                    if v.is_zero() || !col_active[j] {
                        continue;
                    }
                    let cost = (row_nz[i] - 1) * (col_nz[j] - 1);
                    if better((v, cost, i, j), &best) {
                        best = Some((v.abs(), cost, i, j));
                        if v.is_unit() && cost == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((_, _, p, c)) = best else { break };
            let piv = a[p][c].clone();

            let mut remainder = false;
            for j in 0..rows {
                if j == p || !row_active[j] || a[j][c].is_zero() {
                    continue;
                }
                let f = -nearest_quotient(&a[j][c], &piv);
                row_add(&mut a, &mut row_nz, &mut col_nz, &col_active, p, j, &f);
                log.row(ElemOp::Add { src: p, dst: j, c: f });
                remainder |= !a[j][c].is_zero();
            }
            if remainder {
                continue;
            }
            for k in 0..cols {
                if k == c || !col_active[k] || a[p][k].is_zero() {
                    continue;
                }
                // Column c is zero outside row p, so only a[p][k] changes.
                let f = -nearest_quotient(&a[p][k], &piv);
                let v = &a[p][k] + &(&f * &piv);
                set(&mut a, &mut row_nz, &mut col_nz, p, k, v);
                log.col(ElemOp::Add { src: c, dst: k, c: f });
                remainder |= !a[p][k].is_zero();
            }
            if remainder {
                continue;
            }
            row_active[p] = false;
            col_active[c] = false;
            pivots.push(Pivot { row: p, col: c, value: piv });
        }
        pivots
    }

    fn set(a: &mut [Vec<Int>], row_nz: &mut [usize], col_nz: &mut [usize], i: usize, j: usize, v: Int) {
        let was = !a[i][j].is_zero();
        let now = !v.is_zero();
        if was != now {
            if now {
                row_nz[i] += 1;
                col_nz[j] += 1;
            } else {
                row_nz[i] -= 1;
                col_nz[j] -= 1;
            }
        }
        a[i][j] = v;
    }

    fn row_add(
        a: &mut [Vec<Int>],
        row_nz: &mut [usize],
        col_nz: &mut [usize],
        col_active: &[bool],
        src: usize,
        dst: usize,
        f: &Int,
    ) {
        if f.is_zero() {
            return;
        }
        for k in 0..col_active.len() {
            if !col_active[k] || a[src][k].is_zero() {
                continue;
            }
            let v = &a[dst][k] + &(f * &a[src][k]);
            set(a, row_nz, col_nz, dst, k, v);
        }
    }
}

mod sparse {
    use super::*;

    type Row = Vec<(usize, Int)>;

    struct Work {
        rows: Vec<Row>,
        /// Rows that may hold an entry in each column; may contain stale rows.
        col_rows: Vec<Vec<usize>>,
        col_nz: Vec<usize>,
        row_active: Vec<bool>,
    }

    impl Work {
        fn entry(&self, i: usize, j: usize) -> Option<&Int> {
            let r = &self.rows[i];
            r.binary_search_by_key(&j, |e| e.0).ok().map(|k| &r[k].1)
        }

        /// Live active rows with a nonzero in column `j`, deduplicated.
        fn rows_in_col(&mut self, j: usize) -> Vec<usize> {
            let mut list = std::mem::take(&mut self.col_rows[j]);
            list.sort_unstable();
            list.dedup();
            list.retain(|&i| self.entry(i, j).is_some());
            self.col_rows[j] = list.clone();
            list.retain(|&i| self.row_active[i]);
            list
        }

        /// `rows[dst] + f * rows[src]`
        fn axpy(&self, src: usize, dst: usize, f: &Int) -> Row {
            let (rs, rd) = (&self.rows[src], &self.rows[dst]);
            let mut out = Vec::with_capacity(rs.len() + rd.len());
            let (mut p, mut q) = (0, 0);
            while p < rs.len() || q < rd.len() {
                let cs = rs.get(p).map_or(usize::MAX, |e| e.0);
                let cd = rd.get(q).map_or(usize::MAX, |e| e.0);
                let (col, v) = if cs < cd {
                    p += 1;
                    (cs, f * &rs[p - 1].1)
                } else if cd < cs {
                    q += 1;
                    (cd, rd[q - 1].1.clone())
                } else {
                    p += 1;
                    q += 1;
                    (cs, &rd[q - 1].1 + &(f * &rs[p - 1].1))
                };
                if !v.is_zero() {
                    out.push((col, v));
                }
            }
            out
        }

        fn replace_row(&mut self, i: usize, new: Row) {
            for (c, _) in &self.rows[i] {
                self.col_nz[*c] -= 1;
            }
            for (c, _) in &new {
                self.col_nz[*c] += 1;
                self.col_rows[*c].push(i);
            }
            self.rows[i] = new;
        }
    }

    pub(super) fn eliminate(m: &IntMatrix, log: &mut OpLog) -> Vec<Pivot> {
        let (rows, cols) = (m.nrows(), m.ncols());
        let mut w = Work {
            rows: m.to_sparse_rows(),
            col_rows: vec![Vec::new(); cols],
            col_nz: vec![0; cols],
            row_active: vec![true; rows],
        };
        for (i, j, _) in m.triplets() {
            w.col_rows[j].push(i);
            w.col_nz[j] += 1;
        }
        let mut active: Vec<usize> = (0..rows).collect();
        let mut pivots = Vec::new();

        loop {
            active.retain(|&i| w.row_active[i] && !w.rows[i].is_empty());
            let mut best: Option<(Int, usize, usize, usize)> = None;
            'search: for &i in &active {
                let len = w.rows[i].len();
                for (j, v) in &w.rows[i] {
                    let cost = (len - 1) * (w.col_nz[*j] - 1);
                    if better((v, cost, i, *j), &best) {
                        best = Some((v.abs(), cost, i, *j));
                        if v.is_unit() && cost == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((_, _, p, c)) = best else { break };
            let piv = w.entry(p, c).cloned().expect("pivot present");

            let mut remainder = false;
            for j in w.rows_in_col(c) {
                if j == p {
                    continue;
                }
                let x = w.entry(j, c).cloned().expect("listed entry present");
                let f = -nearest_quotient(&x, &piv);
                if !f.is_zero() {
                    let new = w.axpy(p, j, &f);
                    w.replace_row(j, new);
                    log.row(ElemOp::Add { src: p, dst: j, c: f });
                }
                remainder |= w.entry(j, c).is_some();
            }
            if remainder {
                continue;
            }
            // Column c is now zero outside row p, so column operations
            // against it only touch row p.
            let mut kept = Vec::with_capacity(w.rows[p].len());
            for (k, x) in std::mem::take(&mut w.rows[p]) {
                if k == c {
                    kept.push((k, x));
                    continue;
                }
                let f = -nearest_quotient(&x, &piv);
                let r = &x + &(&f * &piv);
                if !f.is_zero() {
                    log.col(ElemOp::Add { src: c, dst: k, c: f });
                }
                if r.is_zero() {
                    w.col_nz[k] -= 1;
                } else {
                    remainder = true;
                    kept.push((k, r));
                }
            }
            w.rows[p] = kept;
            if remainder {
                continue;
            }
            w.row_active[p] = false;
            pivots.push(Pivot { row: p, col: c, value: piv });
        }
        pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::ints;

    fn check(m: &IntMatrix, strategy: SnfStrategy) -> SmithDecomposition {
        let snf = smith_normal_form_with(m, SnfOptions { strategy, ..Default::default() });
        assert_eq!(snf.u().mul(m).mul(&snf.v()), snf.d(), "UMV != D for {m:?}");
        assert_eq!(snf.u().mul(&snf.u_inv()), IntMatrix::identity(m.nrows()));
        assert_eq!(snf.v().mul(&snf.v_inv()), IntMatrix::identity(m.ncols()));
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert!(f.iter().all(|d| !d.is_negative() && !d.is_zero()));
        snf
    }

    #[test]
    fn identity_is_its_own_form() {
        for s in [SnfStrategy::Dense, SnfStrategy::Sparse] {
            let snf = check(&IntMatrix::identity(3), s);
            assert_eq!(snf.invariant_factors(), &ints(&[1, 1, 1])[..]);
        }
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        for s in [SnfStrategy::Dense, SnfStrategy::Sparse] {
            assert_eq!(check(&m, s).invariant_factors(), &ints(&[2, 4])[..]);
        }
    }

    #[test]
    fn zero_matrix_has_identity_transforms() {
        let m = IntMatrix::zeros(3, 2);
        let snf = check(&m, SnfStrategy::Auto);
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.u(), IntMatrix::identity(3));
        assert_eq!(snf.v(), IntMatrix::identity(2));
    }

    #[test]
    fn divisibility_fixup() {
        let m = IntMatrix::from_i64_rows(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        for s in [SnfStrategy::Dense, SnfStrategy::Sparse] {
            assert_eq!(check(&m, s).invariant_factors(), &ints(&[2, 2, 60])[..]);
        }
    }

    #[test]
    fn transforms_on_vectors_agree_with_materialized() {
        let m = IntMatrix::from_i64_rows(&[vec![3, 5, 7], vec![2, 9, 4], vec![6, 10, 14], vec![1, 0, -2]]);
        let snf = check(&m, SnfStrategy::Sparse);
        let x = ints(&[1, -2, 3, 4]);
        let mut y = x.clone();
        snf.u_t_mul(&mut y);
        assert_eq!(y, snf.u().transpose().mul_vec(&x));
        let z = ints(&[5, -1, 2]);
        let mut w = z.clone();
        snf.v_inv_t_mul(&mut w);
        assert_eq!(w, snf.v_inv().transpose().mul_vec(&z));
    }
}

#[cfg(test)]
mod regressions {
    use super::*;

    #[test]
    fn divisible_entry_after_column_mix() {
        let m = IntMatrix::from_i64_rows(&[vec![-5, 2, 2], vec![-2, 2, -2]]);
        for s in [SnfStrategy::Dense, SnfStrategy::Sparse] {
            let snf = smith_normal_form_with(&m, SnfOptions { strategy: s, ..Default::default() });
            assert_eq!(snf.u().mul(&m).mul(&snf.v()), snf.d());
        }
        let m = IntMatrix::from_i64_rows(&[
            vec![-2, 6, 8, -7, 3],
            vec![9, 0, 8, -2, -8],
            vec![9, -3, 9, 2, -8],
            vec![-3, 3, 9, 2, -2],
            vec![-2, 9, -4, -4, 0],
        ]);
        let f = smith_normal_form_with(&m, SnfOptions { strategy: SnfStrategy::Dense, ..Default::default() });
        assert_eq!(f.invariant_factors(), &crate::linalg::matrix::ints(&[1, 1, 1, 3, 3834])[..]);
    }
}
