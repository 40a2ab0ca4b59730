//! Homomorphisms between finitely generated abelian groups in
//! invariant-factor coordinates, and exact solving of `Mx = b`.

use super::int::Int;
use super::matrix::IntMatrix;
use super::presentation::AbelianGroupPresentation;
use super::smith::{smith_normal_form, smith_normal_form_with, SnfOptions};

/// Outcome of [`solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved(Vec<Int>),
    /// `y * M` is divisible by `modulus` entrywise (zero if `modulus` is 0)
    /// while `y * b` is not.
    Unsolvable { y: Vec<Int>, modulus: Int },
}

impl Solution {
    pub fn is_solved(&self) -> bool {
        matches!(self, Solution::Solved(_))
    }
}

/// Solves `m x = b` over the integers.
pub fn solve(m: &IntMatrix, b: &[Int]) -> Solution {
    assert_eq!(m.nrows(), b.len());
    let snf = smith_normal_form(m);
    let mut y = b.to_vec();
    snf.u_mul(&mut y);
    let diag = snf.diagonal();
    let mut w = vec![Int::ZERO; m.ncols()];
    for (k, yk) in y.iter().enumerate() {
        let d = if k < snf.rank() { &diag[k] } else { &Int::ZERO };
        let ok = if d.is_zero() { yk.is_zero() } else { d.divides(yk) };
        if !ok {
            let mut row = vec![Int::ZERO; m.nrows()];
            row[k] = Int::ONE;
            snf.u_t_mul(&mut row);
            return Solution::Unsolvable { y: row, modulus: d.clone() };
        }
        if !d.is_zero() {
            w[k] = yk.div_exact(d);
        }
    }
    snf.v_mul(&mut w);
    Solution::Solved(w)
}

/// Homomorphism `x -> M x` from `Z/a_1 + ... + Z/a_n` to `Z/b_1 + ... + Z/b_m`.
/// An order of 0 denotes a copy of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    pub src: Vec<Int>,
    pub dst: Vec<Int>,
    pub matrix: IntMatrix,
}

impl AbelianHom {
    pub fn new(src: Vec<Int>, dst: Vec<Int>, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.nrows(), dst.len());
        assert_eq!(matrix.ncols(), src.len());
        AbelianHom { src, dst, matrix }
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        reduce(&self.matrix.mul_vec(x), &self.dst)
    }

    /// Checks that the matrix respects the source relations.
    pub fn is_well_defined(&self) -> bool {
        (0..self.src.len()).all(|j| {
            let mut e = vec![Int::ZERO; self.src.len()];
            e[j] = self.src[j].clone();
            self.apply(&e).iter().all(Int::is_zero)
        })
    }

    /// `[M | diag(b)]`, whose column span is the preimage of the image.
    fn image_lattice(&self) -> IntMatrix {
        let diag = IntMatrix::diagonal(&self.dst);
        IntMatrix::hstack(&[&self.matrix, &diag])
    }

    /// Invariants of the cokernel (0 for free summands, 1s dropped).
    pub fn cokernel(&self) -> Vec<Int> {
        AbelianGroupPresentation::cokernel(&self.image_lattice(), false).orders().to_vec()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_empty()
    }

    /// Kernel invariants together with generators in source coordinates.
    /// Requires a finite source.
    pub fn kernel(&self) -> (Vec<Int>, Vec<Vec<Int>>) {
        assert!(self.src.iter().all(|a| !a.is_zero()), "kernel needs a finite source");
        let n = self.src.len();
        if n == 0 {
            return (Vec::new(), Vec::new());
        }
        // Lambda = {x : M x in diag(b) Z^m}, the kernel of [M | diag(b)] projected to x.
        let k = self.image_lattice();
        let snf = smith_normal_form_with(&k, SnfOptions { track_rows: false, ..Default::default() });
        let mut spans = Vec::new();
        for c in snf.rank()..k.ncols() {
            let mut e = vec![Int::ZERO; k.ncols()];
            e[c] = Int::ONE;
            snf.v_mul(&mut e);
            e.truncate(n);
            spans.push(e);
        }
        let l = IntMatrix::from_triplets(
            n,
            spans.len(),
            spans
                .iter()
                .enumerate()
                .flat_map(|(j, v)| v.iter().enumerate().map(move |(i, x)| (i, j, x.clone())))
                .collect::<Vec<_>>(),
        );
        // Basis of Lambda: B = U^{-1} D restricted to the first n columns.
        let lsnf = smith_normal_form_with(&l, SnfOptions { track_cols: false, ..Default::default() });
        assert_eq!(lsnf.rank(), n, "kernel lattice has full rank for finite sources");
        let dl = lsnf.diagonal().to_vec();
        // Relations R = D^{-1} U diag(a), column by column.
        let mut trip = Vec::new();
        for j in 0..n {
            let mut col = vec![Int::ZERO; n];
            col[j] = self.src[j].clone();
            lsnf.u_mul(&mut col);
            for (i, v) in col.into_iter().enumerate() {
                trip.push((i, j, v.div_exact(&dl[i])));
            }
        }
        let r = IntMatrix::from_triplets(n, n, trip);
        let quot = AbelianGroupPresentation::cokernel(&r, false);
        let gens = quot
            .generators()
            .iter()
            .map(|g| {
                let mut x: Vec<Int> = g.iter().zip(&dl).map(|(c, d)| c * d).collect();
                lsnf.u_inv_mul(&mut x);
                reduce(&x, &self.src)
            })
            .collect();
        (quot.orders().to_vec(), gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_empty()
    }

    pub fn compose(&self, after: &AbelianHom) -> AbelianHom {
        assert_eq!(self.dst, after.src);
        AbelianHom::new(self.src.clone(), after.dst.clone(), after.matrix.mul(&self.matrix))
    }
}

pub fn reduce(x: &[Int], orders: &[Int]) -> Vec<Int> {
    x.iter().zip(orders).map(|(v, o)| if o.is_zero() { v.clone() } else { v.rem_euclid(o) }).collect()
}

pub fn group_order(orders: &[Int]) -> Option<Int> {
    orders.iter().try_fold(Int::ONE, |acc, o| if o.is_zero() { None } else { Some(acc * o) })
}
