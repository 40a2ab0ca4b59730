//! Equivariant cochains on the complete standard complex.
//!
//! `X_q = Z[G^{q+1}]` for `q >= 0` and `X_{-k}` is spanned by starred tuples
//! `(s_1*, ..., s_k*)`. Both carry a free diagonal action, so an equivariant
//! cochain is determined by its values on the orbit representatives
//! `(e, g_1, ..., g_q)` resp. `(e*, s_2*, ..., s_k*)`. The representative with
//! tail `(t_1, ..., t_m)` has index `sum t_j n^{m-j}`, and coordinate `a` of
//! the module at representative `r` is basis vector `r * rank(A) + a`.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{Int, IntMatrix};

use super::module::GModule;

/// `C^q = Hom_G(X_q, A)` in the orbit-representative basis.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    module: GModule,
    degree: i32,
    reps: usize,
}

impl CochainSpace {
    pub fn new(a: &GModule, degree: i32, caps: &Caps) -> Result<Self> {
        if degree.unsigned_abs() > caps.degree {
            return Err(Error::DegreeCapExceeded { degree, cap: caps.degree });
        }
        let n = a.group().order() as u128;
        let len = tail_len(degree) as u32;
        let reps = n.checked_pow(len).unwrap_or(u128::MAX);
        let rank = reps.saturating_mul(a.rank() as u128);
        if rank > caps.rank as u128 {
            return Err(Error::RankOverflow { rank, cap: caps.rank });
        }
        Ok(CochainSpace { module: a.clone(), degree, reps: reps as usize })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.module.group()
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn num_reps(&self) -> usize {
        self.reps
    }

    pub fn rank(&self) -> usize {
        self.reps * self.module.rank()
    }

    /// Length of the tail after the leading identity.
    pub fn tail_len(&self) -> usize {
        tail_len(self.degree)
    }

    pub fn tail(&self, rep: usize) -> Vec<usize> {
        decode(rep, self.tail_len(), self.group().order())
    }

    pub fn rep_index(&self, tail: &[usize]) -> usize {
        debug_assert_eq!(tail.len(), self.tail_len());
        encode(tail, self.group().order())
    }

    /// Orbit representatives as full tuples, identity first.
    pub fn orbit_reps(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let e = self.group().identity();
        (0..self.reps).map(move |r| {
            let mut t = vec![e];
            t.extend(self.tail(r));
            t
        })
    }

    /// Value of the equivariant cochain `f` on an arbitrary basis tuple
    /// `(g_0, ..., g_q)` (or `(s_1*, ..., s_k*)` in negative degree).
    pub fn evaluate(&self, f: &[Int], tuple: &[usize]) -> Vec<Int> {
        let g = self.group();
        let z = self.module.rank();
        assert_eq!(tuple.len(), self.tail_len() + 1);
        let lead = tuple[0];
        let li = g.inv(lead);
        let tail: Vec<usize> = tuple[1..].iter().map(|&x| g.mul(li, x)).collect();
        let r = self.rep_index(&tail);
        let v = &f[r * z..(r + 1) * z];
        if self.module.is_trivial_action() {
            v.to_vec()
        } else {
            self.module.action(lead).mul_vec(v)
        }
    }
}

pub(crate) fn tail_len(degree: i32) -> usize {
    if degree >= 0 {
        degree as usize
    } else {
        (-degree - 1) as usize
    }
}

pub(crate) fn encode(tail: &[usize], n: usize) -> usize {
    tail.iter().fold(0, |acc, &t| acc * n + t)
}

pub(crate) fn decode(mut idx: usize, len: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

/// Accumulates `sign * action(g)` blocks into a cochain-level matrix.
pub(crate) struct BlockBuilder<'a> {
    module: &'a GModule,
    triplets: Vec<(usize, usize, Int)>,
}

impl<'a> BlockBuilder<'a> {
    pub(crate) fn new(module: &'a GModule) -> Self {
        BlockBuilder { module, triplets: Vec::new() }
    }

    /// Adds `sign * action(g)` at block position (`row_rep`, `col_rep`).
    pub(crate) fn add(&mut self, row_rep: usize, col_rep: usize, sign: i64, g: usize) {
        let z = self.module.rank();
        if self.module.is_trivial_action() {
            for a in 0..z {
                self.triplets.push((row_rep * z + a, col_rep * z + a, Int::from(sign)));
            }
        } else {
            let s = Int::from(sign);
            for (a, b, x) in self.module.action(g).triplets() {
                self.triplets.push((row_rep * z + a, col_rep * z + b, &s * x));
            }
        }
    }

    /// Adds an arbitrary `z x z` block (used for the special differential).
    pub(crate) fn add_block(&mut self, row_rep: usize, col_rep: usize, block: &IntMatrix) {
        let z = self.module.rank();
        for (a, b, x) in block.triplets() {
            self.triplets.push((row_rep * z + a, col_rep * z + b, x.clone()));
        }
    }

    pub(crate) fn finish(self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::from_triplets(rows, cols, self.triplets)
    }
}

/// Matrix of `d: C^q -> C^{q+1}`, `(df)(x) = f(dx)`.
pub fn differential_matrix(a: &GModule, q: i32, caps: &Caps) -> Result<IntMatrix> {
    let src = CochainSpace::new(a, q, caps)?;
    let dst = CochainSpace::new(a, q + 1, caps)?;
    let g = a.group();
    let e = g.identity();
    let mut b = BlockBuilder::new(a);
    if q == -1 {
        // d(g_0) = sum_s s*
        let mut sum = IntMatrix::zeros(a.rank(), a.rank());
        for s in g.elements() {
            sum = sum.add(a.action(s));
        }
        b.add_block(0, 0, &sum);
        return Ok(b.finish(dst.rank(), src.rank()));
    }
    for r in 0..dst.num_reps() {
        let tail = dst.tail(r);
        if q >= 0 {
            // x = (e, g_1, ..., g_{q+1}); the j = 0 face is g_1 (e, g_1^-1 g_2, ...)
            let g1 = tail[0];
            let gi = g.inv(g1);
            let face: Vec<usize> = tail[1..].iter().map(|&x| g.mul(gi, x)).collect();
            b.add(r, src.rep_index(&face), 1, g1);
            for j in 1..=tail.len() {
                let mut face = tail.clone();
                face.remove(j - 1);
                b.add(r, src.rep_index(&face), if j % 2 == 0 { 1 } else { -1 }, e);
            }
        } else {
            // x = (e*, s_2*, ..., s_k*) in X_{-k}, mapped into X_{-k-1}
            let k = tail.len() + 1;
            let mut full = vec![e];
            full.extend(&tail);
            for s in g.elements() {
                // j = 1: (s*, e*, s_2*, ...) = s (e*, s^-1*, s^-1 s_2*, ...)
                let si = g.inv(s);
                let face: Vec<usize> = full.iter().map(|&x| g.mul(si, x)).collect();
                b.add(r, src.rep_index(&face), -1, s);
                for j in 2..=k + 1 {
                    let mut ins = full.clone();
                    ins.insert(j - 1, s);
                    b.add(r, src.rep_index(&ins[1..]), if j % 2 == 0 { 1 } else { -1 }, e);
                }
            }
        }
    }
    Ok(b.finish(dst.rank(), src.rank()))
}

/// Matrix of `H: C^{q+1} -> C^q`, `(Hf)(x) = f(h x)`, for the contraction
/// `h` with `dh + hd = |G|` on the complete complex.
pub fn homotopy_matrix(a: &GModule, q: i32, caps: &Caps) -> Result<IntMatrix> {
    let dst = CochainSpace::new(a, q, caps)?;
    let src = CochainSpace::new(a, q + 1, caps)?;
    let g = a.group();
    let mut b = BlockBuilder::new(a);
    for r in 0..dst.num_reps() {
        let tail = dst.tail(r);
        if q >= 0 {
            // h(e, g_1, ...) = sum_s (s, e, g_1, ...) = sum_s s (e, s^-1, s^-1 g_1, ...)
            for s in g.elements() {
                let si = g.inv(s);
                let mut t = vec![si];
                t.extend(tail.iter().map(|&x| g.mul(si, x)));
                b.add(r, src.rep_index(&t), 1, s);
            }
        } else if q == -1 {
            // h(e*) = e
            b.add(r, 0, 1, g.identity());
        } else {
            // h(e*, s_2*, ..., s_k*) = -(s_2*, ..., s_k*)
            let s2 = tail[0];
            let si = g.inv(s2);
            let t: Vec<usize> = tail[1..].iter().map(|&x| g.mul(si, x)).collect();
            b.add(r, src.rep_index(&t), -1, s2);
        }
    }
    Ok(b.finish(dst.rank(), src.rank()))
}
