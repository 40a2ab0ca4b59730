//! Finitely generated abelian groups given as subquotients of `Z^n`.

use std::sync::Arc;

use super::int::Int;
use super::matrix::{vec_is_zero, IntMatrix};
use super::smith::{smith_normal_form_with, SnfOptions};
use crate::error::{Error, Result};

/// `ker(d_out) / im(d_in)` (or a plain cokernel) in invariant-factor form.
///
/// Abstract coordinate `k` has order `orders()[k]`: torsion coordinates come
/// first with orders `d_1 | d_2 | ...`, all `> 1`, followed by free
/// coordinates of order 0. `lift` sends coordinates to ambient cycle vectors
/// and `project` reads a cycle's class off through one integer functional per
/// coordinate.
#[derive(Clone, Debug)]
pub struct AbelianGroupPresentation {
    ambient: usize,
    orders: Vec<Int>,
    lifts: Vec<Vec<Int>>,
    functionals: Vec<Vec<Int>>,
    cycles_of: Option<Arc<IntMatrix>>,
    boundaries_from: Option<Arc<IntMatrix>>,
}

/// Data for the shortcut in [`AbelianGroupPresentation::subquotient_with_homotopy`]:
/// maps `h_in: C^q -> C^{q-1}` and `h_out: C^{q+1} -> C^q` with
/// `d_in * h_in + h_out * d_out = scale * I`.
pub struct Homotopy<'a> {
    pub h_in: &'a IntMatrix,
    pub h_out: &'a IntMatrix,
    pub scale: Int,
}

impl AbelianGroupPresentation {
    /// `ker(d_out) / im(d_in)`; `d_out` is `m x n`, `d_in` is `n x p`.
    pub fn subquotient(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<Self> {
        let (d_out, d_in) = (Arc::new(d_out.clone()), Arc::new(d_in.clone()));
        Self::subquotient_shared(d_out, d_in)
    }

    pub fn subquotient_shared(d_out: Arc<IntMatrix>, d_in: Arc<IntMatrix>) -> Result<Self> {
        check_complex(&d_out, &d_in)?;
        let n = d_in.nrows();
        let outer = smith_normal_form_with(&d_out, SnfOptions { track_rows: false, ..Default::default() });
        let r0 = outer.rank();
        // Coordinates of the boundaries in the kernel basis V e_k, k >= r0.
        let mut trip = Vec::new();
        for j in 0..d_in.ncols() {
            let mut col = d_in.column(j);
            outer.v_inv_mul(&mut col);
            for (k, v) in col.into_iter().enumerate().skip(r0) {
                if !v.is_zero() {
                    trip.push((k - r0, j, v));
                }
            }
        }
        let c = IntMatrix::from_triplets(n - r0, d_in.ncols(), trip);
        let inner = smith_normal_form_with(&c, SnfOptions { track_cols: false, ..Default::default() });
        let diag = inner.diagonal();
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut functionals = Vec::new();
        for k in 0..n - r0 {
            let order = if k < inner.rank() { diag[k].clone() } else { Int::ZERO };
            if order.is_one() {
                continue;
            }
            let mut e = vec![Int::ZERO; n - r0];
            e[k] = Int::ONE;
            let mut g = e.clone();
            inner.u_inv_mul(&mut g);
            let mut lift = vec![Int::ZERO; r0];
            lift.extend(g);
            outer.v_mul(&mut lift);
            let mut row = e;
            inner.u_t_mul(&mut row);
            let mut phi = vec![Int::ZERO; r0];
            phi.extend(row);
            outer.v_inv_t_mul(&mut phi);
            orders.push(order);
            lifts.push(lift);
            functionals.push(phi);
        }
        Ok(AbelianGroupPresentation {
            ambient: n,
            orders,
            lifts,
            functionals,
            cycles_of: Some(d_out),
            boundaries_from: Some(d_in),
        })
    }

    /// Same group as [`subquotient`](Self::subquotient), computed from the SNF of
    /// `d_in` alone once the homotopy identity has been verified. The identity
    /// forces every cycle to have a multiple in `im(d_in)`, so the group is the
    /// torsion of `coker(d_in)`. Returns `Ok(None)` if the identity fails.
    pub fn subquotient_with_homotopy(
        d_out: Arc<IntMatrix>,
        d_in: Arc<IntMatrix>,
        homotopy: &Homotopy<'_>,
    ) -> Result<Option<Self>> {
        check_complex(&d_out, &d_in)?;
        let n = d_in.nrows();
        let lhs = d_in.mul(homotopy.h_in).add(&homotopy.h_out.mul(&d_out));
        if lhs != IntMatrix::scalar(n, &homotopy.scale) {
            return Ok(None);
        }
        let mut pres = Self::cokernel(&d_in, true);
        pres.cycles_of = Some(d_out);
        pres.boundaries_from = Some(d_in);
        Ok(Some(pres))
    }

    /// `Z^n / span(columns of m)`, or only its torsion subgroup.
    pub fn cokernel(m: &IntMatrix, torsion_only: bool) -> Self {
        let n = m.nrows();
        let snf = smith_normal_form_with(m, SnfOptions { track_cols: false, ..Default::default() });
        let diag = snf.diagonal();
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut functionals = Vec::new();
        for k in 0..n {
            let order = if k < snf.rank() { diag[k].clone() } else { Int::ZERO };
            if order.is_one() || (torsion_only && order.is_zero()) {
                continue;
            }
            let mut e = vec![Int::ZERO; n];
            e[k] = Int::ONE;
            let mut g = e.clone();
            snf.u_inv_mul(&mut g);
            snf.u_t_mul(&mut e);
            orders.push(order);
            lifts.push(g);
            functionals.push(e);
        }
        AbelianGroupPresentation { ambient: n, orders, lifts, functionals, cycles_of: None, boundaries_from: None }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Orders of the abstract coordinates; 0 marks a free coordinate.
    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        self.orders.iter().filter(|o| !o.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_zero()).count()
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Group order, or `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.orders.iter().fold(Int::ONE, |acc, o| acc * o))
    }

    /// Lifted cycle representing abstract generator `k`.
    pub fn generator(&self, k: usize) -> &[Int] {
        &self.lifts[k]
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.lifts
    }

    pub fn functional(&self, k: usize) -> &[Int] {
        &self.functionals[k]
    }

    /// Reduces abstract coordinates into their canonical ranges.
    pub fn reduce(&self, coords: &[Int]) -> Vec<Int> {
        coords
            .iter()
            .zip(&self.orders)
            .map(|(c, o)| if o.is_zero() { c.clone() } else { c.rem_euclid(o) })
            .collect()
    }

    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.orders.len());
        let mut out = vec![Int::ZERO; self.ambient];
        for (c, g) in coords.iter().zip(&self.lifts) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    /// Class of a cycle in abstract coordinates. The input is not checked to
    /// be a cycle; see [`is_cycle`](Self::is_cycle).
    pub fn project(&self, z: &[Int]) -> Vec<Int> {
        assert_eq!(z.len(), self.ambient);
        let raw: Vec<Int> = self.functionals.iter().map(|phi| dot(phi, z)).collect();
        self.reduce(&raw)
    }

    pub fn is_cycle(&self, z: &[Int]) -> bool {
        match &self.cycles_of {
            Some(d) => vec_is_zero(&d.mul_vec(z)),
            None => true,
        }
    }

    /// A cycle is a boundary iff its class vanishes.
    pub fn is_boundary(&self, z: &[Int]) -> bool {
        self.is_cycle(z) && vec_is_zero(&self.project(z))
    }

    pub fn cycles_of(&self) -> Option<&IntMatrix> {
        self.cycles_of.as_deref()
    }

    pub fn boundaries_from(&self) -> Option<&IntMatrix> {
        self.boundaries_from.as_deref()
    }
}

pub(crate) fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut s = Int::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

fn check_complex(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<()> {
    if d_out.ncols() != d_in.nrows() {
        return Err(Error::InvalidInput(format!(
            "differentials do not compose: {}x{} after {}x{}",
            d_out.nrows(),
            d_out.ncols(),
            d_in.nrows(),
            d_in.ncols()
        )));
    }
    let prod = d_out.mul(d_in);
    if let Some((_, column, _)) = prod.triplets().min_by_key(|t| (t.1, t.0)) {
        return Err(Error::NotAComplex { column });
    }
    Ok(())
}

/// Matrix of the map induced by `f` on abstract coordinates, after checking
/// that `f` sends the generating cycles of `src` to cycles of `dst` and the
/// boundaries of `src` to boundaries of `dst`.
pub fn induced_map(
    f: &IntMatrix,
    src: &AbelianGroupPresentation,
    dst: &AbelianGroupPresentation,
) -> Result<IntMatrix> {
    if f.ncols() != src.ambient_dim() || f.nrows() != dst.ambient_dim() {
        return Err(Error::InvalidInput(format!(
            "map is {}x{}, presentations live in ranks {} and {}",
            f.nrows(),
            f.ncols(),
            src.ambient_dim(),
            dst.ambient_dim()
        )));
    }
    if let Some(d_in) = src.boundaries_from() {
        for j in 0..d_in.ncols() {
            let b = f.mul_vec(&d_in.column(j));
            if !dst.is_boundary(&b) {
                return Err(Error::NotChainCompatible {
                    reason: format!("image of boundary column {j} is not a boundary"),
                    witness: b,
                });
            }
        }
    }
    let mut trip = Vec::new();
    for (j, g) in src.generators().iter().enumerate() {
        let img = f.mul_vec(g);
        if !dst.is_cycle(&img) {
            return Err(Error::NotChainCompatible {
                reason: format!("image of generator {j} is not a cycle"),
                witness: img,
            });
        }
        for (k, v) in dst.project(&img).into_iter().enumerate() {
            trip.push((k, j, v));
        }
    }
    Ok(IntMatrix::from_triplets(dst.num_generators(), src.num_generators(), trip))
}
