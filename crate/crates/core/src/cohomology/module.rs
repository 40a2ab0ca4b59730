//! G-modules of finite Z-rank with explicit action matrices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, QuotientGroup, Subgroup};
use crate::linalg::{smith_normal_form, AbelianGroupPresentation, Int, IntMatrix};

/// A left `G`-module `Z^rank`; `action(g)` is the matrix of `g`.
#[derive(Clone)]
pub struct GModule {
    group: FiniteGroup,
    rank: usize,
    action: Arc<Vec<IntMatrix>>,
    trivial: bool,
    label: String,
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule({}, rank {})", self.label, self.rank)
    }
}

impl GModule {
    /// Z with trivial action.
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::trivial_of_rank(g, 1)
    }

    pub fn trivial_of_rank(g: &FiniteGroup, rank: usize) -> Self {
        GModule {
            group: g.clone(),
            rank,
            action: Arc::new(vec![IntMatrix::identity(rank); g.order()]),
            trivial: true,
            label: if rank == 1 { "Z".into() } else { format!("Z^{rank}") },
        }
    }

    /// Checks that `action` is a homomorphism into `GL(rank, Z)`.
    pub fn new(g: &FiniteGroup, action: Vec<IntMatrix>, label: impl Into<String>) -> Result<Self> {
        if action.len() != g.order() {
            return Err(Error::InvalidInput(format!("{} action matrices for a group of order {}", action.len(), g.order())));
        }
        let rank = action.first().map_or(0, IntMatrix::nrows);
        if action.iter().any(|m| m.nrows() != rank || m.ncols() != rank) {
            return Err(Error::InvalidInput("action matrices must be square of equal size".into()));
        }
        if action[g.identity()] != IntMatrix::identity(rank) {
            return Err(Error::InvalidInput("identity must act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if action[a].mul(&action[b]) != action[g.mul(a, b)] {
                    return Err(Error::InvalidInput(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        let trivial = action.iter().all(|m| *m == IntMatrix::identity(rank));
        Ok(GModule { group: g.clone(), rank, action: Arc::new(action), trivial, label: label.into() })
    }

    /// The permutation module `Z[G/K]` on left cosets `xK`, basis ordered
    /// by coset representative.
    pub fn permutation(k: &Subgroup) -> Self {
        let g = k.parent();
        let reps = k.left_coset_reps();
        let coset = coset_index(k, &reps);
        let m = reps.len();
        let action = g
            .elements()
            .map(|s| IntMatrix::from_triplets(m, m, (0..m).map(|c| (coset[g.mul(s, reps[c])], c, Int::ONE)).collect::<Vec<_>>()))
            .collect();
        GModule {
            group: g.clone(),
            rank: m,
            action: Arc::new(action),
            trivial: m == 1,
            label: format!("Z[G/K] (|K| = {})", k.order()),
        }
    }

    pub fn regular(g: &FiniteGroup) -> Self {
        Self::permutation(&Subgroup::trivial(g))
    }

    /// Kernel of the augmentation `Z[G/K] -> Z`, with basis `e_c - e_0`.
    pub fn augmentation_ideal(k: &Subgroup) -> Self {
        let g = k.parent();
        let reps = k.left_coset_reps();
        let coset = coset_index(k, &reps);
        let m = reps.len();
        let action = g
            .elements()
            .map(|s| {
                let base = coset[g.mul(s, reps[0])];
                let mut trip = Vec::new();
                for c in 1..m {
                    let img = coset[g.mul(s, reps[c])];
                    if img != 0 {
                        trip.push((img - 1, c - 1, Int::ONE));
                    }
                    if base != 0 {
                        trip.push((base - 1, c - 1, Int::from(-1)));
                    }
                }
                IntMatrix::from_triplets(m - 1, m - 1, trip)
            })
            .collect();
        GModule {
            group: g.clone(),
            rank: m - 1,
            action: Arc::new(action),
            trivial: m <= 2 && g.elements().all(|s| coset[g.mul(s, reps[0])] == 0),
            label: format!("I_(G/K) (|K| = {})", k.order()),
        }
    }

    /// The module restricted along `phi: H -> G`.
    pub fn pullback(&self, phi: &GroupHom) -> Self {
        assert!(*phi.dst() == self.group);
        GModule {
            group: phi.src().clone(),
            rank: self.rank,
            action: Arc::new(phi.src().elements().map(|h| self.action[phi.apply(h)].clone()).collect()),
            trivial: self.trivial,
            label: self.label.clone(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn is_trivial_action(&self) -> bool {
        self.trivial
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

fn coset_index(k: &Subgroup, reps: &[usize]) -> Vec<usize> {
    let g = k.parent();
    let mut idx = vec![0; g.order()];
    for (c, &r) in reps.iter().enumerate() {
        for &h in k.elements() {
            idx[g.mul(r, h)] = c;
        }
    }
    idx
}

/// An equivariant map `src -> dst` given by a `dst.rank x src.rank` matrix.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub src: GModule,
    pub dst: GModule,
    pub matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(src: &GModule, dst: &GModule, matrix: IntMatrix) -> Result<Self> {
        if src.group() != dst.group() {
            return Err(Error::InvalidInput("module map between different groups".into()));
        }
        if matrix.nrows() != dst.rank() || matrix.ncols() != src.rank() {
            return Err(Error::InvalidInput("module map has wrong shape".into()));
        }
        for g in src.group().elements() {
            if matrix.mul(src.action(g)) != dst.action(g).mul(&matrix) {
                return Err(Error::InvalidInput(format!("module map is not equivariant at {g}")));
            }
        }
        Ok(ModuleMap { src: src.clone(), dst: dst.clone(), matrix })
    }

    /// `Z[G/K] -> Z`, summing coordinates.
    pub fn augmentation(k: &Subgroup) -> Self {
        let src = GModule::permutation(k);
        let dst = GModule::trivial(k.parent());
        let m = src.rank();
        let matrix = IntMatrix::from_triplets(1, m, (0..m).map(|c| (0, c, Int::ONE)).collect::<Vec<_>>());
        ModuleMap::new(&src, &dst, matrix).expect("augmentation is equivariant")
    }

    /// `I_(G/K) -> Z[G/K]`
    pub fn augmentation_inclusion(k: &Subgroup) -> Self {
        let src = GModule::augmentation_ideal(k);
        let dst = GModule::permutation(k);
        let m = dst.rank();
        let mut trip = Vec::new();
        for c in 1..m {
            trip.push((c, c - 1, Int::ONE));
            trip.push((0, c - 1, Int::from(-1)));
        }
        ModuleMap::new(&src, &dst, IntMatrix::from_triplets(m, m - 1, trip)).expect("inclusion is equivariant")
    }
}

/// `A^H` as a module for `Q = G/H`, where `H = ker(pi)`.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub module: GModule,
    /// `rank(A) x rank(A^H)`, columns a basis of the fixed lattice.
    pub inclusion: IntMatrix,
    /// Left inverse of `inclusion`.
    pub retraction: IntMatrix,
}

/// Kernel basis (saturated) and a left inverse of it.
fn kernel_with_retraction(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = m.ncols();
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let v = snf.v();
    let v_inv = snf.v_inv();
    let inc = IntMatrix::from_triplets(n, n - r, v.triplets().filter(|t| t.1 >= r).map(|(i, j, x)| (i, j - r, x.clone())).collect::<Vec<_>>());
    let ret = IntMatrix::from_triplets(n - r, n, v_inv.triplets().filter(|t| t.0 >= r).map(|(i, j, x)| (i - r, j, x.clone())).collect::<Vec<_>>());
    (inc, ret)
}

pub fn fixed_points_along(a: &GModule, pi: &GroupHom) -> Result<FixedPoints> {
    if pi.src() != a.group() || !pi.is_surjective() {
        return Err(Error::InvalidInput("fixed points need a surjection from the module's group".into()));
    }
    let kernel = pi.kernel();
    let n = a.rank();
    let (inclusion, retraction) = if a.is_trivial_action() {
        (IntMatrix::identity(n), IntMatrix::identity(n))
    } else {
        let blocks: Vec<IntMatrix> = kernel.elements().iter().map(|&h| a.action(h).sub(&IntMatrix::identity(n))).collect();
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        kernel_with_retraction(&IntMatrix::vstack(&refs))
    };
    let q = pi.dst();
    let mut lift = vec![usize::MAX; q.order()];
    for g in pi.src().elements().rev() {
        lift[pi.apply(g)] = g;
    }
    let action = q.elements().map(|x| retraction.mul(a.action(lift[x])).mul(&inclusion)).collect();
    let module = GModule::new(q, action, format!("({})^H", a.label()))?;
    Ok(FixedPoints { module, inclusion, retraction })
}

/// `A^H` for a normal subgroup `H`, acted on by `G/H`.
pub fn fixed_points(a: &GModule, h: &Subgroup) -> Result<(QuotientGroup, FixedPoints)> {
    let q = QuotientGroup::new(h)?;
    let fp = fixed_points_along(a, &q.projection())?;
    Ok((q, fp))
}

/// `A_H = A / I_H A` as a module for `Q = G/H`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub module: GModule,
    /// `rank(A_H) x rank(A)`
    pub projection: IntMatrix,
    /// `rank(A) x rank(A_H)`, a right inverse of `projection`.
    pub section: IntMatrix,
}

pub fn coinvariants_along(a: &GModule, pi: &GroupHom) -> Result<Coinvariants> {
    if pi.src() != a.group() || !pi.is_surjective() {
        return Err(Error::InvalidInput("coinvariants need a surjection from the module's group".into()));
    }
    let n = a.rank();
    let (projection, section) = if a.is_trivial_action() {
        (IntMatrix::identity(n), IntMatrix::identity(n))
    } else {
        let kernel = pi.kernel();
        let blocks: Vec<IntMatrix> = kernel.elements().iter().map(|&h| a.action(h).sub(&IntMatrix::identity(n))).collect();
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        let span = IntMatrix::hstack(&refs);
        let pres = AbelianGroupPresentation::cokernel(&span, false);
        if !pres.invariant_factors().is_empty() {
            return Err(Error::UnsupportedModule(format!(
                "coinvariants of {} have torsion {:?}",
                a.label(),
                pres.invariant_factors()
            )));
        }
        let m = pres.num_generators();
        let p = IntMatrix::from_triplets(
            m,
            n,
            (0..m).flat_map(|k| pres.functional(k).iter().enumerate().map(move |(j, x)| (k, j, x.clone()))).collect::<Vec<_>>(),
        );
        let s = IntMatrix::from_triplets(
            n,
            m,
            (0..m).flat_map(|k| pres.generator(k).iter().enumerate().map(move |(i, x)| (i, k, x.clone()))).collect::<Vec<_>>(),
        );
        (p, s)
    };
    let q = pi.dst();
    let mut lift = vec![usize::MAX; q.order()];
    for g in pi.src().elements().rev() {
        lift[pi.apply(g)] = g;
    }
    let action = q.elements().map(|x| projection.mul(a.action(lift[x])).mul(&section)).collect();
    let module = GModule::new(q, action, format!("({})_H", a.label()))?;
    Ok(Coinvariants { module, projection, section })
}

pub fn coinvariants(a: &GModule, h: &Subgroup) -> Result<(QuotientGroup, Coinvariants)> {
    let q = QuotientGroup::new(h)?;
    let c = coinvariants_along(a, &q.projection())?;
    Ok((q, c))
}

/// `0 -> A -> B -> C -> 0`, with a Z-linear section of `p` and retraction of `i`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub i: ModuleMap,
    pub p: ModuleMap,
    /// `rank(B) x rank(C)`, `p * section = I`.
    pub section: IntMatrix,
    /// `rank(A) x rank(B)`, `retraction * i = I`.
    pub retraction: IntMatrix,
}

impl ShortExactSequence {
    pub fn new(i: ModuleMap, p: ModuleMap) -> Result<Self> {
        if i.dst.rank() != p.src.rank() || i.dst.group() != p.src.group() {
            return Err(Error::InvalidInput("maps do not compose".into()));
        }
        if !p.matrix.mul(&i.matrix).is_zero() {
            return Err(Error::InvalidInput("p * i is nonzero".into()));
        }
        if i.src.rank() + p.dst.rank() != i.dst.rank() {
            return Err(Error::InvalidInput("ranks do not add up".into()));
        }
        let retraction = unimodular_inverse_side(&i.matrix, true)
            .ok_or_else(|| Error::InvalidInput("i is not a split injection over Z".into()))?;
        let section = unimodular_inverse_side(&p.matrix, false)
            .ok_or_else(|| Error::InvalidInput("p is not surjective over Z".into()))?;
        Ok(ShortExactSequence { i, p, section, retraction })
    }

    /// `0 -> I_(G/K) -> Z[G/K] -> Z -> 0`
    pub fn augmentation(k: &Subgroup) -> Self {
        Self::new(ModuleMap::augmentation_inclusion(k), ModuleMap::augmentation(k)).expect("augmentation sequence is exact")
    }

    /// `0 -> A -> A + C -> C -> 0`
    pub fn split(a: &GModule, c: &GModule) -> Result<Self> {
        let g = a.group();
        let (ra, rc) = (a.rank(), c.rank());
        let action = g
            .elements()
            .map(|s| {
                let mut trip: Vec<(usize, usize, Int)> = a.action(s).triplets().map(|(i, j, x)| (i, j, x.clone())).collect();
                trip.extend(c.action(s).triplets().map(|(i, j, x)| (ra + i, ra + j, x.clone())));
                IntMatrix::from_triplets(ra + rc, ra + rc, trip)
            })
            .collect();
        let b = GModule::new(g, action, format!("{} + {}", a.label(), c.label()))?;
        let i = IntMatrix::from_triplets(ra + rc, ra, (0..ra).map(|k| (k, k, Int::ONE)).collect::<Vec<_>>());
        let p = IntMatrix::from_triplets(rc, ra + rc, (0..rc).map(|k| (k, ra + k, Int::ONE)).collect::<Vec<_>>());
        Self::new(ModuleMap::new(a, &b, i)?, ModuleMap::new(&b, c, p)?)
    }

    pub fn a(&self) -> &GModule {
        &self.i.src
    }

    pub fn b(&self) -> &GModule {
        &self.i.dst
    }

    pub fn c(&self) -> &GModule {
        &self.p.dst
    }

    /// The sequence of fixed points `0 -> A^H -> B^H -> C^H -> 0` over
    /// `Q = G/ker(pi)`, if it is exact.
    pub fn fixed_along(&self, pi: &GroupHom) -> Result<(ShortExactSequence, [FixedPoints; 3])> {
        let fa = fixed_points_along(self.a(), pi)?;
        let fb = fixed_points_along(self.b(), pi)?;
        let fc = fixed_points_along(self.c(), pi)?;
        let ih = fb.retraction.mul(&self.i.matrix).mul(&fa.inclusion);
        let ph = fc.retraction.mul(&self.p.matrix).mul(&fb.inclusion);
        let cok = AbelianGroupPresentation::cokernel(&ph, false);
        if !cok.is_trivial() {
            return Err(Error::FixedSequenceNotExact {
                reason: format!("B^H -> C^H has cokernel with orders {:?}", cok.orders()),
                witness: cok.generator(0).to_vec(),
            });
        }
        if fa.module.rank() + fc.module.rank() != fb.module.rank() {
            return Err(Error::FixedSequenceNotExact { reason: "fixed ranks do not add up".into(), witness: vec![] });
        }
        let i = ModuleMap::new(&fa.module, &fb.module, ih)?;
        let p = ModuleMap::new(&fb.module, &fc.module, ph)?;
        let ses = ShortExactSequence::new(i, p).map_err(|e| Error::FixedSequenceNotExact { reason: e.to_string(), witness: vec![] })?;
        Ok((ses, [fa, fb, fc]))
    }
}

/// For `m` with all invariant factors 1: a left inverse (`left = true`,
/// needs `m` injective) or a right inverse (needs `m` surjective).
fn unimodular_inverse_side(m: &IntMatrix, left: bool) -> Option<IntMatrix> {
    let snf = smith_normal_form(m);
    let full = if left { m.ncols() } else { m.nrows() };
    if snf.rank() != full || !snf.invariant_factors().iter().all(Int::is_one) {
        return None;
    }
    // m = U^{-1} D V^{-1} with D = [I 0] or [I; 0]
    let (u, v) = (snf.u(), snf.v());
    let r = snf.rank();
    if left {
        let top = IntMatrix::from_triplets(r, m.nrows(), u.triplets().filter(|t| t.0 < r).map(|(i, j, x)| (i, j, x.clone())).collect::<Vec<_>>());
        Some(v.mul(&top))
    } else {
        let left_cols = IntMatrix::from_triplets(m.ncols(), r, v.triplets().filter(|t| t.1 < r).map(|(i, j, x)| (i, j, x.clone())).collect::<Vec<_>>());
        Some(left_cols.mul(&u))
    }
}
