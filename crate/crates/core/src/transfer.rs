//! Restriction, inflation, degree-0 corestriction, deflation, residuation and
//! connecting maps, built as cochain matrices and pushed down to cohomology.

use std::fmt;

use serde::Serialize;

use crate::cohomology::{
    coinvariants_along, cohomology_with, fixed_points_along, CochainSpace, CohomologyGroup, GModule, ModuleMap,
    ShortExactSequence,
};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{GroupHom, QuotientGroup, Subgroup};
use crate::linalg::finite::reduce;
use crate::linalg::{induced_map, AbelianHom, Int, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapKind {
    Res,
    Inf,
    Cor0,
    Def,
    Rsd,
    Connecting,
    Induced,
    Composite,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapKind::Res => "res",
            MapKind::Inf => "inf",
            MapKind::Cor0 => "cor0",
            MapKind::Def => "def",
            MapKind::Rsd => "rsd",
            MapKind::Connecting => "connecting",
            MapKind::Induced => "induced",
            MapKind::Composite => "composite",
        };
        f.write_str(s)
    }
}

/// A map of cohomology groups with its cochain-level matrix and its matrix
/// in invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyMap {
    pub kind: MapKind,
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub cochain_matrix: IntMatrix,
    pub abstract_matrix: IntMatrix,
}

impl CohomologyMap {
    /// Pushes a cochain map down to cohomology, checking that cocycles go to
    /// cocycles and coboundaries to coboundaries.
    pub fn from_cochains(kind: MapKind, source: CohomologyGroup, target: CohomologyGroup, m: IntMatrix) -> Result<Self> {
        let abstract_matrix = induced_map(&m, source.presentation(), target.presentation())?;
        Ok(CohomologyMap { kind, source, target, cochain_matrix: m, abstract_matrix })
    }

    pub fn apply(&self, coords: &[Int]) -> Vec<Int> {
        reduce(&self.abstract_matrix.mul_vec(coords), self.target.orders())
    }

    pub fn as_hom(&self) -> AbelianHom {
        AbelianHom::new(self.source.orders().to_vec(), self.target.orders().to_vec(), self.abstract_matrix.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.as_hom().is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.as_hom().is_surjective()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.num_generators()).all(|j| {
            let mut e = vec![Int::ZERO; self.source.num_generators()];
            e[j] = Int::ONE;
            self.apply(&e).iter().all(Int::is_zero)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source.orders() == self.target.orders()
            && (0..self.source.num_generators()).all(|j| {
                let mut e = vec![Int::ZERO; self.source.num_generators()];
                e[j] = Int::ONE;
                self.apply(&e) == e
            })
    }

    /// `after ∘ self`
    pub fn then(&self, after: &CohomologyMap) -> Result<CohomologyMap> {
        if self.target.orders() != after.source.orders() || self.cochain_matrix.nrows() != after.cochain_matrix.ncols() {
            return Err(Error::InvalidInput("maps do not compose".into()));
        }
        Ok(CohomologyMap {
            kind: MapKind::Composite,
            source: self.source.clone(),
            target: after.target.clone(),
            cochain_matrix: after.cochain_matrix.mul(&self.cochain_matrix),
            abstract_matrix: after.abstract_matrix.mul(&self.abstract_matrix),
        })
    }

    /// Same map on cohomology, compared generator by generator.
    pub fn agrees_with(&self, other: &CohomologyMap) -> bool {
        self.source.orders() == other.source.orders()
            && self.target.orders() == other.target.orders()
            && (0..self.source.num_generators()).all(|j| {
                let mut e = vec![Int::ZERO; self.source.num_generators()];
                e[j] = Int::ONE;
                self.apply(&e) == other.apply(&e)
            })
    }
}

struct Blocks {
    row_z: usize,
    col_z: usize,
    triplets: Vec<(usize, usize, Int)>,
}

impl Blocks {
    fn new(row_z: usize, col_z: usize) -> Self {
        Blocks { row_z, col_z, triplets: Vec::new() }
    }

    fn add(&mut self, row_rep: usize, col_rep: usize, block: &IntMatrix) {
        for (a, b, x) in block.triplets() {
            self.triplets.push((row_rep * self.row_z + a, col_rep * self.col_z + b, x.clone()));
        }
    }

    fn finish(self, rows: &CochainSpace, cols: &CochainSpace) -> IntMatrix {
        IntMatrix::from_triplets(rows.rank(), cols.rank(), self.triplets)
    }
}

/// All tuples in `choices[0] x choices[1] x ...`.
fn product_tuples(choices: &[&[usize]]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|t| {
                c.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// `Res: H^i(G, A) -> H^i(H, A)` for a subgroup `H`.
pub fn restriction(a: &GModule, h: &Subgroup, i: i32) -> Result<CohomologyMap> {
    restriction_with(a, h, i, &Caps::default())
}

pub fn restriction_with(a: &GModule, h: &Subgroup, i: i32, caps: &Caps) -> Result<CohomologyMap> {
    if h.parent() != a.group() {
        return Err(Error::InvalidSubgroup("subgroup of a different group".into()));
    }
    let (_, inc) = h.as_group();
    restriction_along(a, &inc, i, caps)
}

/// Restriction along an injective homomorphism `iota: H -> G`.
pub fn restriction_along(a: &GModule, iota: &GroupHom, i: i32, caps: &Caps) -> Result<CohomologyMap> {
    if !iota.is_injective() || iota.dst() != a.group() {
        return Err(Error::InvalidInput("restriction needs an injective map into the module's group".into()));
    }
    let g = a.group();
    let hg = iota.src();
    let b = a.pullback(iota);
    let src = cohomology_with(a, i, caps)?;
    let dst = cohomology_with(&b, i, caps)?;
    let (sg, sh) = (src.space(), dst.space());
    let z = a.rank();
    let ident = IntMatrix::identity(z);
    let mut m = Blocks::new(z, z);
    if i >= 0 {
        for r in 0..sh.num_reps() {
            let tail: Vec<usize> = sh.tail(r).into_iter().map(|x| iota.apply(x)).collect();
            m.add(r, sg.rep_index(&tail), &ident);
        }
    } else {
        // Right coset representatives: g = h r.
        let image = iota.image();
        let reps = image.right_coset_reps();
        let k = sh.tail_len() + 1;
        let slots: Vec<&[usize]> = vec![reps.as_slice(); k];
        let choices = product_tuples(&slots);
        for r in 0..sh.num_reps() {
            let mut hs = vec![hg.identity()];
            hs.extend(sh.tail(r));
            let hs: Vec<usize> = hs.into_iter().map(|x| iota.apply(x)).collect();
            for rs in &choices {
                let args: Vec<usize> = hs.iter().zip(rs).map(|(&x, &y)| g.mul(x, y)).collect();
                let lead = args[0];
                let li = g.inv(lead);
                let tail: Vec<usize> = args[1..].iter().map(|&x| g.mul(li, x)).collect();
                m.add(r, sg.rep_index(&tail), a.action(lead));
            }
        }
    }
    let cm = m.finish(sh, sg);
    CohomologyMap::from_cochains(MapKind::Res, src, dst, cm)
}

/// `Inf: H^i(G/H, A^H) -> H^i(G, A)` for `i >= 1`.
pub fn inflation(a: &GModule, h: &Subgroup, i: i32) -> Result<CohomologyMap> {
    let q = QuotientGroup::new(h)?;
    inflation_along(a, &q.projection(), i, &Caps::default())
}

/// Inflation along a surjection `pi: G -> Q`, with `H = ker(pi)`.
pub fn inflation_along(a: &GModule, pi: &GroupHom, i: i32, caps: &Caps) -> Result<CohomologyMap> {
    if i <= 0 {
        return Err(Error::DegreeOutOfRange { operation: "inflation", degree: i });
    }
    let fp = fixed_points_along(a, pi)?;
    let src = cohomology_with(&fp.module, i, caps)?;
    let dst = cohomology_with(a, i, caps)?;
    let (sq, sg) = (src.space(), dst.space());
    let mut m = Blocks::new(a.rank(), fp.module.rank());
    for r in 0..sg.num_reps() {
        let tail: Vec<usize> = sg.tail(r).into_iter().map(|x| pi.apply(x)).collect();
        m.add(r, sq.rep_index(&tail), &fp.inclusion);
    }
    let cm = m.finish(sg, sq);
    CohomologyMap::from_cochains(MapKind::Inf, src, dst, cm)
}

/// `Cor: H^0(H, Z) -> H^0(G, Z)`, multiplication by `[G : H]`.
pub fn corestriction_deg0(h: &Subgroup) -> Result<CohomologyMap> {
    let g = h.parent();
    let (hg, _) = h.as_group();
    let src = cohomology_with(&GModule::trivial(&hg), 0, &Caps::default())?;
    let dst = cohomology_with(&GModule::trivial(g), 0, &Caps::default())?;
    let cm = IntMatrix::scalar(1, &Int::from(h.index()));
    CohomologyMap::from_cochains(MapKind::Cor0, src, dst, cm)
}

/// `Def: H^i(G, A) -> H^i(G/H, A^H)` for `i <= 0`.
pub fn deflation(a: &GModule, h: &Subgroup, i: i32) -> Result<CohomologyMap> {
    let q = QuotientGroup::new(h)?;
    deflation_along(a, &q.projection(), i, &Caps::default())
}

pub fn deflation_along(a: &GModule, pi: &GroupHom, i: i32, caps: &Caps) -> Result<CohomologyMap> {
    if i > 0 {
        return Err(Error::DegreeOutOfRange { operation: "deflation", degree: i });
    }
    let fp = fixed_points_along(a, pi)?;
    let src = cohomology_with(a, i, caps)?;
    let dst = cohomology_with(&fp.module, i, caps)?;
    let (sg, sq) = (src.space(), dst.space());
    let cm = if i == 0 {
        // f(e) in A^G, read in A^H coordinates
        fp.retraction.clone()
    } else {
        let g = a.group();
        let fibers = fibers(pi);
        let blocks: Vec<IntMatrix> = g.elements().map(|x| fp.retraction.mul(a.action(x))).collect();
        let mut m = Blocks::new(fp.module.rank(), a.rank());
        for r in 0..sq.num_reps() {
            let mut alphas = vec![pi.dst().identity()];
            alphas.extend(sq.tail(r));
            let slots: Vec<&[usize]> = alphas.iter().map(|&x| fibers[x].as_slice()).collect();
            for gs in product_tuples(&slots) {
                let li = g.inv(gs[0]);
                let tail: Vec<usize> = gs[1..].iter().map(|&x| g.mul(li, x)).collect();
                m.add(r, sg.rep_index(&tail), &blocks[gs[0]]);
            }
        }
        m.finish(sq, sg)
    };
    CohomologyMap::from_cochains(MapKind::Def, src, dst, cm)
}

fn fibers(pi: &GroupHom) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); pi.dst().order()];
    for g in pi.src().elements() {
        out[pi.apply(g)].push(g);
    }
    out
}

/// `Rsd: H^i(G, A) -> H^i(G/H, A_H)` for `i <= -2`. The first argument is
/// evaluated at the smallest element of each coset.
pub fn residuation(a: &GModule, h: &Subgroup, i: i32) -> Result<CohomologyMap> {
    let q = QuotientGroup::new(h)?;
    residuation_along(a, &q.projection(), i, None, &Caps::default())
}

/// Residuation along a surjection. `first_rep` replaces the representative
/// of the trivial coset by another element of the kernel.
pub fn residuation_along(
    a: &GModule,
    pi: &GroupHom,
    i: i32,
    first_rep: Option<usize>,
    caps: &Caps,
) -> Result<CohomologyMap> {
    if i > -2 {
        return Err(Error::DegreeOutOfRange { operation: "residuation", degree: i });
    }
    let co = coinvariants_along(a, pi)?;
    let src = cohomology_with(a, i, caps)?;
    let dst = cohomology_with(&co.module, i, caps)?;
    let (sg, sq) = (src.space(), dst.space());
    let g = a.group();
    let fibers = fibers(pi);
    let rep = first_rep.unwrap_or(fibers[pi.dst().identity()][0]);
    if pi.apply(rep) != pi.dst().identity() {
        return Err(Error::InvalidInput(format!("element {rep} is not in the kernel")));
    }
    let block = co.projection.mul(a.action(rep));
    let ri = g.inv(rep);
    let mut m = Blocks::new(co.module.rank(), a.rank());
    for r in 0..sq.num_reps() {
        let tail = sq.tail(r);
        let slots: Vec<&[usize]> = tail.iter().map(|&x| fibers[x].as_slice()).collect();
        for gs in product_tuples(&slots) {
            let t: Vec<usize> = gs.iter().map(|&x| g.mul(ri, x)).collect();
            m.add(r, sg.rep_index(&t), &block);
        }
    }
    let cm = m.finish(sq, sg);
    CohomologyMap::from_cochains(MapKind::Rsd, src, dst, cm)
}

/// The map `H^i(G, A) -> H^i(G, B)` induced by a module map.
pub fn induced_by(f: &ModuleMap, i: i32, caps: &Caps) -> Result<CohomologyMap> {
    let src = cohomology_with(&f.src, i, caps)?;
    let dst = cohomology_with(&f.dst, i, caps)?;
    let cm = block_diagonal(&f.matrix, src.space().num_reps());
    CohomologyMap::from_cochains(MapKind::Induced, src, dst, cm)
}

fn block_diagonal(block: &IntMatrix, copies: usize) -> IntMatrix {
    let (r, c) = (block.nrows(), block.ncols());
    let trip = (0..copies).flat_map(|k| block.triplets().map(move |(a, b, x)| (k * r + a, k * c + b, x.clone())));
    IntMatrix::from_triplets(copies * r, copies * c, trip.collect::<Vec<_>>())
}

/// The coboundary `H^i(G, C) -> H^{i+1}(G, A)` of `0 -> A -> B -> C -> 0`:
/// lift through a Z-section, apply `d_B`, pull back through `i`.
pub fn connecting_map(ses: &ShortExactSequence, i: i32, caps: &Caps) -> Result<CohomologyMap> {
    let src = cohomology_with(ses.c(), i, caps)?;
    let dst = cohomology_with(ses.a(), i + 1, caps)?;
    let d_b = crate::cohomology::differential_matrix(ses.b(), i, caps)?;
    let lift = block_diagonal(&ses.section, src.space().num_reps());
    let back = block_diagonal(&ses.retraction, dst.space().num_reps());
    let cm = back.mul(&d_b).mul(&lift);
    CohomologyMap::from_cochains(MapKind::Connecting, src, dst, cm)
}

/// Outcome of a commutative-square check.
#[derive(Clone, Debug, Serialize)]
pub struct SquareReport {
    pub degree: i32,
    pub commutes: bool,
    /// Abstract matrices of the two composites, rows in target coordinates.
    pub left_then_bottom: Vec<Vec<Int>>,
    pub top_then_right: Vec<Vec<Int>>,
}

fn square(degree: i32, p1: &CohomologyMap, p2: &CohomologyMap) -> SquareReport {
    let cols = |m: &CohomologyMap| {
        (0..m.source.num_generators())
            .map(|j| {
                let mut e = vec![Int::ZERO; m.source.num_generators()];
                e[j] = Int::ONE;
                m.apply(&e)
            })
            .collect::<Vec<_>>()
    };
    SquareReport { degree, commutes: p1.agrees_with(p2), left_then_bottom: cols(p1), top_then_right: cols(p2) }
}

/// Naturality of deflation: `Def_B ∘ f_* = (f^H)_* ∘ Def_A` on `H^i`, `i <= 0`.
pub fn deflation_naturality(f: &ModuleMap, h: &Subgroup, i: i32, caps: &Caps) -> Result<SquareReport> {
    let q = QuotientGroup::new(h)?;
    let pi = q.projection();
    let top = induced_by(f, i, caps)?;
    let def_b = deflation_along(&f.dst, &pi, i, caps)?;
    let def_a = deflation_along(&f.src, &pi, i, caps)?;
    let fa = fixed_points_along(&f.src, &pi)?;
    let fb = fixed_points_along(&f.dst, &pi)?;
    let fh = ModuleMap::new(&fa.module, &fb.module, fb.retraction.mul(&f.matrix).mul(&fa.inclusion))?;
    let bottom = induced_by(&fh, i, caps)?;
    Ok(square(i, &top.then(&def_b)?, &def_a.then(&bottom)?))
}

/// Deflation against coboundaries: `Def ∘ δ_G = δ_{G/H} ∘ Def` from
/// `H^i(G, C)` to `H^{i+1}(G/H, A^H)`, for `i <= -1`.
pub fn deflation_coboundary_square(ses: &ShortExactSequence, h: &Subgroup, i: i32, caps: &Caps) -> Result<SquareReport> {
    if i > -1 {
        return Err(Error::DegreeOutOfRange { operation: "deflation square", degree: i });
    }
    let q = QuotientGroup::new(h)?;
    let pi = q.projection();
    let (fixed, _) = ses.fixed_along(&pi)?;
    let top = connecting_map(ses, i, caps)?;
    let def_a = deflation_along(ses.a(), &pi, i + 1, caps)?;
    let def_c = deflation_along(ses.c(), &pi, i, caps)?;
    let bottom = connecting_map(&fixed, i, caps)?;
    Ok(square(i, &top.then(&def_a)?, &def_c.then(&bottom)?))
}
