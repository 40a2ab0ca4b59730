//! The cup pairing `H^{-i}(G, Z) x H^i(G, Z) -> H^0(G, Z) = Z/|G|`, the
//! pairing on a direct product built from the factors, and the adjointness
//! of residuation and inflation.

use serde::Serialize;

use crate::cohomology::{cohomology_with, CochainSpace, CohomologyGroup, GModule};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{AbelianHom, Int, IntMatrix};
use crate::transfer::{inflation_along, residuation_along, CohomologyMap};

/// Index pairs `(a, b)` such that `a ∪ b` at `e` is `sum a[a_k] * b[b_k]`.
fn cup_terms(g: &FiniteGroup, i: usize) -> Vec<(usize, usize)> {
    let n = g.order();
    let total = n.pow(i as u32);
    let mut out = Vec::with_capacity(total);
    let mut s = vec![0usize; i];
    for idx in 0..total {
        let mut x = idx;
        for slot in s.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        // a(s_1*, ..., s_i*) = a_rep(s_1^-1 s_2, ..., s_1^-1 s_i)
        let s1i = g.inv(s[0]);
        let a = s[1..].iter().fold(0, |acc, &t| acc * n + g.mul(s1i, t));
        // b(s_i, ..., s_1, e) = b_rep(s_i^-1 s_{i-1}, ..., s_i^-1 s_1, s_i^-1)
        let sii = g.inv(s[i - 1]);
        let mut b = 0;
        for k in (0..i - 1).rev() {
            b = b * n + g.mul(sii, s[k]);
        }
        b = b * n + sii;
        out.push((a, b));
    }
    out
}

/// `a ∪ b` in `Z/|G|` for cochains on `C^{-i}` and `C^i` with trivial `Z`.
pub fn cup_value(g: &FiniteGroup, i: usize, a: &[Int], b: &[Int]) -> Int {
    cup_with_terms(&cup_terms(g, i), g.order(), a, b)
}

fn cup_with_terms(terms: &[(usize, usize)], n: usize, a: &[Int], b: &[Int]) -> Int {
    let mut acc = Int::ZERO;
    for &(x, y) in terms {
        if !a[x].is_zero() && !b[y].is_zero() {
            acc += &(&a[x] * &b[y]);
        }
    }
    acc.rem_euclid(&Int::from(n))
}

/// Values of a bilinear pairing on generators, in `Z/modulus`.
#[derive(Clone, Debug, Serialize)]
pub struct PairingTable {
    pub degree: i32,
    pub modulus: Int,
    pub left_orders: Vec<Int>,
    pub right_orders: Vec<Int>,
    /// `values[k][l]` pairs left generator `k` with right generator `l`.
    pub values: Vec<Vec<Int>>,
}

impl PairingTable {
    pub fn new(degree: i32, modulus: Int, left_orders: Vec<Int>, right_orders: Vec<Int>, values: Vec<Vec<Int>>) -> Result<Self> {
        if left_orders.iter().chain(&right_orders).any(Int::is_zero) {
            return Err(Error::InvalidInput("pairing needs finite groups".into()));
        }
        let t = PairingTable { degree, modulus, left_orders, right_orders, values };
        for (k, row) in t.values.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                for o in [&t.left_orders[k], &t.right_orders[l]] {
                    if !(o * v).rem_euclid(&t.modulus).is_zero() {
                        return Err(Error::InvalidInput(format!("pairing value at ({k}, {l}) ignores a relation")));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Pairing of two elements in abstract coordinates.
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = Int::ZERO;
        for (k, xk) in x.iter().enumerate() {
            for (l, yl) in y.iter().enumerate() {
                acc += &(&(xk * yl) * &self.values[k][l]);
            }
        }
        acc.rem_euclid(&self.modulus)
    }

    /// Map from one side into the character group of the other, as an
    /// abelian group homomorphism into `sum Z/o_l`.
    fn to_dual(&self, left: bool) -> AbelianHom {
        let (src, dst) = if left { (&self.left_orders, &self.right_orders) } else { (&self.right_orders, &self.left_orders) };
        let mut trip = Vec::new();
        for (k, _) in src.iter().enumerate() {
            for (l, o) in dst.iter().enumerate() {
                let v = if left { &self.values[k][l] } else { &self.values[l][k] };
                // v / modulus = c / o
                let c = (v * o).div_exact(&self.modulus).rem_euclid(o);
                trip.push((l, k, c));
            }
        }
        AbelianHom::new(src.clone(), dst.clone(), IntMatrix::from_triplets(dst.len(), src.len(), trip))
    }

    pub fn perfectness(&self) -> PerfectnessCertificate {
        let l = self.to_dual(true);
        let r = self.to_dual(false);
        let lk = l.kernel().0;
        let rk = r.kernel().0;
        let lc = l.cokernel();
        let rc = r.cokernel();
        PerfectnessCertificate {
            perfect: lk.is_empty() && rk.is_empty() && lc.is_empty() && rc.is_empty(),
            left_to_dual: l.matrix.to_dense(),
            right_to_dual: r.matrix.to_dense(),
            left_kernel: lk,
            left_cokernel: lc,
            right_kernel: rk,
            right_cokernel: rc,
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.perfectness().perfect
    }
}

/// The two induced maps into character groups, with their kernels and
/// cokernels (as invariant factors).
#[derive(Clone, Debug, Serialize)]
pub struct PerfectnessCertificate {
    pub perfect: bool,
    pub left_to_dual: Vec<Vec<Int>>,
    pub right_to_dual: Vec<Vec<Int>>,
    pub left_kernel: Vec<Int>,
    pub left_cokernel: Vec<Int>,
    pub right_kernel: Vec<Int>,
    pub right_cokernel: Vec<Int>,
}

pub fn cup_pairing(g: &FiniteGroup, i: u32) -> Result<PairingTable> {
    cup_pairing_with(g, i, &Caps::default())
}

pub fn cup_pairing_with(g: &FiniteGroup, i: u32, caps: &Caps) -> Result<PairingTable> {
    if i == 0 {
        return Err(Error::DegreeOutOfRange { operation: "cup pairing", degree: 0 });
    }
    let z = GModule::trivial(g);
    let left = cohomology_with(&z, -(i as i32), caps)?;
    let right = cohomology_with(&z, i as i32, caps)?;
    Ok(table_from(g, i, &left, &right))
}

fn table_from(g: &FiniteGroup, i: u32, left: &CohomologyGroup, right: &CohomologyGroup) -> PairingTable {
    let terms = cup_terms(g, i as usize);
    let values = left
        .generators()
        .iter()
        .map(|a| right.generators().iter().map(|b| cup_with_terms(&terms, g.order(), a, b)).collect())
        .collect();
    PairingTable::new(i as i32, Int::from(g.order()), left.orders().to_vec(), right.orders().to_vec(), values)
        .expect("cup product respects relations")
}

/// `alpha = Cor_{G_1} ∘ alpha_{G_1} + Cor_{G_2} ∘ alpha_{G_2}` on
/// `(H^{-i}(G_1) + H^{-i}(G_2)) x (H^i(G_1) + H^i(G_2)) -> Z/|G|`.
pub fn composite_pairing_alpha(g: &FiniteGroup, i: u32) -> Result<PairingTable> {
    composite_pairing_alpha_with(g, i, &Caps::default())
}

pub fn composite_pairing_alpha_with(g: &FiniteGroup, i: u32, caps: &Caps) -> Result<PairingTable> {
    let ps = g.product_structure().ok_or(Error::NotAProduct)?;
    let t = [cup_pairing_with(ps.factor(0), i, caps)?, cup_pairing_with(ps.factor(1), i, caps)?];
    let n = Int::from(g.order());
    let cofactor = [Int::from(ps.factor(1).order()), Int::from(ps.factor(0).order())];
    let (l0, r0) = (t[0].left_orders.len(), t[0].right_orders.len());
    let rows = l0 + t[1].left_orders.len();
    let cols = r0 + t[1].right_orders.len();
    let mut values = vec![vec![Int::ZERO; cols]; rows];
    for (j, tab) in t.iter().enumerate() {
        let (dr, dc) = if j == 0 { (0, 0) } else { (l0, r0) };
        for (k, row) in tab.values.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                values[dr + k][dc + l] = (v * &cofactor[j]).rem_euclid(&n);
            }
        }
    }
    let left_orders = [t[0].left_orders.clone(), t[1].left_orders.clone()].concat();
    let right_orders = [t[0].right_orders.clone(), t[1].right_orders.clone()].concat();
    PairingTable::new(i as i32, n, left_orders, right_orders, values)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointnessEntry {
    /// Factor index `j` in `{0, 1}`.
    pub factor: usize,
    pub f: usize,
    pub psi: usize,
    /// `f ∪ Inf(psi)`
    pub lhs: Int,
    /// `Cor(Rsd(f) ∪ psi)`
    pub rhs: Int,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointnessReport {
    pub degree: u32,
    pub holds: bool,
    pub entries: Vec<AdjointnessEntry>,
    /// `alpha((Rsd x Rsd)(f), psi) = f ∪ (Inf + Inf)(psi)` on abstract coordinates.
    pub dual_maps_consistent: bool,
}

/// Residuation and inflation for both factors of `G = G_1 x G_2`, in
/// degrees `-i` and `i`; `G/G_{3-j}` is identified with `G_j`.
pub struct FactorMaps {
    pub rsd: [CohomologyMap; 2],
    pub inf: [CohomologyMap; 2],
}

pub fn factor_maps(g: &FiniteGroup, i: u32, caps: &Caps) -> Result<FactorMaps> {
    if i < 2 {
        return Err(Error::DegreeOutOfRange { operation: "residuation", degree: -(i as i32) });
    }
    let z = GModule::trivial(g);
    let pis = [GroupHom::factor_projection(g, 0)?, GroupHom::factor_projection(g, 1)?];
    let rsd = [
        residuation_along(&z, &pis[0], -(i as i32), None, caps)?,
        residuation_along(&z, &pis[1], -(i as i32), None, caps)?,
    ];
    let inf = [inflation_along(&z, &pis[0], i as i32, caps)?, inflation_along(&z, &pis[1], i as i32, caps)?];
    Ok(FactorMaps { rsd, inf })
}

pub fn verify_adjointness(g: &FiniteGroup, i: u32) -> Result<AdjointnessReport> {
    verify_adjointness_with(g, i, &Caps::default())
}

pub fn verify_adjointness_with(g: &FiniteGroup, i: u32, caps: &Caps) -> Result<AdjointnessReport> {
    let maps = factor_maps(g, i, caps)?;
    adjointness_from(g, i, &maps, caps)
}

pub fn adjointness_from(g: &FiniteGroup, i: u32, maps: &FactorMaps, caps: &Caps) -> Result<AdjointnessReport> {
    let ps = g.product_structure().ok_or(Error::NotAProduct)?;
    let n = Int::from(g.order());
    let big_terms = cup_terms(g, i as usize);
    let left = &maps.rsd[0].source;
    let mut entries = Vec::new();
    for j in 0..2 {
        let gj = ps.factor(j);
        let small_terms = cup_terms(gj, i as usize);
        let index = Int::from(g.order() / gj.order());
        let (rsd, inf) = (&maps.rsd[j], &maps.inf[j]);
        for (fi, f) in left.generators().iter().enumerate() {
            let rf = rsd.cochain_matrix.mul_vec(f);
            for (pi, psi) in inf.source.generators().iter().enumerate() {
                let ipsi = inf.cochain_matrix.mul_vec(psi);
                let lhs = cup_with_terms(&big_terms, g.order(), f, &ipsi);
                let rhs = (&cup_with_terms(&small_terms, gj.order(), &rf, psi) * &index).rem_euclid(&n);
                entries.push(AdjointnessEntry { factor: j, f: fi, psi: pi, lhs, rhs });
            }
        }
    }
    let holds = entries.iter().all(|e| e.lhs == e.rhs);
    let dual_maps_consistent = dual_map_consistency(g, i, maps, caps)?;
    Ok(AdjointnessReport { degree: i, holds, entries, dual_maps_consistent })
}

/// Compares `alpha((Rsd x Rsd)(f), psi)` with `f ∪ (Inf + Inf)(psi)` for all
/// generators, using only the abstract matrices of the maps.
fn dual_map_consistency(g: &FiniteGroup, i: u32, maps: &FactorMaps, caps: &Caps) -> Result<bool> {
    let alpha = composite_pairing_alpha_with(g, i, caps)?;
    let big = cup_pairing_with(g, i, caps)?;
    let left_n = maps.rsd[0].source.num_generators();
    let r_dims = [maps.inf[0].source.num_generators(), maps.inf[1].source.num_generators()];
    for fi in 0..left_n {
        let mut e = vec![Int::ZERO; left_n];
        e[fi] = Int::ONE;
        let image = [maps.rsd[0].apply(&e), maps.rsd[1].apply(&e)].concat();
        for j in 0..2 {
            for pi in 0..r_dims[j] {
                let mut psi = vec![Int::ZERO; r_dims[0] + r_dims[1]];
                psi[if j == 0 { pi } else { r_dims[0] + pi }] = Int::ONE;
                let mut unit = vec![Int::ZERO; r_dims[j]];
                unit[pi] = Int::ONE;
                let pushed = maps.inf[j].apply(&unit);
                if alpha.pair(&image, &psi) != big.pair(&e, &pushed) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Bilinearity spot check on cochains: `(a + a') ∪ b = a ∪ b + a' ∪ b`.
pub fn cup_is_additive(g: &FiniteGroup, i: usize, a: &[Int], a2: &[Int], b: &[Int]) -> bool {
    let sum: Vec<Int> = a.iter().zip(a2).map(|(x, y)| x + y).collect();
    let lhs = cup_value(g, i, &sum, b);
    let rhs = (&cup_value(g, i, a, b) + &cup_value(g, i, a2, b)).rem_euclid(&Int::from(g.order()));
    lhs == rhs
}

/// The space on which the left argument of the degree-`i` pairing lives.
pub fn left_space(g: &FiniteGroup, i: u32, caps: &Caps) -> Result<CochainSpace> {
    CochainSpace::new(&GModule::trivial(g), -(i as i32), caps)
}
