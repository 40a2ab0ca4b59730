//! Tate's kernel `ker(H^3(G, Z) -> prod_v H^3(G_v, Z))` for a group with
//! decomposition data, and the verification pipeline for pairs of factors.
//!
//! Decomposition configurations are JSON:
//!
//! ```json
//! {"group": {"kind": "named", "name": "V4"},
//!  "places": [{"label": "p=13", "subgroup": [0, 1]}, {"label": "inf", "subgroup": [0]}]}
//! ```
//!
//! `group` uses the group format of [`crate::group::json`]; `subgroup` lists
//! element indices and must be closed under multiplication. Places that are
//! not listed impose no condition, which is harmless only when their
//! decomposition groups are cyclic.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cohomology::{cohomology_with, CohomologyGroup, GModule};
use crate::config::Caps;
use crate::duality::{adjointness_from, factor_maps, AdjointnessReport};
use crate::error::{Error, Result};
use crate::group::json::GroupSpec;
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::linalg::{AbelianHom, Int, IntMatrix};
use crate::transfer::{inflation_along, restriction_with, CohomologyMap};

#[derive(Clone, Debug)]
pub struct Place {
    pub label: String,
    pub subgroup: Subgroup,
}

#[derive(Clone, Debug)]
pub struct DecompositionConfig {
    pub group: FiniteGroup,
    pub places: Vec<Place>,
    spec: Option<GroupSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaceJson {
    label: String,
    subgroup: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    group: GroupSpec,
    places: Vec<PlaceJson>,
}

impl DecompositionConfig {
    pub fn new(group: &FiniteGroup, places: Vec<Place>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &places {
            if !seen.insert(p.label.clone()) {
                return Err(Error::InvalidInput(format!("duplicate place label `{}`", p.label)));
            }
            if p.subgroup.parent() != group {
                return Err(Error::InvalidSubgroup(format!("place `{}` lives in another group", p.label)));
            }
        }
        Ok(DecompositionConfig { group: group.clone(), places, spec: None })
    }

    pub fn from_json(text: &str, caps: &Caps) -> Result<Self> {
        let raw: ConfigJson = serde_json::from_str(text)?;
        let group = raw.group.build(caps.order)?;
        let places = raw
            .places
            .into_iter()
            .map(|p| {
                let subgroup = Subgroup::new(&group, &p.subgroup)
                    .map_err(|e| Error::InvalidSubgroup(format!("place `{}`: {e}", p.label)))?;
                Ok(Place { label: p.label, subgroup })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cfg = Self::new(&group, places)?;
        cfg.spec = Some(raw.group);
        Ok(cfg)
    }

    /// JSON form; needs the group description the config was read from, or
    /// falls back to a Cayley table.
    pub fn to_json(&self) -> String {
        let group = self.spec.clone().unwrap_or_else(|| GroupSpec::Cayley { table: self.group.table() });
        let raw = ConfigJson {
            group,
            places: self
                .places
                .iter()
                .map(|p| PlaceJson { label: p.label.clone(), subgroup: p.subgroup.elements().to_vec() })
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    /// The configuration on factor `j` of a direct product, with each
    /// decomposition group replaced by its projection.
    pub fn project(&self, j: usize) -> Result<DecompositionConfig> {
        let pi = GroupHom::factor_projection(&self.group, j)?;
        let places = self
            .places
            .iter()
            .map(|p| Place { label: p.label.clone(), subgroup: pi.image_of(&p.subgroup) })
            .collect();
        Self::new(pi.dst(), places)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceRestriction {
    pub label: String,
    pub subgroup_order: usize,
    pub target_invariants: Vec<Int>,
    /// Abstract matrix of `H^3(G) -> H^3(G_v)`.
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShaReport {
    pub h3_invariants: Vec<Int>,
    pub kernel_invariant_factors: Vec<Int>,
    /// Kernel generators in the coordinates of `H^3(G)`.
    pub kernel_coordinates: Vec<Vec<Int>>,
    /// The same generators as cocycles.
    #[serde(skip)]
    pub kernel_generators: Vec<Vec<Int>>,
    pub places: Vec<PlaceRestriction>,
}

impl ShaReport {
    pub fn order(&self) -> Int {
        self.kernel_invariant_factors.iter().fold(Int::ONE, |acc, x| acc * x)
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel_invariant_factors.is_empty()
    }
}

struct Kernel {
    h3: CohomologyGroup,
    restrictions: Vec<CohomologyMap>,
    report: ShaReport,
}

fn tate_kernel(cfg: &DecompositionConfig, caps: &Caps) -> Result<Kernel> {
    let z = GModule::trivial(&cfg.group);
    let h3 = cohomology_with(&z, 3, caps)?;
    let restrictions =
        cfg.places.iter().map(|p| restriction_with(&z, &p.subgroup, 3, caps)).collect::<Result<Vec<_>>>()?;
    let dst: Vec<Int> = restrictions.iter().flat_map(|r| r.target.orders().to_vec()).collect();
    let blocks: Vec<&IntMatrix> = restrictions.iter().map(|r| &r.abstract_matrix).collect();
    let stacked = if blocks.is_empty() { IntMatrix::zeros(0, h3.num_generators()) } else { IntMatrix::vstack(&blocks) };
    let (orders, coords) = AbelianHom::new(h3.orders().to_vec(), dst, stacked).kernel();
    let kernel_generators = coords.iter().map(|c| h3.lift(c)).collect();
    let places = cfg
        .places
        .iter()
        .zip(&restrictions)
        .map(|(p, r)| PlaceRestriction {
            label: p.label.clone(),
            subgroup_order: p.subgroup.order(),
            target_invariants: r.target.invariant_factors(),
            matrix: r.abstract_matrix.to_dense(),
        })
        .collect();
    let report = ShaReport {
        h3_invariants: h3.invariant_factors(),
        kernel_invariant_factors: orders,
        kernel_coordinates: coords,
        kernel_generators,
        places,
    };
    Ok(Kernel { h3, restrictions, report })
}

pub fn sha_tate(cfg: &DecompositionConfig) -> Result<ShaReport> {
    sha_tate_with(cfg, &Caps::default())
}

pub fn sha_tate_with(cfg: &DecompositionConfig, caps: &Caps) -> Result<ShaReport> {
    Ok(tate_kernel(cfg, caps)?.report)
}

/// A homomorphism check with the matrix and the invariants that decide it.
#[derive(Clone, Debug, Serialize)]
pub struct MapCheck {
    pub passed: bool,
    pub source_orders: Vec<Int>,
    pub target_orders: Vec<Int>,
    pub matrix: Vec<Vec<Int>>,
    pub kernel: Vec<Int>,
    pub cokernel: Vec<Int>,
}

impl MapCheck {
    fn of(hom: &AbelianHom, injective: bool) -> MapCheck {
        let kernel = hom.kernel().0;
        let cokernel = hom.cokernel();
        let passed = if injective { kernel.is_empty() } else { cokernel.is_empty() };
        MapCheck {
            passed,
            source_orders: hom.src.clone(),
            target_orders: hom.dst.clone(),
            matrix: hom.matrix.to_dense(),
            kernel,
            cokernel,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "status", content = "detail")]
pub enum Verdict {
    VerifiedHolds,
    LemmaViolation(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct MultinormCertificate {
    pub rsd_surjectivity: MapCheck,
    pub inf_injectivity: MapCheck,
    pub adjointness: AdjointnessReport,
    pub sha_level_check: Option<ShaSurjectivityReport>,
    pub verdict: Verdict,
}

pub fn verify_multinorm_pair(g: &FiniteGroup, cfg: Option<&DecompositionConfig>) -> Result<MultinormCertificate> {
    verify_multinorm_pair_with(g, cfg, &Caps::default())
}

pub fn verify_multinorm_pair_with(
    g: &FiniteGroup,
    cfg: Option<&DecompositionConfig>,
    caps: &Caps,
) -> Result<MultinormCertificate> {
    g.product_structure().ok_or(Error::NotAProduct)?;
    let maps = factor_maps(g, 3, caps)?;
    let rsd = {
        let dst = [maps.rsd[0].target.orders(), maps.rsd[1].target.orders()].concat();
        let m = IntMatrix::vstack(&[&maps.rsd[0].abstract_matrix, &maps.rsd[1].abstract_matrix]);
        AbelianHom::new(maps.rsd[0].source.orders().to_vec(), dst, m)
    };
    let inf = {
        let src = [maps.inf[0].source.orders(), maps.inf[1].source.orders()].concat();
        let m = IntMatrix::hstack(&[&maps.inf[0].abstract_matrix, &maps.inf[1].abstract_matrix]);
        AbelianHom::new(src, maps.inf[0].target.orders().to_vec(), m)
    };
    let rsd_surjectivity = MapCheck::of(&rsd, false);
    let inf_injectivity = MapCheck::of(&inf, true);
    let adjointness = adjointness_from(g, 3, &maps, caps)?;
    let sha_level_check = cfg.map(|c| verify_sha_surjectivity_with(c, caps)).transpose()?;
    let mut failures = Vec::new();
    if !rsd_surjectivity.passed {
        failures.push(format!("Rsd x Rsd on H^-3 has cokernel {:?}", rsd_surjectivity.cokernel));
    }
    if !inf_injectivity.passed {
        failures.push(format!("Inf + Inf on H^3 has kernel {:?}", inf_injectivity.kernel));
    }
    if !adjointness.holds || !adjointness.dual_maps_consistent {
        failures.push("adjointness of Rsd and Inf fails".into());
    }
    if let Some(s) = &sha_level_check {
        if !s.passed {
            failures.push("Inf + Inf does not embed the factor kernels".into());
        }
    }
    let verdict = if failures.is_empty() { Verdict::VerifiedHolds } else { Verdict::LemmaViolation(failures.join("; ")) };
    Ok(MultinormCertificate { rsd_surjectivity, inf_injectivity, adjointness, sha_level_check, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityEntry {
    pub label: String,
    pub factor: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShaSurjectivityReport {
    pub kernel: ShaReport,
    pub factor_kernels: [ShaReport; 2],
    /// `Inf + Inf` maps the factor kernels into the kernel for `G`.
    pub lands_in_kernel: bool,
    pub injective: MapCheck,
    pub compatibility: Vec<CompatibilityEntry>,
    pub passed: bool,
}

pub fn verify_sha_surjectivity(cfg: &DecompositionConfig) -> Result<ShaSurjectivityReport> {
    verify_sha_surjectivity_with(cfg, &Caps::default())
}

pub fn verify_sha_surjectivity_with(cfg: &DecompositionConfig, caps: &Caps) -> Result<ShaSurjectivityReport> {
    let g = &cfg.group;
    g.product_structure().ok_or(Error::NotAProduct)?;
    let big = tate_kernel(cfg, caps)?;
    let z = GModule::trivial(g);
    let mut factor_kernels = Vec::new();
    let mut columns: Vec<Vec<Int>> = Vec::new();
    let mut src_orders = Vec::new();
    let mut compatibility = Vec::new();
    for j in 0..2 {
        let sub = cfg.project(j)?;
        let small = tate_kernel(&sub, caps)?;
        let pi = GroupHom::factor_projection(g, j)?;
        let inf = inflation_along(&z, &pi, 3, caps)?;
        for c in &small.report.kernel_coordinates {
            columns.push(inf.apply(c));
        }
        src_orders.extend(small.report.kernel_invariant_factors.iter().cloned());
        for ((place, res_big), res_small) in cfg.places.iter().zip(&big.restrictions).zip(&small.restrictions) {
            // D_v -> pi_j(D_v), restricted from pi
            let (dv, inc) = place.subgroup.as_group();
            let image = pi.image_of(&place.subgroup);
            let (pv, _) = image.as_group();
            let map = (0..dv.order())
                .map(|x| image.elements().binary_search(&pi.apply(inc.apply(x))).expect("image element"))
                .collect();
            let local_pi = GroupHom::new(&dv, &pv, map)?;
            let local_inf = inflation_along(&GModule::trivial(&dv), &local_pi, 3, caps)?;
            let lhs = inf.then(res_big)?;
            let rhs = res_small.then(&local_inf)?;
            compatibility.push(CompatibilityEntry { label: place.label.clone(), factor: j, holds: lhs.agrees_with(&rhs) });
        }
        factor_kernels.push(small.report);
    }
    let h3 = &big.h3;
    let m = IntMatrix::from_triplets(
        h3.num_generators(),
        columns.len(),
        columns.iter().enumerate().flat_map(|(c, v)| v.iter().enumerate().map(move |(r, x)| (r, c, x.clone()))).collect::<Vec<_>>(),
    );
    let lands_in_kernel = columns.iter().all(|v| {
        big.restrictions.iter().all(|r| r.apply(v).iter().all(Int::is_zero))
    });
    let injective = MapCheck::of(&AbelianHom::new(src_orders, h3.orders().to_vec(), m), true);
    let passed = lands_in_kernel && injective.passed && compatibility.iter().all(|c| c.holds);
    let [k1, k2]: [ShaReport; 2] = factor_kernels.try_into().expect("two factors");
    Ok(ShaSurjectivityReport { kernel: big.report, factor_kernels: [k1, k2], lands_in_kernel, injective, compatibility, passed })
}
