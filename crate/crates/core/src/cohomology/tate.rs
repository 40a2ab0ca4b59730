//! Tate cohomology as the subquotient `ker(d: C^i -> C^{i+1}) / im(d: C^{i-1} -> C^i)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::config::Caps;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{AbelianGroupPresentation, Homotopy, Int};

use super::complex::{differential_matrix, homotopy_matrix, CochainSpace};
use super::module::GModule;

/// `H^i(G, A)` with explicit cocycle generators. Cheap to clone.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    space: Arc<CochainSpace>,
    presentation: Arc<AbelianGroupPresentation>,
}

impl CohomologyGroup {
    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    pub fn group(&self) -> &FiniteGroup {
        self.space.group()
    }

    pub fn module(&self) -> &GModule {
        self.space.module()
    }

    pub fn degree(&self) -> i32 {
        self.space.degree()
    }

    pub fn presentation(&self) -> &AbelianGroupPresentation {
        &self.presentation
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        self.presentation.invariant_factors()
    }

    pub fn orders(&self) -> &[Int] {
        self.presentation.orders()
    }

    pub fn free_rank(&self) -> usize {
        self.presentation.free_rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    pub fn order(&self) -> Option<Int> {
        self.presentation.order()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }

    /// Cocycle representing abstract generator `k`.
    pub fn generator(&self, k: usize) -> &[Int] {
        self.presentation.generator(k)
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        self.presentation.generators()
    }

    /// Class of a cocycle in abstract coordinates.
    pub fn class_of(&self, z: &[Int]) -> Vec<Int> {
        self.presentation.project(z)
    }

    /// A cocycle representing the given abstract coordinates.
    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        self.presentation.lift(coords)
    }
}

pub fn cohomology(a: &GModule, i: i32) -> Result<CohomologyGroup> {
    cohomology_with(a, i, &Caps::default())
}

type CacheKey = (Vec<u32>, usize, i32);

fn cache() -> &'static Mutex<HashMap<CacheKey, CohomologyGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, CohomologyGroup>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Groups with trivial action are memoized per group table, rank and degree.
pub fn cohomology_with(a: &GModule, i: i32, caps: &Caps) -> Result<CohomologyGroup> {
    let key = a.is_trivial_action().then(|| (a.group().raw_table().to_vec(), a.rank(), i));
    if let Some(k) = &key {
        if let Some(hit) = cache().lock().expect("cache lock").get(k) {
            if hit.group() == a.group() && hit.module().rank() == a.rank() {
                return Ok(CohomologyGroup { space: Arc::new(CochainSpace::new(a, i, caps)?), ..hit.clone() });
            }
        }
    }
    let out = compute(a, i, caps)?;
    if let Some(k) = key {
        cache().lock().expect("cache lock").insert(k, out.clone());
    }
    Ok(out)
}

/// Same as [`cohomology_with`] but never reads or fills the cache.
pub fn cohomology_uncached(a: &GModule, i: i32, caps: &Caps) -> Result<CohomologyGroup> {
    compute(a, i, caps)
}

fn compute(a: &GModule, i: i32, caps: &Caps) -> Result<CohomologyGroup> {
    let space = CochainSpace::new(a, i, caps)?;
    let d_in = Arc::new(differential_matrix(a, i - 1, caps)?);
    let d_out = Arc::new(differential_matrix(a, i, caps)?);
    let h_in = homotopy_matrix(a, i - 1, caps)?;
    let h_out = homotopy_matrix(a, i, caps)?;
    let scale = Int::from(a.group().order());
    let certified = AbelianGroupPresentation::subquotient_with_homotopy(
        d_out.clone(),
        d_in.clone(),
        &Homotopy { h_in: &h_in, h_out: &h_out, scale },
    )?;
    let presentation = match certified {
        Some(p) => p,
        None => AbelianGroupPresentation::subquotient_shared(d_out, d_in)?,
    };
    Ok(CohomologyGroup { space: Arc::new(space), presentation: Arc::new(presentation) })
}

/// The general subquotient computation, bypassing the homotopy shortcut and the cache.
pub fn cohomology_uncertified(a: &GModule, i: i32, caps: &Caps) -> Result<CohomologyGroup> {
    let space = CochainSpace::new(a, i, caps)?;
    let d_in = Arc::new(differential_matrix(a, i - 1, caps)?);
    let d_out = Arc::new(differential_matrix(a, i, caps)?);
    let presentation = AbelianGroupPresentation::subquotient_shared(d_out, d_in)?;
    Ok(CohomologyGroup { space: Arc::new(space), presentation: Arc::new(presentation) })
}
