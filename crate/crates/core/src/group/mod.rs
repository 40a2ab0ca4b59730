//! Finite groups on dense element indices `0..n`.

pub mod json;
pub mod named;
pub mod perm;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::config::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    product: Option<ProductStructure>,
    name: Option<String>,
}

/// `G = G1 x G2` with element `(x, y)` stored at index `x * |G2| + y`.
#[derive(Clone, Debug)]
pub struct ProductStructure {
    left: FiniteGroup,
    right: FiniteGroup,
}

impl ProductStructure {
    pub fn left(&self) -> &FiniteGroup {
        &self.left
    }

    pub fn right(&self) -> &FiniteGroup {
        &self.right
    }

    /// Factor `j` in `{0, 1}`.
    pub fn factor(&self, j: usize) -> &FiniteGroup {
        if j == 0 {
            &self.left
        } else {
            &self.right
        }
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.right.order() + y
    }

    pub fn embed(&self, j: usize, x: usize) -> usize {
        if j == 0 {
            self.pair(x, self.right.identity())
        } else {
            self.pair(self.left.identity(), x)
        }
    }

    pub fn project(&self, j: usize, g: usize) -> usize {
        if j == 0 {
            g / self.right.order()
        } else {
            g % self.right.order()
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.order == other.inner.order
                && self.inner.identity == other.inner.identity
                && self.inner.table == other.inner.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.name {
            Some(n) => write!(f, "FiniteGroup({n}, order {})", self.order()),
            None => write!(f, "FiniteGroup(order {})", self.order()),
        }
    }
}

impl FiniteGroup {
    /// Validates a Cayley table; the failure carries a witness.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup { reason: "empty table".into(), witness: vec![] });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup { reason: format!("row {i} has length {}", row.len()), witness: vec![i] });
            }
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(Error::NotAGroup { reason: format!("entry ({i}, {j}) out of range"), witness: vec![i, j] });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup { reason: "no identity element".into(), witness: vec![] })?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::NotAGroup { reason: format!("element {a} has no inverse"), witness: vec![a] })
                }
            }
        }
        // Light's test: triples whose last entry lies in a generating set suffice.
        let gens = magma_generators(table, identity);
        for &c in &gens {
            for a in 0..n {
                for b in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup {
                            reason: format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(Self::from_parts(table, identity, inverse, None, None))
    }

    fn from_parts(
        table: &[Vec<usize>],
        identity: usize,
        inverse: Vec<usize>,
        product: Option<ProductStructure>,
        name: Option<String>,
    ) -> Self {
        let order = table.len();
        let flat = table.iter().flat_map(|r| r.iter().map(|&x| x as u32)).collect();
        FiniteGroup { inner: Arc::new(GroupData { order, table: flat, identity, inverse, product, name }) }
    }

    /// Trusted table (built internally); computes identity and inverses.
    fn from_table_trusted(table: &[Vec<usize>], product: Option<ProductStructure>, name: Option<String>) -> Self {
        let n = table.len();
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).expect("identity present");
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == identity).expect("inverse present")).collect();
        Self::from_parts(table, identity, inverse, product, name)
    }

    pub fn from_permutations(degree: usize, generators: &[perm::Perm]) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(degree: usize, generators: &[perm::Perm], cap: usize) -> Result<Self> {
        let (_, table) = perm::closure(degree, generators, cap)?;
        Ok(Self::from_table_trusted(&table, None, None))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table_trusted(&table, None, Some(format!("C{n}")))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Self> {
        Self::direct_product_capped(g1, g2, DEFAULT_ORDER_CAP)
    }

    pub fn direct_product_capped(g1: &FiniteGroup, g2: &FiniteGroup, cap: usize) -> Result<Self> {
        let (n1, n2) = (g1.order(), g2.order());
        if n1 * n2 > cap {
            return Err(Error::TooLarge { cap });
        }
        let table: Vec<Vec<usize>> = (0..n1 * n2)
            .map(|a| (0..n1 * n2).map(|b| g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2)).collect())
            .collect();
        let identity = g1.identity() * n2 + g2.identity();
        let inverse = (0..n1 * n2).map(|a| g1.inv(a / n2) * n2 + g2.inv(a % n2)).collect();
        let name = match (g1.name(), g2.name()) {
            (Some(a), Some(b)) => Some(format!("{}x{}", wrap(a), wrap(b))),
            _ => None,
        };
        let product = ProductStructure { left: g1.clone(), right: g2.clone() };
        Ok(Self::from_parts(&table, identity, inverse, Some(product), name))
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let d = &self.inner;
        FiniteGroup {
            inner: Arc::new(GroupData {
                order: d.order,
                table: d.table.clone(),
                identity: d.identity,
                inverse: d.inverse.clone(),
                product: d.product.clone(),
                name: Some(name.into()),
            }),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        self.inner.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    /// `g x g^{-1}`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.elements().map(|a| self.elements().map(|b| self.mul(a, b)).collect()).collect()
    }

    pub(crate) fn raw_table(&self) -> &[u32] {
        &self.inner.table
    }

    pub fn product_structure(&self) -> Option<&ProductStructure> {
        self.inner.product.as_ref()
    }

    /// Checks associativity and inverses: all triples up to `exhaustive_limit`,
    /// otherwise `samples` seeded triples. Returns a failing triple.
    pub fn check_group_law(&self, exhaustive_limit: usize, samples: usize, seed: u64) -> Option<[usize; 3]> {
        let n = self.order();
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if (0..n).any(|a| self.mul(a, self.inv(a)) != self.identity()) {
            let a = (0..n).find(|&a| self.mul(a, self.inv(a)) != self.identity()).unwrap_or(0);
            return Some([a, a, a]);
        }
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Some([a, b, c]);
                        }
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }
}

fn wrap(name: &str) -> String {
    if name.contains('x') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// Greedy generating set of a finite loop given by its table.
fn magma_generators(table: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = table.len();
    let mut inside = vec![false; n];
    inside[identity] = true;
    let mut members = vec![identity];
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        members.push(x);
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            k += 1;
            for &g in &gens {
                for y in [table[a][g], table[g][a]] {
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
            }
        }
    }
    gens
}

/// A subgroup, stored as its sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
    member: Vec<bool>,
    is_normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({:?}{})", self.elements, if self.is_normal { ", normal" } else { "" })
    }
}

impl Subgroup {
    /// Validates closure of an explicit element list.
    pub fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let n = parent.order();
        let mut member = vec![false; n];
        for &x in elements {
            if x >= n {
                return Err(Error::InvalidSubgroup(format!("element {x} out of range for order {n}")));
            }
            member[x] = true;
        }
        if !member[parent.identity()] {
            return Err(Error::InvalidSubgroup("identity missing".into()));
        }
        let elems: Vec<usize> = (0..n).filter(|&x| member[x]).collect();
        for &a in &elems {
            if !member[parent.inv(a)] {
                return Err(Error::InvalidSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elems {
                if !member[parent.mul(a, b)] {
                    return Err(Error::InvalidSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(Self::from_closed(parent, member))
    }

    fn from_closed(parent: &FiniteGroup, member: Vec<bool>) -> Self {
        let elements: Vec<usize> = (0..parent.order()).filter(|&x| member[x]).collect();
        let is_normal = parent.elements().all(|g| elements.iter().all(|&h| member[parent.conj(g, h)]));
        Subgroup { parent: parent.clone(), elements, member, is_normal }
    }

    /// Smallest subgroup containing `seeds`.
    pub fn generated(parent: &FiniteGroup, seeds: &[usize]) -> Result<Self> {
        let n = parent.order();
        if let Some(&x) = seeds.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidInput(format!("seed {x} out of range for order {n}")));
        }
        let mut member = vec![false; n];
        member[parent.identity()] = true;
        let mut list = vec![parent.identity()];
        let mut k = 0;
        while k < list.len() {
            let a = list[k];
            k += 1;
            for &s in seeds {
                let y = parent.mul(a, s);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
        }
        Ok(Self::from_closed(parent, member))
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self::generated(parent, &[]).expect("no seeds")
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_closed(parent, vec![true; parent.order()])
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `s H s^{-1}`
    pub fn conjugate(&self, s: usize) -> Subgroup {
        let mut member = vec![false; self.parent.order()];
        for &h in &self.elements {
            member[self.parent.conj(s, h)] = true;
        }
        Self::from_closed(&self.parent, member)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let seeds: Vec<usize> = self.elements.iter().chain(&other.elements).copied().collect();
        Self::generated(&self.parent, &seeds).expect("valid seeds")
    }

    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let mut member = vec![false; g.order()];
        for s in g.elements() {
            member[s] = self.elements.iter().all(|&h| self.member[g.conj(s, h)]);
        }
        Self::from_closed(g, member)
    }

    /// Representatives of the left cosets `gH`, each the smallest index in
    /// its coset, in increasing order.
    pub fn left_coset_reps(&self) -> Vec<usize> {
        self.coset_reps(|g, h| self.parent.mul(g, h))
    }

    /// Representatives of the right cosets `Hg`.
    pub fn right_coset_reps(&self) -> Vec<usize> {
        self.coset_reps(|g, h| self.parent.mul(h, g))
    }

    fn coset_reps(&self, act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let mut seen = vec![false; self.parent.order()];
        let mut reps = Vec::new();
        for g in self.parent.elements() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &self.elements {
                seen[act(g, h)] = true;
            }
        }
        reps
    }

    /// The subgroup as a group in its own right, with element `k` standing
    /// for `elements()[k]`, and the inclusion into the parent.
    pub fn as_group(&self) -> (FiniteGroup, GroupHom) {
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed subgroup");
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        let h = FiniteGroup::from_table_trusted(&table, None, None);
        let inc = GroupHom { src: h.clone(), dst: self.parent.clone(), map: self.elements.clone() };
        (h, inc)
    }
}

/// `G/N` for a normal subgroup `N`, cosets ordered by their smallest element.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    parent: FiniteGroup,
    kernel: Subgroup,
    reps: Vec<usize>,
    quotient: FiniteGroup,
    projection: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(kernel: &Subgroup) -> Result<Self> {
        let g = kernel.parent();
        if !kernel.is_normal() {
            let conjugator = g
                .elements()
                .find(|&s| kernel.elements().iter().any(|&h| !kernel.contains(g.conj(s, h))))
                .unwrap_or(0);
            return Err(Error::NotNormal { conjugator });
        }
        let reps = kernel.left_coset_reps();
        let mut projection = vec![usize::MAX; g.order()];
        for (q, &r) in reps.iter().enumerate() {
            for &h in kernel.elements() {
                projection[g.mul(r, h)] = q;
            }
        }
        let table: Vec<Vec<usize>> =
            reps.iter().map(|&a| reps.iter().map(|&b| projection[g.mul(a, b)]).collect()).collect();
        let quotient = FiniteGroup::from_table_trusted(&table, None, None);
        Ok(QuotientGroup { parent: g.clone(), kernel: kernel.clone(), reps, quotient, projection })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    pub fn projection(&self) -> GroupHom {
        GroupHom { src: self.parent.clone(), dst: self.quotient.clone(), map: self.projection.clone() }
    }
}

/// A homomorphism stored as an index table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    src: FiniteGroup,
    dst: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(src: &FiniteGroup, dst: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.order() || map.iter().any(|&x| x >= dst.order()) {
            return Err(Error::InvalidInput("map table has wrong shape".into()));
        }
        for a in src.elements() {
            for b in src.elements() {
                if map[src.mul(a, b)] != dst.mul(map[a], map[b]) {
                    return Err(Error::InvalidInput(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom { src: src.clone(), dst: dst.clone(), map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { src: g.clone(), dst: g.clone(), map: g.elements().collect() }
    }

    /// Projection of a direct product onto factor `j`.
    pub fn factor_projection(g: &FiniteGroup, j: usize) -> Result<Self> {
        let ps = g.product_structure().ok_or(Error::NotAProduct)?;
        Ok(GroupHom { src: g.clone(), dst: ps.factor(j).clone(), map: g.elements().map(|x| ps.project(j, x)).collect() })
    }

    /// Embedding of factor `j` into a direct product.
    pub fn factor_embedding(g: &FiniteGroup, j: usize) -> Result<Self> {
        let ps = g.product_structure().ok_or(Error::NotAProduct)?;
        let f = ps.factor(j);
        Ok(GroupHom { src: f.clone(), dst: g.clone(), map: f.elements().map(|x| ps.embed(j, x)).collect() })
    }

    pub fn src(&self) -> &FiniteGroup {
        &self.src
    }

    pub fn dst(&self) -> &FiniteGroup {
        &self.dst
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `after ∘ self`
    pub fn then(&self, after: &GroupHom) -> GroupHom {
        assert!(self.dst == after.src);
        GroupHom { src: self.src.clone(), dst: after.dst.clone(), map: self.map.iter().map(|&x| after.map[x]).collect() }
    }

    pub fn kernel(&self) -> Subgroup {
        let mut member = vec![false; self.src.order()];
        for x in self.src.elements() {
            member[x] = self.map[x] == self.dst.identity();
        }
        Subgroup::from_closed(&self.src, member)
    }

    pub fn image(&self) -> Subgroup {
        let mut member = vec![false; self.dst.order()];
        for &y in &self.map {
            member[y] = true;
        }
        Subgroup::from_closed(&self.dst, member)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.dst.order()
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let mut member = vec![false; self.dst.order()];
        for &x in h.elements() {
            member[self.map[x]] = true;
        }
        Subgroup::from_closed(&self.dst, member)
    }
}

/// All subgroups, ordered by size then elements. Intended for small groups.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut list: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let s = Subgroup::generated(g, &[x]).expect("valid seed");
        if found.insert(s.elements.clone()) {
            list.push(s);
        }
    }
    let cyclic = list.clone();
    let mut k = 0;
    while k < list.len() {
        for c in &cyclic {
            let j = list[k].join(c);
            if found.insert(j.elements.clone()) {
                list.push(j);
            }
        }
        k += 1;
    }
    list.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    list
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(Subgroup::is_normal).collect()
}

/// A Sylow `p`-subgroup, grown greedily from the trivial group by adjoining
/// the smallest element that keeps it a `p`-group.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Subgroup {
    let mut target = 1;
    let mut n = g.order();
    while n.is_multiple_of(p) {
        n /= p;
        target *= p;
    }
    let is_p_power = |mut m: usize| {
        while m.is_multiple_of(p) {
            m /= p;
        }
        m == 1
    };
    let mut sub = Subgroup::trivial(g);
    while sub.order() < target {
        let next = g
            .elements()
            .filter(|&x| !sub.contains(x) && is_p_power(g.element_order(x)))
            .map(|x| sub.join(&Subgroup::generated(g, &[x]).expect("valid")))
            .find(|s| is_p_power(s.order()))
            .expect("Sylow theorem guarantees a larger p-subgroup");
        sub = next;
    }
    sub
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn missing_inverse_is_rejected() {
        let err = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { .. }));
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A loop of order 5 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley_table(&t) {
            Err(Error::NotAGroup { witness, .. }) => {
                let [a, b, c] = [witness[0], witness[1], witness[2]];
                assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
            }
            other => panic!("expected NotAGroup, got {other:?}"),
        }
    }

    #[test]
    fn quotient_of_c2_c4() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)).unwrap();
        let ps = g.product_structure().unwrap();
        let n = Subgroup::generated(&g, &[ps.embed(0, 1)]).unwrap();
        let q = QuotientGroup::new(&n).unwrap();
        assert_eq!(q.group().order(), 4);
        assert_eq!(q.group().exponent(), 4);
        let pi = q.projection();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(pi.apply(g.mul(a, b)), q.group().mul(pi.apply(a), pi.apply(b)));
            }
        }
    }

    #[test]
    fn quotient_extremes() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(QuotientGroup::new(&Subgroup::whole(&g)).unwrap().group().order(), 1);
        let q = QuotientGroup::new(&Subgroup::trivial(&g)).unwrap();
        assert!((0..6).all(|x| q.project(x) == x));
        assert_eq!(q.group().table(), g.table());
    }

    #[test]
    fn non_normal_quotient_fails() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]).unwrap();
        assert!(!h.is_normal());
        assert!(matches!(QuotientGroup::new(&h), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn subgroup_counts() {
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(all_subgroups(&v4).len(), 5);
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(all_subgroups(&s3).len(), 6);
        assert_eq!(normal_subgroups(&s3).len(), 3);
    }
}
