//! Square classes and Hilbert symbols over the completions of `Q`, and the
//! Galois data of multiquadratic fields `Q(sqrt a_1, ..., sqrt a_k)`.
//!
//! A rational `n/d` is handled through the integer `n*d`, which lies in the
//! same square class. Symbols are computed on the integer square classes.
//!
//! The Galois group of `Q(sqrt a_1, ..., sqrt a_k)` is `(Z/2)^k` with `sigma`
//! sending `sqrt a_j` to `(-1)^{sigma_j} sqrt a_j`. Element `sigma` has index
//! `sum_j sigma_j 2^{k-1-j}`, so the first generator is the high bit and the
//! group is the left-nested product `C2 x C2 x ...`. In particular
//! `(13, 17, 5, 29)` lands on `V4 x V4` with the first pair in the left factor.
//!
//! The product defining `phi(x) = prod_{v in S} (x, b)_v` is finite: at an
//! odd prime not dividing `bx` both entries are units and the symbol is 1.
//! So only `v | 2 b x` and `v = inf` are visited. The infinite place counts
//! as split in `Q(sqrt a)` exactly when `a > 0`.

pub mod example2;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::multinorm::{sha_tate_with, DecompositionConfig, Place as ConfigPlace, ShaReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        let t = s.trim().trim_start_matches("p=");
        match t {
            "inf" | "oo" | "∞" | "infinity" => Ok(Place::Infinite),
            _ => {
                let p: u64 = t.parse().map_err(|_| Error::Parse(format!("bad place `{s}`")))?;
                Place::finite(p)
            }
        }
    }
}

impl Place {
    pub fn finite(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not prime")))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors with multiplicity, by trial division.
pub fn factor(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// Integer in the square class of `x`.
fn class(x: Rational64) -> i128 {
    assert!(*x.numer() != 0, "zero has no square class");
    *x.numer() as i128 * *x.denom() as i128
}

/// The squarefree integer in the square class of `x`.
pub fn squarefree_part(x: Rational64) -> i128 {
    let n = class(x);
    let mut out: i128 = n.signum();
    for (p, e) in factor(n.unsigned_abs()) {
        if e % 2 == 1 {
            out *= p as i128;
        }
    }
    out
}

fn split_valuation(mut n: i128, p: u64) -> (u32, i128) {
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol `(u/p)` for an odd prime `p`.
pub fn legendre(u: i128, p: u64) -> i8 {
    let r = u.rem_euclid(p as i128) as u128;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p as u128 - 1) / 2, p as u128) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_square_qp(x: Rational64, v: Place) -> bool {
    let n = class(x);
    match v {
        Place::Infinite => n > 0,
        Place::Finite(2) => {
            let (e, u) = split_valuation(n, 2);
            e % 2 == 0 && u.rem_euclid(8) == 1
        }
        Place::Finite(p) => {
            let (e, u) = split_valuation(n, p);
            e % 2 == 0 && legendre(u, p) == 1
        }
    }
}

fn eps(u: i128) -> u32 {
    (((u - 1) / 2).rem_euclid(2)) as u32
}

fn omega(u: i128) -> u32 {
    let r = u.rem_euclid(8);
    (((r * r - 1) / 8) % 2) as u32
}

/// The Hilbert symbol `(a, b)_v` as `1` or `-1`.
pub fn hilbert_symbol(a: Rational64, b: Rational64, v: Place) -> i8 {
    let (x, y) = (class(a), class(b));
    match v {
        Place::Infinite => {
            if x < 0 && y < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (al, u) = split_valuation(x, 2);
            let (be, w) = split_valuation(y, 2);
            let e = eps(u) * eps(w) + al * omega(w) + be * omega(u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let (al, u) = split_valuation(x, p);
            let (be, w) = split_valuation(y, p);
            let mut s: i8 = if (al * be) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= legendre(u, p);
            }
            if al % 2 == 1 {
                s *= legendre(w, p);
            }
            s
        }
    }
}

/// `inf`, `2` and the odd primes dividing any of `xs`, in increasing order.
pub fn support(xs: &[Rational64]) -> Vec<Place> {
    let mut primes: Vec<u64> = vec![2];
    for &x in xs {
        for (p, _) in factor(class(x).unsigned_abs()) {
            primes.push(p);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    std::iter::once(Place::Infinite).chain(primes.into_iter().map(Place::Finite)).collect()
}

/// `prod_v (a, b)_v` over all places; 1 by reciprocity.
pub fn hilbert_product(a: Rational64, b: Rational64) -> i8 {
    support(&[a, b]).into_iter().map(|v| hilbert_symbol(a, b, v)).product()
}

/// Squarefree integers, none 0 or 1, independent modulo squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticTuple {
    generators: Vec<i64>,
}

impl QuadraticTuple {
    pub fn new(generators: Vec<i64>) -> Result<Self> {
        for &a in &generators {
            if a == 0 || a == 1 {
                return Err(Error::InvalidInput(format!("{a} does not define a quadratic field")));
            }
            if squarefree_part(Rational64::from_integer(a)) != a as i128 {
                return Err(Error::InvalidInput(format!("{a} is not squarefree")));
            }
        }
        let k = generators.len();
        if k > 16 {
            return Err(Error::InvalidInput("too many generators".into()));
        }
        let t = QuadraticTuple { generators };
        for mask in 1..(1u32 << k) {
            if t.class_of(mask) == 1 {
                return Err(Error::InvalidInput(format!("generators are dependent modulo squares (subset {mask:#b})")));
            }
        }
        Ok(t)
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Squarefree representative of `prod a_j^{e_j}`, where bit `k-1-j` of
    /// `mask` is `e_j`.
    pub fn class_of(&self, mask: u32) -> i128 {
        let k = self.len();
        let mut prod: i128 = 1;
        for (j, &a) in self.generators.iter().enumerate() {
            if mask >> (k - 1 - j) & 1 == 1 {
                let g = prod.unsigned_abs().gcd(&(a.unsigned_abs() as u128)) as i128;
                prod = (prod / g) * (a as i128 / g);
            }
        }
        squarefree_i128(prod)
    }
}

fn squarefree_i128(n: i128) -> i128 {
    let mut out = n.signum();
    for (p, e) in factor(n.unsigned_abs()) {
        if e % 2 == 1 {
            out *= p as i128;
        }
    }
    out
}

/// `(Z/2)^k` as the left-nested product of copies of `C2`.
pub fn elementary_abelian(k: usize) -> FiniteGroup {
    let mut g = FiniteGroup::trivial();
    for j in 0..k {
        g = if j == 0 { FiniteGroup::cyclic(2) } else { FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(2)).expect("small") };
    }
    g.with_name(format!("(C2)^{k}"))
}

fn is_xor_group(g: &FiniteGroup) -> bool {
    g.elements().all(|x| g.elements().all(|y| g.mul(x, y) == (x ^ y)))
}

#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub place: Place,
    pub subgroup: Subgroup,
    /// Exponent vectors (bitmasks) whose product is a square at the place.
    pub local_squares: Vec<u32>,
}

impl LocalDecomposition {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }
}

/// Decomposition group at `v` inside `g`, which must be `(Z/2)^k` with
/// XOR multiplication (as built by [`elementary_abelian`] or `V4 x V4`).
pub fn multiquadratic_decomposition_in(t: &QuadraticTuple, v: Place, g: &FiniteGroup) -> Result<LocalDecomposition> {
    let k = t.len();
    if g.order() != 1 << k || !is_xor_group(g) {
        return Err(Error::InvalidInput(format!("group is not (Z/2)^{k} in bit coordinates")));
    }
    let local_squares: Vec<u32> =
        (0..1u32 << k).filter(|&m| is_square_qp(Rational64::from_integer(t.class_of(m) as i64), v)).collect();
    let elements: Vec<usize> = (0..1usize << k)
        .filter(|&s| local_squares.iter().all(|&m| (s as u32 & m).count_ones().is_multiple_of(2)))
        .collect();
    let subgroup = Subgroup::new(g, &elements)?;
    Ok(LocalDecomposition { place: v, subgroup, local_squares })
}

pub fn multiquadratic_decomposition(t: &QuadraticTuple, v: Place) -> Result<LocalDecomposition> {
    multiquadratic_decomposition_in(t, v, &elementary_abelian(t.len()))
}

/// `{inf, 2}` together with the primes dividing some generator.
pub fn critical_places(t: &QuadraticTuple) -> Vec<Place> {
    let xs: Vec<Rational64> = t.generators.iter().map(|&a| Rational64::from_integer(a)).collect();
    support(&xs)
}

/// Decomposition data at the critical places, on `g`.
pub fn multiquadratic_config_in(t: &QuadraticTuple, g: &FiniteGroup) -> Result<DecompositionConfig> {
    let places = critical_places(t)
        .into_iter()
        .map(|v| {
            let d = multiquadratic_decomposition_in(t, v, g)?;
            Ok(ConfigPlace { label: format!("p={v}"), subgroup: d.subgroup })
        })
        .collect::<Result<Vec<_>>>()?;
    DecompositionConfig::new(g, places)
}

pub fn multiquadratic_config(t: &QuadraticTuple) -> Result<DecompositionConfig> {
    multiquadratic_config_in(t, &elementary_abelian(t.len()))
}

pub fn sha_of_multiquadratic(t: &QuadraticTuple) -> Result<ShaReport> {
    sha_of_multiquadratic_with(t, &Caps::default())
}

pub fn sha_of_multiquadratic_with(t: &QuadraticTuple, caps: &Caps) -> Result<ShaReport> {
    if t.len() > 4 {
        return Err(Error::TooLarge { cap: 16 });
    }
    sha_tate_with(&multiquadratic_config(t)?, caps)
}

/// `phi(x) = prod (x, b)_v` over the places `v` at which `a` is a square.
pub fn phi_value(a: i64, b: i64, x: Rational64) -> i8 {
    let (ra, rb) = (Rational64::from_integer(a), Rational64::from_integer(b));
    support(&[rb, x])
        .into_iter()
        .filter(|&v| is_square_qp(ra, v))
        .map(|v| hilbert_symbol(x, rb, v))
        .product()
}

/// The first `x` in `1, -1, 2, -2, ...` up to `bound` with `phi(x) = -1`.
pub fn phi_witness(a: i64, b: i64, bound: i64) -> Option<i64> {
    (1..=bound).flat_map(|n| [n, -n]).find(|&x| phi_value(a, b, Rational64::from_integer(x)) == -1)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalDecompositionSummary {
    pub place: Place,
    pub order: usize,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BiquadraticReport {
    pub a: i64,
    pub b: i64,
    pub decompositions: Vec<LocalDecompositionSummary>,
    pub sha_invariants: Vec<crate::linalg::Int>,
    pub phi_witness: Option<i64>,
}

/// Local data, Tate's kernel and a `phi` witness for `Q(sqrt a, sqrt b)`.
pub fn biquadratic_report(a: i64, b: i64) -> Result<BiquadraticReport> {
    let t = QuadraticTuple::new(vec![a, b])?;
    let decompositions = critical_places(&t)
        .into_iter()
        .map(|v| {
            let d = multiquadratic_decomposition(&t, v)?;
            Ok(LocalDecompositionSummary { place: v, order: d.order(), elements: d.subgroup.elements().to_vec() })
        })
        .collect::<Result<Vec<_>>>()?;
    let sha = sha_of_multiquadratic(&t)?;
    Ok(BiquadraticReport { a, b, decompositions, sha_invariants: sha.kernel_invariant_factors, phi_witness: phi_witness(a, b, 200) })
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let r: Rational64 = s.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if *r.numer() == 0 {
        return Err(Error::InvalidInput("zero has no Hilbert symbol".into()));
    }
    Ok(r)
}
