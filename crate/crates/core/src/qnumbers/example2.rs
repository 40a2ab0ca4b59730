//! The triple `Q(sqrt 13), Q(sqrt 17), Q(sqrt 221)` over `Q`.
//!
//! Locally, the norm group of `Q_v(sqrt d)` is the kernel of `(., d)_v` on
//! `Q_v^x / squares`. Since `(., 221)_v = (., 13)_v (., 17)_v`, the three
//! kernels can only fail to generate when all three characters coincide and
//! are nontrivial, which the product relation rules out. Each certificate
//! checks this on explicit square-class generators.
//!
//! Globally, `chi(x) = prod (x, 17)_v` over the places split in `Q(sqrt 13)`
//! is sampled on norms `x^2 + xy - ((d - 1)/4) y^2` of integers of each field
//! and evaluated until a value `-1` turns up.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{critical_places, hilbert_symbol, legendre, phi_value, phi_witness, Place, QuadraticTuple};

pub const FIELDS: [i64; 3] = [13, 17, 221];
pub const DEFAULT_SEED: u64 = 0x5eed_0002;
pub const SAMPLES_PER_FIELD: usize = 128;
pub const WITNESS_BOUND: i64 = 200;

#[derive(Clone, Debug, Serialize)]
pub struct LocalCertificate {
    pub place: Place,
    /// Representatives of a basis of `Q_v^x / squares`.
    pub square_class_basis: Vec<i64>,
    /// Values of `(., d)_v` on the basis, one row per field.
    pub characters: Vec<Vec<i8>>,
    pub product_relation: bool,
    /// Number of square classes in the product of the three kernels.
    pub product_of_kernels: usize,
    pub square_classes: usize,
    pub full: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormSample {
    pub field: i64,
    pub x: i64,
    pub y: i64,
    pub norm: i64,
    pub chi: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSampling {
    pub field: i64,
    pub samples: usize,
    pub killed: usize,
    pub first_failure: Option<NormSample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example2Report {
    pub fields: [i64; 3],
    pub seed: u64,
    pub local: Vec<LocalCertificate>,
    pub locally_everything: bool,
    pub character: String,
    pub sampling: Vec<FieldSampling>,
    pub witness: Option<i64>,
    pub index_lower_bound: u32,
    pub index_quoted: u32,
    pub multinorm_fails: bool,
}

fn square_class_basis(v: Place) -> Vec<i64> {
    match v {
        Place::Infinite => vec![-1],
        Place::Finite(2) => vec![-1, 2, 5],
        Place::Finite(p) => {
            let u = (2..p as i64).find(|&u| legendre(u as i128, p) == -1).expect("odd prime has a nonresidue");
            vec![p as i64, u]
        }
    }
}

pub fn local_certificate(v: Place) -> LocalCertificate {
    let basis = square_class_basis(v);
    let n = basis.len();
    let characters: Vec<Vec<i8>> = FIELDS
        .iter()
        .map(|&d| {
            basis.iter().map(|&g| hilbert_symbol(Rational64::from_integer(g), Rational64::from_integer(d), v)).collect()
        })
        .collect();
    let product_relation = (0..n).all(|j| characters[2][j] == characters[0][j] * characters[1][j]);

    // Square classes as bitmasks over the basis; a character is the mask of
    // basis elements where it is -1.
    let masks: Vec<u32> =
        characters.iter().map(|row| row.iter().enumerate().filter(|(_, &s)| s == -1).map(|(j, _)| 1 << j).sum()).collect();
    let size = 1usize << n;
    let mut span = vec![false; size];
    span[0] = true;
    for &m in &masks {
        for x in 0..size as u32 {
            if (x & m).count_ones() % 2 == 0 && !span[x as usize] {
                let closed: Vec<usize> = (0..size).filter(|&y| span[y]).collect();
                for y in closed {
                    span[y ^ x as usize] = true;
                }
            }
        }
    }
    let product_of_kernels = span.iter().filter(|&&b| b).count();
    LocalCertificate {
        place: v,
        square_class_basis: basis,
        characters,
        product_relation,
        product_of_kernels,
        square_classes: size,
        full: product_of_kernels == size,
    }
}

/// Norm of `x + y (1 + sqrt d)/2` for `d = 1 mod 4`.
pub fn integral_norm(d: i64, x: i64, y: i64) -> i64 {
    x * x + x * y - (d - 1) / 4 * y * y
}

pub fn chi(x: Rational64) -> i8 {
    phi_value(13, 17, x)
}

fn sample_field(d: i64, rng: &mut ChaCha8Rng, samples: usize) -> FieldSampling {
    let mut killed = 0;
    let mut first_failure = None;
    let mut taken = 0;
    while taken < samples {
        let (x, y) = (rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        let norm = integral_norm(d, x, y);
        if norm == 0 {
            continue;
        }
        taken += 1;
        let c = chi(Rational64::from_integer(norm));
        if c == 1 {
            killed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(NormSample { field: d, x, y, norm, chi: c });
        }
    }
    FieldSampling { field: d, samples, killed, first_failure }
}

pub fn example2_report(seed: u64) -> Example2Report {
    example2_report_sized(seed, SAMPLES_PER_FIELD)
}

pub fn example2_report_sized(seed: u64, samples: usize) -> Example2Report {
    let t = QuadraticTuple::new(vec![13, 17]).expect("independent");
    let local: Vec<LocalCertificate> = critical_places(&t).into_iter().map(local_certificate).collect();
    let locally_everything = local.iter().all(|c| c.full && c.product_relation);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampling: Vec<FieldSampling> = FIELDS.iter().map(|&d| sample_field(d, &mut rng, samples)).collect();
    let norms_killed = sampling.iter().all(|s| s.killed == s.samples);
    let witness = phi_witness(13, 17, WITNESS_BOUND);
    let multinorm_fails = locally_everything && norms_killed && witness.is_some();
    Example2Report {
        fields: FIELDS,
        seed,
        local,
        locally_everything,
        character: "chi(x) = prod over v split in Q(sqrt 13) of (x, 17)_v".into(),
        sampling,
        witness,
        index_lower_bound: if multinorm_fails { 2 } else { 1 },
        index_quoted: 2,
        multinorm_fails,
    }
}
