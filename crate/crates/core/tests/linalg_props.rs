use std::collections::BTreeSet;

use multinorm_core::linalg::finite::reduce;
use multinorm_core::linalg::smith::invariant_factors;
use multinorm_core::linalg::{induced_map, smith_normal_form, smith_normal_form_with, SnfOptions, SnfStrategy};
use multinorm_core::{AbelianGroupPresentation, Int, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mat(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows)
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> Vec<Vec<i64>> {
    (0..r)
        .map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
        .collect()
}

/// A unimodular matrix and its inverse, built from elementary operations.
fn unimodular_pair(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut w: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut winv = w.clone();
    if n < 2 {
        return (w, winv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = rng.gen_range(-2..=2);
        let src = w[j].clone();
        for (x, y) in w[i].iter_mut().zip(&src) {
            *x += c * y;
        }
        for row in winv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (w, winv)
}

fn check_reconstruction(rows: &[Vec<i64>]) {
    let m = mat(rows);
    let snf = smith_normal_form(&m);
    assert_eq!(snf.u().mul(&m).mul(&snf.v()), snf.d());
    assert_eq!(snf.u().mul(&snf.u_inv()), IntMatrix::identity(m.nrows()));
    assert_eq!(snf.v().mul(&snf.v_inv()), IntMatrix::identity(m.ncols()));
    let d = snf.invariant_factors();
    for w in d.windows(2) {
        assert!(w[0].divides(&w[1]));
    }
}

proptest! {
    #[test]
    fn smith_reconstruction_small(rows in matrix_strategy(12, 12)) {
        check_reconstruction(&rows);
    }

    #[test]
    fn invariant_factors_survive_unimodular_changes(rows in matrix_strategy(7, 7), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = mat(&rows);
        let (p, _) = unimodular_pair(&mut rng, m.nrows(), 12);
        let (q, _) = unimodular_pair(&mut rng, m.ncols(), 12);
        let moved = mat(&p).mul(&m).mul(&mat(&q));
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&moved));

        let mut perm_rows = rows.clone();
        perm_rows.reverse();
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&mat(&perm_rows)));
        prop_assert_eq!(invariant_factors(&m), invariant_factors(&m.transpose()));
    }

    #[test]
    fn dense_and_sparse_elimination_agree(rows in matrix_strategy(10, 10)) {
        let m = mat(&rows);
        let opts = |strategy| SnfOptions { strategy, ..Default::default() };
        let dense = smith_normal_form_with(&m, opts(SnfStrategy::Dense));
        let sparse = smith_normal_form_with(&m, opts(SnfStrategy::Sparse));
        prop_assert_eq!(dense.invariant_factors(), sparse.invariant_factors());
        prop_assert_eq!(sparse.u().mul(&m).mul(&sparse.v()), sparse.d());
    }
}

#[test]
fn smith_reconstruction_large() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for (r, c, density) in [(60, 80, 1.0), (100, 100, 1.0), (200, 200, 0.03), (150, 200, 0.1)] {
        check_reconstruction(&random_matrix(&mut rng, r, c, density));
    }
}

/// Product of the invariant factors of a matrix through its `k x k` minors.
fn determinantal_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&det(sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    // Fraction-free (Bareiss) elimination.
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// A random complex `Z^p -> Z^n -> Z^m` with `d_out * d_in = 0`, and the
/// rank of `d_out` implied by its construction through a unimodular basis.
fn random_complex(rng: &mut ChaCha8Rng) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = rng.gen_range(1..=6);
    let r = rng.gen_range(0..=n);
    let (w, winv) = unimodular_pair(rng, n, 8);
    let (m, p) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let x = random_matrix(rng, m, r, 0.8).into_iter().map(|row| row.into_iter().map(|v| v % 4).collect()).collect::<Vec<Vec<i64>>>();
    let y = random_matrix(rng, n - r, p, 0.8).into_iter().map(|row| row.into_iter().map(|v| v % 4).collect()).collect::<Vec<Vec<i64>>>();
    // d_out = X * (first r rows of W^-1), d_in = (last n - r columns of W) * Y.
    let d_out = (0..m).map(|i| (0..n).map(|j| (0..r).map(|k| x[i][k] * winv[k][j]).sum()).collect()).collect();
    let d_in = (0..n).map(|i| (0..p).map(|j| (0..n - r).map(|k| w[i][r + k] * y[k][j]).sum()).collect()).collect();
    (d_out, d_in)
}

fn rational_rank(m: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    determinantal_divisors(&big).len()
}

#[test]
fn subquotient_matches_minor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let (d_out, d_in) = random_complex(&mut rng);
        let n = d_in.len();
        let pres = AbelianGroupPresentation::subquotient(&mat(&d_out), &mat(&d_in)).unwrap();

        // Torsion of ker/im equals the torsion of Z^n / im(d_in); its
        // invariant factors are successive quotients of determinantal divisors.
        let big: Vec<Vec<BigInt>> = d_in.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let dd = determinantal_divisors(&big);
        let mut expect = Vec::new();
        let mut prev = BigInt::from(1);
        for d in &dd {
            let f = (d / &prev).abs();
            if f != BigInt::from(1) {
                expect.push(f);
            }
            prev = d.clone();
        }
        let free = n - rational_rank(&d_out) - dd.len();
        let torsion: Vec<BigInt> = pres.orders().iter().filter(|o| !o.is_zero()).map(|o| o.to_bigint()).collect();
        assert_eq!(torsion, expect, "d_out {d_out:?} d_in {d_in:?}");
        assert_eq!(pres.free_rank(), free);
        for z in pres.generators() {
            assert!(pres.is_cycle(z));
        }
    }
}

fn finite_quotient(relations: &[Vec<i64>], n: usize) -> AbelianGroupPresentation {
    let cols: Vec<Vec<i64>> = (0..n).map(|i| relations.iter().map(|r| r[i]).collect()).collect();
    AbelianGroupPresentation::subquotient(&IntMatrix::zeros(0, n), &mat(&cols)).unwrap()
}

proptest! {
    #[test]
    fn induced_maps_compose(seed in any::<u64>()) {
        // Z^a / R1 -> Z^b / R2 -> Z^c / R3 with f R1 inside R2 and g R2 inside R3.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f = random_matrix(&mut rng, b, a, 0.7);
        let g = random_matrix(&mut rng, c, b, 0.7);
        let k1 = rng.gen_range(1..=4);
        let r1 = random_matrix(&mut rng, a, k1, 0.7);
        let fr1 = mat(&f).mul(&mat(&r1));
        let extra2 = mat(&random_matrix(&mut rng, b, 2, 0.5));
        let r2 = IntMatrix::hstack(&[&fr1, &extra2]);
        let gr2 = mat(&g).mul(&r2);
        let extra3 = mat(&random_matrix(&mut rng, c, 2, 0.5));
        let r3 = IntMatrix::hstack(&[&gr2, &extra3]);

        let p1 = AbelianGroupPresentation::subquotient(&IntMatrix::zeros(0, a), &mat(&r1)).unwrap();
        let p2 = AbelianGroupPresentation::subquotient(&IntMatrix::zeros(0, b), &r2).unwrap();
        let p3 = AbelianGroupPresentation::subquotient(&IntMatrix::zeros(0, c), &r3).unwrap();
        let mf = induced_map(&mat(&f), &p1, &p2).unwrap();
        let mg = induced_map(&mat(&g), &p2, &p3).unwrap();
        let mgf = induced_map(&mat(&g).mul(&mat(&f)), &p1, &p3).unwrap();
        let prod = mg.mul(&mf);
        for j in 0..p1.num_generators() {
            prop_assert_eq!(reduce(&mgf.column(j), p3.orders()), reduce(&prod.column(j), p3.orders()));
        }
    }
}

/// Elements of `Z/m_1 x ... x Z/m_k` as tuples.
fn elements(orders: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &m in orders {
        out = out.into_iter().flat_map(|e| (0..m).map(move |x| [e.clone(), vec![x]].concat())).collect();
    }
    out
}

fn span(orders: &[i64], gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let mut set: BTreeSet<Vec<i64>> = [vec![0; orders.len()]].into();
    loop {
        let mut grown = set.clone();
        for x in &set {
            for g in gens {
                grown.insert(x.iter().zip(g).zip(orders).map(|((a, b), m)| (a + b).rem_euclid(*m)).collect());
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

fn coset_label(orders: &[i64], sub: &BTreeSet<Vec<i64>>, x: &[i64]) -> Vec<i64> {
    sub.iter().map(|s| x.iter().zip(s).zip(orders).map(|((a, b), m)| (a + b).rem_euclid(*m)).collect::<Vec<_>>()).min().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `A -> A/B x A/C -> A/BC -> 1` is exact, checked by enumeration, and the
    /// quotient orders agree with cokernel computations.
    #[test]
    fn two_quotient_sequence_is_exact(
        orders in prop::collection::vec(1i64..=6, 1..=3),
        raw_b in prop::collection::vec(prop::collection::vec(0i64..6, 3), 0..=2),
        raw_c in prop::collection::vec(prop::collection::vec(0i64..6, 3), 0..=2),
    ) {
        let k = orders.len();
        let cut = |v: &Vec<Vec<i64>>| v.iter().map(|g| g[..k].to_vec()).collect::<Vec<_>>();
        let (gb, gc) = (cut(&raw_b), cut(&raw_c));
        let all = elements(&orders);
        let b = span(&orders, &gb);
        let c = span(&orders, &gc);
        let bc = span(&orders, &[gb.clone(), gc.clone()].concat());

        let f = |x: &Vec<i64>| (coset_label(&orders, &b, x), coset_label(&orders, &c, x));
        let image: BTreeSet<_> = all.iter().map(f).collect();
        let quot_b: BTreeSet<_> = all.iter().map(|x| coset_label(&orders, &b, x)).collect();
        let quot_c: BTreeSet<_> = all.iter().map(|x| coset_label(&orders, &c, x)).collect();
        let mut kernel = BTreeSet::new();
        let mut g_image = BTreeSet::new();
        let zero = coset_label(&orders, &bc, &vec![0; k]);
        for x in &quot_b {
            for y in &quot_c {
                let diff: Vec<i64> = x.iter().zip(y).zip(&orders).map(|((a, b), m)| (a - b).rem_euclid(*m)).collect();
                let label = coset_label(&orders, &bc, &diff);
                if label == zero {
                    kernel.insert((x.clone(), y.clone()));
                }
                g_image.insert(label);
            }
        }
        prop_assert_eq!(&image, &kernel);
        let quot_bc: BTreeSet<_> = all.iter().map(|x| coset_label(&orders, &bc, x)).collect();
        prop_assert_eq!(g_image.len(), quot_bc.len());

        let diag: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect()).collect();
        let order_of = |gens: &[Vec<i64>]| {
            let rel = [diag.clone(), gens.to_vec()].concat();
            finite_quotient(&rel, k).order().unwrap().to_i64().unwrap() as usize
        };
        prop_assert_eq!(order_of(&gb), quot_b.len());
        prop_assert_eq!(order_of(&gc), quot_c.len());
        prop_assert_eq!(order_of(&[gb, gc].concat()), quot_bc.len());
    }
}

#[test]
fn triplet_text_round_trip() {
    let m = mat(&[vec![1, 0, -3], vec![0, 0, 0], vec![7, 2, 0]]);
    assert_eq!(IntMatrix::from_triplet_text(&m.to_triplet_text()).unwrap(), m);
    assert_eq!(m.nnz(), 4);
    assert_eq!(m.get(0, 2), Int::from(-3));
}
