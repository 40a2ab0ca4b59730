use multinorm_core::group::all_subgroups;
use multinorm_core::group::named::named;
use multinorm_core::multinorm::{sha_tate, verify_multinorm_pair, verify_sha_surjectivity, DecompositionConfig, Place, Verdict};
use multinorm_core::qnumbers::elementary_abelian;
use multinorm_core::{Caps, FiniteGroup, Int, Subgroup};
use proptest::prelude::*;

fn config(g: &FiniteGroup, subs: &[Subgroup]) -> DecompositionConfig {
    let places = subs.iter().enumerate().map(|(k, s)| Place { label: format!("v{k}"), subgroup: s.clone() }).collect();
    DecompositionConfig::new(g, places).unwrap()
}

fn order(cfg: &DecompositionConfig) -> u64 {
    sha_tate(cfg).unwrap().order().to_i64().unwrap() as u64
}

/// Rank over F2 of a list of bitmasks.
fn f2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = rows.iter().position(|&r| r >> bit & 1 == 1) else { continue };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if *r >> bit & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// For `G = (Z/2)^k`, `H^3(G, Z)` is dual to `H_2(G) = Λ²G`, and the kernel of
/// restriction is dual to `Λ²G` modulo the images of `Λ²D_v`.
fn exterior_oracle(k: usize, subs: &[Vec<usize>]) -> usize {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let wedge = |x: usize, y: usize| -> u64 {
        let mut m = 0u64;
        for (n, &(i, j)) in pairs.iter().enumerate() {
            let c = ((x >> i & 1) * (y >> j & 1)) ^ ((x >> j & 1) * (y >> i & 1));
            m |= (c as u64) << n;
        }
        m
    };
    let mut image = Vec::new();
    for s in subs {
        for &x in s {
            for &y in s {
                image.push(wedge(x, y));
            }
        }
    }
    pairs.len() - f2_rank(image)
}

#[test]
fn elementary_abelian_kernels_match_the_exterior_square() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for k in 2..=4 {
        let g = elementary_abelian(k);
        assert!(g.elements().all(|x| g.elements().all(|y| g.mul(x, y) == x ^ y)));
        let subs = all_subgroups(&g);
        let trials = if k == 4 { 6 } else { 40 };
        for _ in 0..trials {
            let n = rng.gen_range(0..=4);
            let chosen: Vec<Subgroup> = (0..n).map(|_| subs[rng.gen_range(0..subs.len())].clone()).collect();
            let report = sha_tate(&config(&g, &chosen)).unwrap();
            let elems: Vec<Vec<usize>> = chosen.iter().map(|s| s.elements().to_vec()).collect();
            let expect = exterior_oracle(k, &elems);
            assert!(report.kernel_invariant_factors.iter().all(|x| *x == Int::from(2)));
            assert_eq!(report.kernel_invariant_factors.len(), expect, "k={k} {elems:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn more_places_give_a_smaller_kernel(
        name in prop::sample::select(vec!["V4", "D4", "C2xC4", "Q8"]),
        picks in prop::collection::vec(0usize..64, 0..4),
        extra in 0usize..64,
    ) {
        let g = named(name).unwrap();
        let subs = all_subgroups(&g);
        let chosen: Vec<Subgroup> = picks.iter().map(|&p| subs[p % subs.len()].clone()).collect();
        let small = order(&config(&g, &chosen));
        let mut more = chosen.clone();
        more.push(subs[extra % subs.len()].clone());
        let big = order(&config(&g, &more));
        prop_assert_eq!(small % big, 0);
        let whole = Subgroup::generated(&g, &g.elements().collect::<Vec<_>>()).unwrap();
        more.push(whole);
        prop_assert_eq!(order(&config(&g, &more)), 1);
    }
}

#[test]
fn cyclic_groups_have_trivial_kernel() {
    for n in 2..=12 {
        let g = FiniteGroup::cyclic(n);
        let subs = all_subgroups(&g);
        let trivial = subs.iter().find(|s| s.order() == 1).unwrap().clone();
        assert!(sha_tate(&config(&g, &[])).unwrap().is_trivial(), "C{n}");
        assert!(sha_tate(&config(&g, &[trivial])).unwrap().is_trivial(), "C{n}");
    }
}

#[test]
fn no_places_gives_all_of_h3() {
    for name in ["V4", "D4", "Q8", "C2xC4", "S3"] {
        let g = named(name).unwrap();
        let r = sha_tate(&config(&g, &[])).unwrap();
        assert_eq!(r.kernel_invariant_factors, r.h3_invariants, "{name}");
    }
}

#[test]
fn pair_check_holds_on_small_products() {
    let caps = Caps::default();
    for name in ["C2xC2", "C2xC3", "C2xC4", "C3xC3", "S3xC2", "V4xC2", "C4xC4", "D4xC2", "Q8xC2", "C2xC6", "V4xV4"] {
        let g = named(name).unwrap();
        assert!(g.order() <= 16 && g.order() <= caps.order);
        let cert = verify_multinorm_pair(&g, None).unwrap();
        assert_eq!(cert.verdict, Verdict::VerifiedHolds, "{name}");
        assert!(cert.rsd_surjectivity.passed && cert.inf_injectivity.passed);
    }
}

#[test]
fn factor_kernels_embed() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for name in ["V4xC2", "C2xC4", "S3xC2", "V4xV4"] {
        let g = named(name).unwrap();
        let subs = all_subgroups(&g);
        let cyclic: Vec<&Subgroup> = subs.iter().filter(|s| s.as_group().0.exponent() == s.order()).collect();
        let trials = if g.order() > 8 { 3 } else { 12 };
        for _ in 0..trials {
            let n = rng.gen_range(1..=4);
            let chosen: Vec<Subgroup> = (0..n).map(|_| cyclic[rng.gen_range(0..cyclic.len())].clone()).collect();
            let report = verify_sha_surjectivity(&config(&g, &chosen)).unwrap();
            assert!(report.passed, "{name}");
            let product: Int = report.factor_kernels.iter().fold(Int::ONE, |acc, k| acc * &k.order());
            assert_eq!(report.kernel.order().rem_euclid(&product), Int::ZERO);
        }
    }
}

#[test]
fn non_products_are_rejected() {
    assert!(verify_multinorm_pair(&named("S3").unwrap(), None).is_err());
    assert!(verify_multinorm_pair(&named("Q8").unwrap(), None).is_err());
}

#[test]
fn config_json_round_trip() {
    let text = r#"{"group":{"kind":"named","name":"V4"},"places":[{"label":"a","subgroup":[0,1]},{"label":"b","subgroup":[0,2]}]}"#;
    let caps = Caps::default();
    let cfg = DecompositionConfig::from_json(text, &caps).unwrap();
    let again = DecompositionConfig::from_json(&cfg.to_json(), &caps).unwrap();
    assert_eq!(sha_tate(&cfg).unwrap().kernel_invariant_factors, sha_tate(&again).unwrap().kernel_invariant_factors);
    assert!(DecompositionConfig::from_json(r#"{"group":{"kind":"named","name":"V4"},"places":[{"label":"a","subgroup":[0,1,2]}]}"#, &caps).is_err());
    let dup = r#"{"group":{"kind":"named","name":"V4"},"places":[{"label":"a","subgroup":[0]},{"label":"a","subgroup":[0]}]}"#;
    assert!(DecompositionConfig::from_json(dup, &caps).is_err());
}
