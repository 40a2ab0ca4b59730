//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any fails or overruns its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use multinorm_core::cohomology::{differential_matrix, ModuleMap, ShortExactSequence};
use multinorm_core::duality::{cup_pairing, verify_adjointness};
use multinorm_core::group::named::named;
use multinorm_core::group::{all_subgroups, normal_subgroups, sylow_subgroup};
use multinorm_core::linalg::finite::reduce;
use multinorm_core::multinorm::{verify_multinorm_pair, verify_sha_surjectivity, Verdict};
use multinorm_core::qnumbers::example2::{example2_report, DEFAULT_SEED, SAMPLES_PER_FIELD, WITNESS_BOUND};
use multinorm_core::qnumbers::{hilbert_product, multiquadratic_config_in, sha_of_multiquadratic, QuadraticTuple};
use multinorm_core::transfer::{
    deflation, deflation_coboundary_square, deflation_naturality, inflation_along, residuation, restriction_along,
    SquareReport,
};
use multinorm_core::{cohomology, Caps, Error, FiniteGroup, GModule, GroupHom, Int, IntMatrix, Subgroup};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const TEST_GROUPS: &[&str] = &["C2", "C3", "C4", "C5", "C6", "V4", "S3", "D4", "Q8", "A4", "V4xC2", "V4xV4"];

fn test_groups(max_order: usize) -> Vec<(&'static str, FiniteGroup)> {
    TEST_GROUPS.iter().map(|&n| (n, named(n).unwrap())).filter(|(_, g)| g.order() <= max_order).collect()
}

fn ints(xs: &[u64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

fn cyclic_oracle() -> Outcome {
    let mut checked = 0;
    for n in 2..=6 {
        let g = FiniteGroup::cyclic(n);
        for i in -4..=4 {
            let expect = if i % 2 == 0 { ints(&[n as u64]) } else { vec![] };
            let got = cohomology(&GModule::trivial(&g), i).map_err(|e| e.to_string())?.invariant_factors();
            ensure!(got == expect, "C{n} degree {i}: got {got:?}");
            checked += 1;
        }
    }
    Ok(format!("{checked} groups matched"))
}

fn complex_sanity() -> Outcome {
    let caps = Caps::default();
    let mut seams = 0;
    for (name, g) in test_groups(usize::MAX) {
        let z = GModule::trivial(&g);
        let top = if g.order() > 8 { 2 } else { 3 };
        for q in -4..top {
            let d0 = differential_matrix(&z, q, &caps).map_err(|e| e.to_string())?;
            let d1 = differential_matrix(&z, q + 1, &caps).map_err(|e| e.to_string())?;
            ensure!(d1.mul(&d0).is_zero(), "{name}: d{} d{q} != 0", q + 1);
            seams += 1;
        }
    }
    Ok(format!("{seams} seams, all zero"))
}

fn duality() -> Outcome {
    let mut tables = 0;
    for (name, g) in test_groups(12) {
        for i in 1..=3 {
            let t = cup_pairing(&g, i).map_err(|e| e.to_string())?;
            ensure!(t.is_perfect(), "{name} degree {i} not perfect");
            tables += 1;
        }
    }
    Ok(format!("{tables} pairings perfect"))
}

fn transfer_identities() -> Outcome {
    let caps = Caps::default();
    let mut rsd = 0;
    for (name, g) in test_groups(8) {
        let z = GModule::trivial(&g);
        for h in normal_subgroups(&g) {
            let n = Int::from(h.order());
            for i in [-2, -3] {
                let r = residuation(&z, &h, i).map_err(|e| e.to_string())?;
                let d = deflation(&z, &h, i).map_err(|e| e.to_string())?;
                ensure!(r.cochain_matrix.scale(&n) == d.cochain_matrix, "{name} |H|={} degree {i}: cochains", h.order());
                for c in 0..r.source.num_generators() {
                    let mut e = vec![Int::ZERO; r.source.num_generators()];
                    e[c] = Int::ONE;
                    let scaled: Vec<Int> = r.apply(&e).iter().map(|x| x * &n).collect();
                    ensure!(reduce(&scaled, r.target.orders()) == d.apply(&e), "{name} |H|={} degree {i}", h.order());
                }
                rsd += 1;
            }
        }
    }
    let mut pairs = 0;
    for name in ["C2xC2", "C2xC4", "V4xC2", "S3xC2"] {
        let g = named(name).unwrap();
        let rep = verify_adjointness(&g, 3).map_err(|e| e.to_string())?;
        ensure!(rep.holds && rep.dual_maps_consistent, "{name}: adjointness fails");
        pairs += rep.entries.len();
        let z = GModule::trivial(&g);
        for i in [2, 3] {
            for j in 0..2 {
                let pi = GroupHom::factor_projection(&g, j).map_err(|e| e.to_string())?;
                let inf = inflation_along(&z, &pi, i, &caps).map_err(|e| e.to_string())?;
                for l in 0..2 {
                    let iota = GroupHom::factor_embedding(&g, l).map_err(|e| e.to_string())?;
                    let res = restriction_along(&z, &iota, i, &caps).map_err(|e| e.to_string())?;
                    let comp = inf.then(&res).map_err(|e| e.to_string())?;
                    let ok = if j == l { comp.is_identity() } else { comp.is_zero() };
                    ensure!(ok, "{name} degree {i}: Res_{l} Inf_{j}");
                }
            }
        }
    }
    Ok(format!("{rsd} Rsd/Def checks, {pairs} adjointness pairs, Res∘Inf on 4 products"))
}

fn is_nonzero(r: &SquareReport) -> bool {
    r.left_then_bottom.iter().flatten().any(|x| !x.is_zero())
}

fn norm_map(k: &Subgroup) -> ModuleMap {
    let perm = GModule::permutation(k);
    let m = IntMatrix::from_triplets(perm.rank(), 1, (0..perm.rank()).map(|i| (i, 0, Int::ONE)).collect::<Vec<_>>());
    ModuleMap::new(&GModule::trivial(k.parent()), &perm, m).unwrap()
}

fn naturality() -> Outcome {
    let caps = Caps::default();
    let (mut nat, mut nat_nonzero, mut cob, mut cob_nonzero, mut not_exact) = (0, 0, 0, 0, 0);
    for name in ["C2xC2", "S3"] {
        let g = named(name).unwrap();
        let subs = all_subgroups(&g);
        for k in &subs {
            let maps = [ModuleMap::augmentation(k), ModuleMap::augmentation_inclusion(k), norm_map(k)];
            let ses = ShortExactSequence::augmentation(k);
            for h in subs.iter().filter(|h| h.is_normal()) {
                for i in [-1, -2] {
                    for f in &maps {
                        let r = deflation_naturality(f, h, i, &caps).map_err(|e| e.to_string())?;
                        ensure!(r.commutes, "{name} |K|={} |H|={} degree {i}: naturality", k.order(), h.order());
                        nat += 1;
                        nat_nonzero += usize::from(is_nonzero(&r));
                    }
                    match deflation_coboundary_square(&ses, h, i, &caps) {
                        Ok(r) => {
                            ensure!(r.commutes, "{name} |K|={} |H|={} degree {i}: coboundary", k.order(), h.order());
                            cob += 1;
                            cob_nonzero += usize::from(is_nonzero(&r));
                        }
                        Err(Error::FixedSequenceNotExact { .. }) => not_exact += 1,
                        Err(e) => return Err(e.to_string()),
                    }
                }
            }
        }
    }
    ensure!(nat_nonzero > 0 && cob_nonzero > 0, "only zero squares were exercised");
    Ok(format!(
        "naturality {nat} squares ({nat_nonzero} nonzero); coboundary {cob} squares ({cob_nonzero} nonzero), {not_exact} skipped as fixed sequence not exact"
    ))
}

fn pair_core() -> Outcome {
    let mut out = Vec::new();
    for name in ["V4xC2", "V4xV4"] {
        let g = named(name).unwrap();
        let cert = verify_multinorm_pair(&g, None).map_err(|e| e.to_string())?;
        ensure!(cert.verdict == Verdict::VerifiedHolds, "{name}: {:?}", cert.verdict);
        let targets: Vec<String> = cert.rsd_surjectivity.target_orders.iter().map(|x| x.to_string()).collect();
        out.push(format!("{name} onto [{}]", targets.join(",")));
    }
    Ok(out.join("; "))
}

fn tate_criterion() -> Outcome {
    let sha = |gens: Vec<i64>| -> Result<Vec<Int>, String> {
        let t = QuadraticTuple::new(gens).map_err(|e| e.to_string())?;
        Ok(sha_of_multiquadratic(&t).map_err(|e| e.to_string())?.kernel_invariant_factors)
    };
    ensure!(sha(vec![13, 17])? == ints(&[2]), "(13,17)");
    ensure!(sha(vec![5, 29])? == ints(&[2]), "(5,29)");
    ensure!(sha(vec![3, 5])?.is_empty(), "(3,5)");
    for d in [-1, 2, 3, 5, 7, 13, -15, 221] {
        ensure!(sha(vec![d])?.is_empty(), "single quadratic {d}");
    }
    Ok("(13,17) and (5,29) give Z/2; (3,5) and single quadratics trivial".into())
}

fn compositum_instance() -> Outcome {
    let g = named("V4xV4").unwrap();
    let t = QuadraticTuple::new(vec![13, 17, 5, 29]).map_err(|e| e.to_string())?;
    let cfg = multiquadratic_config_in(&t, &g).map_err(|e| e.to_string())?;
    let r = verify_sha_surjectivity(&cfg).map_err(|e| e.to_string())?;
    for f in &r.factor_kernels {
        ensure!(f.kernel_invariant_factors == ints(&[2]), "factor kernel {:?}", f.kernel_invariant_factors);
    }
    ensure!(r.passed && r.injective.passed && r.lands_in_kernel, "Inf + Inf check failed");
    Ok(format!("factor kernels Z/2, Z/2 inject into {:?}", r.kernel.kernel_invariant_factors))
}

fn example2() -> Outcome {
    let r = example2_report(DEFAULT_SEED);
    ensure!(r.local.iter().all(|c| c.full && c.product_relation), "a local certificate fails");
    ensure!(r.locally_everything, "not locally everything");
    for s in &r.sampling {
        ensure!(s.samples == SAMPLES_PER_FIELD && s.killed >= 100, "field {}: {}/{}", s.field, s.killed, s.samples);
        ensure!(s.first_failure.is_none(), "field {}: chi = -1 on a norm", s.field);
    }
    let w = r.witness.ok_or("no witness")?;
    ensure!(w.abs() <= WITNESS_BOUND, "witness {w}");
    ensure!(r.multinorm_fails, "report does not conclude failure");
    let killed: Vec<String> = r.sampling.iter().map(|s| format!("{}:{}/{}", s.field, s.killed, s.samples)).collect();
    Ok(format!("{} places full; killed {}; witness {w}; index >= {}", r.local.len(), killed.join(" "), r.index_lower_bound))
}

fn reciprocity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut rational = || loop {
        let n = rng.gen_range(-10_000i64..=10_000);
        if n != 0 {
            return Rational64::new(n, rng.gen_range(1..=10_000));
        }
    };
    for _ in 0..500 {
        let (a, b) = (rational(), rational());
        ensure!(hilbert_product(a, b) == 1, "({a}, {b})");
    }
    Ok("500 pairs".into())
}

fn a6_generation() -> Outcome {
    let g = named("A6").unwrap();
    let h = sylow_subgroup(&g, 3).normalizer();
    ensure!(h.index() == 10, "index {}", h.index());
    let n = h.normalizer();
    let sigma = g.elements().find(|&s| !n.contains(s)).ok_or("H is normal")?;
    let conj = h.conjugate(sigma);
    // Closure of the union by repeated multiplication.
    let mut inside = vec![false; g.order()];
    let mut frontier: Vec<usize> = h.elements().iter().chain(conj.elements()).copied().collect();
    let gens = frontier.clone();
    while let Some(x) = frontier.pop() {
        if !std::mem::replace(&mut inside[x], true) {
            frontier.extend(gens.iter().map(|&s| g.mul(x, s)));
        }
    }
    let size = inside.iter().filter(|&&b| b).count();
    ensure!(size == 360 && h.join(&conj).order() == 360, "generated {size}");
    Ok(format!("|H| = {}, sigma = {sigma}, <H, sHs^-1> has order {size}", h.order()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("cyclic oracle agreement", cyclic_oracle, 30),
        ("complex sanity", complex_sanity, 120),
        ("duality", duality, 300),
        ("transfer identities", transfer_identities, 600),
        ("deflation naturality", naturality, 120),
        ("product surjectivity/injectivity", pair_core, 600),
        ("Tate criterion on multiquadratics", tate_criterion, 60),
        ("compositum of two biquadratics", compositum_instance, 600),
        ("three-field failure report", example2, 60),
        ("Hilbert reciprocity", reciprocity, 30),
        ("A6 generation", a6_generation, 60),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let over = took > Duration::from_secs(*budget);
        let (tag, detail) = match outcome {
            Ok(_) if over => ("FAIL", format!("over budget of {budget}s")),
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {:>2} {name} ({:.2}s): {detail}", k + 1, took.as_secs_f64());
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
