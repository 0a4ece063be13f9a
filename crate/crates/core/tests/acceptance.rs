//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::time::{Duration, Instant};

use dgcat_core::corpus;
use dgcat_core::cyclic::{hc_dims, hcminus_hp_dims, verify_identities, TowerStatus, LIM1_CAVEAT};
use dgcat_core::dgmod::{bar_tor, bar_tor_fixed, yoneda_module, DgModule, Soundness};
use dgcat_core::exactfield::FieldSpec;
use dgcat_core::hochschild::{hh_dims, hochschild_complex, shuffle_map, unnormalized_complex};
use dgcat_core::saturation::{
    euler_report, properness_check, smoothness_certify, triangle_identity_check, Evidence, Smoothness,
    TriangleOutcome,
};
use dgcat_core::suites::sn_roundtrip;
use dgcat_core::{DgCategory, Finiteness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn random_categories(seed: u64, count: usize) -> Vec<DgCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| corpus::random_category(&mut rng, Q, 4)).collect()
}

fn random_module<R: Rng>(rng: &mut R, a: &DgCategory) -> DgModule {
    let n = a.n_objects();
    let mut m = yoneda_module(a, rng.gen_range(0..n)).unwrap();
    if rng.gen_bool(0.5) {
        m = m.direct_sum(&yoneda_module(a, rng.gen_range(0..n)).unwrap()).unwrap();
    }
    if rng.gen_bool(0.5) {
        m = m.tensor_shift(rng.gen_range(-1..=1));
    }
    m
}

fn hh_ground_truth() -> Outcome {
    for (name, a, n_max, expected) in [
        ("unit", corpus::unit(Q), 6, vec![1, 0, 0, 0, 0, 0, 0]),
        ("k[x]/(x²)", corpus::dual_numbers(Q), 4, vec![2, 1, 1, 1, 1]),
        ("path 1→2", corpus::path_a2(Q), 4, vec![2, 0, 0, 0, 0]),
    ] {
        let start = Instant::now();
        let r = hh_dims(&a, n_max).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(5), name)?;
        ensure(r.all_exact(), || format!("{name}: not every degree exact"))?;
        ensure(r.dims() == expected, || format!("{name}: {:?} != {expected:?}", r.dims()))?;
    }
    Ok("unit, k[x]/(x²), path 1→2 exact".into())
}

fn mixed_identities() -> Outcome {
    let start = Instant::now();
    let mut chains = 0;
    for (name, a) in corpus::named(Q) {
        let r = verify_identities(&a, 5);
        ensure(r.all_hold(), || format!("{name}: {r:?}"))?;
        chains += r.chains_checked;
    }
    let cats = random_categories(101, 50);
    for (i, a) in cats.iter().enumerate() {
        ensure(a.validate().is_valid() && a.total_dim() <= 4, || format!("random #{i} not a valid small category"))?;
        let r = verify_identities(a, 5);
        ensure(r.all_hold(), || format!("random #{i}: {r:?}"))?;
        chains += r.chains_checked;
    }
    within(start, Duration::from_secs(60), "identity checks")?;
    Ok(format!("b², B², bB+Bb vanish on {chains} chains (corpus and 50 random, bar bound 5)"))
}

fn cyclic_ground_truth() -> Outcome {
    let r = hc_dims(&corpus::unit(Q), 6).map_err(|e| e.to_string())?;
    ensure(r.all_exact(), || "HC of the unit not exact".into())?;
    ensure(r.dims() == vec![1, 0, 1, 0, 1, 0, 1], || format!("HC(unit) = {:?}", r.dims()))?;
    for (name, a) in corpus::named(Q) {
        let hc0 = hc_dims(&a, 0).map_err(|e| e.to_string())?.degrees[&0];
        let hh0 = hh_dims(&a, 0).map_err(|e| e.to_string())?.degrees[&0];
        ensure(hc0 == hh0, || format!("{name}: HC₀ {hc0:?} != HH₀ {hh0:?}"))?;
    }
    Ok("HC(unit) = 1,0,1,0,1,0,1; HC₀ = HH₀ on the corpus".into())
}

fn tower_certification() -> Outcome {
    for (name, a, hp0) in [("unit", corpus::unit(Q), 1), ("path 1→2", corpus::path_a2(Q), 2)] {
        let t = hcminus_hp_dims(&a, -1..=1, 4).map_err(|e| e.to_string())?;
        for report in [&t.negative, &t.periodic] {
            for (n, d) in &report.degrees {
                ensure(matches!(d.status, TowerStatus::Stabilized { .. }), || {
                    format!("{name}: {:?} degree {n} is {:?}", report.kind, d.status)
                })?;
            }
        }
        let got = t.periodic.degrees[&0].dim;
        ensure(got == hp0, || format!("{name}: HP₀ = {got}, expected {hp0}"))?;
    }
    let dual = corpus::dual_numbers(Q);
    for levels in 2..=6 {
        let t = hcminus_hp_dims(&dual, 0..=0, levels).map_err(|e| e.to_string())?;
        for report in [&t.negative, &t.periodic] {
            let d = &report.degrees[&0];
            ensure(d.status == TowerStatus::BoundLimited && d.caveat == Some(LIM1_CAVEAT), || {
                format!("k[x]/(x²) {:?} at {levels} levels: {:?}", report.kind, d.status)
            })?;
        }
    }
    Ok("unit and path stabilized (HP₀ = 1, 2); k[x]/(x²) bound-limited for 2..6 levels".into())
}

fn shuffle_monoidality() -> Outcome {
    let start = Instant::now();
    let unit = corpus::unit(Q);
    let dual = corpus::dual_numbers(Q);
    let mut pairs: Vec<(String, DgCategory, DgCategory)> =
        corpus::named(Q).into_iter().map(|(n, a)| (format!("unit ⊗ {n}"), unit.clone(), a)).collect();
    pairs.push(("k[x]/(x²) ⊗ k[x]/(x²)".into(), dual.clone(), dual.clone()));
    let mut chains = 0;
    for (name, a, b) in &pairs {
        let m = shuffle_map(a, b, 0..=3, 4).map_err(|e| format!("{name}: {e}"))?;
        chains += m.checked;
        let (ha, hb) = (hh_dims(a, 3).map_err(|e| e.to_string())?, hh_dims(b, 3).map_err(|e| e.to_string())?);
        let mut exact = 0;
        for (n, d) in &m.degrees {
            if d.status != Soundness::Exact {
                continue;
            }
            exact += 1;
            let k = *n as usize;
            let conv: usize = (0..=k).map(|p| ha.degrees[&p].dim * hb.degrees[&(k - p)].dim).sum();
            ensure(d.source_dim == conv && d.target_dim == conv && d.rank == conv, || {
                format!("{name} degree {n}: Künneth {conv}, shuffle {d:?}")
            })?;
        }
        ensure(exact > 0, || format!("{name}: no exact degree"))?;
    }
    let square = dual.tensor(&dual).map_err(|e| e.to_string())?;
    let h1 = hh_dims(&square, 1).map_err(|e| e.to_string())?.degrees[&1];
    ensure(h1.dim == 4 && h1.status == Soundness::Exact, || format!("HH₁ of the square: {h1:?}"))?;
    within(start, Duration::from_secs(120), "shuffle checks")?;
    Ok(format!("chain map on {chains} basis chains; Künneth in exact degrees ≤ 3; HH₁(k[x]/(x²)^⊗2) = 4"))
}

fn saturation() -> Outcome {
    let unit = smoothness_certify(&corpus::unit(Q), 4).resolution_length();
    ensure(unit == Some(0), || format!("unit: {unit:?}"))?;
    let path = smoothness_certify(&corpus::path_a2(Q), 4).resolution_length();
    ensure(path == Some(1), || format!("path: {path:?}"))?;
    for n in 1..=6 {
        match smoothness_certify(&corpus::dual_numbers(Q), n) {
            Smoothness::Inconclusive { bound, .. } if bound == n => {}
            other => return Err(format!("k[x]/(x²) at bound {n}: {other:?}")),
        }
    }
    let mut closed = 0;
    let mut cats: Vec<DgCategory> = corpus::named(Q).into_iter().map(|(_, a)| a).collect();
    cats.extend(random_categories(106, 30));
    for a in cats.iter().filter(|a| a.finiteness() == Finiteness::Closed) {
        ensure(properness_check(a).proper, || "a closed realization is not proper".into())?;
        closed += 1;
    }
    Ok(format!("certified(0), certified(1), inconclusive(1..6); {closed} closed realizations proper"))
}

fn triangle_identities() -> Outcome {
    for (name, a) in [("unit", corpus::unit(Q)), ("k×k", corpus::product_kk(Q)), ("path 1→2", corpus::path_a2(Q))] {
        let r = triangle_identity_check(&a, -3..=3, 4).map_err(|e| e.to_string())?;
        ensure(r.outcome == TriangleOutcome::Pass && r.evidence == Some(Evidence::QuasiIsomorphism), || {
            format!("{name}: {r:?}")
        })?;
    }
    for bound in 1..=6 {
        for window in [-3..=3, -1..=0, 0..=2] {
            let r = triangle_identity_check(&corpus::dual_numbers(Q), window, bound).map_err(|e| e.to_string())?;
            ensure(r.outcome != TriangleOutcome::Pass, || format!("k[x]/(x²) passed at bound {bound}"))?;
        }
    }
    Ok("quasi-isomorphisms on unit, k×k, path in [-3, 3]; never pass on k[x]/(x²)".into())
}

fn euler_equality() -> Outcome {
    let saturated = corpus::saturated(Q);
    let mut chi = Vec::new();
    for ((name, a), expected) in saturated.iter().zip([1, 2, 2]) {
        let r = euler_report(a).map_err(|e| e.to_string())?;
        ensure(r.agree == Some(true) && r.chi_hh.value == expected, || format!("{name}: {r:?}"))?;
        chi.push(expected);
    }
    for (i, (na, a)) in saturated.iter().enumerate() {
        for (j, (nb, b)) in saturated.iter().enumerate() {
            let t = a.tensor(b).map_err(|e| e.to_string())?;
            let r = euler_report(&t).map_err(|e| e.to_string())?;
            ensure(r.agree == Some(true) && r.chi_hh.value == chi[i] * chi[j], || {
                format!("{na} ⊗ {nb}: {r:?}, expected {}", chi[i] * chi[j])
            })?;
        }
    }
    Ok("χ_HH = χ_dual = 1, 2, 2; multiplicative on all 9 tensor products".into())
}

fn sn_roundtrips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut triples = 0;
    while triples < 100 {
        let a = corpus::random_category(&mut rng, Q, 4);
        let (done, failure) = sn_roundtrip(&a, 5, rng.gen()).map_err(|e| e.to_string())?;
        if let Some(why) = failure {
            return Err(why);
        }
        triples += done;
    }
    Ok(format!("{triples} random triples pack, validate and unpack exactly"))
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    for (i, a) in random_categories(110, 30).iter().enumerate() {
        let (norm, unnorm) = (
            hochschild_complex(a, 4).map_err(|e| e.to_string())?,
            unnormalized_complex(a, 4).map_err(|e| e.to_string())?,
        );
        for n in 0..=3 {
            let (d1, s1) = norm.hh(n);
            let (d2, s2) = unnorm.hh(n);
            if s1 == Soundness::Exact && s2 == Soundness::Exact {
                ensure(d1 == d2, || format!("random #{i} degree {n}: normalized {d1}, unnormalized {d2}"))?;
                compared += 1;
            }
        }
    }
    ensure(compared > 0, || "no exact degree compared".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut stable = 0;
    for _ in 0..25 {
        let a = corpus::random_category(&mut rng, Q, 4);
        let m = random_module(&mut rng, &a);
        let n = random_module(&mut rng, &a.opposite());
        let t = bar_tor(&m, &n, -2..=1, Some(5)).map_err(|e| e.to_string())?;
        if t.soundness == Soundness::Exact {
            let t2 = bar_tor_fixed(&m, &n, -2..=1, t.bar_bound + 1).map_err(|e| e.to_string())?;
            ensure(t2.soundness == Soundness::Exact && t2.homology() == t.homology(), || {
                format!("exact window moved from bound {} to {}", t.bar_bound, t.bar_bound + 1)
            })?;
            stable += 1;
        }
    }
    ensure(stable > 0, || "no exact Tor window found".into())?;
    Ok(format!("{compared} exact HH degrees agree; {stable} exact Tor windows stable"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("hh ground truth", hh_ground_truth),
        ("mixed complex identities", mixed_identities),
        ("cyclic ground truth", cyclic_ground_truth),
        ("tower certification", tower_certification),
        ("shuffle monoidality", shuffle_monoidality),
        ("saturation", saturation),
        ("triangle identities", triangle_identities),
        ("euler equality", euler_equality),
        ("sn roundtrip", sn_roundtrips),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
