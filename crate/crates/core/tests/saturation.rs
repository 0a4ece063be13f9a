use dgcat_core::corpus;
use dgcat_core::dgcore::{rep_saturated, sphere_cell};
use dgcat_core::dgmod::{bar_tor_fixed, diagonal_bimodule, Soundness};
use dgcat_core::exactfield::{FieldSpec, Matrix};
use dgcat_core::hochschild::hh_dims;
use dgcat_core::saturation::{
    dual_data, duality_extent, euler_report, properness_check, saturation_report, smoothness_certify,
    triangle_identity_check, Evidence, Smoothness, TriangleOutcome,
};
use dgcat_core::{DgCategory, DgFunctor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn saturated_quivers(seed: u64, count: usize) -> Vec<DgCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let a = if out.len() % 2 == 0 {
            corpus::random_acyclic_quiver(&mut rng, Q, 7)
        } else {
            corpus::random_quiver_algebra(&mut rng, Q, 5)
        };
        if saturation_report(&a, 5).saturated {
            out.push(a);
        }
    }
    out
}

#[test]
fn properness_reports_pair_dimensions() {
    let r = properness_check(&corpus::path_a2(Q));
    assert!(r.proper);
    assert_eq!(r.pairs.iter().map(|p| p.total_dim).sum::<usize>(), 3);
    assert!(properness_check(&sphere_cell(4, Q)).proper);
}

#[test]
fn global_dimension_adds_under_tensor_product() {
    let p = corpus::path_a2(Q);
    let square = p.tensor(&p).unwrap();
    assert_eq!(smoothness_certify(&square, 5).resolution_length(), Some(2));
    let three = square.tensor(&p).unwrap();
    assert_eq!(smoothness_certify(&three, 5).resolution_length(), Some(3));
}

#[test]
fn dual_numbers_stay_inconclusive() {
    match smoothness_certify(&corpus::dual_numbers(Q), 5) {
        Smoothness::Inconclusive { bound, reason } => {
            assert_eq!(bound, 5);
            assert!(reason.contains('5'));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn hochschild_homology_vanishes_above_the_resolution_length() {
    let mut cats: Vec<DgCategory> = corpus::saturated(Q).into_iter().map(|(_, a)| a).collect();
    cats.extend(saturated_quivers(41, 12));
    for a in cats {
        let l = smoothness_certify(&a, 5).resolution_length().unwrap();
        let r = hh_dims(&a, l + 3).unwrap();
        for (&n, e) in &r.degrees {
            if n > l {
                assert_eq!(e.dim, 0, "HH_{n} above length {l}");
            }
        }
    }
}

#[test]
fn triangle_identities_on_saturated_corpus() {
    for (name, a, window) in [
        ("unit", corpus::unit(Q), -3..=3),
        ("path_a2", corpus::path_a2(Q), -3..=3),
        ("kxk", corpus::product_kk(Q), -2..=2),
    ] {
        let r = triangle_identity_check(&a, window, 4).unwrap();
        assert_eq!(r.outcome, TriangleOutcome::Pass, "{name}: {r:?}");
        assert_eq!(r.evidence, Some(Evidence::QuasiIsomorphism), "{name}");
        assert_eq!(r.checks, 2 * a.n_objects() * a.n_objects());
    }
    for a in saturated_quivers(42, 6) {
        let r = triangle_identity_check(&a, -2..=1, 5).unwrap();
        assert_eq!(r.outcome, TriangleOutcome::Pass, "{r:?}");
    }
}

#[test]
fn triangle_identities_never_pass_on_dual_numbers() {
    for bound in [2, 4, 6] {
        let r = triangle_identity_check(&corpus::dual_numbers(Q), -2..=2, bound).unwrap();
        assert_ne!(r.outcome, TriangleOutcome::Pass);
        assert!(r.reason.is_some());
    }
}

#[test]
fn dual_data_of_the_opposite_swaps_roles() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut cats: Vec<DgCategory> = corpus::named(Q).into_iter().map(|(_, a)| a).collect();
    cats.push(sphere_cell(3, Q));
    cats.extend((0..6).map(|_| corpus::random_category(&mut rng, Q, 4)));
    for a in cats {
        let d = dual_data(&a).unwrap();
        let e = dual_data(&a.opposite()).unwrap();
        assert_eq!(e.dual, a);
        assert_eq!(e.ev, d.coev);
        assert_eq!(e.coev, d.ev);
        for x in 0..a.n_objects() {
            for y in 0..a.n_objects() {
                assert_eq!(d.ev.value(x, y).dim(), a.dim(y, x));
            }
        }
    }
    let u = dual_data(&corpus::unit(Q)).unwrap();
    assert_eq!(u.ev.module().values(), u.coev.module().values());
}

#[test]
fn duality_composite_computes_hochschild_homology() {
    let mut cats: Vec<DgCategory> = corpus::saturated(Q).into_iter().map(|(_, a)| a).collect();
    cats.extend(saturated_quivers(44, 6));
    for a in cats {
        let (window, p) = duality_extent(&a).unwrap().expect("finite bar model");
        let diag = diagonal_bimodule(&a).unwrap();
        let t = bar_tor_fixed(diag.module(), diag.transpose().unwrap().module(), window.clone(), p + 1).unwrap();
        let hh = hh_dims(&a, (-*window.start()) as usize).unwrap();
        assert!(hh.all_exact());
        for (d, dim) in t.homology() {
            let expected = if d <= 0 { hh.degrees[&((-d) as usize)].dim } else { 0 };
            assert_eq!(dim, expected, "degree {d}");
        }
    }
}

#[test]
fn euler_characteristics_agree_on_saturated_inputs() {
    let mut cats: Vec<DgCategory> = corpus::saturated(Q).into_iter().map(|(_, a)| a).collect();
    cats.extend(saturated_quivers(45, 10));
    for a in cats {
        let r = euler_report(&a).unwrap();
        assert_eq!(r.chi_hh.status, Soundness::Exact);
        assert_eq!(r.chi_dual.status, Soundness::Exact);
        assert_eq!(r.agree, Some(true), "{r:?}");
    }
}

#[test]
fn rep_of_the_unit_is_the_category() {
    let a = corpus::path_a2(Q);
    let r = rep_saturated(&corpus::unit(Q), &a).unwrap();
    assert_eq!(r.n_objects(), a.n_objects());
    let n = a.n_objects();
    let maps = (0..n * n).map(|p| Matrix::identity(Q, a.dim(p / n, p % n))).collect();
    let f = DgFunctor::new(a.clone(), r, (0..n).collect(), maps).unwrap();
    assert!(f.validate().is_empty());
    assert!(f.is_fully_invertible());

    let s = sphere_cell(2, Q);
    let r = rep_saturated(&s, &a).unwrap();
    assert_eq!(r, s.opposite().tensor(&a).unwrap());
    assert_eq!(r.n_objects(), s.n_objects() * a.n_objects());
}
