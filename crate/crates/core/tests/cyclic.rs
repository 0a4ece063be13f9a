use dgcat_core::corpus;
use dgcat_core::cyclic::{
    cyclic_operator, hc_dims, hcminus_dims, hp_dims, mixed_complex, tower_with_bound, verify_identities, TowerKind,
    TowerStatus,
};
use dgcat_core::dgmod::Soundness;
use dgcat_core::exactfield::{FieldSpec, Matrix};
use dgcat_core::hochschild::{collect_terms, hh_dims, CyclicBar, CyclicChain, Terms};
use dgcat_core::DgCategory;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn random_categories(seed: u64, count: usize) -> Vec<DgCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| corpus::random_category(&mut rng, Q, 4)).collect()
}

fn apply(op: impl Fn(&CyclicChain) -> Terms, terms: &Terms) -> Terms {
    let mut out = Vec::new();
    for (c, chain) in terms {
        out.extend(op(chain).into_iter().map(|(d, t)| (Q.mul(c, &d), t)));
    }
    out
}

#[test]
fn mixed_identities_on_corpus_and_random_categories() {
    for (name, a) in corpus::named(Q) {
        let r = verify_identities(&a, 5);
        assert!(r.all_hold(), "{name}: {r:?}");
    }
    for a in random_categories(31, 50) {
        let r = verify_identities(&a, 4);
        assert!(r.all_hold(), "{r:?}");
        assert!(r.chains_checked > 0);
    }
}

#[test]
fn mixed_identities_over_prime_fields() {
    for p in [2, 3, 5] {
        let f = FieldSpec::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(30 + p);
        let mut cats: Vec<DgCategory> = corpus::named(f).into_iter().map(|(_, a)| a).collect();
        cats.extend((0..15).map(|_| corpus::random_category(&mut rng, f, 4)));
        for a in cats {
            let r = verify_identities(&a, 4);
            assert!(r.all_hold(), "F_{p}: {r:?}");
        }
        assert_eq!(hc_dims(&corpus::unit(f), 4).unwrap().dims(), vec![1, 0, 1, 0, 1], "F_{p}");
    }
}

#[test]
fn cyclic_operator_has_signed_finite_order() {
    for a in random_categories(32, 15) {
        for n in 1..=4usize {
            let t = cyclic_operator(&a, n).unwrap();
            let mut power = Matrix::identity(Q, t.chains.len());
            for _ in 0..n {
                power = t.matrix.mul(&power);
            }
            let sign = Q.sign(n as i64);
            assert_eq!(power, Matrix::identity(Q, t.chains.len()).scale(&sign), "t_{n}^{n}");
        }
    }
}

#[test]
fn rotation_intertwines_face_sums() {
    // (1 - t)·b' = b·(1 - t) with t the rotation, the negative of t_n
    for a in random_categories(33, 20) {
        let cb = CyclicBar::new(&a, false);
        for n in 1..=3 {
            for c in cb.chains(n, |_| true) {
                let b_full = |x: &CyclicChain| -> Terms {
                    let k = x.bar_degree();
                    (0..=k).flat_map(|i| cb.face(x, i).into_iter().map(move |(v, t)| (Q.mul(&Q.sign(i as i64), &v), t))).collect()
                };
                let b_prime = |x: &CyclicChain| -> Terms {
                    let k = x.bar_degree();
                    (0..k).flat_map(|i| cb.face(x, i).into_iter().map(move |(v, t)| (Q.mul(&Q.sign(i as i64), &v), t))).collect()
                };
                let one_minus_t = |x: &CyclicChain| -> Terms {
                    let mut out = vec![(Q.one(), x.clone())];
                    out.extend(cb.rotation(x).into_iter().map(|(v, t)| (Q.neg(&v), t)));
                    out
                };
                let start = vec![(Q.one(), c.clone())];
                let mut diff = apply(one_minus_t, &apply(b_prime, &start));
                diff.extend(apply(b_full, &apply(one_minus_t, &start)).into_iter().map(|(v, t)| (Q.neg(&v), t)));
                assert!(collect_terms(diff, &Q).is_empty(), "on {}", cb.label(&c));
            }
        }
    }
}

#[test]
fn hc0_equals_hh0() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut cats: Vec<DgCategory> = corpus::named(Q).into_iter().map(|(_, a)| a).collect();
    cats.extend((0..15).map(|_| corpus::random_quiver_algebra(&mut rng, Q, 4)));
    for a in cats {
        let hc = hc_dims(&a, 0).unwrap();
        let hh = hh_dims(&a, 0).unwrap();
        assert_eq!(hc.degrees[&0], hh.degrees[&0]);
    }
}

#[test]
fn cyclic_homology_ground_truths() {
    assert_eq!(hc_dims(&corpus::unit(Q), 6).unwrap().dims(), vec![1, 0, 1, 0, 1, 0, 1]);
    // k[x]/(x²) in characteristic zero: HC = HC(k) ⊕ (k, 0, k, 0, …)
    let d = hc_dims(&corpus::dual_numbers(Q), 5).unwrap();
    assert!(d.all_exact());
    assert_eq!(d.dims(), vec![2, 0, 2, 0, 2, 0]);
    // a hereditary algebra with two simples behaves like two points
    assert_eq!(hc_dims(&corpus::path_a2(Q), 4).unwrap().dims(), vec![2, 0, 2, 0, 2]);
}

#[test]
fn connes_periodicity_sequence_is_exact_on_the_unit() {
    // HH_n -> HC_n -> HC_{n-2} -> HH_{n-1}: for k the maps S are isomorphisms
    let hc = hc_dims(&corpus::unit(Q), 6).unwrap().dims();
    for n in 2..=6 {
        assert_eq!(hc[n], hc[n - 2]);
    }
}

#[test]
fn negative_cyclic_of_a_point() {
    let r = hcminus_dims(&corpus::unit(Q), -4..=1, 5).unwrap();
    let dims: Vec<usize> = (-4..=1).map(|n| r.degrees[&n].dim).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0]);
    for d in r.degrees.values() {
        assert!(matches!(d.status, TowerStatus::Stabilized { .. }));
        assert!(d.caveat.is_none());
    }
}

#[test]
fn periodic_homology_is_two_periodic_where_stabilized() {
    for (name, a) in [("unit", corpus::unit(Q)), ("path_a2", corpus::path_a2(Q)), ("kxk", corpus::product_kk(Q))] {
        let r = hp_dims(&a, -2..=3, 4).unwrap();
        for n in -2..=1 {
            let (x, y) = (&r.degrees[&n], &r.degrees[&(n + 2)]);
            assert!(matches!(x.status, TowerStatus::Stabilized { .. }), "{name} HP_{n}");
            assert_eq!(x.dim, y.dim, "{name} HP_{n}");
        }
    }
}

#[test]
fn towers_never_contradict_a_stabilized_verdict() {
    let mut reports = Vec::new();
    for (_, a) in corpus::named(Q) {
        reports.push(hp_dims(&a, -1..=2, 5).unwrap());
        reports.push(hcminus_dims(&a, -1..=2, 5).unwrap());
    }
    for a in random_categories(35, 10) {
        for kind in [TowerKind::Periodic, TowerKind::Negative] {
            reports.push(tower_with_bound(&a, kind, -1..=2, 4, 5).unwrap());
        }
    }
    for r in reports {
        for d in r.degrees.values() {
            if let TowerStatus::Stabilized { level } = d.status {
                for e in &d.levels[level - 1..] {
                    assert_eq!(e.status, Soundness::Exact);
                    assert_eq!(e.dim, d.dim);
                }
            }
        }
    }
}

#[test]
fn mixed_complex_b_homology_is_hochschild_homology() {
    for a in random_categories(36, 10) {
        let mc = mixed_complex(&a, 4).unwrap();
        let hh = dgcat_core::hochschild::hochschild_complex(&a, 4).unwrap();
        for n in -2..=2 {
            if mc.is_complete(n - 1) && mc.is_complete(n) && mc.is_complete(n + 1) {
                assert_eq!(mc.b_homology(n), hh.hh(n).0);
            }
        }
    }
}
