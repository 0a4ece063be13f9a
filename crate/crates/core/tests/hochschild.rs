use dgcat_core::corpus;
use dgcat_core::dgmod::Soundness;
use dgcat_core::exactfield::{rank, FieldSpec, Matrix, SparseVec};
use dgcat_core::hochschild::{
    ch0, collect_terms, endo_mul, hh_dims, hochschild_complex, shuffle_map, unnormalized_complex, CyclicBar,
    CyclicChain, EndoMatrix, Terms,
};
use dgcat_core::DgCategory;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn apply(op: impl Fn(&CyclicChain) -> Terms, terms: &Terms) -> Terms {
    let mut out = Vec::new();
    for (c, chain) in terms {
        for (d, t) in op(chain) {
            out.push((Q.mul(c, &d), t));
        }
    }
    out
}

fn one(c: &CyclicChain) -> Terms {
    vec![(Q.one(), c.clone())]
}

fn random_categories(seed: u64, count: usize) -> Vec<DgCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| corpus::random_category(&mut rng, Q, 4)).collect()
}

#[test]
fn total_differential_squares_to_zero_chainwise() {
    for a in random_categories(21, 30) {
        for normalized in [true, false] {
            let cb = CyclicBar::new(&a, normalized);
            for p in 0..=3 {
                for c in cb.chains(p, |_| true) {
                    let dd = apply(|x| cb.total(x), &cb.total(&c));
                    assert!(collect_terms(dd, &Q).is_empty(), "d² ≠ 0 on {}", cb.label(&c));
                }
            }
        }
    }
}

#[test]
fn quiver_algebra_differential_by_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut two_objects = 0;
    for _ in 0..20 {
        let a = corpus::random_quiver_algebra(&mut rng, Q, 4);
        two_objects += usize::from(a.n_objects() == 2);
        let hc = hochschild_complex(&a, 4).unwrap();
        let range = hc.total.stored_range();
        for d in *range.start()..*range.end() {
            let (Some(f), Some(g)) = (hc.total.diff(d), hc.total.diff(d + 1)) else { continue };
            let (fd, gd) = (f.to_dense(), g.to_dense());
            for (i, row) in gd.iter().enumerate() {
                for k in 0..f.cols() {
                    let mut acc = Q.zero();
                    for (j, gij) in row.iter().enumerate() {
                        acc = Q.add(&acc, &Q.mul(gij, &fd[j][k]));
                    }
                    assert_eq!(acc, Q.zero(), "entry ({i}, {k}) of d∘d at degree {d}");
                }
            }
        }
    }
    assert!(two_objects > 0);
}

#[test]
fn simplicial_identities_hold() {
    for a in random_categories(23, 25) {
        let cb = CyclicBar::new(&a, false);
        for n in 1..=3 {
            for c in cb.chains(n, |_| true) {
                let start = one(&c);
                for j in (0..=n).filter(|_| n >= 2) {
                    for i in 0..j {
                        let lhs = apply(|x| cb.face(x, i), &apply(|x| cb.face(x, j), &start));
                        let rhs = apply(|x| cb.face(x, j - 1), &apply(|x| cb.face(x, i), &start));
                        let mut diff = lhs;
                        diff.extend(rhs.into_iter().map(|(v, t)| (Q.neg(&v), t)));
                        assert!(collect_terms(diff, &Q).is_empty(), "d_{i} d_{j} on {}", cb.label(&c));
                    }
                }
                for j in 0..=n {
                    let s = apply(|x| cb.degeneracy(x, j), &start);
                    for i in [j, j + 1] {
                        let back = collect_terms(apply(|x| cb.face(x, i), &s), &Q);
                        assert_eq!(back, collect_terms(start.clone(), &Q));
                    }
                }
            }
        }
    }
}

#[test]
fn normalized_and_unnormalized_agree() {
    let mut compared = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut cats = random_categories(25, 20);
    cats.extend((0..10).map(|_| corpus::random_quiver_algebra(&mut rng, Q, 4)));
    for a in cats {
        let norm = hochschild_complex(&a, 4).unwrap();
        let un = unnormalized_complex(&a, 4).unwrap();
        for n in -3..=3 {
            if norm.status_at(n) == Soundness::Exact && un.status_at(n) == Soundness::Exact {
                assert_eq!(norm.hh(n).0, un.hh(n).0, "HH_{n}");
                compared += 1;
            }
        }
    }
    assert!(compared > 20);
}

/// `HH_0` of an ungraded category is `⊕ A(x,x)` modulo commutators
/// `f∘g - g∘f`.
fn commutator_quotient(a: &DgCategory) -> usize {
    let n = a.n_objects();
    let offsets: Vec<usize> = (0..n).scan(0, |s, x| {
        let o = *s;
        *s += a.dim(x, x);
        Some(o)
    }).collect();
    let total: usize = (0..n).map(|x| a.dim(x, x)).sum();
    let mut cols = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for f in 0..a.dim(x, y) {
                for g in 0..a.dim(y, x) {
                    let fe = SparseVec::unit(f, &Q);
                    let ge = SparseVec::unit(g, &Q);
                    let gf = a.compose(x, y, x, &ge, &fe);
                    let fg = a.compose(y, x, y, &fe, &ge);
                    let mut terms: Vec<_> = gf.iter().map(|(i, c)| (offsets[x] + i, c.clone())).collect();
                    terms.extend(fg.iter().map(|(i, c)| (offsets[y] + i, Q.neg(c))));
                    cols.push(SparseVec::from_terms(terms, &Q));
                }
            }
        }
    }
    total - rank(&Matrix::from_columns(Q, total, cols))
}

#[test]
fn hh0_matches_commutator_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..30 {
        let a = corpus::random_quiver_algebra(&mut rng, Q, 4);
        let r = hh_dims(&a, 1).unwrap();
        assert_eq!(r.degrees[&0].status, Soundness::Exact);
        assert_eq!(r.degrees[&0].dim, commutator_quotient(&a));
    }
    for (_, a) in corpus::named(Q) {
        assert_eq!(hh_dims(&a, 0).unwrap().degrees[&0].dim, commutator_quotient(&a));
    }
}

#[test]
fn ground_truths() {
    assert_eq!(hh_dims(&corpus::unit(Q), 6).unwrap().dims(), vec![1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(hh_dims(&corpus::dual_numbers(Q), 4).unwrap().dims(), vec![2, 1, 1, 1, 1]);
    assert_eq!(hh_dims(&corpus::path_a2(Q), 4).unwrap().dims(), vec![2, 0, 0, 0, 0]);
    assert_eq!(hh_dims(&corpus::product_kk(Q), 3).unwrap().dims(), vec![2, 0, 0, 0]);
}

#[test]
fn dual_numbers_in_characteristic_two() {
    // over F_2 every Hochschild boundary of k[x]/(x²) vanishes
    let f2 = FieldSpec::prime(2).unwrap();
    let r = hh_dims(&corpus::dual_numbers(f2), 3).unwrap();
    assert_eq!(r.dims(), vec![2, 2, 2, 2]);
}

#[test]
fn shuffle_is_a_chain_map_on_random_pairs() {
    let cats = random_categories(27, 12);
    for pair in cats.chunks(2) {
        let m = shuffle_map(&pair[0], &pair[1], -1..=2, 3).unwrap();
        assert!(m.checked > 0);
        for d in m.degrees.values() {
            assert!(d.rank <= d.source_dim.min(d.target_dim));
        }
    }
}

#[test]
fn kunneth_holds_in_exact_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    let mut cats: Vec<DgCategory> = corpus::named(Q).into_iter().map(|(_, c)| c).collect();
    cats.extend((0..4).map(|_| corpus::random_quiver_algebra(&mut rng, Q, 3)));
    for a in &cats {
        for b in &cats {
            let t = a.tensor(b).unwrap();
            if t.total_dim() > 9 {
                continue;
            }
            let (ha, hb, ht) = (hh_dims(a, 2).unwrap(), hh_dims(b, 2).unwrap(), hh_dims(&t, 2).unwrap());
            for n in 0..=2 {
                if ht.degrees[&n].status != Soundness::Exact {
                    continue;
                }
                let conv: usize = (0..=n).map(|p| ha.degrees[&p].dim * hb.degrees[&(n - p)].dim).sum();
                assert_eq!(ht.degrees[&n].dim, conv, "degree {n}");
            }
        }
    }
}

fn endo(entries: &[&[SparseVec]]) -> EndoMatrix {
    entries.iter().map(|r| r.to_vec()).collect()
}

#[test]
fn chern_character_of_path_idempotents() {
    let a = corpus::path_a2(Q);
    let e1 = ch0(&a, 0, &vec![vec![a.unit(0).clone()]]).unwrap();
    let e2 = ch0(&a, 1, &vec![vec![a.unit(1).clone()]]).unwrap();
    assert_eq!(e1.hh0_dim, commutator_quotient(&a));
    let span = Matrix::from_columns(
        Q,
        2,
        [&e1, &e2]
            .iter()
            .map(|c| SparseVec::from_terms(c.coordinates.iter().cloned().enumerate(), &Q))
            .collect(),
    );
    assert_eq!(rank(&span), 2);
}

#[test]
fn chern_character_is_additive_and_conjugation_invariant() {
    let a = corpus::dual_numbers(Q);
    let (one, x, zero) = (a.unit(0).clone(), SparseVec::unit(1, &Q), SparseVec::new());
    let e = endo(&[&[one.clone()]]);
    let single = ch0(&a, 0, &e).unwrap();
    let double = ch0(&a, 0, &endo(&[&[one.clone(), zero.clone()], &[zero.clone(), one.clone()]])).unwrap();
    let twice: Vec<_> = single.coordinates.iter().map(|c| Q.add(c, c)).collect();
    assert_eq!(double.coordinates, twice);

    let p = endo(&[&[one.clone(), x.clone()], &[zero.clone(), one.clone()]]);
    let p_inv = endo(&[&[one.clone(), x.scale(&Q.from_i64(-1), &Q)], &[zero.clone(), one.clone()]]);
    let id = endo(&[&[one.clone(), zero.clone()], &[zero.clone(), one.clone()]]);
    assert_eq!(endo_mul(&a, 0, &p, &p_inv), id);
    let f = endo(&[&[one.clone(), zero.clone()], &[zero.clone(), zero.clone()]]);
    let g = endo_mul(&a, 0, &endo_mul(&a, 0, &p, &f), &p_inv);
    assert_ne!(f, g);
    assert_eq!(ch0(&a, 0, &g).unwrap(), ch0(&a, 0, &f).unwrap());
    assert_eq!(ch0(&a, 0, &f).unwrap(), single);
}
