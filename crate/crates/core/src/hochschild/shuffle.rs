use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use serde::Serialize;

use super::chains::{collect_terms, CyclicBar, CyclicChain, Terms};
use super::complex::{all_chains, degree_status};
use crate::dgcore::DgCategory;
use crate::dgmod::{assemble, Soundness};
use crate::error::{Error, Result};
use crate::exactfield::{ChainComplex, Echelon, FieldSpec, HomologyBasis, SparseVec};

/// The induced map on one homological degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShuffleDegree {
    /// `dim H_n(HH(A) ⊗ HH(B))`.
    pub source_dim: usize,
    /// `dim HH_n(A ⊗ B)`.
    pub target_dim: usize,
    /// Rank of the induced map.
    pub rank: usize,
    pub status: Soundness,
}

/// The shuffle map `HH(A) ⊗ HH(B) -> HH(A ⊗ B)` on a window of homological
/// degrees, with its chain-map certificate.
#[derive(Clone, Debug, Serialize)]
pub struct ShuffleMap {
    pub window: RangeInclusive<i64>,
    pub bar_bound: usize,
    /// Number of source basis chains on which `sh∘D = D∘sh` was verified.
    pub checked: usize,
    pub degrees: BTreeMap<i64, ShuffleDegree>,
}

/// Shuffle product of a chain of `A` with a chain of `B`:
/// `a_0[a_1|…|a_p] × b_0[b_1|…|b_q] = Σ ± (a_0⊗b_0)[shuffles of a_i⊗1 and 1⊗b_j]`
/// with Koszul signs in shifted degrees.
pub fn shuffle_product(cba: &CyclicBar, cbb: &CyclicBar, cbt: &CyclicBar, x: &CyclicChain, y: &CyclicChain) -> Terms {
    let (a, b) = (cba.category(), cbb.category());
    let field = a.field();
    let nb = b.n_objects();
    let (p, q) = (x.bar_degree(), y.bar_degree());
    let (xo, yo) = (&x.objs, &y.objs);
    let pair = |i: usize, j: usize| xo[i] * nb + yo[j];
    let tensor = |u: &SparseVec, v: &SparseVec, db: usize| {
        let mut terms = Vec::with_capacity(u.nnz() * v.nnz());
        for (i, c) in u.iter() {
            for (j, d) in v.iter() {
                terms.push((i * db + j, field.mul(c, d)));
            }
        }
        SparseVec::from_terms(terms, &field)
    };
    let sa: Vec<i64> = (1..=p).map(|i| cba.slot_degree(x, i) - 1).collect();
    let sb: Vec<i64> = (1..=q).map(|j| cbb.slot_degree(y, j) - 1).collect();
    let head = cbb.slot_degree(y, 0) * sa.iter().sum::<i64>();
    let slot0 = tensor(&cba.slot_vec(x, 0), &cbb.slot_vec(y, 0), b.dim(yo[0], yo[q]));
    let mut out = Vec::new();
    for mask in 0u64..(1 << (p + q)) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut objs = vec![pair(0, 0)];
        let mut vecs = vec![slot0.clone()];
        let mut sign = head;
        for k in 0..p + q {
            if mask >> k & 1 == 1 {
                i += 1;
                sign += sa[i - 1] * sb[..j].iter().sum::<i64>();
                let db = b.dim(yo[j], yo[j]);
                vecs.push(tensor(&cba.slot_vec(x, i), b.unit(yo[j]), db));
            } else {
                j += 1;
                let db = b.dim(yo[j], yo[j - 1]);
                vecs.push(tensor(a.unit(xo[i]), &cbb.slot_vec(y, j), db));
            }
            objs.push(pair(i, j));
        }
        out.extend(cbt.from_vectors(objs, &vecs, field.sign(sign)));
    }
    out
}

/// Whether every pair of chains with total degree in `range` has combined
/// bar degree at most `bar_bound`.
fn pairs_complete(cba: &CyclicBar, cbb: &CyclicBar, range: RangeInclusive<i64>, bar_bound: usize) -> bool {
    if cba.category().finiteness() != crate::dgcore::Finiteness::Closed
        || cbb.category().finiteness() != crate::dgcore::Finiteness::Closed
    {
        return false;
    }
    if let (Some(la), Some(lb)) = (cba.longest_bar(), cbb.longest_bar()) {
        if la + lb <= bar_bound {
            return true;
        }
    }
    let (Some((fa, ba)), Some((fb, bb))) = (cba.ranges(), cbb.ranges()) else {
        return true;
    };
    let bars: Vec<(i64, i64)> = [ba, bb].into_iter().flatten().collect();
    if bars.is_empty() {
        return true;
    }
    let (lo, hi) = (fa.0 + fb.0, fa.1 + fb.1);
    let rhi = bars.iter().map(|r| r.1).max().unwrap();
    let rlo = bars.iter().map(|r| r.0).min().unwrap();
    let reach = if rhi <= 0 {
        (hi - *range.start()).max(0) / (1 - rhi)
    } else if rlo >= 2 {
        (*range.end() - lo).max(0) / (rlo - 1)
    } else {
        return false;
    };
    reach as usize <= bar_bound
}

type Pair = (CyclicChain, CyclicChain);

/// Builds the shuffle map on homological degrees `window`, using chains of
/// total bar degree at most `bar_bound`, and verifies that it is a chain map
/// on every source basis chain in the window. A failed verification is an
/// internal error.
pub fn shuffle_map(a: &DgCategory, b: &DgCategory, window: RangeInclusive<i64>, bar_bound: usize) -> Result<ShuffleMap> {
    if window.is_empty() {
        return Err(Error::WindowNotComputable("empty window".into()));
    }
    let field = a.field();
    let t = a.tensor(b)?;
    let (cba, cbb, cbt) = (CyclicBar::new(a, true), CyclicBar::new(b, true), CyclicBar::new(&t, true));
    let (lo, hi) = (-*window.end() - 1, -*window.start() + 1);
    let in_range = |d: i64| (lo..=hi).contains(&d);

    let ca = all_chains(&cba, bar_bound);
    let cb = all_chains(&cbb, bar_bound);
    let mut pairs: Vec<(i64, Pair, String)> = Vec::new();
    for (da, x, la) in &ca {
        for (db, y, lb) in &cb {
            if x.bar_degree() + y.bar_degree() <= bar_bound && in_range(da + db) {
                pairs.push((da + db, (x.clone(), y.clone()), format!("{la}⊗{lb}")));
            }
        }
    }
    let source_diff = |(x, y): &Pair| -> Vec<(crate::exactfield::Scalar, Pair)> {
        let mut out: Vec<_> = cba.total(x).into_iter().map(|(c, u)| (c, (u, y.clone()))).collect();
        let s = field.sign(cba.degree(x));
        out.extend(cbb.total(y).into_iter().map(|(c, v)| (field.mul(&s, &c), (x.clone(), v))));
        out
    };

    // chain-map certificate
    let sh = |(x, y): &Pair| shuffle_product(&cba, &cbb, &cbt, x, y);
    for (_, s, label) in &pairs {
        let mut lhs = Vec::new();
        for (c, u) in source_diff(s) {
            lhs.extend(sh(&u).into_iter().map(|(d, v)| (field.mul(&c, &d), v)));
        }
        let mut diff = lhs;
        for (c, u) in sh(s) {
            diff.extend(cbt.total(&u).into_iter().map(|(d, v)| (field.neg(&field.mul(&c, &d)), v)));
        }
        if !collect_terms(diff, &field).is_empty() {
            return Err(Error::Internal(format!("shuffle map does not commute with differentials on {label}")));
        }
    }

    let target_chains: Vec<(i64, CyclicChain, String)> =
        all_chains(&cbt, bar_bound).into_iter().filter(|(d, _, _)| in_range(*d)).collect();
    let index_by_degree = |items: Vec<(i64, &CyclicChain)>| {
        let mut idx: HashMap<CyclicChain, (i64, usize)> = HashMap::new();
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for (d, c) in items {
            let k = count.entry(d).or_default();
            idx.insert(c.clone(), (d, *k));
            *k += 1;
        }
        idx
    };
    let target_index = index_by_degree(target_chains.iter().map(|(d, c, _)| (*d, c)).collect());
    let source_by_degree: BTreeMap<i64, Vec<Pair>> = pairs.iter().fold(BTreeMap::new(), |mut m, (d, s, _)| {
        m.entry(*d).or_insert_with(Vec::new).push(s.clone());
        m
    });
    let src = assemble(field, lo, hi, pairs.clone(), source_diff)?;
    let tgt = assemble(field, lo, hi, target_chains.clone(), |c| cbt.total(c))?;

    let mut degrees = BTreeMap::new();
    for n in window.clone() {
        let d = -n;
        let hs = homology_basis(&src, d);
        let ht = homology_basis(&tgt, d);
        let mut bounds = Echelon::new(field);
        if let Some(m) = tgt.diff(d - 1) {
            for c in m.columns() {
                bounds.insert(c);
            }
        }
        let base = bounds.rank();
        let empty = Vec::new();
        let basis = source_by_degree.get(&d).unwrap_or(&empty);
        for z in hs.representatives() {
            let mut terms = Vec::new();
            for (i, c) in z.iter() {
                for (e, u) in sh(&basis[i]) {
                    let (_, k) = target_index[&u];
                    terms.push((k, field.mul(c, &e)));
                }
            }
            bounds.insert(&SparseVec::from_terms(terms, &field));
        }
        let exact = pairs_complete(&cba, &cbb, d - 1..=d + 1, bar_bound)
            && degree_status(&cbt, bar_bound, n) == Soundness::Exact;
        degrees.insert(
            n,
            ShuffleDegree {
                source_dim: hs.dim(),
                target_dim: ht.dim(),
                rank: bounds.rank() - base,
                status: if exact { Soundness::Exact } else { Soundness::Truncated },
            },
        );
    }
    Ok(ShuffleMap { window, bar_bound, checked: pairs.len(), degrees })
}

fn homology_basis(c: &ChainComplex, d: i64) -> HomologyBasis {
    let field: FieldSpec = c.field();
    let zero_in = crate::exactfield::Matrix::zero(field, c.dim(d), 0);
    let zero_out = crate::exactfield::Matrix::zero(field, 0, c.dim(d));
    HomologyBasis::new(&c.diff(d - 1).unwrap_or(zero_in), &c.diff(d).unwrap_or(zero_out))
}
