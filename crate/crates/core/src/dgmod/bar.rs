use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use serde::Serialize;

use super::module::DgModule;
use crate::dgcore::{DgCategory, ReducedHoms};
use crate::error::{Error, Result};
use crate::exactfield::{ChainComplex, FieldSpec, Matrix, Scalar, SparseVec};

/// Whether the grading bounds prove that the computed window is complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Soundness {
    Exact,
    Truncated,
}

/// The two-sided bar complex `B(M, A, N)` cut to a degree window.
#[derive(Clone, Debug)]
pub struct BarTor {
    /// Total complex on degrees `window.start()-1 ..= window.end()+1`.
    pub complex: ChainComplex,
    pub window: RangeInclusive<i64>,
    pub soundness: Soundness,
    /// Largest bar degree included.
    pub bar_bound: usize,
}

impl BarTor {
    /// Cohomological homology dimensions on the window.
    pub fn homology(&self) -> BTreeMap<i64, usize> {
        self.complex.homology_dims(self.window.clone()).expect("window neighbours are stored")
    }
}

/// One basis chain `m[a_1|…|a_p]n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BarChain {
    /// `x_0, …, x_p` with `m ∈ M(x_0)`, `a_i ∈ Ā(x_i, x_{i-1})`, `n ∈ N(x_p)`.
    pub objs: Vec<usize>,
    pub m: usize,
    pub a: Vec<usize>,
    pub n: usize,
}

/// Enumerates bar chains and their differential for right module `m` over `A`
/// and `n`, a right module over `A^op` viewed as a left `A`-module through
/// `a·x = (-1)^{|a||x|} x·a`.
pub(crate) struct BarBuilder<'a> {
    pub m: &'a DgModule,
    pub n: &'a DgModule,
    pub red: ReducedHoms<'a>,
    field: FieldSpec,
}

impl<'a> BarBuilder<'a> {
    pub fn new(m: &'a DgModule, n: &'a DgModule) -> Result<Self> {
        let a = m.base();
        if *n.base() != a.opposite() {
            return Err(Error::InvalidModule("second bar argument must be a module over the opposite".into()));
        }
        Ok(BarBuilder { m, n, red: ReducedHoms::new(a), field: a.field() })
    }

    fn cat(&self) -> &DgCategory {
        self.m.base()
    }

    pub fn degree(&self, c: &BarChain) -> i64 {
        let p = c.a.len();
        let mut d = self.m.degree(c.objs[0], c.m) + self.n.degree(c.objs[p], c.n);
        for (i, &ai) in c.a.iter().enumerate() {
            d += self.red.degree(c.objs[i + 1], c.objs[i], ai) - 1;
        }
        d
    }

    /// All chains of bar degree `p`, optionally filtered by total degree.
    pub fn chains(&self, p: usize, keep: impl Fn(i64) -> bool) -> Vec<BarChain> {
        let no = self.cat().n_objects();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = (0..no)
            .filter(|&x| self.m.dim(x) > 0)
            .map(|x| (vec![x], Vec::new()))
            .collect();
        while let Some((objs, a)) = stack.pop() {
            if a.len() == p {
                let last = *objs.last().unwrap();
                for mi in 0..self.m.dim(objs[0]) {
                    for ni in 0..self.n.dim(last) {
                        let c = BarChain { objs: objs.clone(), m: mi, a: a.clone(), n: ni };
                        if keep(self.degree(&c)) {
                            out.push(c);
                        }
                    }
                }
                continue;
            }
            let prev = *objs.last().unwrap();
            for x in 0..no {
                for i in 0..self.red.dim(x, prev) {
                    let mut o = objs.clone();
                    o.push(x);
                    let mut aa = a.clone();
                    aa.push(i);
                    stack.push((o, aa));
                }
            }
        }
        out.sort_by(|u, v| (u.a.len(), &u.objs, u.m, &u.a, u.n).cmp(&(v.a.len(), &v.objs, v.m, &v.a, v.n)));
        out
    }

    /// `a·n` for `a ∈ A(x, y)` (full vector) and `n ∈ N(x)` (basis index).
    fn left_act(&self, x: usize, y: usize, a: &SparseVec, ni: usize) -> SparseVec {
        let field = &self.field;
        let cat = self.cat();
        let mut out = SparseVec::new();
        for (ai, c) in a.iter() {
            let s = field.sign(cat.degree(x, y, ai) * self.n.degree(x, ni));
            let v = self.n.act_basis(y, x, ni, ai);
            out.add_assign_scaled(&field.mul(&s, c), v, field);
        }
        out
    }

    /// Differential, split into the internal part (`d` of each slot) and the
    /// external part (products of neighbours). Terms are `(coefficient, chain)`.
    pub fn differential(&self, c: &BarChain, internal: bool, external: bool) -> Vec<(Scalar, BarChain)> {
        let field = &self.field;
        let cat = self.cat();
        let p = c.a.len();
        let o = &c.objs;
        let mut out = Vec::new();
        let deg_m = self.m.degree(o[0], c.m);
        let mut eps = vec![deg_m; p + 1];
        for i in 1..=p {
            eps[i] = eps[i - 1] + self.red.degree(o[i], o[i - 1], c.a[i - 1]) - 1;
        }
        if internal {
            let dm = self.m.differential(o[0], &SparseVec::unit(c.m, field));
            for (k, v) in dm.iter() {
                out.push((v.clone(), BarChain { m: k, ..c.clone() }));
            }
            for i in 1..=p {
                let (src, tgt) = (o[i], o[i - 1]);
                let da = cat.differential(src, tgt, &self.red.lift(src, tgt, c.a[i - 1]));
                let s = field.neg(&field.sign(eps[i - 1]));
                for (k, v) in self.red.reduce(src, tgt, &da).iter() {
                    let mut a = c.a.clone();
                    a[i - 1] = k;
                    out.push((field.mul(&s, v), BarChain { a, ..c.clone() }));
                }
            }
            let dn = self.n.differential(o[p], &SparseVec::unit(c.n, field));
            let s = field.sign(eps[p]);
            for (k, v) in dn.iter() {
                out.push((field.mul(&s, v), BarChain { n: k, ..c.clone() }));
            }
        }
        if external && p > 0 {
            // m·a_1
            let s = field.sign(deg_m);
            let ma = self.m.act(o[1], o[0], &SparseVec::unit(c.m, field), &self.red.lift(o[1], o[0], c.a[0]));
            for (k, v) in ma.iter() {
                out.push((
                    field.mul(&s, v),
                    BarChain { objs: o[1..].to_vec(), m: k, a: c.a[1..].to_vec(), n: c.n },
                ));
            }
            // a_i a_{i+1}
            for i in 1..p {
                let s = field.sign(eps[i]);
                let prod = cat.compose(
                    o[i + 1],
                    o[i],
                    o[i - 1],
                    &self.red.lift(o[i], o[i - 1], c.a[i - 1]),
                    &self.red.lift(o[i + 1], o[i], c.a[i]),
                );
                for (k, v) in self.red.reduce(o[i + 1], o[i - 1], &prod).iter() {
                    let mut objs = o.clone();
                    objs.remove(i);
                    let mut a = c.a.clone();
                    a.remove(i);
                    a[i - 1] = k;
                    out.push((field.mul(&s, v), BarChain { objs, m: c.m, a, n: c.n }));
                }
            }
            // a_p·n
            let s = field.neg(&field.sign(eps[p - 1]));
            let an = self.left_act(o[p], o[p - 1], &self.red.lift(o[p], o[p - 1], c.a[p - 1]), c.n);
            for (k, v) in an.iter() {
                out.push((
                    field.mul(&s, v),
                    BarChain { objs: o[..p].to_vec(), m: c.m, a: c.a[..p - 1].to_vec(), n: k },
                ));
            }
        }
        out
    }

    /// Bar degrees that can reach total degrees in `range`; `None` when
    /// infinitely many can.
    pub fn bar_degrees_reaching(&self, range: RangeInclusive<i64>) -> Option<usize> {
        let (Some((mlo, mhi)), Some((nlo, nhi))) = (self.m.degree_range(), self.n.degree_range()) else {
            return Some(0);
        };
        let Some((rlo, rhi)) = self.red.degree_range() else {
            return Some(0);
        };
        let (lo, hi) = (*range.start(), *range.end());
        // degree of bar degree p lies in [mlo+nlo+p(rlo-1), mhi+nhi+p(rhi-1)]
        if rhi <= 0 {
            let top = mhi + nhi;
            if top < lo {
                return Some(0);
            }
            return Some(((top - lo) / (1 - rhi)) as usize);
        }
        if rlo >= 2 {
            let bottom = mlo + nlo;
            if bottom > hi {
                return Some(0);
            }
            return Some(((hi - bottom) / (rlo - 1)) as usize);
        }
        None
    }
}

/// Assembles the total complex of a set of chains grouped by degree.
pub(crate) fn assemble<K: Clone + Eq + std::hash::Hash>(
    field: FieldSpec,
    lo: i64,
    hi: i64,
    chains: Vec<(i64, K, String)>,
    diff: impl Fn(&K) -> Vec<(Scalar, K)>,
) -> Result<ChainComplex> {
    let width = (hi - lo + 1) as usize;
    let mut by_degree: Vec<Vec<(K, String)>> = vec![Vec::new(); width];
    for (d, k, label) in chains {
        if (lo..=hi).contains(&d) {
            by_degree[(d - lo) as usize].push((k, label));
        }
    }
    let index: Vec<HashMap<K, usize>> = by_degree
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect())
        .collect();
    let mut diffs = Vec::with_capacity(width.saturating_sub(1));
    for d in 0..width.saturating_sub(1) {
        let cols = by_degree[d]
            .iter()
            .map(|(k, _)| {
                SparseVec::from_terms(
                    diff(k).into_iter().filter_map(|(c, t)| index[d + 1].get(&t).map(|&i| (i, c))),
                    &field,
                )
            })
            .collect();
        diffs.push(Matrix::from_columns(field, by_degree[d + 1].len(), cols));
    }
    let bases = by_degree.into_iter().map(|v| v.into_iter().map(|(_, l)| l).collect()).collect();
    ChainComplex::with_extent(field, lo, bases, diffs, false, false)
}

fn chain_label(b: &BarBuilder, c: &BarChain) -> String {
    let p = c.a.len();
    let slots: Vec<&str> = (0..p).map(|i| b.red.label(c.objs[i + 1], c.objs[i], c.a[i])).collect();
    format!("{}[{}]{}", b.m.label(c.objs[0], c.m), slots.join("|"), b.n.label(c.objs[p], c.n))
}

/// Derived tensor `M ⊗^L_A N` by the two-sided bar construction, restricted to
/// the cohomological degree window. `n` is a right module over `A^op`.
///
/// The answer is [`Soundness::Exact`] when the degree bounds prove that every
/// bar degree reaching the window is included. Otherwise the bar degree is
/// capped at `max_bar`; without a cap the window is refused.
pub fn bar_tor(m: &DgModule, n: &DgModule, window: RangeInclusive<i64>, max_bar: Option<usize>) -> Result<BarTor> {
    if window.is_empty() {
        return Err(Error::WindowNotComputable("empty window".into()));
    }
    let b = BarBuilder::new(m, n)?;
    let (lo, hi) = (*window.start() - 1, *window.end() + 1);
    let (p_max, soundness) = match (b.bar_degrees_reaching(lo..=hi), max_bar) {
        (Some(p), Some(cap)) if p > cap => (cap, Soundness::Truncated),
        (Some(p), _) => (p, Soundness::Exact),
        (None, Some(cap)) => (cap, Soundness::Truncated),
        (None, None) => {
            return Err(Error::WindowNotComputable(
                "reduced homs reach degree ≥ 1 and ≤ 1, so every bar degree can reach the window; pass a bar bound"
                    .into(),
            ))
        }
    };
    build(&b, window, p_max, soundness)
}

/// [`bar_tor`] with every bar degree up to `bar_bound` included. The result is
/// exact when the degree bounds show nothing beyond `bar_bound` reaches the
/// window.
pub fn bar_tor_fixed(m: &DgModule, n: &DgModule, window: RangeInclusive<i64>, bar_bound: usize) -> Result<BarTor> {
    if window.is_empty() {
        return Err(Error::WindowNotComputable("empty window".into()));
    }
    let b = BarBuilder::new(m, n)?;
    let reach = b.bar_degrees_reaching(*window.start() - 1..=*window.end() + 1);
    let soundness = match reach {
        Some(p) if p <= bar_bound => Soundness::Exact,
        _ => Soundness::Truncated,
    };
    build(&b, window, bar_bound, soundness)
}

fn build(b: &BarBuilder, window: RangeInclusive<i64>, p_max: usize, soundness: Soundness) -> Result<BarTor> {
    let (lo, hi) = (*window.start() - 1, *window.end() + 1);
    let mut chains = Vec::new();
    for p in 0..=p_max {
        for c in b.chains(p, |d| (lo..=hi).contains(&d)) {
            let label = chain_label(b, &c);
            chains.push((b.degree(&c), c, label));
        }
    }
    let complex = assemble(b.m.field(), lo, hi, chains, |c| b.differential(c, true, true))?;
    Ok(BarTor { complex, window, soundness, bar_bound: p_max })
}

/// `Tor_p` graded by bar degree alone, for modules and categories with zero
/// differential: the bar complex splits by internal degree, so its homology
/// in bar degree `p` is `Tor_p`. Returns dims for `p = 0..=p_max`.
pub fn bar_degree_tor(m: &DgModule, n: &DgModule, p_max: usize) -> Result<BTreeMap<usize, usize>> {
    if !(m.has_zero_differential() && n.has_zero_differential() && m.base().has_zero_differential()) {
        return Err(Error::InvalidModule("bar-degree Tor needs zero differentials".into()));
    }
    let b = BarBuilder::new(m, n)?;
    let top = p_max as i64 + 1;
    let mut chains = Vec::new();
    for p in 0..=p_max + 1 {
        for c in b.chains(p, |_| true) {
            let label = chain_label(&b, &c);
            chains.push((-(p as i64), c, label));
        }
    }
    let complex = assemble(m.field(), -top, 0, chains, |c| b.differential(c, false, true))?;
    let dims = complex.homology_dims_truncated(-(p_max as i64)..=0);
    Ok(dims.into_iter().map(|(d, v)| ((-d) as usize, v)).collect())
}

/// Simple modules at every object of a category whose units are basis
/// elements: `S(x) = k` in degree 0, units act by one, everything else by zero.
pub fn semisimple_module(a: &DgCategory) -> Result<DgModule> {
    use crate::dgcore::{BasisElement, Hom};
    let field = a.field();
    let n = a.n_objects();
    let mut values = Vec::with_capacity(n);
    let mut entries = Vec::new();
    for x in 0..n {
        let u = a.unit(x);
        let Some((j, c)) = u.leading() else {
            return Err(Error::InvalidModule("zero unit".into()));
        };
        if u.nnz() != 1 || *c != field.one() {
            return Err(Error::InvalidModule("units must be basis elements".into()));
        }
        values.push(Hom::with_zero_differential(field, vec![BasisElement::new(format!("S_{}", a.objects()[x]), 0)]));
        entries.push((x, x, 0, j, 0, field.one()));
    }
    DgModule::new(a.clone(), values, entries)
}
