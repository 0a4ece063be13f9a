use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::dgcore::{DgCategory, ReducedHoms};
use crate::exactfield::{FieldSpec, Scalar, SparseVec};

/// A basis chain `a_0[a_1|…|a_n]` of the cyclic bar construction.
///
/// `objs = (x_0, …, x_n)` with `a_0 ∈ A(x_0, x_n)` and `a_i ∈ A(x_i, x_{i-1})`
/// for `i ≥ 1`. Indices in `a` refer to the full hom basis in slot 0 and to
/// either the reduced or the full basis in the bar slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicChain {
    pub objs: Vec<usize>,
    pub a: Vec<usize>,
}

impl CyclicChain {
    pub fn bar_degree(&self) -> usize {
        self.a.len() - 1
    }
}

/// A finite linear combination of chains.
pub type Terms = Vec<(Scalar, CyclicChain)>;

/// Sums repeated chains and drops zero coefficients.
pub fn collect_terms(terms: Terms, field: &FieldSpec) -> BTreeMap<CyclicChain, Scalar> {
    let mut out: BTreeMap<CyclicChain, Scalar> = BTreeMap::new();
    for (c, chain) in terms {
        let e = out.entry(chain).or_insert_with(|| field.zero());
        *e = field.add(e, &c);
    }
    out.retain(|_, v| *v != field.zero());
    out
}

/// Chains and operators of the cyclic bar construction of a finite dg
/// category, normalized (bar slots in `Ā`) or unnormalized.
///
/// The total differential uses shifted degrees: `[a_i]` has degree
/// `|a_i| - 1` and a chain has degree `ε_n` where
/// `ε_i = |a_0| + Σ_{j≤i} (|a_j| - 1)`. The face, degeneracy and rotation
/// maps of the underlying cyclic object use unshifted Koszul signs.
pub struct CyclicBar<'a> {
    cat: &'a DgCategory,
    red: ReducedHoms<'a>,
    normalized: bool,
    field: FieldSpec,
}

fn ends(objs: &[usize], i: usize) -> (usize, usize) {
    if i == 0 {
        (objs[0], objs[objs.len() - 1])
    } else {
        (objs[i], objs[i - 1])
    }
}

impl<'a> CyclicBar<'a> {
    pub fn new(cat: &'a DgCategory, normalized: bool) -> Self {
        CyclicBar { cat, red: ReducedHoms::new(cat), normalized, field: cat.field() }
    }

    pub fn category(&self) -> &DgCategory {
        self.cat
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn reduced_slot(&self, i: usize) -> bool {
        self.normalized && i > 0
    }

    fn slot_dim(&self, i: usize, src: usize, tgt: usize) -> usize {
        if self.reduced_slot(i) {
            self.red.dim(src, tgt)
        } else {
            self.cat.dim(src, tgt)
        }
    }

    /// Degree of the element in slot `i` (unshifted).
    pub fn slot_degree(&self, c: &CyclicChain, i: usize) -> i64 {
        let (s, t) = ends(&c.objs, i);
        if self.reduced_slot(i) {
            self.red.degree(s, t, c.a[i])
        } else {
            self.cat.degree(s, t, c.a[i])
        }
    }

    fn slot_label(&self, c: &CyclicChain, i: usize) -> &str {
        let (s, t) = ends(&c.objs, i);
        if self.reduced_slot(i) {
            self.red.label(s, t, c.a[i])
        } else {
            self.cat.label(s, t, c.a[i])
        }
    }

    /// The element in slot `i` as a full vector of its hom space.
    pub fn slot_vec(&self, c: &CyclicChain, i: usize) -> SparseVec {
        let (s, t) = ends(&c.objs, i);
        if self.reduced_slot(i) {
            self.red.lift(s, t, c.a[i])
        } else {
            SparseVec::unit(c.a[i], &self.field)
        }
    }

    /// Coordinates of a full vector placed in slot `i`.
    fn coords(&self, i: usize, src: usize, tgt: usize, v: &SparseVec) -> SparseVec {
        if self.reduced_slot(i) {
            self.red.reduce(src, tgt, v)
        } else {
            v.clone()
        }
    }

    /// Total degree `|a_0| + Σ (|a_i| - 1)`.
    pub fn degree(&self, c: &CyclicChain) -> i64 {
        (0..c.a.len()).map(|i| self.slot_degree(c, i)).sum::<i64>() - c.bar_degree() as i64
    }

    pub fn label(&self, c: &CyclicChain) -> String {
        let slots: Vec<&str> = (1..c.a.len()).map(|i| self.slot_label(c, i)).collect();
        format!("{}[{}]", self.slot_label(c, 0), slots.join("|"))
    }

    /// All chains of bar degree `n` whose total degree passes `keep`, in a
    /// canonical order.
    pub fn chains(&self, n: usize, keep: impl Fn(i64) -> bool) -> Vec<CyclicChain> {
        let no = self.cat.n_objects();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..no).map(|x| vec![x]).collect();
        while let Some(objs) = stack.pop() {
            if objs.len() == n + 1 {
                let dims: Vec<usize> = (0..=n)
                    .map(|i| {
                        let (s, t) = ends(&objs, i);
                        self.slot_dim(i, s, t)
                    })
                    .collect();
                if dims.iter().any(|&d| d == 0) {
                    continue;
                }
                let mut idx = vec![0; n + 1];
                loop {
                    let c = CyclicChain { objs: objs.clone(), a: idx.clone() };
                    if keep(self.degree(&c)) {
                        out.push(c);
                    }
                    let mut k = 0;
                    while k <= n {
                        idx[k] += 1;
                        if idx[k] < dims[k] {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k > n {
                        break;
                    }
                }
                continue;
            }
            let prev = *objs.last().unwrap();
            let i = objs.len();
            for x in 0..no {
                if self.slot_dim(i, x, prev) > 0 {
                    let mut o = objs.clone();
                    o.push(x);
                    stack.push(o);
                }
            }
        }
        out.sort();
        out
    }

    /// `coeff · v_0[v_1|…|v_n]` for full vectors `v_i` of the slot hom
    /// spaces determined by `objs`, expanded in the chain basis.
    pub fn from_vectors(&self, objs: Vec<usize>, vecs: &[SparseVec], coeff: Scalar) -> Terms {
        let slots: Vec<(usize, SparseVec)> = vecs
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (s, t) = ends(&objs, i);
                (i, self.coords(i, s, t, v))
            })
            .collect();
        let mut out = Vec::new();
        if slots.iter().all(|(_, v)| !v.is_zero()) {
            self.expand(objs, vec![0; vecs.len()], &slots, coeff, &mut out);
        }
        out
    }

    /// Expands `coeff * chain` where the listed slots hold vectors of
    /// coordinates instead of basis indices.
    fn expand(&self, objs: Vec<usize>, a: Vec<usize>, slots: &[(usize, SparseVec)], coeff: Scalar, out: &mut Terms) {
        let mut partial = vec![(coeff, a)];
        for (slot, v) in slots {
            let mut next = Vec::with_capacity(partial.len() * v.nnz());
            for (c, a) in &partial {
                for (k, x) in v.iter() {
                    let mut a2 = a.clone();
                    a2[*slot] = k;
                    next.push((self.field.mul(c, x), a2));
                }
            }
            partial = next;
        }
        for (c, a) in partial {
            out.push((c, CyclicChain { objs: objs.clone(), a }));
        }
    }

    fn eps(&self, c: &CyclicChain) -> Vec<i64> {
        let mut e = vec![self.slot_degree(c, 0); c.a.len()];
        for i in 1..c.a.len() {
            e[i] = e[i - 1] + self.slot_degree(c, i) - 1;
        }
        e
    }

    /// Internal differential: `d` applied to one slot at a time.
    pub fn internal(&self, c: &CyclicChain) -> Terms {
        let f = &self.field;
        let eps = self.eps(c);
        let mut out = Vec::new();
        for i in 0..c.a.len() {
            let (s, t) = ends(&c.objs, i);
            let dv = self.coords(i, s, t, &self.cat.differential(s, t, &self.slot_vec(c, i)));
            if dv.is_zero() {
                continue;
            }
            let sign = if i == 0 { f.one() } else { f.neg(&f.sign(eps[i - 1])) };
            self.expand(c.objs.clone(), c.a.clone(), &[(i, dv)], sign, &mut out);
        }
        out
    }

    /// The Hochschild boundary `b` in shifted signs.
    pub fn b(&self, c: &CyclicChain) -> Terms {
        let f = &self.field;
        let n = c.bar_degree();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let o = &c.objs;
        let eps = self.eps(c);
        // a_0 a_1
        let prod = self.cat.compose(o[1], o[0], o[n], &self.slot_vec(c, 0), &self.slot_vec(c, 1));
        let mut a = c.a[1..].to_vec();
        a[0] = 0;
        self.expand(o[1..].to_vec(), a, &[(0, prod)], f.sign(self.slot_degree(c, 0)), &mut out);
        // a_i a_{i+1}
        for i in 1..n {
            let prod = self.cat.compose(o[i + 1], o[i], o[i - 1], &self.slot_vec(c, i), &self.slot_vec(c, i + 1));
            let v = self.coords(i, o[i + 1], o[i - 1], &prod);
            let mut objs = o.clone();
            objs.remove(i);
            let mut a = c.a.clone();
            a.remove(i + 1);
            self.expand(objs, a, &[(i, v)], f.sign(eps[i]), &mut out);
        }
        // a_n a_0
        let prod = self.cat.compose(o[0], o[n], o[n - 1], &self.slot_vec(c, n), &self.slot_vec(c, 0));
        let a = c.a[..n].to_vec();
        let s = f.neg(&f.sign((self.slot_degree(c, n) - 1) * eps[n - 1]));
        self.expand(o[..n].to_vec(), a, &[(0, prod)], s, &mut out);
        out
    }

    /// The total differential `d + b`.
    pub fn total(&self, c: &CyclicChain) -> Terms {
        let mut t = self.internal(c);
        t.extend(self.b(c));
        t
    }

    /// Connes' operator on the normalized complex:
    /// `B(a_0[a_1|…|a_n]) = Σ_i ± 1[a_i|…|a_n|a_0|…|a_{i-1}]` with the Koszul
    /// sign of moving the block `[a_i|…|a_n]` past `[a_0|…|a_{i-1}]` in
    /// shifted degrees.
    pub fn connes_b(&self, c: &CyclicChain) -> Terms {
        assert!(self.normalized, "B is defined on the normalized complex");
        let f = &self.field;
        let n = c.bar_degree();
        let o = &c.objs;
        let shifted: Vec<i64> = (0..=n).map(|i| self.slot_degree(c, i) - 1).collect();
        let total: i64 = shifted.iter().sum();
        let a0 = self.red.reduce(o[0], o[n], &self.slot_vec(c, 0));
        let mut out = Vec::new();
        if a0.is_zero() {
            return out;
        }
        let mut before = 0;
        for i in 0..=n {
            let x = o[(i + n) % (n + 1)];
            let mut objs = vec![x];
            objs.extend((i..=n).map(|j| o[j]));
            objs.extend((0..i).map(|j| o[j]));
            let mut a = vec![0];
            a.extend((i..=n).map(|j| c.a[j]));
            a.extend((0..i).map(|j| c.a[j]));
            let pos0 = n + 2 - i;
            let pos0 = if i == 0 { 1 } else { pos0 };
            let sign = f.sign((total - before) * before);
            let unit = self.cat.unit(x).clone();
            self.expand(objs, a, &[(0, unit), (pos0, a0.clone())], sign, &mut out);
            before += shifted[i];
        }
        out
    }

    /// Face map `d_i` of the cyclic object (unshifted signs): composes
    /// neighbours `i` and `i+1`, and `d_n` carries `a_n` around to `a_0`.
    pub fn face(&self, c: &CyclicChain, i: usize) -> Terms {
        let f = &self.field;
        let n = c.bar_degree();
        assert!(n >= 1 && i <= n);
        let o = &c.objs;
        let mut out = Vec::new();
        if i < n {
            let (gs, gt) = ends(o, i);
            let prod = self.cat.compose(o[i + 1], gs, gt, &self.slot_vec(c, i), &self.slot_vec(c, i + 1));
            let v = self.coords(i, o[i + 1], gt, &prod);
            let mut objs = o.clone();
            objs.remove(i);
            let mut a = c.a.clone();
            a.remove(i + 1);
            self.expand(objs, a, &[(i, v)], f.one(), &mut out);
        } else {
            let rest: i64 = (0..n).map(|j| self.slot_degree(c, j)).sum();
            let prod = self.cat.compose(o[0], o[n], o[n - 1], &self.slot_vec(c, n), &self.slot_vec(c, 0));
            let s = f.sign(self.slot_degree(c, n) * rest);
            self.expand(o[..n].to_vec(), c.a[..n].to_vec(), &[(0, prod)], s, &mut out);
        }
        out
    }

    /// Degeneracy `s_j`: inserts the identity of `x_j` after slot `j`.
    pub fn degeneracy(&self, c: &CyclicChain, j: usize) -> Terms {
        assert!(!self.normalized, "degeneracies vanish on the normalized complex");
        let x = c.objs[j];
        let mut objs = c.objs.clone();
        objs.insert(j + 1, x);
        let mut a = c.a.clone();
        a.insert(j + 1, 0);
        let mut out = Vec::new();
        self.expand(objs, a, &[(j + 1, self.cat.unit(x).clone())], self.field.one(), &mut out);
        out
    }

    /// The cyclic operator of the cyclic object:
    /// `t(a_0, …, a_n) = (-1)^{n + |a_n|(|a_0|+…+|a_{n-1}|)} (a_n, a_0, …, a_{n-1})`.
    pub fn rotation(&self, c: &CyclicChain) -> Terms {
        assert!(!self.normalized, "rotation acts on unnormalized chains");
        let n = c.bar_degree();
        let rest: i64 = (0..n).map(|j| self.slot_degree(c, j)).sum();
        let s = self.field.sign(n as i64 + self.slot_degree(c, n) * rest);
        let mut objs = vec![c.objs[n]];
        objs.extend_from_slice(&c.objs[..n]);
        let mut a = vec![c.a[n]];
        a.extend_from_slice(&c.a[..n]);
        vec![(s, CyclicChain { objs, a })]
    }

    /// Degree ranges `(slot 0, bar slots)` of the available basis elements.
    pub fn ranges(&self) -> Option<((i64, i64), Option<(i64, i64)>)> {
        let full = self.cat.degree_range()?;
        let bar = if self.normalized { self.red.degree_range() } else { Some(full) };
        Some((full, bar))
    }

    /// The largest bar degree whose chains can have total degree in `range`;
    /// `None` when unboundedly many can.
    pub fn bar_degrees_reaching(&self, range: RangeInclusive<i64>) -> Option<usize> {
        let Some(((lo, hi), bar)) = self.ranges() else {
            return Some(0);
        };
        let Some((rlo, rhi)) = bar else {
            return Some(0);
        };
        if let Some(p) = self.longest_bar() {
            return Some(p);
        }
        let (a, b) = (*range.start(), *range.end());
        if rhi <= 0 {
            return Some(if hi < a { 0 } else { ((hi - a) / (1 - rhi)) as usize });
        }
        if rlo >= 2 {
            return Some(if lo > b { 0 } else { ((b - lo) / (rlo - 1)) as usize });
        }
        None
    }

    /// When composable sequences of bar-slot elements have bounded length,
    /// the largest bar degree carrying any chain.
    pub fn longest_bar(&self) -> Option<usize> {
        let no = self.cat.n_objects();
        // longest[x]: longest composable sequence starting (as a_1's target) at x
        let edge = |s: usize, t: usize| self.slot_dim(1, s, t) > 0;
        let mut longest: Vec<Option<usize>> = vec![None; no];
        let mut state = vec![0u8; no];
        fn visit(
            x: usize,
            no: usize,
            edge: &dyn Fn(usize, usize) -> bool,
            state: &mut [u8],
            longest: &mut [Option<usize>],
        ) -> bool {
            if state[x] == 2 {
                return true;
            }
            if state[x] == 1 {
                return false;
            }
            state[x] = 1;
            let mut best = 0;
            for y in 0..no {
                if edge(y, x) {
                    if !visit(y, no, edge, state, longest) {
                        return false;
                    }
                    best = best.max(longest[y].unwrap() + 1);
                }
            }
            state[x] = 2;
            longest[x] = Some(best);
            true
        }
        for x in 0..no {
            if !visit(x, no, &edge, &mut state, &mut longest) {
                return None;
            }
        }
        longest.into_iter().map(|l| l.unwrap()).max()
    }

    /// Bounds on the total degree of every chain, when finite.
    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        let ((lo, hi), bar) = self.ranges()?;
        let Some((rlo, rhi)) = bar else {
            return Some((lo, hi));
        };
        let p = self.longest_bar()? as i64;
        let (mut a, mut b) = (lo, hi);
        for q in 0..=p {
            a = a.min(lo + q * (rlo - 1));
            b = b.max(hi + q * (rhi - 1));
        }
        Some((a, b))
    }

    /// An upper bound on total degrees, when one exists.
    pub fn max_degree(&self) -> Option<i64> {
        let Some(((_, hi), bar)) = self.ranges() else {
            return Some(0);
        };
        match bar {
            None => Some(hi),
            Some(_) if self.longest_bar().is_some() => self.degree_bounds().map(|(_, b)| b),
            Some((_, rhi)) if rhi <= 1 => Some(hi),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn unnormalized_counts_for_dual_numbers() {
        let a = corpus::dual_numbers(Q);
        let cb = CyclicBar::new(&a, false);
        for n in 0..5 {
            assert_eq!(cb.chains(n, |_| true).len(), 1 << (n + 1));
        }
        let nb = CyclicBar::new(&a, true);
        for n in 0..5 {
            assert_eq!(nb.chains(n, |_| true).len(), 2);
        }
    }

    #[test]
    fn path_algebra_has_short_chains() {
        let a = corpus::path_a2(Q);
        let cb = CyclicBar::new(&a, true);
        assert_eq!(cb.longest_bar(), Some(1));
        assert_eq!(cb.chains(2, |_| true).len(), 0);
        assert_eq!(cb.bar_degrees_reaching(-10..=10), Some(1));
        let d = corpus::dual_numbers(Q);
        assert_eq!(CyclicBar::new(&d, true).longest_bar(), None);
    }
}
