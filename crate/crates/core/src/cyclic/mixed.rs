use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::dgcore::{DgCategory, Finiteness};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, SparseVec};
use crate::hochschild::{collect_terms, CyclicBar, CyclicChain, Terms};

/// A mixed complex in homological indexing: spaces `C_m`, a differential `b`
/// of degree `-1` and Connes' operator `B` of degree `+1`.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    pub base: DgCategory,
    pub field: FieldSpec,
    pub bar_bound: usize,
    /// Basis labels of `C_m`.
    pub spaces: BTreeMap<i64, Vec<String>>,
    /// `b_m: C_m -> C_{m-1}`.
    pub b: BTreeMap<i64, Matrix>,
    /// `B_m: C_m -> C_{m+1}`.
    pub big_b: BTreeMap<i64, Matrix>,
}

/// Outcome of the exhaustive mixed-complex identity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub chains_checked: usize,
    pub b_squared: bool,
    pub big_b_squared: bool,
    pub anticommute: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.b_squared && self.big_b_squared && self.anticommute
    }
}

impl MixedComplex {
    pub fn dim(&self, m: i64) -> usize {
        self.spaces.get(&m).map_or(0, Vec::len)
    }

    /// Whether every chain of homological degree `m` is realized.
    pub fn is_complete(&self, m: i64) -> bool {
        if self.base.finiteness() != Finiteness::Closed {
            return false;
        }
        matches!(CyclicBar::new(&self.base, true).bar_degrees_reaching(-m..=-m), Some(p) if p <= self.bar_bound)
    }

    /// A certified lower bound on homological degrees carrying chains.
    pub fn lowest_degree(&self) -> Option<i64> {
        CyclicBar::new(&self.base, true).max_degree().map(|d| -d)
    }

    /// A certified upper bound on homological degrees carrying chains.
    pub fn highest_degree(&self) -> Option<i64> {
        CyclicBar::new(&self.base, true).degree_bounds().map(|(lo, _)| -lo)
    }

    fn b_at(&self, m: i64) -> Matrix {
        self.b.get(&m).cloned().unwrap_or_else(|| Matrix::zero(self.field, self.dim(m - 1), self.dim(m)))
    }

    fn big_b_at(&self, m: i64) -> Matrix {
        self.big_b.get(&m).cloned().unwrap_or_else(|| Matrix::zero(self.field, self.dim(m + 1), self.dim(m)))
    }

    /// Homology of `b` at `m` (this is `HH_m`).
    pub fn b_homology(&self, m: i64) -> usize {
        use crate::exactfield::rank;
        self.dim(m) - rank(&self.b_at(m)) - rank(&self.b_at(m + 1))
    }

    /// Homology at `n` of the total complex with columns `k_lo..=k_hi`:
    /// column `k` of `Tot_j` is `C_{j+2k}` and the differential sends column
    /// `k` to itself by `b` and to column `k+1` by `B`.
    pub fn total_homology(&self, n: i64, k_lo: i64, k_hi: i64) -> usize {
        use crate::exactfield::rank;
        let layout = |j: i64| -> Vec<(i64, usize)> {
            let mut off = 0;
            (k_lo..=k_hi)
                .map(|k| {
                    let o = off;
                    off += self.dim(j + 2 * k);
                    (k, o)
                })
                .collect()
        };
        let size = |j: i64| (k_lo..=k_hi).map(|k| self.dim(j + 2 * k)).sum::<usize>();
        let diff = |j: i64| -> Matrix {
            let (src, tgt) = (layout(j), layout(j - 1));
            let mut cols = Vec::with_capacity(size(j));
            for &(k, _) in &src {
                let m = j + 2 * k;
                let (bm, bbm) = (self.b_at(m), self.big_b_at(m));
                let to_b = tgt.iter().find(|(kk, _)| *kk == k).map(|x| x.1);
                let to_bb = tgt.iter().find(|(kk, _)| *kk == k + 1).map(|x| x.1);
                for c in 0..self.dim(m) {
                    let mut terms = Vec::new();
                    if let Some(o) = to_b {
                        terms.extend(bm.column(c).iter().map(|(i, v)| (o + i, v.clone())));
                    }
                    if let Some(o) = to_bb {
                        terms.extend(bbm.column(c).iter().map(|(i, v)| (o + i, v.clone())));
                    }
                    cols.push(SparseVec::from_terms(terms, &self.field));
                }
            }
            Matrix::from_columns(self.field, size(j - 1), cols)
        };
        size(n) - rank(&diff(n)) - rank(&diff(n + 1))
    }
}

/// Builds the normalized mixed complex `(C, b, B)` up to `bar_bound` and
/// verifies `b² = 0`, `B² = 0` and `bB + Bb = 0` on every chain where the
/// composites are fully realized. A failed identity is an internal error.
pub fn mixed_complex(a: &DgCategory, bar_bound: usize) -> Result<MixedComplex> {
    if bar_bound < 2 {
        return Err(Error::WindowNotComputable("the mixed complex needs bar bound at least 2".into()));
    }
    let report = verify_identities(a, bar_bound);
    if !report.all_hold() {
        return Err(Error::Internal(format!("mixed complex identities fail: {report:?}")));
    }
    let field = a.field();
    let cb = CyclicBar::new(a, true);
    let mut by_degree: BTreeMap<i64, Vec<CyclicChain>> = BTreeMap::new();
    for p in 0..=bar_bound {
        for c in cb.chains(p, |_| true) {
            by_degree.entry(-cb.degree(&c)).or_default().push(c);
        }
    }
    let index: HashMap<CyclicChain, usize> =
        by_degree.values().flat_map(|v| v.iter().enumerate().map(|(i, c)| (c.clone(), i))).collect();
    let matrix = |chains: &[CyclicChain], target: i64, op: &dyn Fn(&CyclicChain) -> Terms| -> Matrix {
        let rows = by_degree.get(&target).map_or(0, Vec::len);
        let cols = chains
            .iter()
            .map(|c| {
                SparseVec::from_terms(
                    op(c).into_iter().filter_map(|(v, t)| (-cb.degree(&t) == target).then(|| (index.get(&t).copied(), v))).filter_map(|(i, v)| i.map(|i| (i, v))),
                    &field,
                )
            })
            .collect();
        Matrix::from_columns(field, rows, cols)
    };
    let mut b = BTreeMap::new();
    let mut big_b = BTreeMap::new();
    for (&m, chains) in &by_degree {
        b.insert(m, matrix(chains, m - 1, &|c| cb.total(c)));
        big_b.insert(m, matrix(chains, m + 1, &|c| cb.connes_b(c)));
    }
    let spaces = by_degree.iter().map(|(&m, v)| (m, v.iter().map(|c| cb.label(c)).collect())).collect();
    Ok(MixedComplex { base: a.clone(), field, bar_bound, spaces, b, big_b })
}

/// Checks the three mixed-complex identities chain by chain: `b²` on every
/// chain up to `bar_bound`, `bB + Bb` up to `bar_bound - 1` and `B²` up to
/// `bar_bound - 2`.
pub fn verify_identities(a: &DgCategory, bar_bound: usize) -> IdentityReport {
    let field = a.field();
    let cb = CyclicBar::new(a, true);
    let apply = |op: &dyn Fn(&CyclicChain) -> Terms, t: &Terms| -> Terms {
        let mut out = Vec::new();
        for (c, chain) in t {
            out.extend(op(chain).into_iter().map(|(d, u)| (field.mul(c, &d), u)));
        }
        out
    };
    let b = |c: &CyclicChain| cb.total(c);
    let bb = |c: &CyclicChain| cb.connes_b(c);
    let mut report = IdentityReport { chains_checked: 0, b_squared: true, big_b_squared: true, anticommute: true };
    for p in 0..=bar_bound {
        for c in cb.chains(p, |_| true) {
            report.chains_checked += 1;
            let one = vec![(field.one(), c.clone())];
            if !collect_terms(apply(&b, &apply(&b, &one)), &field).is_empty() {
                report.b_squared = false;
            }
            if p < bar_bound {
                let mut t = apply(&b, &apply(&bb, &one));
                t.extend(apply(&bb, &apply(&b, &one)));
                if !collect_terms(t, &field).is_empty() {
                    report.anticommute = false;
                }
            }
            if p + 1 < bar_bound && !collect_terms(apply(&bb, &apply(&bb, &one)), &field).is_empty() {
                report.big_b_squared = false;
            }
        }
    }
    report
}

/// The cyclic operator `t_n` of the displayed formula
/// `t_n(f_{n-1}, …, f_0) = (-1)^{n+σ} (f_0, f_{n-1}, …, f_1)` with
/// `σ = |f_0|(|f_1| + … + |f_{n-1}|)`, on unnormalized chains of bar degree
/// `n - 1`. Its negative is the rotation of the cyclic object.
#[derive(Clone, Debug)]
pub struct CyclicOperator {
    pub n: usize,
    pub labels: Vec<String>,
    pub chains: Vec<CyclicChain>,
    pub matrix: Matrix,
}

pub fn cyclic_operator(a: &DgCategory, n: usize) -> Result<CyclicOperator> {
    if n == 0 {
        return Err(Error::WindowNotComputable("t_n needs n ≥ 1".into()));
    }
    let field = a.field();
    let cb = CyclicBar::new(a, false);
    let chains = cb.chains(n - 1, |_| true);
    let index: HashMap<&CyclicChain, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let cols = chains
        .iter()
        .map(|c| {
            SparseVec::from_terms(cb.rotation(c).into_iter().map(|(v, t)| (index[&t], field.neg(&v))), &field)
        })
        .collect();
    let labels = chains.iter().map(|c| cb.label(c)).collect();
    Ok(CyclicOperator { n, labels, matrix: Matrix::from_columns(field, chains.len(), cols), chains })
}
