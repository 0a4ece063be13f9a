use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::chains::{CyclicBar, CyclicChain};
use crate::dgcore::{DgCategory, Finiteness};
use crate::dgmod::{assemble, Soundness};
use crate::error::{Error, Result};
use crate::exactfield::ChainComplex;

/// The sum-total complex of the cyclic bar construction, assembled up to a
/// bar degree bound. Degrees of `total` are cohomological; Hochschild
/// homology `HH_n` sits in cohomological degree `-n`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub base: DgCategory,
    pub bar_bound: usize,
    pub normalized: bool,
    pub total: ChainComplex,
    /// Per homological degree `n`: the `(bar degree, internal degree)` cells
    /// holding chains of that degree.
    pub contribution_table: BTreeMap<i64, BTreeSet<(usize, i64)>>,
    /// Per homological degree `n` in the realized range: whether `HH_n` is
    /// computed exactly.
    pub status: BTreeMap<i64, Soundness>,
}

impl HochschildComplex {
    /// Whether no chain beyond the bar bound can contribute to `HH_n`.
    pub fn status_at(&self, n: i64) -> Soundness {
        degree_status(&CyclicBar::new(&self.base, self.normalized), self.bar_bound, n)
    }

    /// `dim HH_n` of the realized complex with its status.
    pub fn hh(&self, n: i64) -> (usize, Soundness) {
        let d = -n;
        (self.total.homology_dims_truncated(d..=d)[&d], self.status_at(n))
    }

    /// Dimensions over the whole realized range, keyed by homological degree.
    pub fn homology(&self) -> BTreeMap<i64, (usize, Soundness)> {
        self.status.keys().map(|&n| (n, self.hh(n))).collect()
    }
}

pub(crate) fn degree_status(cb: &CyclicBar, bar_bound: usize, n: i64) -> Soundness {
    if cb.category().finiteness() != Finiteness::Closed {
        return Soundness::Truncated;
    }
    let d = -n;
    match cb.bar_degrees_reaching(d - 1..=d + 1) {
        Some(p) if p <= bar_bound => Soundness::Exact,
        _ => Soundness::Truncated,
    }
}

/// All chains up to `bar_bound`, tagged with cohomological degree and label.
pub(crate) fn all_chains(cb: &CyclicBar, bar_bound: usize) -> Vec<(i64, CyclicChain, String)> {
    let mut out = Vec::new();
    for p in 0..=bar_bound {
        for c in cb.chains(p, |_| true) {
            out.push((cb.degree(&c), cb.label(&c), c));
        }
    }
    out.into_iter().map(|(d, l, c)| (d, c, l)).collect()
}

fn build(a: &DgCategory, bar_bound: usize, normalized: bool) -> Result<HochschildComplex> {
    let cb = CyclicBar::new(a, normalized);
    let chains = all_chains(&cb, bar_bound);
    let mut table: BTreeMap<i64, BTreeSet<(usize, i64)>> = BTreeMap::new();
    for (d, c, _) in &chains {
        let p = c.bar_degree();
        table.entry(-d).or_default().insert((p, d + p as i64));
    }
    let (lo, hi) = match (chains.iter().map(|c| c.0).min(), chains.iter().map(|c| c.0).max()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => (0, 0),
    };
    let total = assemble(a.field(), lo - 1, hi + 1, chains, |c| cb.total(c))
        .map_err(|e| Error::Internal(format!("Hochschild differential: {e}")))?;
    let status = (-hi..=-lo).map(|n| (n, degree_status(&cb, bar_bound, n))).collect();
    Ok(HochschildComplex { base: a.clone(), bar_bound, normalized, total, contribution_table: table, status })
}

/// The normalized Hochschild complex with bar degrees up to `bar_bound`.
///
/// The only error is a failed `d² = 0` check, which signals a sign bug.
pub fn hochschild_complex(a: &DgCategory, bar_bound: usize) -> Result<HochschildComplex> {
    build(a, bar_bound, true)
}

/// The unnormalized Hochschild complex, with identities allowed in bar slots.
pub fn unnormalized_complex(a: &DgCategory, bar_bound: usize) -> Result<HochschildComplex> {
    build(a, bar_bound, false)
}

/// One entry of a dimension report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    pub dim: usize,
    pub status: Soundness,
}

/// `HH_n` for `0 ≤ n ≤ n_max` with the bar bound used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhReport {
    pub bar_bound: usize,
    pub degrees: BTreeMap<usize, DimEntry>,
}

impl HhReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.values().map(|e| e.dim).collect()
    }

    pub fn all_exact(&self) -> bool {
        self.degrees.values().all(|e| e.status == Soundness::Exact)
    }
}

/// The smallest bar bound making `HH_0 … HH_{n_max}` exact, or `n_max + 1`
/// when no finite bound does.
pub fn auto_bar_bound(a: &DgCategory, n_max: usize) -> usize {
    let cb = CyclicBar::new(a, true);
    match cb.bar_degrees_reaching(-(n_max as i64) - 1..=1) {
        Some(p) => p.max(1),
        None => n_max + 1,
    }
}

/// Hochschild homology dimensions for `0 ≤ n ≤ n_max` with an automatic bar
/// bound (`n_max + 1` for categories concentrated in degree 0).
pub fn hh_dims(a: &DgCategory, n_max: usize) -> Result<HhReport> {
    hh_dims_with_bound(a, n_max, auto_bar_bound(a, n_max))
}

pub fn hh_dims_with_bound(a: &DgCategory, n_max: usize, bar_bound: usize) -> Result<HhReport> {
    let hc = hochschild_complex(a, bar_bound)?;
    let degrees = (0..=n_max)
        .map(|n| {
            let (dim, status) = hc.hh(n as i64);
            (n, DimEntry { dim, status })
        })
        .collect();
    Ok(HhReport { bar_bound, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn unit_is_a_point() {
        let hc = hochschild_complex(&corpus::unit(Q), 3).unwrap();
        assert_eq!(hc.total.dim(0), 1);
        assert_eq!(hc.total.support(), vec![0]);
        let r = hh_dims(&corpus::unit(Q), 4).unwrap();
        assert_eq!(r.dims(), vec![1, 0, 0, 0, 0]);
        assert!(r.all_exact());
    }

    #[test]
    fn dual_numbers_and_path() {
        let r = hh_dims(&corpus::dual_numbers(Q), 4).unwrap();
        assert_eq!(r.bar_bound, 5);
        assert_eq!(r.dims(), vec![2, 1, 1, 1, 1]);
        assert!(r.all_exact());
        let r = hh_dims(&corpus::path_a2(Q), 3).unwrap();
        assert_eq!(r.dims(), vec![2, 0, 0, 0]);
        assert!(r.all_exact());
    }

    #[test]
    fn truncation_is_reported() {
        let r = hh_dims_with_bound(&corpus::dual_numbers(Q), 4, 2).unwrap();
        assert_eq!(r.degrees[&1].status, Soundness::Exact);
        assert_eq!(r.degrees[&2].status, Soundness::Truncated);
    }

    #[test]
    fn contribution_cells() {
        let hc = hochschild_complex(&corpus::dual_numbers(Q), 3).unwrap();
        assert_eq!(hc.contribution_table[&2], BTreeSet::from([(2, 0)]));
    }
}
