use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::mixed::{mixed_complex, MixedComplex};
use crate::dgcore::DgCategory;
use crate::dgmod::Soundness;
use crate::error::{Error, Result};
use crate::hochschild::{CyclicBar, DimEntry, HhReport};

/// Cyclic homology dimensions `HC_n` for `0 ≤ n ≤ n_max`.
pub type HcReport = HhReport;

/// Which inverse system of truncated total complexes a tower computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerKind {
    /// Negative cyclic homology: columns `0 ≤ k < r` at level `r`.
    Negative,
    /// Periodic cyclic homology: columns `k_min ≤ k < r` at level `r`.
    Periodic,
}

/// The verdict for one degree of a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TowerStatus {
    /// Every level from `level` on has the same homology, so the limit equals
    /// it and no `lim¹` term arises.
    Stabilized { level: usize },
    /// The last computed level is reported without a stabilization proof.
    BoundLimited,
}

pub const LIM1_CAVEAT: &str = "value at the last computed level; the inverse limit may differ and a lim¹ term may be nonzero";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerDegree {
    /// The reported dimension: the stabilized value or the last level.
    pub dim: usize,
    /// Level `r` (1-based) is entry `r - 1`.
    pub levels: Vec<DimEntry>,
    pub status: TowerStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub kind: TowerKind,
    pub bar_bound: usize,
    pub levels: usize,
    pub degrees: BTreeMap<i64, TowerDegree>,
}

/// The smallest bar bound realizing every chain of homological degree in
/// `lo..=hi`, clamped below by 2; `fallback` when no finite bound does.
fn auto_bound(a: &DgCategory, lo: Option<i64>, hi: i64, fallback: usize) -> usize {
    let cb = CyclicBar::new(a, true);
    let Some(lo) = lo else { return fallback.max(2) };
    match cb.bar_degrees_reaching(-hi..=-lo.min(hi)) {
        Some(p) => p.max(2),
        None => fallback.max(2),
    }
}

/// Column range of the total complex at degree `n`, with its soundness.
struct Columns {
    lo: i64,
    hi: i64,
    status: Soundness,
}

fn columns(mc: &MixedComplex, n: i64, lowest: Option<i64>, hi: i64) -> Columns {
    let (lo, bounded) = match lowest {
        Some(m) => ((m - n - 1).div_euclid(2) + i64::from((m - n - 1).rem_euclid(2) != 0), true),
        None => {
            let m = mc.spaces.keys().next().copied().unwrap_or(0);
            ((m - n - 1).div_euclid(2), false)
        }
    };
    let complete = bounded && (lo..=hi).all(|k| (n - 1..=n + 1).all(|j| mc.is_complete(j + 2 * k)));
    Columns { lo, hi, status: if complete { Soundness::Exact } else { Soundness::Truncated } }
}

/// `HC_n` for `0 ≤ n ≤ n_max` with an automatic bar bound.
pub fn hc_dims(a: &DgCategory, n_max: usize) -> Result<HcReport> {
    let lowest = CyclicBar::new(a, true).max_degree().map(|d| -d);
    hc_dims_with_bound(a, n_max, auto_bound(a, lowest, n_max as i64 + 1, n_max + 1))
}

pub fn hc_dims_with_bound(a: &DgCategory, n_max: usize, bar_bound: usize) -> Result<HcReport> {
    let mc = mixed_complex(a, bar_bound)?;
    let lowest = mc.lowest_degree();
    let degrees = (0..=n_max)
        .map(|n| {
            let n_i = n as i64;
            let cols = columns(&mc, n_i, lowest, 0);
            let dim = mc.total_homology(n_i, cols.lo, cols.hi);
            (n, DimEntry { dim, status: cols.status })
        })
        .collect();
    Ok(HcReport { bar_bound, degrees })
}

/// Whether `HH_m = 0` for every `m ≥ from`, proved by the vanishing of all
/// chains above a certified degree together with exact computation below it.
fn hh_vanishes_from(mc: &MixedComplex, from: i64) -> bool {
    let Some(top) = mc.highest_degree() else { return false };
    (from..=top).all(|m| (m - 1..=m + 1).all(|j| mc.is_complete(j)) && mc.b_homology(m) == 0)
}

/// The negative cyclic or periodic tower on `window` for levels `1..=levels`
/// with an automatic bar bound.
pub fn tower(a: &DgCategory, kind: TowerKind, window: RangeInclusive<i64>, levels: usize) -> Result<TowerReport> {
    let lowest = CyclicBar::new(a, true).max_degree().map(|d| -d);
    let top = *window.end() + 1 + 2 * (levels as i64 - 1);
    let lo = match kind {
        TowerKind::Negative => lowest.map(|m| m.max(*window.start() - 1)),
        TowerKind::Periodic => lowest,
    };
    let fallback = usize::try_from(top.max(0)).unwrap_or(0) + 1;
    tower_with_bound(a, kind, window, levels, auto_bound(a, lo, top, fallback))
}

pub fn tower_with_bound(
    a: &DgCategory,
    kind: TowerKind,
    window: RangeInclusive<i64>,
    levels: usize,
    bar_bound: usize,
) -> Result<TowerReport> {
    if levels < 2 {
        return Err(Error::WindowNotComputable("a tower needs at least two levels".into()));
    }
    if window.is_empty() {
        return Err(Error::WindowNotComputable("empty window".into()));
    }
    let mc = mixed_complex(a, bar_bound)?;
    let lowest = mc.lowest_degree();
    let mut degrees = BTreeMap::new();
    for n in window {
        let entries: Vec<DimEntry> = (1..=levels)
            .map(|r| {
                let hi = r as i64 - 1;
                let cols = match kind {
                    TowerKind::Negative => {
                        let status = if (0..=hi).all(|k| (n - 1..=n + 1).all(|j| mc.is_complete(j + 2 * k))) {
                            Soundness::Exact
                        } else {
                            Soundness::Truncated
                        };
                        Columns { lo: 0, hi, status }
                    }
                    TowerKind::Periodic => columns(&mc, n, lowest, hi),
                };
                DimEntry { dim: mc.total_homology(n, cols.lo, cols.hi), status: cols.status }
            })
            .collect();
        let stable = (2..=levels).find(|&r| {
            let (prev, cur) = (entries[r - 2], entries[r - 1]);
            prev.status == Soundness::Exact
                && cur.status == Soundness::Exact
                && prev.dim == cur.dim
                && hh_vanishes_from(&mc, n - 1 + 2 * r as i64)
        });
        let degree = match stable {
            Some(r) => TowerDegree {
                dim: entries[r - 1].dim,
                levels: entries,
                status: TowerStatus::Stabilized { level: r },
                caveat: None,
            },
            None => TowerDegree {
                dim: entries[levels - 1].dim,
                levels: entries,
                status: TowerStatus::BoundLimited,
                caveat: Some(LIM1_CAVEAT),
            },
        };
        degrees.insert(n, degree);
    }
    Ok(TowerReport { kind, bar_bound, levels, degrees })
}

/// Negative cyclic homology `HC⁻_n` on `window`.
pub fn hcminus_dims(a: &DgCategory, window: RangeInclusive<i64>, levels: usize) -> Result<TowerReport> {
    tower(a, TowerKind::Negative, window, levels)
}

/// Periodic cyclic homology `HP_n` on `window`.
pub fn hp_dims(a: &DgCategory, window: RangeInclusive<i64>, levels: usize) -> Result<TowerReport> {
    tower(a, TowerKind::Periodic, window, levels)
}

/// Both towers on the same window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicTowers {
    pub negative: TowerReport,
    pub periodic: TowerReport,
}

pub fn hcminus_hp_dims(a: &DgCategory, window: RangeInclusive<i64>, levels: usize) -> Result<CyclicTowers> {
    Ok(CyclicTowers {
        negative: hcminus_dims(a, window.clone(), levels)?,
        periodic: hp_dims(a, window, levels)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn cyclic_homology_of_a_point() {
        let r = hc_dims(&corpus::unit(Q), 6).unwrap();
        assert_eq!(r.dims(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert!(r.all_exact());
    }

    #[test]
    fn periodic_of_unit_and_path() {
        let u = hp_dims(&corpus::unit(Q), 0..=1, 4).unwrap();
        assert_eq!(u.degrees[&0].dim, 1);
        assert_eq!(u.degrees[&0].status, TowerStatus::Stabilized { level: 2 });
        assert_eq!(u.degrees[&1].dim, 0);
        let p = hp_dims(&corpus::path_a2(Q), 0..=0, 3).unwrap();
        assert_eq!(p.degrees[&0].dim, 2);
        assert!(matches!(p.degrees[&0].status, TowerStatus::Stabilized { .. }));
    }

    #[test]
    fn dual_numbers_stay_bound_limited() {
        let r = hp_dims(&corpus::dual_numbers(Q), 0..=1, 4).unwrap();
        for d in r.degrees.values() {
            assert_eq!(d.status, TowerStatus::BoundLimited);
            assert_eq!(d.caveat, Some(LIM1_CAVEAT));
        }
    }
}
