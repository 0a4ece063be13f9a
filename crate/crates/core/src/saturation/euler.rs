use std::ops::RangeInclusive;

use serde::Serialize;

use super::smooth::{smoothness_certify, DEFAULT_SMOOTHNESS_BOUND};
use crate::dgcore::{DgCategory, Finiteness, ReducedHoms};
use crate::dgmod::{bar_tor_fixed, diagonal_bimodule, Soundness};
use crate::error::Result;
use crate::hochschild::{hh_dims, hochschild_complex, CyclicBar};

/// Homological degrees summed when no finite range is certified.
pub const FALLBACK_DEGREES: i64 = 4;

/// An Euler characteristic with the homological window it sums over. It is
/// exact when every degree outside the window is certified to vanish and
/// every degree inside is computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerValue {
    pub value: i64,
    pub window: (i64, i64),
    pub status: Soundness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub chi_hh: EulerValue,
    pub chi_dual: EulerValue,
    /// Defined only when both values are exact.
    pub agree: Option<bool>,
}

fn alternating(terms: impl Iterator<Item = (i64, usize)>) -> i64 {
    terms.map(|(n, d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// `Σ (-1)^n dim HH_n`. The range is certified either by the chain-level
/// bounds of the cyclic bar construction or, for smooth categories in degree
/// zero, by the vanishing of `HH_n` above the resolution length.
pub fn euler_via_hh(a: &DgCategory) -> Result<EulerValue> {
    let cb = CyclicBar::new(a, true);
    if a.finiteness() == Finiteness::Closed {
        if let (Some(p), Some((lo, hi))) = (cb.longest_bar(), cb.degree_bounds()) {
            let hc = hochschild_complex(a, p)?;
            let window = -hi..=-lo;
            let exact = window.clone().all(|n| hc.status_at(n) == Soundness::Exact);
            let value = alternating(window.map(|n| (n, hc.hh(n).0)));
            return Ok(EulerValue { value, window: (-hi, -lo), status: status(exact) });
        }
    }
    let certified = if a.is_concentrated_in_degree_zero() {
        smoothness_certify(a, DEFAULT_SMOOTHNESS_BOUND).resolution_length()
    } else {
        None
    };
    let (top, proven) = match certified {
        Some(l) => (l, true),
        None => (FALLBACK_DEGREES as usize, false),
    };
    let r = hh_dims(a, top)?;
    let value = alternating(r.degrees.iter().map(|(&n, e)| (n as i64, e.dim)));
    Ok(EulerValue { value, window: (0, top as i64), status: status(proven && r.all_exact()) })
}

fn status(exact: bool) -> Soundness {
    if exact {
        Soundness::Exact
    } else {
        Soundness::Truncated
    }
}

/// The cohomological degrees carrying chains of the bar model of
/// `A ⊗^L_{A^op ⊗ A} A`, with the largest bar degree, when finitely many bar
/// degrees occur.
pub fn duality_extent(a: &DgCategory) -> Result<Option<(RangeInclusive<i64>, usize)>> {
    if a.finiteness() != Finiteness::Closed {
        return Ok(None);
    }
    let diag = diagonal_bimodule(a)?;
    let e = diag.module().base();
    let Some(p) = CyclicBar::new(e, true).longest_bar() else { return Ok(None) };
    let Some((mlo, mhi)) = a.degree_range() else { return Ok(Some((0..=0, 0))) };
    let (rlo, rhi) = ReducedHoms::new(e).degree_range().unwrap_or((1, 1));
    let (mut lo, mut hi) = (2 * mlo, 2 * mhi);
    for q in 0..=p as i64 {
        lo = lo.min(2 * mlo + q * (rlo - 1));
        hi = hi.max(2 * mhi + q * (rhi - 1));
    }
    Ok(Some((lo..=hi, p)))
}

/// The Euler characteristic of the composite `ev ∘ τ ∘ δ`, modelled by the
/// bar complex of the diagonal over `A^op ⊗ A` against its transpose, summed
/// over a cohomological degree window.
pub fn euler_via_duality(a: &DgCategory, window: RangeInclusive<i64>, bar_bound: usize) -> Result<EulerValue> {
    let diag = diagonal_bimodule(a)?;
    let t = diag.transpose()?;
    let bt = bar_tor_fixed(diag.module(), t.module(), window.clone(), bar_bound)?;
    let value = alternating(bt.homology().into_iter());
    // with finitely many bar degrees, a bound past the longest one is exact
    // even where the degree estimate alone cannot tell
    let (covered, all_bars) = match duality_extent(a)? {
        Some((extent, p)) => (window.start() <= extent.start() && extent.end() <= window.end(), bar_bound >= p),
        None => (false, false),
    };
    Ok(EulerValue {
        value,
        window: (-*window.end(), -*window.start()),
        status: status(covered && (all_bars || bt.soundness == Soundness::Exact)),
    })
}

/// Both Euler characteristics with automatic windows.
pub fn euler_report(a: &DgCategory) -> Result<EulerReport> {
    let chi_hh = euler_via_hh(a)?;
    let chi_dual = match duality_extent(a)? {
        Some((window, p)) => euler_via_duality(a, window, p.max(1))?,
        None => {
            let (lo, hi) = chi_hh.window;
            euler_via_duality(a, -hi..=-lo, (hi - lo).max(1) as usize + 1)?
        }
    };
    let agree = (chi_hh.status == Soundness::Exact && chi_dual.status == Soundness::Exact)
        .then_some(chi_hh.value == chi_dual.value);
    Ok(EulerReport { chi_hh, chi_dual, agree })
}
