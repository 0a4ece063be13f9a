use std::collections::BTreeMap;

use serde::Serialize;

use crate::dgcore::{DgCategory, Finiteness, ReducedHoms};
use crate::dgmod::{bar_degree_tor, diagonal_bimodule, semisimple_module, Bimodule};
use crate::error::{Error, Result};
use crate::exactfield::{Echelon, SparseVec};

/// Bar degree up to which smoothness is searched when no bound is given.
pub const DEFAULT_SMOOTHNESS_BOUND: usize = 6;

/// Largest number of bar chains the smoothness search may enumerate.
pub const SMOOTHNESS_CHAIN_BUDGET: f64 = 200_000.0;

/// Total dimension and degree profile of one hom complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairDims {
    pub source: String,
    pub target: String,
    pub total_dim: usize,
    pub degrees: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperReport {
    pub proper: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub pairs: Vec<PairDims>,
}

/// Every hom complex of a realized category is finite dimensional; what can
/// fail is validity or a truncated realization, which does not present the
/// category it came from.
pub fn properness_check(a: &DgCategory) -> ProperReport {
    let names = a.objects();
    let mut pairs = Vec::new();
    for x in 0..a.n_objects() {
        for y in 0..a.n_objects() {
            pairs.push(PairDims {
                source: names[x].clone(),
                target: names[y].clone(),
                total_dim: a.dim(x, y),
                degrees: a.hom_dims(x, y),
            });
        }
    }
    let reason = if a.finiteness() != Finiteness::Closed {
        Some("the realization is truncated, so its hom complexes need not be those of the category".to_string())
    } else if !a.validate().is_valid() {
        Some("the category fails validation".to_string())
    } else {
        None
    };
    ProperReport { proper: reason.is_none(), reason, pairs }
}

/// The smoothness verdict. A refutation is never issued: nonvanishing Tor up
/// to the bound does not prove that the resolution is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Smoothness {
    /// The diagonal bimodule has a minimal projective resolution of length
    /// `resolution_length`; `tor_dims[p]` counts its projectives in degree `p`.
    Certified { resolution_length: usize, tor_dims: Vec<usize> },
    Inconclusive { bound: usize, reason: String },
}

impl Smoothness {
    pub fn is_certified(&self) -> bool {
        matches!(self, Smoothness::Certified { .. })
    }

    pub fn resolution_length(&self) -> Option<usize> {
        match self {
            Smoothness::Certified { resolution_length, .. } => Some(*resolution_length),
            Smoothness::Inconclusive { .. } => None,
        }
    }
}

/// Checks that the category is closed, has zero differential and basis
/// units, and that the span of non-identity basis morphisms is a nilpotent
/// ideal, so that the simple modules at the objects are all simples.
fn minimal_resolution_hypotheses(a: &DgCategory) -> std::result::Result<(), String> {
    if a.finiteness() != Finiteness::Closed {
        return Err("the realization is truncated".into());
    }
    if !a.has_zero_differential() {
        return Err("the criterion needs a category with zero differential".into());
    }
    let field = a.field();
    let n = a.n_objects();
    for x in 0..n {
        let u = a.unit(x);
        if u.nnz() != 1 || u.leading().map(|(_, c)| c.clone()) != Some(field.one()) {
            return Err(format!("the unit of {} is not a basis element", a.objects()[x]));
        }
    }
    let red = ReducedHoms::new(a);
    let unit_index = |x: usize| a.unit(x).leading().map(|(i, _)| i).expect("basis unit");
    let radical: Vec<Vec<SparseVec>> =
        (0..n * n).map(|p| (0..red.dim(p / n, p % n)).map(|i| red.lift(p / n, p % n, i)).collect()).collect();
    // products of radical elements must stay in the radical
    for x in 0..n {
        for y in 0..n {
            for f in &radical[x * n + y] {
                for g in &radical[y * n + x] {
                    if !a.compose(x, y, x, g, f).get(unit_index(x)).eq(&field.zero()) {
                        return Err("non-identity morphisms do not span an ideal".into());
                    }
                }
            }
        }
    }
    let mut power = radical.clone();
    for _ in 0..=a.total_dim() {
        if power.iter().all(Vec::is_empty) {
            return Ok(());
        }
        let mut next = Vec::with_capacity(n * n);
        for x in 0..n {
            for z in 0..n {
                let mut span = Echelon::new(field);
                for y in 0..n {
                    for f in &power[x * n + y] {
                        for g in &radical[y * n + z] {
                            span.insert(&a.compose(x, y, z, g, f));
                        }
                    }
                }
                next.push(span.into_reduced().into_iter().map(|(_, v)| v).collect());
            }
        }
        power = next;
    }
    Err("non-identity morphisms are not nilpotent".into())
}

/// Certifies smoothness by the minimal-resolution criterion: for a basic
/// category with zero differential, `Tor_p` of the diagonal bimodule against
/// the simple modules of `A^op ⊗ A` counts the projectives in degree `p` of a
/// minimal resolution, so its first vanishing degree `L + 1 ≤ bound` proves
/// projective dimension exactly `L`.
pub fn smoothness_certify(a: &DgCategory, bound: usize) -> Smoothness {
    let inconclusive = |reason: String| Smoothness::Inconclusive { bound, reason };
    if let Err(reason) = minimal_resolution_hypotheses(a) {
        return inconclusive(reason);
    }
    let diag = match diagonal_bimodule(a) {
        Ok(d) => d,
        Err(e) => return inconclusive(format!("diagonal bimodule: {e}")),
    };
    let reach = affordable_bar_degree(&diag, bound);
    let tor = semisimple_module(&diag.module().base().opposite())
        .and_then(|simples| bar_degree_tor(diag.module(), &simples, reach));
    let tor = match tor {
        Ok(t) => t,
        Err(e) => return inconclusive(format!("Tor computation failed: {e}")),
    };
    let dims: Vec<usize> = tor.values().copied().collect();
    match dims.iter().position(|&d| d == 0) {
        Some(q) if q >= 1 => {
            Smoothness::Certified { resolution_length: q - 1, tor_dims: dims[..q].to_vec() }
        }
        Some(_) => Smoothness::Certified { resolution_length: 0, tor_dims: Vec::new() },
        None if reach < bound => inconclusive(format!(
            "Tor is nonzero in every bar degree up to {reach}; degrees up to {bound} exceed the chain budget"
        )),
        None => inconclusive(format!("Tor is nonzero in every bar degree up to {bound}")),
    }
}

/// The largest `p ≤ bound` for which the bar chains of degree at most `p + 1`
/// stay within [`SMOOTHNESS_CHAIN_BUDGET`].
fn affordable_bar_degree(diag: &Bimodule, bound: usize) -> usize {
    let e = diag.module().base();
    let red = ReducedHoms::new(e);
    let n = e.n_objects();
    // paths[x]: number of chains m[a_1|…|a_q] whose last object is x
    let mut paths: Vec<f64> = (0..n).map(|x| diag.module().dim(x) as f64).collect();
    let mut total: f64 = paths.iter().sum();
    for q in 1..=bound + 1 {
        paths = (0..n).map(|x| (0..n).map(|y| paths[y] * red.dim(x, y) as f64).sum()).collect();
        total += paths.iter().sum::<f64>();
        if total > SMOOTHNESS_CHAIN_BUDGET {
            return q.saturating_sub(2);
        }
    }
    bound
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub proper: ProperReport,
    pub smooth: Smoothness,
    pub saturated: bool,
}

pub fn saturation_report(a: &DgCategory, bound: usize) -> SaturationReport {
    let proper = properness_check(a);
    let smooth = smoothness_certify(a, bound);
    let saturated = proper.proper && smooth.is_certified();
    SaturationReport { proper, smooth, saturated }
}

/// The internal hom `rep(B, A)` for saturated `B`, modelled by `B^op ⊗ A`.
pub fn rep_saturated(b: &DgCategory, a: &DgCategory) -> Result<DgCategory> {
    let report = saturation_report(b, DEFAULT_SMOOTHNESS_BOUND);
    if !report.saturated {
        let why = match (&report.proper.reason, &report.smooth) {
            (Some(r), _) => r.clone(),
            (None, Smoothness::Inconclusive { reason, .. }) => format!("smoothness not certified: {reason}"),
            (None, Smoothness::Certified { .. }) => unreachable!("saturated when proper and certified"),
        };
        return Err(Error::NotSaturated(why));
    }
    b.opposite().tensor(a)
}
