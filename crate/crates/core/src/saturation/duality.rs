use std::ops::RangeInclusive;

use serde::Serialize;

use super::smooth::{properness_check, smoothness_certify, Smoothness};
use crate::dgcore::DgCategory;
use crate::dgmod::{assemble, diagonal_bimodule, yoneda_module, BarBuilder, BarChain, Bimodule};
use crate::error::Result;
use crate::exactfield::{rank, Echelon, HomologyBasis, Matrix, SparseVec};

/// The dual of a saturated category with its structure bimodules. Both are
/// the diagonal: `ev` as a module over `A^op ⊗ A` and `coev` as its
/// transpose over `A ⊗ A^op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualData {
    pub dual: DgCategory,
    pub ev: Bimodule,
    pub coev: Bimodule,
}

pub fn dual_data(a: &DgCategory) -> Result<DualData> {
    let ev = diagonal_bimodule(a)?;
    let coev = ev.transpose()?;
    Ok(DualData { dual: a.opposite(), ev, coev })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleOutcome {
    Pass,
    Fail,
    Inconclusive,
}

/// How strongly a pass is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// The multiplication map from the bar model to the diagonal is a
    /// verified chain map inducing isomorphisms on the window.
    QuasiIsomorphism,
    /// Only the homology dimensions agree.
    DimsMatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub outcome: TriangleOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    pub window: RangeInclusive<i64>,
    pub bar_bound: usize,
    /// Number of `(composite, x, y)` triples compared.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub required_bar_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

struct PairCheck {
    exact: bool,
    reach: Option<usize>,
    dims_match: bool,
    quasi_iso: bool,
    witness: Option<String>,
}

/// Compares `A(-, x) ⊗^L_A A(y, -)`, modelled by the two-sided bar complex,
/// with `A(y, x)` through the multiplication map `m[]n ↦ m∘n`.
fn composite(c: &DgCategory, x: usize, y: usize, window: &RangeInclusive<i64>, bar_bound: usize) -> Result<PairCheck> {
    let field = c.field();
    let m = yoneda_module(c, x)?;
    let n = yoneda_module(&c.opposite(), y)?;
    let b = BarBuilder::new(&m, &n)?;
    let (lo, hi) = (*window.start() - 1, *window.end() + 1);
    let reach = b.bar_degrees_reaching(lo..=hi);
    let exact = matches!(reach, Some(p) if p <= bar_bound);
    let p_max = reach.map_or(bar_bound, |p| p.min(bar_bound));
    let mut chains: Vec<(i64, BarChain, String)> = Vec::new();
    for p in 0..=p_max {
        for ch in b.chains(p, |d| (lo..=hi).contains(&d)) {
            chains.push((b.degree(&ch), ch, String::new()));
        }
    }
    let mu = |ch: &BarChain| -> SparseVec {
        if !ch.a.is_empty() {
            return SparseVec::new();
        }
        let z = ch.objs[0];
        c.compose(y, z, x, &SparseVec::unit(ch.m, &field), &SparseVec::unit(ch.n, &field))
    };
    let mut chain_map = true;
    for (_, ch, _) in chains.iter().filter(|(_, ch, _)| ch.a.len() <= 1) {
        let mut lhs = SparseVec::new();
        for (coef, t) in b.differential(ch, true, true) {
            lhs.add_assign_scaled(&coef, &mu(&t), &field);
        }
        if lhs != c.differential(y, x, &mu(ch)) {
            chain_map = false;
        }
    }
    let complex = assemble(field, lo, hi, chains.clone(), |ch| b.differential(ch, true, true))?;

    let target_dim = c.dim(y, x);
    let of_degree = |d: i64| (0..target_dim).filter(move |&i| c.degree(y, x, i) == d);
    let (mut dims_match, mut quasi_iso, mut witness) = (true, true, None);
    for d in window.clone() {
        let incoming = complex.diff(d - 1).unwrap_or_else(|| Matrix::zero(field, complex.dim(d), 0));
        let outgoing = complex.diff(d).unwrap_or_else(|| Matrix::zero(field, 0, complex.dim(d)));
        let hb = HomologyBasis::new(&incoming, &outgoing);
        let basis: Vec<&BarChain> = chains.iter().filter(|(e, _, _)| *e == d).map(|(_, ch, _)| ch).collect();
        let mut bounds = Echelon::new(field);
        for i in of_degree(d - 1) {
            bounds.insert(&c.differential(y, x, &SparseVec::unit(i, &field)));
        }
        let out: Vec<SparseVec> = of_degree(d).map(|i| c.differential(y, x, &SparseVec::unit(i, &field))).collect();
        let h_target = of_degree(d).count() - rank(&Matrix::from_columns(field, target_dim, out)) - bounds.rank();
        let base = bounds.rank();
        for z in hb.representatives() {
            let mut v = SparseVec::new();
            for (i, coef) in z.iter() {
                v.add_assign_scaled(coef, &mu(basis[i]), &field);
            }
            bounds.insert(&v);
        }
        let induced = bounds.rank() - base;
        if hb.dim() != h_target {
            dims_match = false;
            witness.get_or_insert(format!("degree {d}: composite has dimension {}, diagonal {h_target}", hb.dim()));
        }
        if !(chain_map && induced == h_target && hb.dim() == h_target) {
            quasi_iso = false;
        }
    }
    Ok(PairCheck { exact, reach, dims_match, quasi_iso, witness })
}

/// Checks both triangle composites on a cohomological degree window: for
/// every pair of objects the derived composite, computed as a bar complex,
/// must be quasi-isomorphic to the diagonal. Evaluated only when the category
/// is proper and smoothness is certified, since otherwise the coevaluation is
/// not known to be a perfect bimodule.
pub fn triangle_identity_check(a: &DgCategory, window: RangeInclusive<i64>, bar_bound: usize) -> Result<TriangleReport> {
    let mut report = TriangleReport {
        outcome: TriangleOutcome::Inconclusive,
        evidence: None,
        window: window.clone(),
        bar_bound,
        checks: 0,
        required_bar_bound: None,
        reason: None,
    };
    if window.is_empty() {
        report.reason = Some("empty window".into());
        return Ok(report);
    }
    let proper = properness_check(a);
    if !proper.proper {
        report.reason = proper.reason;
        return Ok(report);
    }
    if let Smoothness::Inconclusive { reason, .. } = smoothness_certify(a, bar_bound.max(2)) {
        report.reason = Some(format!("smoothness not certified ({reason}); the coevaluation may not be perfect"));
        return Ok(report);
    }
    let op = a.opposite();
    let n = a.n_objects();
    let (mut exact, mut dims, mut qis) = (true, true, true);
    let mut required: Option<usize> = Some(0);
    let mut witness = None;
    for c in [a, &op] {
        for x in 0..n {
            for y in 0..n {
                let pc = composite(c, x, y, &window, bar_bound)?;
                report.checks += 1;
                exact &= pc.exact;
                required = match (required, pc.reach) {
                    (Some(r), Some(p)) => Some(r.max(p)),
                    _ => None,
                };
                dims &= pc.dims_match;
                qis &= pc.quasi_iso;
                if witness.is_none() {
                    witness = pc.witness.map(|w| format!("objects ({}, {}), {w}", a.objects()[x], a.objects()[y]));
                }
            }
        }
    }
    if !exact {
        report.required_bar_bound = required;
        report.reason = Some(match required {
            Some(r) => format!("the window needs bar degree {r}"),
            None => "no finite bar bound makes the window exact".into(),
        });
    } else if !dims {
        report.outcome = TriangleOutcome::Fail;
        report.reason = witness;
    } else {
        report.outcome = TriangleOutcome::Pass;
        report.evidence = Some(if qis { Evidence::QuasiIsomorphism } else { Evidence::DimsMatch });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn unit_and_path_pass() {
        for a in [corpus::unit(Q), corpus::path_a2(Q)] {
            let r = triangle_identity_check(&a, -3..=3, 4).unwrap();
            assert_eq!(r.outcome, TriangleOutcome::Pass, "{r:?}");
            assert_eq!(r.evidence, Some(Evidence::QuasiIsomorphism));
        }
    }

    #[test]
    fn dual_numbers_do_not_pass() {
        let r = triangle_identity_check(&corpus::dual_numbers(Q), -2..=2, 5).unwrap();
        assert_ne!(r.outcome, TriangleOutcome::Pass);
    }

    #[test]
    fn dual_data_swaps_under_opposite() {
        let a = corpus::path_a2(Q);
        let d = dual_data(&a).unwrap();
        let e = dual_data(&a.opposite()).unwrap();
        assert_eq!(e.dual, a);
        assert_eq!((e.ev, e.coev), (d.coev, d.ev));
    }
}
