//! Property suites run per category: the `S(n)` module roundtrip, the
//! triangle identities, Euler characteristic equality, and the Künneth
//! property of the shuffle map.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dgcore::{DgCategory, Finiteness};
use crate::dgmod::{sn_pack, sn_unpack, yoneda_module, DgModule, ModuleMap, Soundness};
use crate::error::Result;
use crate::hochschild::shuffle_map;
use crate::saturation::{euler_report, saturation_report, triangle_identity_check, Smoothness, TriangleOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Skipped => "SKIPPED",
        };
        f.pad(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub item: String,
    pub check: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

/// Bounds shared by the suites; every report echoes them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    /// Cohomological window of the triangle identities.
    pub window: RangeInclusive<i64>,
    pub bar_bound: usize,
    /// Homological window of the Künneth comparison.
    pub kunneth_window: RangeInclusive<i64>,
    pub roundtrip_trials: usize,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { window: -3..=3, bar_bound: 4, kunneth_window: 0..=2, roundtrip_trials: 20, seed: 0 }
    }
}

pub const CHECK_NAMES: [&str; 5] = ["sn_roundtrip", "saturation", "triangle", "euler", "kunneth"];

fn random_module<R: Rng>(rng: &mut R, a: &DgCategory) -> Result<DgModule> {
    let n = a.n_objects();
    let mut m = yoneda_module(a, rng.gen_range(0..n))?;
    if rng.gen_bool(0.5) {
        m = m.direct_sum(&yoneda_module(a, rng.gen_range(0..n))?)?;
    }
    if rng.gen_bool(0.5) {
        m = m.tensor_shift(rng.gen_range(-1..=1));
    }
    Ok(m)
}

/// Packs random triples `(M, M[n], c·shift)` into modules over
/// `S(n)^op ⊗ A`, validates them, and unpacks them again.
pub fn sn_roundtrip(a: &DgCategory, trials: usize, seed: u64) -> Result<(usize, Option<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = a.field();
    for t in 0..trials {
        let n = rng.gen_range(-2..=2);
        let m = random_module(&mut rng, a)?;
        let c = field.from_i64(rng.gen_range(-3..=3));
        let m2 = m.tensor_shift(n);
        let f = ModuleMap { degree: n, maps: m.tensor_shift_map(n).maps.iter().map(|x| x.scale(&c)).collect() };
        let packed = sn_pack(&m, &m2, &f, n)?;
        let violations = packed.validate();
        if !violations.is_empty() {
            return Ok((t, Some(format!("packed module of trial {t} fails validation: {violations:?}"))));
        }
        if sn_unpack(&packed, n, a)? != (m, m2, f) {
            return Ok((t, Some(format!("trial {t} does not unpack to its input"))));
        }
    }
    Ok((trials, None))
}

fn result(item: &str, check: &'static str, verdict: Verdict, detail: impl Into<String>) -> CheckResult {
    CheckResult { item: item.to_string(), check, verdict, detail: detail.into() }
}

fn guarded(item: &str, check: &'static str, run: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    run().unwrap_or_else(|e| result(item, check, Verdict::Fail, format!("error: {e}")))
}

/// Runs every suite on one category, in the order of [`CHECK_NAMES`]. A
/// category failing validation gets a single `validate` failure instead.
pub fn run_suites(item: &str, a: &DgCategory, params: &SuiteParams) -> Vec<CheckResult> {
    let report = a.validate();
    if !report.is_valid() {
        let first = report.violations.first().map(ToString::to_string).unwrap_or_default();
        let detail = format!("{} violations, first: {first}", report.violations.len());
        return vec![result(item, "validate", Verdict::Fail, detail)];
    }
    let mut out = Vec::new();
    out.push(guarded(item, "sn_roundtrip", || {
        let (done, failure) = sn_roundtrip(a, params.roundtrip_trials, params.seed)?;
        Ok(match failure {
            None => result(item, "sn_roundtrip", Verdict::Pass, format!("{done} triples")),
            Some(why) => result(item, "sn_roundtrip", Verdict::Fail, why),
        })
    }));

    if a.finiteness() != Finiteness::Closed {
        for check in &CHECK_NAMES[1..] {
            out.push(result(item, check, Verdict::Skipped, "truncated realization"));
        }
        return out;
    }

    let sat = saturation_report(a, params.bar_bound.max(2));
    out.push(match &sat.smooth {
        Smoothness::Certified { resolution_length, .. } if sat.saturated => {
            result(item, "saturation", Verdict::Pass, format!("proper; smooth with resolution length {resolution_length}"))
        }
        Smoothness::Inconclusive { reason, .. } => result(item, "saturation", Verdict::Inconclusive, reason.clone()),
        Smoothness::Certified { .. } => result(
            item,
            "saturation",
            Verdict::Inconclusive,
            sat.proper.reason.clone().unwrap_or_else(|| "not proper".into()),
        ),
    });

    out.push(guarded(item, "triangle", || {
        let r = triangle_identity_check(a, params.window.clone(), params.bar_bound)?;
        let verdict = match r.outcome {
            TriangleOutcome::Pass => Verdict::Pass,
            TriangleOutcome::Fail => Verdict::Fail,
            TriangleOutcome::Inconclusive => Verdict::Inconclusive,
        };
        let detail = match (&r.evidence, &r.reason) {
            (Some(e), _) => format!("{} composites, evidence {e:?}", r.checks),
            (None, Some(why)) => why.clone(),
            (None, None) => String::new(),
        };
        Ok(result(item, "triangle", verdict, detail))
    }));

    out.push(if sat.saturated {
        guarded(item, "euler", || {
            let r = euler_report(a)?;
            let detail = format!("chi_hh = {}, chi_dual = {}", r.chi_hh.value, r.chi_dual.value);
            Ok(match r.agree {
                Some(true) => result(item, "euler", Verdict::Pass, detail),
                Some(false) => result(item, "euler", Verdict::Fail, detail),
                None => result(item, "euler", Verdict::Inconclusive, format!("{detail}; not both exact")),
            })
        })
    } else {
        result(item, "euler", Verdict::Skipped, "saturation not certified")
    });

    out.push(guarded(item, "kunneth", || {
        let m = shuffle_map(a, a, params.kunneth_window.clone(), params.bar_bound)?;
        let exact: Vec<_> = m.degrees.iter().filter(|(_, d)| d.status == Soundness::Exact).collect();
        if exact.is_empty() {
            return Ok(result(item, "kunneth", Verdict::Inconclusive, "no exact degree in the window"));
        }
        let bad = exact.iter().find(|(_, d)| !(d.source_dim == d.target_dim && d.rank == d.target_dim));
        Ok(match bad {
            None => result(
                item,
                "kunneth",
                Verdict::Pass,
                format!("shuffle chain map on {} chains, isomorphism in {} exact degrees", m.checked, exact.len()),
            ),
            Some((n, d)) => result(
                item,
                "kunneth",
                Verdict::Fail,
                format!("degree {n}: source {}, target {}, rank {}", d.source_dim, d.target_dim, d.rank),
            ),
        })
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn saturated_corpus_passes_everything() {
        for (name, a) in corpus::saturated(Q) {
            for r in run_suites(name, &a, &SuiteParams::default()) {
                assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn dual_numbers_skip_euler() {
        let rs = run_suites("dual", &corpus::dual_numbers(Q), &SuiteParams::default());
        let get = |c: &str| rs.iter().find(|r| r.check == c).unwrap().verdict;
        assert_eq!(get("saturation"), Verdict::Inconclusive);
        assert_eq!(get("euler"), Verdict::Skipped);
        assert_eq!(get("sn_roundtrip"), Verdict::Pass);
        assert_eq!(get("kunneth"), Verdict::Pass);
        assert!(rs.iter().all(|r| r.verdict != Verdict::Fail));
    }
}
