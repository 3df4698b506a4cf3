use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::builder::build_deciduous_td;
use crate::certificate::Certificate;
use crate::decomposition::TreeDecomposition;
use crate::error::Error;
use crate::graph::{CutsetVerdict, Graph};
use crate::separation::{ManySidedSeparation, SeparationFamily};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail(Box<Certificate>),
    Skipped,
    HypothesisNotMet,
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "FAIL",
            Verdict::Skipped => "skipped",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
        })
    }
}

/// Outcome of every whole-pipeline check on one `(graph, family)` instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub laminar: Verdict,
    pub projection_laminar: Verdict,
    pub build_round_trip: Verdict,
    pub deciduous: Verdict,
    pub tau_star_equals_family: Verdict,
    pub tau_star_laminar: Verdict,
    pub minimal_cutset_hypothesis: bool,
    pub tau_equals_projection: Verdict,
}

impl TheoremReport {
    pub fn checks(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("laminar", &self.laminar),
            ("projection-laminar", &self.projection_laminar),
            ("build-round-trip", &self.build_round_trip),
            ("deciduous", &self.deciduous),
            ("tau-star-equals-family", &self.tau_star_equals_family),
            ("tau-star-laminar", &self.tau_star_laminar),
            ("tau-equals-projection", &self.tau_equals_projection),
        ]
    }

    pub fn all_ok(&self) -> bool {
        self.checks().iter().all(|(_, v)| !v.is_fail())
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Certificate)> {
        self.checks().into_iter().find_map(|(name, v)| match v {
            Verdict::Fail(c) => Some((name, c.as_ref())),
            _ => None,
        })
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, verdict) in self.checks() {
            writeln!(f, "{name}: {verdict}")?;
        }
        writeln!(f, "minimal-cutset-hypothesis: {}", self.minimal_cutset_hypothesis)
    }
}

/// Whether every member has a minimal cutset and exactly the components of
/// the remainder as its sides.
pub fn minimal_cutset_hypothesis(g: &Graph, f: &SeparationFamily) -> bool {
    g.is_connected()
        && f.iter().all(|s| {
            g.is_minimal_cutset(s.cutset()) == Ok(CutsetVerdict::Minimal)
                && ManySidedSeparation::from_cutset(g, s.cutset()).is_ok_and(|t| t == *s)
        })
}

/// Runs the laminarity, projection, build round-trip and `tau = rho` checks
/// in order. A non-laminar family skips everything after the first check.
pub fn check_all(g: &Graph, f: &SeparationFamily) -> TheoremReport {
    let fail = |check: &str, details: serde_json::Value| {
        Verdict::Fail(Box::new(Certificate::new(check, Some(g), f, details)))
    };
    let family_json = |fam: &SeparationFamily| {
        serde_json::to_value(crate::io::json::FamilyRecord::from(fam)).expect("serializable")
    };
    let mut report = TheoremReport {
        laminar: Verdict::Skipped,
        projection_laminar: Verdict::Skipped,
        build_round_trip: Verdict::Skipped,
        deciduous: Verdict::Skipped,
        tau_star_equals_family: Verdict::Skipped,
        tau_star_laminar: Verdict::Skipped,
        minimal_cutset_hypothesis: minimal_cutset_hypothesis(g, f),
        tau_equals_projection: Verdict::Skipped,
    };

    if let Some((a, b)) = f.first_crossing() {
        report.laminar = fail(
            "laminar",
            json!({ "crossing": [f.members()[a].to_string(), f.members()[b].to_string()] }),
        );
        return report;
    }
    report.laminar = Verdict::Pass;

    let projected = f.project();
    report.projection_laminar = match projected.first_crossing() {
        None => Verdict::Pass,
        Some((a, b)) => fail(
            "projection-laminar",
            json!({
                "projection": family_json(&projected),
                "crossing": [projected.members()[a].to_string(), projected.members()[b].to_string()],
            }),
        ),
    };

    let td = match build_deciduous_td(g, f) {
        Ok(td) => td,
        Err(Error::InternalInvariant(cert)) => {
            report.build_round_trip = Verdict::Fail(cert);
            return report;
        }
        Err(e) => {
            report.build_round_trip = fail("build-round-trip", json!({ "error": e.to_string() }));
            return report;
        }
    };
    report.build_round_trip = Verdict::Pass;
    let td_json = |td: &TreeDecomposition| json!({ "td": crate::io::pace::write_td(td) });

    report.deciduous = match td.leaf_bipartition() {
        Ok(_) => Verdict::Pass,
        Err(e) => fail("deciduous", json!({ "error": e.to_string(), "td": td_json(&td) })),
    };

    match td.tau_star(g) {
        Ok(back) => {
            report.tau_star_equals_family = if back == *f {
                Verdict::Pass
            } else {
                fail(
                    "tau-star-equals-family",
                    json!({ "tau_star": family_json(&back), "td": td_json(&td) }),
                )
            };
            report.tau_star_laminar = if back.is_laminar() {
                Verdict::Pass
            } else {
                fail(
                    "tau-star-laminar",
                    json!({ "tau_star": family_json(&back), "td": td_json(&td) }),
                )
            };
        }
        Err(e) => {
            report.tau_star_equals_family =
                fail("tau-star-equals-family", json!({ "error": e.to_string() }));
        }
    }

    report.tau_equals_projection = if !report.minimal_cutset_hypothesis {
        Verdict::HypothesisNotMet
    } else {
        match td.tau(g) {
            Ok(tau) if tau == projected => Verdict::Pass,
            Ok(tau) => fail(
                "tau-equals-projection",
                json!({ "tau": family_json(&tau), "projection": family_json(&projected), "td": td_json(&td) }),
            ),
            Err(e) => fail("tau-equals-projection", json!({ "error": e.to_string() })),
        }
    };
    report
}
