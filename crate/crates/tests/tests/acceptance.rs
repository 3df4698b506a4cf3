//! Acceptance suite: runs criteria A1-A9 in order, prints one line per
//! criterion and exits non-zero if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use lamsep::io::{json, pace};
use lamsep::oracle::acceptance::{self, AcceptanceConfig, CriterionResult};
use lamsep::{Certificate, Error, SeparationFamily};
use lamsep_cli::{exit_code, run, CommandResult, EXIT_FALSE, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn lamsep(args: &[&str]) -> CommandResult {
    run(std::iter::once("lamsep").chain(args.iter().copied()))
}

/// Collects A9 failures.
struct Checks(Vec<String>, usize);

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.1 += 1;
        if !ok {
            self.0.push(what());
        }
    }

    fn exit(&mut self, args: &[&str], expected: i32) -> CommandResult {
        let result = lamsep(args);
        self.check(result.code == expected, || {
            format!("{args:?}: exit {} (want {expected}): {}", result.code, result.summary)
        });
        let again = lamsep(args);
        self.check(again == result, || format!("{args:?}: output differs between runs"));
        result
    }
}

fn round_trips(checks: &mut Checks) {
    let mut names: Vec<_> = fs::read_dir(fixtures())
        .expect("fixture directory")
        .map(|e| e.expect("entry").file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in names {
        let text = fs::read_to_string(fixtures().join(&name)).expect("fixture");
        let emitted = match name.rsplit('.').next() {
            Some("gr") => pace::read_graph(&text).map(|g| pace::write_graph(&g)),
            Some("td") => pace::read_td(&text).map(|td| pace::write_td(&td)),
            Some("json") => json::read_family(&text).map(|f| json::write_family(&f)),
            _ => continue,
        };
        checks.check(emitted.as_deref() == Ok(text.as_str()), || {
            format!("{name}: emit(parse(x)) differs from x")
        });
    }
}

fn exit_contract(checks: &mut Checks) {
    let (p5, c4, p3) = (fixture("p5.gr"), fixture("c4.gr"), fixture("p3.gr"));
    let (p5_seps, p5_td) = (fixture("p5_family.json"), fixture("p5.td"));

    let r = checks.exit(&["check-laminar", "--graph", &p5, "--seps", &p5_seps], EXIT_OK);
    checks.check(r.summary == "laminar", || format!("P5 summary {:?}", r.summary));
    let r = checks.exit(
        &["check-laminar", "--graph", &c4, "--seps", &fixture("c4_crossing.json")],
        EXIT_FALSE,
    );
    checks.check(
        r.summary.contains("({1},{3},{2,4})") && r.summary.contains("({2},{4},{1,3})"),
        || format!("C4 summary {:?}", r.summary),
    );
    checks.exit(
        &["build-td", "--graph", &p5, "--seps", &fixture("mismatched_n.json")],
        EXIT_USAGE,
    );
    checks.exit(&["check-laminar", "--graph", "no-such.gr", "--seps", &p5_seps], EXIT_USAGE);
    checks.exit(&["frobnicate"], EXIT_USAGE);
    checks.exit(&["tau-star", "--graph", &p3, "--td", &fixture("p3_two_bags.td")], EXIT_FALSE);
    checks.exit(&["from-cutset", "--graph", &p5, "--cutset", "1"], EXIT_FALSE);

    // emitted files agree with the fixtures byte for byte
    let r = checks.exit(&["build-td", "--graph", &p5, "--seps", &p5_seps], EXIT_OK);
    let expected_td = fs::read_to_string(&p5_td).expect("fixture");
    checks.check(r.payload.as_deref() == Some(expected_td.as_str()), || "build-td output".into());
    let r = checks.exit(&["tau-star", "--graph", &p5, "--td", &p5_td], EXIT_OK);
    let expected_seps = fs::read_to_string(&p5_seps).expect("fixture");
    checks.check(r.payload.as_deref() == Some(expected_seps.as_str()), || "tau-star output".into());
    let r = checks.exit(&["gen", "--model", "path", "--n", "5", "--seed", "0"], EXIT_OK);
    let expected_gr = fs::read_to_string(&p5).expect("fixture");
    checks.check(r.payload.as_deref() == Some(expected_gr.as_str()), || "gen output".into());
    checks.exit(&["gen", "--model", "gnp", "--n", "8", "--p", "0.3", "--seed", "42"], EXIT_OK);

    let certificate = Certificate::new("probe", None, &SeparationFamily::new(1), serde_json::Value::Null);
    checks.check(exit_code(&Error::InternalInvariant(Box::new(certificate))) == EXIT_INTERNAL, || {
        "internal invariant is not exit 3".into()
    });
}

fn selfcheck_runs(checks: &mut Checks, jobs: usize) {
    let start = Instant::now();
    let r = lamsep(&["selfcheck", "--jobs", &jobs.to_string()]);
    let elapsed = start.elapsed();
    checks.check(elapsed < Duration::from_secs(300), || format!("selfcheck took {elapsed:?}"));
    checks.check(r.code == EXIT_OK || r.code == EXIT_FALSE, || {
        format!("selfcheck exit {}: {}", r.code, r.summary)
    });
    let ids: Vec<String> = r
        .payload
        .as_deref()
        .and_then(|p| serde_json::from_str::<serde_json::Value>(p).ok())
        .and_then(|v| {
            v["criteria"]
                .as_array()
                .map(|a| a.iter().filter_map(|c| c["id"].as_str().map(String::from)).collect())
        })
        .unwrap_or_default();
    checks.check(ids == ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"], || {
        format!("selfcheck reported {ids:?}")
    });
}

fn a9(jobs: usize) -> CriterionResult {
    let start = Instant::now();
    let mut checks = Checks(Vec::new(), 0);
    round_trips(&mut checks);
    exit_contract(&mut checks);
    selfcheck_runs(&mut checks, jobs);
    let Checks(failures, instances) = checks;
    CriterionResult {
        id: "A9",
        title: "CLI round trips, exit codes and selfcheck",
        instances,
        failures: failures.len(),
        passed: failures.is_empty(),
        examples: failures.into_iter().take(5).collect(),
        certificates: Vec::new(),
        elapsed: start.elapsed(),
        limit: Duration::from_secs(300),
    }
}

fn main() {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = AcceptanceConfig {
        jobs,
        ..AcceptanceConfig::default()
    };
    let runners: [fn(&AcceptanceConfig) -> lamsep::Result<CriterionResult>; 8] = [
        acceptance::a1_tau_star_laminar,
        acceptance::a2_round_trip,
        acceptance::a3_projection_laminar,
        acceptance::a4_minimal_cutsets,
        acceptance::a5_tau_equals_projection,
        acceptance::a6_two_sided_agreement,
        acceptance::a7_tau_laminar,
        acceptance::a8_fixed_points,
    ];
    let mut failed = Vec::new();
    for runner in runners {
        let result = runner(&cfg).expect("criterion setup");
        println!("{result}");
        if !result.passed {
            failed.push(result.id);
        }
    }
    let result = a9(jobs);
    println!("{result}");
    if !result.passed {
        failed.push(result.id);
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: {} of 9 criteria fail: {}", failed.len(), failed.join(", "));
        std::process::exit(1);
    }
}
