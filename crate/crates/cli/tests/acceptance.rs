//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 1–9 run the corresponding validation checks on their full grids
//! (the `--full` preset); criterion 10 drives the built binary. Runs without
//! the libtest harness so the criterion lines always reach the output.

use oscspread_cli::validate::{run_check, CheckResult, Preset, Status, ORACLE_TOL};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

struct Criterion {
    n: usize,
    title: &'static str,
    checks: &'static [&'static str],
    budget: Option<Duration>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        n: 1,
        title: "moments",
        checks: &["moments.closed_vs_oracle", "moments.dual_forms", "moments.recurrence", "moments.reflection"],
        budget: Some(Duration::from_secs(30)),
    },
    Criterion { n: 2, title: "Heisenberg product", checks: &["heisenberg.product"], budget: None },
    Criterion {
        n: 3,
        title: "Fisher information",
        checks: &["fisher.closed_vs_moments", "fisher.ground_saturation", "uncertainty.relations"],
        budget: None,
    },
    Criterion {
        n: 4,
        title: "Shannon entropy",
        checks: &[
            "shannon.ground_1d",
            "shannon.excited_1d_vs_oracle",
            "shannon.cartesian_closed_vs_oracle",
            "shannon.bbm_sum",
            "shannon.hyper_ground_vs_cartesian",
            "shannon.swave_angular",
        ],
        budget: None,
    },
    Criterion {
        n: 5,
        title: "Rényi entropy and disequilibrium",
        checks: &[
            "renyi.cartesian_closed_vs_oracle",
            "renyi.ground",
            "renyi.disequilibrium_identity",
            "disequilibrium.radial_closed_vs_oracle",
            "disequilibrium.d3_routes",
            "renyi.conjugate_bound",
        ],
        budget: None,
    },
    Criterion {
        n: 6,
        title: "Hermite entropy",
        checks: &["hermite_entropy.first", "hermite_entropy.closed_vs_oracle"],
        budget: None,
    },
    Criterion {
        n: 7,
        title: "Rydberg asymptotics",
        checks: &["rydberg.moment_residuals", "rydberg.laguerre_entropy", "rydberg.norm_ratio"],
        budget: Some(Duration::from_secs(300)),
    },
    Criterion {
        n: 8,
        title: "high-dimensional asymptotics",
        checks: &["highdim.moment_leading", "highdim.renyi_leading", "note.highdim_shannon_scaling"],
        budget: None,
    },
    Criterion { n: 9, title: "uncertainty relations", checks: &["uncertainty.relations"], budget: None },
];

fn check_ok(r: &CheckResult) -> bool {
    matches!(r.status, Status::Pass | Status::Note)
}

fn summary(r: &CheckResult) -> String {
    let dev = match (r.max_deviation, r.tolerance) {
        (Some(d), Some(t)) => format!(" max_dev={d:.2e} tol={t:.0e}"),
        _ => String::new(),
    };
    format!("{} {:?}{dev} cases={}", r.id, r.status, r.cases)
}

fn run_criterion(c: &Criterion) -> bool {
    let start = Instant::now();
    let results: Vec<CheckResult> = c
        .checks
        .iter()
        .map(|id| run_check(id, Preset::Full, ORACLE_TOL).unwrap_or_else(|| panic!("unknown check {id}")))
        .collect();
    let elapsed = start.elapsed();
    let mut ok = results.iter().all(check_ok);
    let mut extra = String::new();
    if let Some(b) = c.budget {
        ok &= elapsed < b;
        extra = format!(" (budget {}s)", b.as_secs());
    }
    println!(
        "criterion {}: {} — {} [{:.1}s{extra}]",
        c.n,
        if ok { "PASS" } else { "FAIL" },
        c.title,
        elapsed.as_secs_f64()
    );
    for r in &results {
        println!("    {}", summary(r));
        if !check_ok(r) || r.status == Status::Note {
            for line in r.detail.lines() {
                println!("      {line}");
            }
        }
    }
    ok
}

fn validate_quick() -> (Duration, std::process::Output) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_oscspread"))
        .args(["validate", "--quick"])
        .env_remove("HO_ORACLE_TOL")
        .output()
        .expect("running oscspread");
    (start.elapsed(), out)
}

fn criterion_10() -> bool {
    let (t1, a) = validate_quick();
    let (t2, b) = validate_quick();
    let text = String::from_utf8_lossy(&a.stdout);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap_or(serde_json::Value::Null);
    let checks = doc["checks"].as_array().cloned().unwrap_or_default();
    let count = |s: &str| checks.iter().filter(|c| c["status"] == s).count();
    let discrepancies: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "paper_discrepancy").filter_map(|c| c["id"].as_str()).collect();
    let slowest = t1.max(t2);
    let conditions = [
        ("exit status 0", a.status.success() && b.status.success()),
        ("under 60 s", slowest < Duration::from_secs(60)),
        ("byte-identical re-run", a.stdout == b.stdout && !a.stdout.is_empty()),
        ("four paper_discrepancy entries", count("paper_discrepancy") == 4),
        ("one note", count("note") == 1 && checks.iter().any(|c| c["id"] == "note.highdim_shannon_scaling")),
        ("no failures", count("fail") == 0),
    ];
    let ok = conditions.iter().all(|c| c.1);
    println!(
        "criterion 10: {} — CLI validate --quick [{:.1}s, {:.1}s]",
        if ok { "PASS" } else { "FAIL" },
        t1.as_secs_f64(),
        t2.as_secs_f64()
    );
    for (what, good) in conditions {
        println!("    {what}: {}", if good { "yes" } else { "no" });
    }
    println!("    discrepancies: {}", discrepancies.join(", "));
    ok
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for c in CRITERIA {
        if !run_criterion(c) {
            failed.push(c.n);
        }
    }
    if !criterion_10() {
        failed.push(10);
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
