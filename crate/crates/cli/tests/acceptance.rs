//! Acceptance criteria 1-8, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cyclic_lrc::distance::DEFAULT_BUDGET;
use cyclic_lrc::golden::{builtin_sources, certificate_groups_sound, run_all};
use cyclic_lrc::sweep::{run_sweep, Tally, INSTANCES};

#[path = "../../core/tests/props/mod.rs"]
mod props;
#[path = "../../core/tests/specs/mod.rs"]
mod specs;

struct Verdict {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(passed: bool, summary: impl Into<String>) -> Verdict {
        Verdict { passed, summary: summary.into(), details: Vec::new() }
    }
}

fn golden() -> Verdict {
    let start = Instant::now();
    let outcomes = run_all(&builtin_sources(), DEFAULT_BUDGET);
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    let mut v = Verdict::new(
        failed.is_empty() && start.elapsed() < Duration::from_secs(300),
        format!(
            "reference examples: {}/{} reproduced in {:.1}s",
            outcomes.len() - failed.len(),
            outcomes.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    for o in failed {
        for f in &o.failures {
            v.details.push(format!("{}: {f}", o.file));
        }
    }
    v
}

fn headline() -> Verdict {
    let grid = Path::new(env!("CARGO_MANIFEST_DIR")).join("grids/headline.toml");
    let out = Command::new(env!("CARGO_BIN_EXE_cyclic-lrc"))
        .args(["search", grid.to_str().unwrap(), "--format", "csv", "--optimal-only", "--non-divisible"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let has = |row: &str| rows.contains(&row);
    let required = ["C44,19,18,9,2,12,6,true,false", "C511,16,17,7,3,8,8,true,false"];
    let mut v = Verdict::new(
        out.status.success() && rows.len() >= 5 && required.iter().all(|r| has(r)),
        format!("non-divisible optimal codes from the search command: {}", rows.len()),
    );
    v.details.extend(rows.iter().map(|r| r.to_string()));
    v
}

fn tally(name: &str, t: &Tally) -> Verdict {
    let mut v = Verdict::new(
        t.passed() && t.skipped == 0 && t.checked > 0,
        format!("{name}: {}/{} agree, {} skipped", t.agreed, t.checked, t.skipped),
    );
    v.details.extend(t.failures.iter().cloned());
    v
}

fn locality() -> Verdict {
    let outcomes = run_all(&builtin_sources(), DEFAULT_BUDGET);
    let mut checked = 0;
    let mut details = Vec::new();
    for o in &outcomes {
        if let Some(c) = &o.certificate {
            checked += 1;
            if let Err(e) = certificate_groups_sound(c) {
                details.push(format!("{}: {e}", o.file));
            }
        }
    }
    let mut v = Verdict::new(
        details.is_empty() && checked > 0,
        format!("locality certificates sound: {}/{checked}", checked - details.len()),
    );
    v.details = details;
    v
}

fn identities() -> Verdict {
    let mut total = 0;
    let mut details = Vec::new();
    for (name, f) in specs::all() {
        match f() {
            Ok(0) => details.push(format!("{name}: no admissible parameters")),
            Ok(n) => total += n,
            Err(e) => details.push(format!("{name}: {e}")),
        }
    }
    let mut v = Verdict::new(details.is_empty(), format!("specialization identities: {total} exact set equalities"));
    v.details = details;
    v
}

fn properties() -> Verdict {
    let mut details = Vec::new();
    let all = props::all();
    for (name, f) in &all {
        if let Err(e) = f() {
            details.push(format!("{name}: {e}"));
        }
    }
    let mut v = Verdict::new(
        details.is_empty(),
        format!("{} properties x {} cases", all.len(), props::CASES),
    );
    v.details = details;
    v
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = run_sweep(&INSTANCES, DEFAULT_BUDGET);
    let sweep_time = start.elapsed();
    let mut bounds = tally("lower bounds <= d", &sweep.lower_bounds);
    let exact = tally("exact dual distance", &sweep.exact_dual);
    bounds.passed &= exact.passed;
    bounds.summary = format!("{}; {}", bounds.summary, exact.summary);
    bounds.details.extend(exact.details);
    let mut dual = tally("dual d = complement-set d", &sweep.dual_complement);
    dual.passed &= sweep_time < Duration::from_secs(120);
    dual.summary = format!("{} over {} sets in {:.1}s", dual.summary, sweep.sets, sweep_time.as_secs_f64());

    let verdicts = [
        golden(),
        headline(),
        dual,
        tally("subfield d = extension d", &sweep.subfield_extension),
        bounds,
        locality(),
        identities(),
        properties(),
    ];
    let mut all = true;
    for (i, v) in verdicts.iter().enumerate() {
        all &= v.passed;
        println!("criterion {} {} {}", i + 1, if v.passed { "PASS" } else { "FAIL" }, v.summary);
        for d in &v.details {
            println!("    {d}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
