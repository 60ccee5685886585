//! `cyclic-lrc`: construct, verify, search and tabulate optimal cyclic
//! (r, δ) locally repairable codes.
//!
//! Exit codes: 0 on success (an optimal code for `construct`), 2 when
//! `construct` builds a code that is not optimal or `verify` is
//! inconclusive, 1 on any error or disagreement.

use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclic_lrc::cert::{verify, Certificate, Verdict};
use cyclic_lrc::constructions::{build, Construction, ConstructionRequest, Family};
use cyclic_lrc::distance::DEFAULT_BUDGET;
use cyclic_lrc::golden::{builtin_sources, dir_sources, run_all, GoldenOutcome};
use cyclic_lrc::search::{run_search, GridConfig, SearchRow};
use cyclic_lrc::sweep::{run_sweep, SweepReport, Tally, INSTANCES};

const MIN_BUDGET: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "cyclic-lrc", version, about = "Optimal cyclic (r, δ) locally repairable codes")]
struct Cli {
    /// Cap on estimated field operations per distance computation (>= 10^6).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: u64,
    /// Output format; pretty on a terminal, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one family member and print its certificate.
    Construct(ConstructArgs),
    /// Check every claim of a certificate file.
    Verify {
        certificate: PathBuf,
    },
    /// Build every request of a grid file (TOML, or JSON by extension).
    Search {
        grid: PathBuf,
        /// Keep only optimal codes.
        #[arg(long)]
        optimal_only: bool,
        /// Keep only codes with r + δ − 1 not dividing n.
        #[arg(long)]
        non_divisible: bool,
    },
    /// Published versus rebuilt parameters of the reference examples.
    Table {
        /// Read examples from this directory instead of the built-in set.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// Reference examples plus the small-instance sweeps; exit 0 iff all pass.
    Selftest {
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Also write one certificate per buildable example into this directory.
        #[arg(long)]
        write_certificates: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Family name, e.g. C44, T48, C52_1; C52 and C59 take --case.
    #[arg(long)]
    family: String,
    /// Case number for C52 (1-3) and C59 (1-2).
    #[arg(long)]
    case: Option<u8>,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 1)]
    b: usize,
    #[arg(long, default_value_t = 0)]
    t: usize,
    #[arg(long)]
    m: Option<usize>,
    /// Tail offsets, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    tail: Vec<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
}

fn parse_budget(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !(v >= MIN_BUDGET as f64) || v > u64::MAX as f64 {
        return Err(format!("budget must be at least {MIN_BUDGET}"));
    }
    Ok(v as u64)
}

fn resolve_family(name: &str, case: Option<u8>) -> Result<Family> {
    let name = match case {
        Some(c) => format!("{name}_{c}"),
        None => name.to_string(),
    };
    Ok(name.parse::<Family>()?)
}

impl ConstructArgs {
    fn request(&self) -> Result<ConstructionRequest> {
        let family = resolve_family(&self.family, self.case)?;
        let mut req = ConstructionRequest::new(family, self.q, self.n, self.delta)
            .b(self.b)
            .t(self.t)
            .tail(self.tail.iter().copied());
        req.r = self.r;
        req.m = self.m;
        req.i = self.i;
        req.ell = self.ell;
        req.j = self.j;
        req.mu = self.mu;
        Ok(req)
    }
}

struct Out {
    format: Format,
    sink: Box<dyn Write>,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.sink, "{}", s.as_ref())?;
        Ok(())
    }

    fn json<T: serde::Serialize>(&mut self, v: &T) -> Result<()> {
        let s = serde_json::to_string_pretty(v)?;
        self.line(s)
    }
}

fn fmt_d(d: Option<usize>, lo: usize, hi: usize) -> String {
    d.map_or(format!("{lo}..{hi}"), |d| d.to_string())
}

fn construct(args: &ConstructArgs, budget: u64, out: &mut Out) -> Result<ExitCode> {
    let req = args.request()?;
    let c = build(&req, budget)?;
    let o = &c.optimality;
    let cert = Certificate::from_construction(&c);
    match out.format {
        Format::Json => out.line(cert.to_json())?,
        Format::Csv => {
            out.line(SearchRow::CSV_HEADER)?;
            out.line(row_of(&c).csv())?;
        }
        Format::Pretty => print_construction(&c, out)?,
    }
    Ok(if o.optimal { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn row_of(c: &Construction) -> SearchRow {
    let o = &c.optimality;
    SearchRow {
        family: o.family,
        q: c.request.q,
        n: o.n,
        r: o.r,
        delta: o.delta,
        k: o.k,
        d: o.d_exact,
        d_lower: o.d_lower,
        d_upper: o.d_upper,
        optimal: o.optimal,
        divides: o.divides(),
        request: c.request.clone(),
    }
}

fn print_construction(c: &Construction, out: &mut Out) -> Result<()> {
    let o = &c.optimality;
    let l = &c.locality;
    let big_r = o.r + o.delta - 1;
    out.line(format!("family     {}", o.family))?;
    out.line(format!("field      GF({}), n = {}", c.request.q, o.n))?;
    out.line(format!("code       [{},{},{}]", o.n, o.k, fmt_d(o.d_exact, o.d_lower, o.d_upper)))?;
    out.line(format!(
        "locality   ({},{}) from d_A⊥ = {}, d_B = {}; r+δ−1 = {big_r} {} n",
        o.r,
        o.delta,
        l.da_perp,
        l.d_b,
        if o.divides() { "divides" } else { "does not divide" }
    ))?;
    out.line(format!(
        "optimal    {} (Singleton-like bound {}, distance by {:?})",
        if o.optimal { "yes" } else { "no" },
        o.singleton_like_value,
        o.distance_method
    ))?;
    out.line(format!("defining   {:?}", c.code.defining().as_slice()))?;
    out.line(format!("generator  {}", c.code.generator_over_base()))?;
    out.line(format!("groups     {} repair groups of size {}", l.groups.len(), l.groups.first().map_or(0, Vec::len)))?;
    Ok(())
}

fn verify_cmd(path: &Path, budget: u64, out: &mut Out) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert = Certificate::from_json(&text).with_context(|| format!("in {}", path.display()))?;
    let report = verify(&cert, budget)?;
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Csv => {
            out.line("claim,verdict,detail")?;
            for c in &report.checks {
                out.line(format!("{},{:?},\"{}\"", c.claim, c.verdict, c.detail.replace('"', "'")))?;
            }
        }
        Format::Pretty => {
            for c in &report.checks {
                let v = match c.verdict {
                    Verdict::Agree => "agree",
                    Verdict::Disagree => "DISAGREE",
                    Verdict::Inconclusive => "inconclusive",
                };
                out.line(format!("{:<12} {:<12} {}", c.claim, v, c.detail))?;
            }
        }
    }
    Ok(if report.any_disagree() {
        ExitCode::FAILURE
    } else if report.all_agree() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn load_grid(path: &Path) -> Result<GridConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg = if path.extension().is_some_and(|e| e == "json") {
        GridConfig::from_json(&text)?
    } else {
        toml::from_str(&text)?
    };
    Ok(cfg)
}

fn search_cmd(path: &Path, optimal_only: bool, non_divisible: bool, budget: u64, out: &mut Out) -> Result<ExitCode> {
    let cfg = load_grid(path).with_context(|| format!("invalid grid {}", path.display()))?;
    let budget = cfg.budget.map_or(budget, |b| b.max(MIN_BUDGET));
    let res = run_search(&cfg, budget);
    let rows: Vec<&SearchRow> = res
        .rows
        .iter()
        .filter(|r| !optimal_only || r.optimal)
        .filter(|r| !non_divisible || !r.divides)
        .collect();
    match out.format {
        Format::Json => out.json(&rows)?,
        Format::Csv => {
            out.line(SearchRow::CSV_HEADER)?;
            for r in &rows {
                out.line(r.csv())?;
            }
        }
        Format::Pretty => {
            for r in &rows {
                out.line(format!(
                    "{:<6} GF({}) [{},{},{}] ({},{}){}{}",
                    r.family.to_string(),
                    r.q,
                    r.n,
                    r.k,
                    fmt_d(r.d, r.d_lower, r.d_upper),
                    r.r,
                    r.delta,
                    if r.optimal { " optimal" } else { "" },
                    if r.divides { "" } else { ", r+δ−1 ∤ n" }
                ))?;
            }
            out.line(format!("{} rows, {} requests skipped", rows.len(), res.skipped))?;
        }
    }
    for (req, e) in &res.failures {
        eprintln!("error: {} {}: {e}", req.family, serde_json::to_string(req)?);
    }
    Ok(if res.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn golden_sources(dir: Option<&Path>) -> Result<Vec<(String, String)>> {
    match dir {
        Some(d) => dir_sources(d).with_context(|| format!("reading {}", d.display())),
        None => Ok(builtin_sources()),
    }
}

fn print_golden(outcomes: &[GoldenOutcome], out: &mut Out) -> Result<()> {
    match out.format {
        Format::Json => {
            let v: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "file": o.file, "name": o.name, "passed": o.passed,
                        "computed": o.summary, "failures": o.failures,
                    })
                })
                .collect();
            out.json(&v)?;
        }
        Format::Csv => {
            out.line("file,name,passed,computed")?;
            for o in outcomes {
                out.line(format!("{},{},{},\"{}\"", o.file, o.name, o.passed, o.summary))?;
            }
        }
        Format::Pretty => {
            for o in outcomes {
                out.line(format!("{} {:<32} {}", if o.passed { "pass" } else { "FAIL" }, o.name, o.summary))?;
                for f in &o.failures {
                    out.line(format!("       {}: {f}", o.file))?;
                }
            }
        }
    }
    Ok(())
}

fn tally_line(name: &str, t: &Tally) -> String {
    format!(
        "{} {name}: {}/{} agree, {} skipped under budget",
        if t.passed() { "pass" } else { "FAIL" },
        t.agreed,
        t.checked,
        t.skipped
    )
}

fn print_sweep(rep: &SweepReport, out: &mut Out) -> Result<()> {
    if out.format == Format::Json {
        return out.json(rep);
    }
    out.line(format!("sweep over {} q-closed defining sets", rep.sets))?;
    for (name, t) in [
        ("dual distance = complement-set distance", &rep.dual_complement),
        ("subfield distance = extension distance", &rep.subfield_extension),
        ("lower bounds <= distance", &rep.lower_bounds),
        ("exact dual distance criterion", &rep.exact_dual),
    ] {
        out.line(tally_line(name, t))?;
        for f in &t.failures {
            out.line(format!("       {f}"))?;
        }
    }
    Ok(())
}

fn selftest(golden_dir: Option<&Path>, certs: Option<&Path>, budget: u64, out: &mut Out) -> Result<ExitCode> {
    let outcomes = run_all(&golden_sources(golden_dir)?, budget);
    print_golden(&outcomes, out)?;
    if let Some(dir) = certs {
        fs::create_dir_all(dir)?;
        for o in &outcomes {
            if let Some(c) = &o.certificate {
                let name = o.file.trim_end_matches(".json");
                fs::write(dir.join(format!("{name}.cert.json")), c.to_json())?;
            }
        }
    }
    let rep = run_sweep(&INSTANCES, budget);
    print_sweep(&rep, out)?;
    let golden_ok = outcomes.iter().all(|o| o.passed);
    if out.format == Format::Pretty {
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        out.line(format!("{} of {} reference examples reproduced", outcomes.len() - failed, outcomes.len()))?;
    }
    Ok(if golden_ok && rep.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let format = cli.format.unwrap_or_else(|| {
        if cli.output.is_none() && std::io::stdout().is_terminal() {
            Format::Pretty
        } else {
            Format::Json
        }
    });
    let sink: Box<dyn Write> = match &cli.output {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut out = Out { format, sink };
    let code = match &cli.command {
        Command::Construct(a) => construct(a, cli.budget, &mut out)?,
        Command::Verify { certificate } => verify_cmd(certificate, cli.budget, &mut out)?,
        Command::Search { grid, optimal_only, non_divisible } => {
            search_cmd(grid, *optimal_only, *non_divisible, cli.budget, &mut out)?
        }
        Command::Table { golden_dir } => {
            let outcomes = run_all(&golden_sources(golden_dir.as_deref())?, cli.budget);
            print_golden(&outcomes, &mut out)?;
            ExitCode::SUCCESS
        }
        Command::Selftest { golden_dir, write_certificates } => {
            selftest(golden_dir.as_deref(), write_certificates.as_deref(), cli.budget, &mut out)?
        }
    };
    out.sink.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
