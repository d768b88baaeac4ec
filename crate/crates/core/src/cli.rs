//! Command-line front end. Every command yields a [`RunReport`]; a short text
//! summary goes to stdout and `--out FILE` writes JSON (or CSV for `.csv`).
//!
//! Exit status: 0 clean, 1 violations or failures, 2 usage or configuration
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::goldbach::{goldbach_pair, scan_goldbach, GoldbachError};
use crate::multfunc::{
    check_equation, check_shift_implication, EquationForm, FamilyConfig, FamilyKind,
};
use crate::rational::format_q;
use crate::replay::{
    branch_replay, h_induction_replay, hn_witness, lemma4_replay, Certificate, ReplayReport,
};
use crate::report::RunReport;
use crate::sieve::{build_prime_set, load_or_build, PrimeSet};
use crate::solver::{
    classify_with, forced_values, SolutionFamily, SolveOptions, DEFAULT_MAX_DEGREE,
};
use crate::spiro::{HParams, SpiroSet};

#[derive(Debug, Parser)]
#[command(
    name = "adq",
    version,
    about = "Workbench for f(p+q-2) = f(p) + f(q) - f(2) over primes"
)]
pub struct Cli {
    /// Write the full report here (`.csv` for CSV, otherwise JSON).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sieve primes up to a limit, optionally through a cache directory.
    Sieve {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    #[command(subcommand)]
    Goldbach(GoldbachCmd),
    /// Rediscover the solution families of the bounded system.
    Classify {
        #[arg(long)]
        form: EquationForm,
        #[arg(long = "prime-limit")]
        prime_limit: u64,
        #[arg(long = "max-degree", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Tabulate the values each family forces.
    Forced {
        #[arg(long = "family-file")]
        family_file: PathBuf,
        #[arg(long = "up-to")]
        up_to: u64,
    },
    #[command(subcommand)]
    Verify(VerifyCmd),
    #[command(subcommand)]
    Replay(ReplayCmd),
    #[command(subcommand)]
    Spiro(SpiroCmd),
}

#[derive(Debug, Subcommand)]
pub enum GoldbachCmd {
    /// Minimal-p partition of an even number.
    Pair { n: u64 },
    /// Exhaustive check of every even number in a range.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Check a built-in family against the equation over all prime pairs.
    Family(FamilyArgs),
    /// Check that the PRIMES-1 equation implies the shifted one.
    ShiftImplication {
        #[arg(long)]
        name: FamilyKind,
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub name: FamilyKind,
    /// `p,e,num/den`: value of f(p^e) for the odd-squareful family.
    #[arg(long = "assign", value_parser = parse_assign)]
    pub assign: Vec<(u64, u32, String)>,
    #[arg(long = "prime-limit")]
    pub prime_limit: u64,
    #[arg(long, default_value = "shifted")]
    pub form: EquationForm,
}

#[derive(Debug, Subcommand)]
pub enum ReplayCmd {
    /// Goldbach induction up to N - 2.
    Lemma4 {
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Induction over members of H above a base bound.
    HInduction {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        limit: u64,
    },
    /// The f(2) = 0 or f(2) = 1 branch argument.
    Branch {
        #[arg(long)]
        value: u8,
        #[arg(long)]
        limit: u64,
    },
    /// Smallest element of H_n that is p + q - 2.
    HnWitness {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        search: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpiroCmd {
    Member {
        n: u64,
    },
    Cap {
        p: u64,
    },
    SmallestNonmember {
        #[arg(long)]
        limit: u64,
    },
    Hn {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        density: bool,
    },
    FindQ {
        #[arg(long)]
        m: u64,
    },
}

fn parse_assign(s: &str) -> Result<(u64, u32, String), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [p, e, v] = parts[..] else {
        return Err(format!("expected p,e,num/den, got {s:?}"));
    };
    let p = p.parse().map_err(|_| format!("bad prime {p:?}"))?;
    let e = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
    crate::rational::parse_q(v)?;
    Ok((p, e, v.to_string()))
}

/// Usage or configuration problem; maps to exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn jobs_default() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `argv` (program name first), runs, prints, and returns the exit
/// status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let started = Instant::now();
    let report = match execute(&cli.command) {
        Ok(mut report) => {
            report.duration_ms = started.elapsed().as_millis() as u64;
            report
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let _ = write!(out, "{}", summary(&report));
    if let Some(path) = &cli.out {
        if let Err(e) = report.write_to(path) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}

/// Runs a parsed command and builds its report.
pub fn execute(cmd: &Command) -> Result<RunReport, UsageError> {
    match cmd {
        Command::Sieve { limit, cache } => sieve_cmd(*limit, cache.as_deref()),
        Command::Goldbach(GoldbachCmd::Pair { n }) => {
            let primes = build_prime_set((*n).max(4))?;
            let mut r = RunReport::new("goldbach pair").param("n", n);
            match goldbach_pair(&primes, *n) {
                Ok(pair) => r.result = to_value(&pair),
                Err(GoldbachError::NoPair(n)) => r.violations.push(json!(n)),
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
        Command::Goldbach(GoldbachCmd::Scan { from, to, jobs }) => {
            let jobs = jobs.unwrap_or_else(jobs_default);
            if *from < 4 || from > to || from % 2 == 1 || to % 2 == 1 {
                return Err(GoldbachError::Bounds { lo: *from, hi: *to }.into());
            }
            let primes = build_prime_set(*to)?;
            let scan = scan_goldbach(&primes, *from, *to, jobs)?;
            let mut r = RunReport::new("goldbach scan")
                .param("from", from)
                .param("to", to)
                .param("jobs", jobs);
            r.violations = scan.exceptions.iter().map(|n| json!(n)).collect();
            r.table = Some((
                vec!["exception".into()],
                scan.exceptions
                    .iter()
                    .map(|n| vec![n.to_string()])
                    .collect(),
            ));
            r.result = to_value(&scan);
            Ok(r)
        }
        Command::Classify {
            form,
            prime_limit,
            max_degree,
        } => {
            let opts = SolveOptions {
                max_degree: *max_degree,
                ..SolveOptions::default()
            };
            let c = classify_with(*form, *prime_limit, opts)?;
            let mut r = RunReport::new("classify")
                .param("form", form)
                .param("prime-limit", prime_limit)
                .param("max-degree", max_degree);
            let mut rows = Vec::new();
            for (i, fam) in c.families.iter().enumerate() {
                for (s, v) in &fam.assignments {
                    rows.push(vec![i.to_string(), s.key(), format_q(v)]);
                }
                for s in &fam.free {
                    rows.push(vec![i.to_string(), s.key(), "free".into()]);
                }
            }
            r.table = Some((vec!["family".into(), "sym".into(), "value".into()], rows));
            r.result = to_value(&c);
            Ok(r)
        }
        Command::Forced { family_file, up_to } => forced_cmd(family_file, *up_to),
        Command::Verify(VerifyCmd::Family(args)) => {
            let config = FamilyConfig {
                kind: args.name,
                assignments: args.assign.clone(),
            };
            let f = config.build()?;
            let violations = check_equation(&f, args.form, args.prime_limit);
            let mut r = RunReport::new("verify family")
                .param("name", f.name())
                .param("form", args.form)
                .param("prime-limit", args.prime_limit);
            for (p, e, v) in &args.assign {
                r.params.insert(format!("assign {p}^{e}"), v.clone());
            }
            r.result = json!({ "family": f.name(), "form": args.form, "prime_limit": args.prime_limit,
                               "violation_count": violations.len() });
            r.table = Some((
                vec!["a".into(), "b".into(), "lhs".into(), "rhs".into()],
                violations
                    .iter()
                    .map(|v| {
                        vec![
                            v.a.to_string(),
                            v.b.to_string(),
                            format_q(&v.lhs),
                            format_q(&v.rhs),
                        ]
                    })
                    .collect(),
            ));
            r.violations = violations.iter().map(to_value).collect();
            Ok(r)
        }
        Command::Verify(VerifyCmd::ShiftImplication { name, limit }) => {
            let f = FamilyConfig {
                kind: *name,
                assignments: Vec::new(),
            }
            .build()?;
            let rep = check_shift_implication(&f, *limit);
            let mut r = RunReport::new("verify shift-implication")
                .param("name", f.name())
                .param("limit", limit);
            if rep.conclusion_holds == Some(false) {
                r.violations.push(json!({
                    "f2_is_two": rep.f2_is_two,
                    "prime_step_failures": rep.prime_step_failures.len(),
                    "shifted_violations": rep.shifted_violations.len(),
                }));
            }
            r.result = to_value(&rep);
            Ok(r)
        }
        Command::Replay(cmd) => replay_cmd(cmd),
        Command::Spiro(cmd) => spiro_cmd(cmd),
    }
}

fn sieve_cmd(limit: u64, cache: Option<&Path>) -> Result<RunReport, UsageError> {
    let mut r = RunReport::new("sieve").param("limit", limit);
    let (primes, from_cache) = match cache {
        Some(dir) => {
            r.params.insert("cache".into(), dir.display().to_string());
            std::fs::create_dir_all(dir)?;
            load_or_build(dir, limit)?
        }
        None => (build_prime_set(limit)?, false),
    };
    r.result =
        json!({ "limit": primes.limit(), "count": primes.count(), "from_cache": from_cache });
    Ok(r)
}

/// Accepts a classify report, a classification, a list of families, or one
/// family.
fn load_families(path: &Path) -> Result<Vec<SolutionFamily>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)?;
    let v = match v {
        Value::Object(ref m) if m.contains_key("result") => m["result"].clone(),
        other => other,
    };
    let list = match v {
        Value::Object(ref m) if m.contains_key("families") => m["families"].clone(),
        Value::Array(_) => v,
        other => Value::Array(vec![other]),
    };
    Ok(serde_json::from_value(list)?)
}

fn forced_cmd(path: &Path, up_to: u64) -> Result<RunReport, UsageError> {
    let families = load_families(path)?;
    let mut r = RunReport::new("forced")
        .param("family-file", path.display())
        .param("up-to", up_to);
    let mut rows: Vec<Vec<String>> = (1..=up_to).map(|n| vec![n.to_string()]).collect();
    let mut out = Vec::new();
    for fam in &families {
        let values = forced_values(fam, up_to);
        for (row, (_, v)) in rows.iter_mut().zip(&values) {
            row.push(v.to_string());
        }
        out.push(json!({ "f2": fam.f2().map(format_q), "values": to_value(&values) }));
    }
    let mut header = vec!["n".to_string()];
    header.extend(families.iter().map(|f| match f.f2() {
        Some(v) => format!("f2={}", format_q(v)),
        None => "f2=free".into(),
    }));
    r.table = Some((header, rows));
    r.result = json!({ "families": out });
    Ok(r)
}

fn replay_result(mut r: RunReport, rep: &ReplayReport) -> RunReport {
    r.failures = rep.failures.iter().map(to_value).collect();
    r.table = Some((
        vec![
            "n".into(),
            "established".into(),
            "case".into(),
            "witnesses".into(),
            "value".into(),
        ],
        rep.outcomes
            .iter()
            .map(|o| {
                vec![
                    o.n.to_string(),
                    o.established.to_string(),
                    o.case.map(|c| c.to_string()).unwrap_or_default(),
                    o.witnesses
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    o.value
                        .as_ref()
                        .map(format_q)
                        .unwrap_or_else(|| "free".into()),
                ]
            })
            .collect(),
    ));
    r.result = to_value(rep);
    r
}

fn replay_cmd(cmd: &ReplayCmd) -> Result<RunReport, UsageError> {
    let jobs = jobs_default();
    match cmd {
        ReplayCmd::Lemma4 { big_n } => {
            let cert = Certificate::build(*big_n, jobs)?;
            let rep = lemma4_replay(&cert, *big_n)?;
            Ok(replay_result(
                RunReport::new("replay lemma4").param("N", big_n),
                &rep,
            ))
        }
        ReplayCmd::HInduction { base, limit } => {
            let cert = Certificate::build((limit + 1).max(base + 2).max(21), jobs)?;
            let spiro = SpiroSet::new(HParams::default());
            let rep = h_induction_replay(&cert, &spiro, *base, *limit)?;
            Ok(replay_result(
                RunReport::new("replay h-induction")
                    .param("base", base)
                    .param("limit", limit),
                &rep,
            ))
        }
        ReplayCmd::Branch { value, limit } => {
            let cert = Certificate::build((limit + 2).max(21), jobs)?;
            let rep = branch_replay(&cert, *value, *limit)?;
            Ok(replay_result(
                RunReport::new("replay branch")
                    .param("value", value)
                    .param("limit", limit),
                &rep,
            ))
        }
        ReplayCmd::HnWitness { n, search } => {
            let primes: PrimeSet = build_prime_set(search + 2)?;
            let spiro = SpiroSet::new(HParams::default());
            let w = hn_witness(&primes, &spiro, *n, *search)?;
            let mut r = RunReport::new("replay hn-witness")
                .param("n", n)
                .param("search", search);
            if w.is_none() {
                r.failures
                    .push(json!({ "n": n, "reason": format!("no witness up to {search}") }));
            }
            r.result = json!({ "n": n, "witness": w });
            Ok(r)
        }
    }
}

fn spiro_cmd(cmd: &SpiroCmd) -> Result<RunReport, UsageError> {
    let params = HParams::default();
    let set = || SpiroSet::new(params);
    let mut r;
    match cmd {
        SpiroCmd::Member { n } => {
            if *n == 0 {
                return Err(UsageError("H contains positive integers only".into()));
            }
            let h = set();
            let fact = h.factorize(*n);
            r = RunReport::new("spiro member").param("n", n);
            r.result =
                json!({ "n": n, "member": h.admits(&fact), "factorization": fact.to_string() });
        }
        SpiroCmd::Cap { p } => {
            let cap = params.h_cap(*p)?;
            r = RunReport::new("spiro cap").param("p", p);
            r.result = json!({ "p": p, "cap": cap });
        }
        SpiroCmd::SmallestNonmember { limit } => {
            r = RunReport::new("spiro smallest-nonmember").param("limit", limit);
            r.result =
                json!({ "limit": limit, "smallest_non_member": set().smallest_non_member(*limit) });
        }
        SpiroCmd::Hn { n, limit, density } => {
            if *n == 0 {
                return Err(UsageError("H_n needs n >= 1".into()));
            }
            let h = set();
            let members: Vec<u64> = h.hn_stream(*n, *limit).collect();
            r = RunReport::new("spiro hn")
                .param("n", n)
                .param("limit", limit)
                .param("density", density);
            let mut result = json!({ "n": n, "limit": limit, "members": members });
            if *density {
                let d = h.hn_density(*n, *limit)?;
                result["density"] = json!({ "exact": d.exact(), "approx": d.approx() });
            }
            r.table = Some((
                vec!["member".into()],
                members.iter().map(|m| vec![m.to_string()]).collect(),
            ));
            r.result = result;
        }
        SpiroCmd::FindQ { m } => {
            let q = set().find_q_for_m(*m)?;
            r = RunReport::new("spiro find-q").param("m", m);
            if q.is_none() {
                r.failures
                    .push(json!({ "m": m, "reason": "no odd prime q <= m - 1 with m + q in H" }));
            }
            r.result = json!({ "m": m, "q": q });
        }
    }
    r.params
        .insert("cap_bound".into(), params.cap_bound.to_string());
    r.params
        .insert("prime_threshold".into(), params.prime_threshold.to_string());
    Ok(r)
}

/// Human-readable summary for stdout.
pub fn summary(r: &RunReport) -> String {
    let mut s = String::new();
    let res = &r.result;
    let line = match r.command.as_str() {
        "sieve" => format!(
            "{} primes <= {}{}",
            res["count"],
            res["limit"],
            if res["from_cache"] == json!(true) {
                " (cache)"
            } else {
                ""
            }
        ),
        "goldbach pair" if r.violations.is_empty() => {
            format!("{} = {} + {}", res["n"], res["p"], res["q"])
        }
        "goldbach pair" => format!("no partition for {}", r.params["n"]),
        "goldbach scan" => format!(
            "scanned {} even numbers in [{}, {}]: {} exceptions",
            res["scanned"],
            res["lo"],
            res["hi"],
            r.violations.len()
        ),
        "classify" => {
            let fams = res["families"].as_array().cloned().unwrap_or_default();
            let mut t = format!("{} families\n", fams.len());
            for f in &fams {
                t.push_str(&format!(
                    "  f(2) = {}, {} assigned, free {}\n",
                    f["f2"].as_str().unwrap_or("?"),
                    f["assignments"].as_array().map_or(0, Vec::len),
                    f["free"]
                ));
            }
            if let Some(w) = res["warnings"].as_array().filter(|w| !w.is_empty()) {
                t.push_str(&format!("  {} warnings\n", w.len()));
            }
            t.trim_end().to_string()
        }
        "forced" => {
            let mut t = String::new();
            if let Some((header, rows)) = &r.table {
                t.push_str(&header.join("\t"));
                for row in rows {
                    t.push('\n');
                    t.push_str(&row.join("\t"));
                }
            }
            t
        }
        "verify family" => format!("{} violations", r.violations.len()),
        "verify shift-implication" => format!(
            "premise holds: {}, conclusion holds: {}",
            res["premise_holds"], res["conclusion_holds"]
        ),
        c if c.starts_with("replay") && c != "replay hn-witness" => format!(
            "{}: {} established, {} failures, {} free, counters {}",
            res["kind"].as_str().unwrap_or(c),
            res["outcomes"].as_array().map_or(0, |o| o
                .iter()
                .filter(|o| o["established"] == json!(true))
                .count()),
            r.failures.len(),
            res["free"].as_array().map_or(0, Vec::len),
            res["counters"],
        ),
        "replay hn-witness" => match &res["witness"] {
            Value::Null => format!("no witness for n = {}", res["n"]),
            w => format!(
                "k = {} in H_{}, {} = {} + {}",
                w["k"],
                w["n"],
                w["k"].as_u64().unwrap_or(0) + 2,
                w["p"],
                w["q"]
            ),
        },
        "spiro member" => format!(
            "{} = {}: {}",
            res["n"],
            res["factorization"].as_str().unwrap_or(""),
            if res["member"] == json!(true) {
                "in H"
            } else {
                "not in H"
            }
        ),
        "spiro cap" => format!("cap({}) = {}", res["p"], res["cap"]),
        "spiro smallest-nonmember" => match &res["smallest_non_member"] {
            Value::Null => format!("every n <= {} is in H", res["limit"]),
            v => format!("smallest non-member: {v}"),
        },
        "spiro hn" => {
            let members = res["members"].as_array().map_or(0, Vec::len);
            match res.get("density") {
                Some(d) => format!(
                    "{members} members, density {} ~ {}",
                    d["exact"].as_str().unwrap_or(""),
                    d["approx"]
                ),
                None => format!("{members} members"),
            }
        }
        "spiro find-q" => match &res["q"] {
            Value::Null => format!("no q for m = {}", res["m"]),
            q => format!("q = {q}"),
        },
        _ => res.to_string(),
    };
    s.push_str(&line);
    s.push('\n');
    s
}
