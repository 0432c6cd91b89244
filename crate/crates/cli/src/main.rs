//! `weingarten`: command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

mod cache;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use weingarten::algebra::wire::{series_to_json, GaussJson};
use weingarten::algebra::{gauss_real, Rational};
use weingarten::correlations::{
    corr_coe, corr_coe_at, corr_cue, corr_cue_at, trace_corr_coe, trace_corr_cue, IndexTuple,
};
use weingarten::energy::{check_eps0_identity, gen_wg_series, Eps0Report};
use weingarten::oracle::{mc_check, McReport, MomentPattern};
use weingarten::partitions::partitions_of;
use weingarten::weingarten::{wg_coe, wg_coe_at, wg_cue, wg_cue_at};
use weingarten::{Alpha, Ensemble, MSeries, Partition, SeriesRequest};

use render::Style;

#[derive(Parser)]
#[command(name = "weingarten", version, about = "Exact Weingarten functions and S-matrix correlations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Neither read nor write the table cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Mc,
    Identities,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    Show,
    Clear,
    Path,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-energy Weingarten function.
    Wg {
        #[arg(long)]
        ensemble: Ensemble,
        /// Cycle type (CUE) or coset type (COE), e.g. 2,1.
        #[arg(long)]
        class: Partition,
        /// Evaluate at this M.
        #[arg(long = "M", conflicts_with = "symbolic")]
        m: Option<i64>,
        /// Rational function of M (default).
        #[arg(long)]
        symbolic: bool,
    },
    /// Energy-dependent Weingarten series.
    Gwg {
        #[arg(long)]
        ensemble: Ensemble,
        #[arg(long)]
        class: Partition,
        /// Keep terms through 1/M^order.
        #[arg(long)]
        order: i64,
    },
    /// Matrix-element correlation series.
    Corr {
        #[arg(long)]
        ensemble: Ensemble,
        /// CUE: length n. COE: length 2n in signed order.
        #[arg(long, value_parser = parse_tuple)]
        i: IndexTuple,
        #[arg(long, value_parser = parse_tuple)]
        j: IndexTuple,
        #[arg(long, value_parser = parse_tuple)]
        p: Option<IndexTuple>,
        #[arg(long, value_parser = parse_tuple)]
        q: Option<IndexTuple>,
        #[arg(long)]
        order: i64,
    },
    /// Trace correlation series.
    Traces {
        #[arg(long)]
        ensemble: Ensemble,
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        order: i64,
    },
    /// Verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "cue")]
        ensemble: Ensemble,
        #[arg(long = "M", default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Pass threshold in standard errors.
        #[arg(long, default_value_t = 4.0)]
        tolerance: f64,
        #[arg(long, value_parser = parse_tuple)]
        i: Option<IndexTuple>,
        #[arg(long, value_parser = parse_tuple)]
        j: Option<IndexTuple>,
        #[arg(long, value_parser = parse_tuple)]
        p: Option<IndexTuple>,
        #[arg(long, value_parser = parse_tuple)]
        q: Option<IndexTuple>,
        /// Largest |μ| for the identity suite.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Largest order s for the identity suite.
        #[arg(long, default_value_t = 2)]
        smax: usize,
    },
    /// Inspect or clear the table cache.
    Cache {
        #[arg(value_enum, default_value_t = CacheAction::Show)]
        action: CacheAction,
    },
}

fn parse_tuple(s: &str) -> Result<IndexTuple, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| format!("bad channel index {t:?}"))
        })
        .collect()
}

/// A rejected invocation; reported with exit code 1.
enum Failure {
    Usage(String),
}

impl From<weingarten::Error> for Failure {
    fn from(e: weingarten::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    json: Value,
    latex: String,
    text: String,
    passed: bool,
}

impl Output {
    fn series(s: &MSeries) -> Self {
        Output {
            json: series_to_json(s),
            latex: render::series(s, Style::Latex),
            text: render::series(s, Style::Text),
            passed: true,
        }
    }

    fn rational(r: &Rational) -> Self {
        Output {
            json: serde_json::to_value(GaussJson::from(&gauss_real(r.clone()))).expect("strings"),
            latex: render::rational(r, Style::Latex),
            text: render::rational(r, Style::Text),
            passed: true,
        }
    }

    fn report(json: Value, text: String, passed: bool) -> Self {
        Output {
            json,
            latex: text.clone(),
            text,
            passed,
        }
    }
}

fn wg(ensemble: Ensemble, class: &Partition, m: Option<i64>) -> Result<Output, Failure> {
    if let Some(m) = m {
        let v = match ensemble {
            Ensemble::Cue => wg_cue_at(m, class)?,
            Ensemble::Coe => wg_coe_at(m, class)?,
        };
        return Ok(Output::rational(&v));
    }
    let v = match ensemble {
        Ensemble::Cue => wg_cue(class),
        Ensemble::Coe => wg_coe(class),
    };
    Ok(Output {
        json: v.to_json(),
        latex: v.to_latex(),
        text: v.to_string(),
        passed: true,
    })
}

fn corr(
    ensemble: Ensemble,
    i: &[u64],
    j: &[u64],
    p: Option<&[u64]>,
    q: Option<&[u64]>,
    order: i64,
) -> Result<Output, Failure> {
    let s = match (ensemble, p, q) {
        (Ensemble::Cue, Some(p), Some(q)) => corr_cue(i, j, p, q, order)?,
        (Ensemble::Cue, _, _) => return Err(Failure::Usage("cue correlations need --p and --q".into())),
        (Ensemble::Coe, None, None) => corr_coe(i, j, order)?,
        (Ensemble::Coe, _, _) => {
            return Err(Failure::Usage("coe correlations take only --i and --j".into()))
        }
    };
    Ok(Output::series(&s))
}

/// Default patterns: `S_11 S_22 S*_21 S*_12` for the CUE, and
/// `|S_12|² |S_34|²` (signed order) for the COE.
fn mc_pattern(
    ensemble: Ensemble,
    i: Option<IndexTuple>,
    j: Option<IndexTuple>,
    p: Option<IndexTuple>,
    q: Option<IndexTuple>,
) -> Result<MomentPattern, Failure> {
    Ok(match (ensemble, i, j, p, q) {
        (Ensemble::Cue, None, None, None, None) => MomentPattern::Cue {
            i: vec![1, 2],
            j: vec![1, 2],
            p: vec![1, 2],
            q: vec![2, 1],
        },
        (Ensemble::Coe, None, None, None, None) => MomentPattern::Coe {
            i: vec![4, 2, 1, 3],
            j: vec![4, 2, 1, 3],
        },
        (Ensemble::Cue, Some(i), Some(j), Some(p), Some(q)) => MomentPattern::Cue { i, j, p, q },
        (Ensemble::Coe, Some(i), Some(j), None, None) => MomentPattern::Coe { i, j },
        _ => {
            return Err(Failure::Usage(
                "give all of --i --j --p --q (cue), --i --j (coe), or none".into(),
            ))
        }
    })
}

#[derive(Serialize)]
struct McOutput {
    pattern: MomentPattern,
    #[serde(rename = "M")]
    m: usize,
    samples: u64,
    seed: u64,
    target_exact: String,
    #[serde(flatten)]
    report: McReport,
}

fn verify_mc(
    pattern: MomentPattern,
    m: usize,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> Result<Output, Failure> {
    let mi = m as i64;
    let exact = match &pattern {
        MomentPattern::Cue { i, j, p, q } => corr_cue_at(mi, i, j, p, q)?,
        MomentPattern::Coe { i, j } => corr_coe_at(mi, i, j)?,
    };
    let target = exact.to_f64().expect("finite rational");
    let report = mc_check(m, &pattern, target, samples, seed, tolerance)?;
    let text = format!(
        "{} M={m}: estimate {:.6} ± {:.6}, target {exact} ({:.2}σ) {}",
        pattern.ensemble(),
        report.estimate,
        report.stderr,
        report.sigmas,
        if report.pass { "PASS" } else { "FAIL" }
    );
    let passed = report.pass;
    let out = McOutput {
        pattern,
        m,
        samples,
        seed,
        target_exact: exact.to_string(),
        report,
    };
    Ok(Output::report(serde_json::to_value(out).expect("plain data"), text, passed))
}

fn verify_identities(alpha: Alpha, n: usize, smax: usize) -> Result<Output, Failure> {
    let mut reports: Vec<Eps0Report> = Vec::new();
    for size in 1..=n {
        for mu in partitions_of(size, false) {
            for s in 1..=smax {
                reports.push(check_eps0_identity(alpha, &mu, s)?);
            }
        }
    }
    let passed = reports.iter().all(|r| r.holds);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!(
            "α={} μ={} s={}: {} vs {} {}\n",
            r.alpha,
            r.mu.to_code(),
            r.s,
            r.lhs,
            r.rhs,
            if r.holds { "ok" } else { "FAIL" }
        ));
    }
    text.push_str(if passed { "all identities hold" } else { "identity check failed" });
    let json = json!({ "pass": passed, "checks": reports });
    Ok(Output::report(json, text, passed))
}

fn cache_command(action: CacheAction) -> Result<Output, Failure> {
    let dir = cache::dir();
    let shown = dir.display().to_string();
    match action {
        CacheAction::Path => Ok(Output::report(json!({ "path": shown }), shown, true)),
        CacheAction::Clear => {
            let n = cache::clear(&dir).map_err(|e| Failure::Usage(format!("{shown}: {e}")))?;
            Ok(Output::report(json!({ "path": shown, "removed": n }), format!("removed {n} file(s)"), true))
        }
        CacheAction::Show => {
            let files = cache::summary(&dir);
            let mut text = format!("{shown}\n");
            for (a, n) in &files {
                text.push_str(&format!("α={a}: {n} entries\n"));
            }
            let list: Vec<Value> = files.iter().map(|(a, n)| json!({ "alpha": a, "entries": n })).collect();
            Ok(Output::report(
                json!({ "path": shown, "version": cache::VERSION, "files": list }),
                text.trim_end().to_string(),
                true,
            ))
        }
    }
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Wg {
            ensemble, class, m, ..
        } => wg(ensemble, &class, m),
        Command::Gwg {
            ensemble,
            class,
            order,
        } => {
            let req = SeriesRequest::new(ensemble, class, order)?;
            Ok(Output::series(&gen_wg_series(&req)))
        }
        Command::Corr {
            ensemble,
            i,
            j,
            p,
            q,
            order,
        } => corr(ensemble, &i, &j, p.as_deref(), q.as_deref(), order),
        Command::Traces {
            ensemble,
            lambda,
            order,
        } => {
            if order < 0 {
                return Err(Failure::Usage(format!("order {order} is negative")));
            }
            let s = match ensemble {
                Ensemble::Cue => trace_corr_cue(&lambda, order),
                Ensemble::Coe => trace_corr_coe(&lambda, order),
            };
            Ok(Output::series(&s))
        }
        Command::Verify {
            suite,
            ensemble,
            m,
            samples,
            seed,
            tolerance,
            i,
            j,
            p,
            q,
            n,
            smax,
        } => match suite {
            Suite::Mc => verify_mc(mc_pattern(ensemble, i, j, p, q)?, m, samples, seed, tolerance),
            Suite::Identities => verify_identities(ensemble.alpha(), n, smax),
        },
        Command::Cache { action } => cache_command(action),
    }
}

fn run(argv: Vec<String>) -> ExitCode {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(1);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let use_cache = !cli.no_cache && !matches!(cli.command, Command::Cache { .. });
    let dir = cache::dir();
    if use_cache {
        for alpha in [Alpha::One, Alpha::Two] {
            cache::load(&dir, alpha);
        }
    }
    let result = execute(cli.command);
    if use_cache {
        for alpha in [Alpha::One, Alpha::Two] {
            if let Err(e) = cache::save(&dir, alpha) {
                eprintln!("warning: cache not written to {}: {e}", dir.display());
            }
        }
    }
    match result {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("valid json"))
                }
                Format::Latex => println!("{}", out.latex),
                Format::Text => println!("{}", out.text),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    run(std::env::args().collect())
}
