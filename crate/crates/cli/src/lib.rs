//! Command-line front end: argument parsing, the subcommands, and output in
//! JSON, CSV, SVG or plain text.

pub mod chart;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use equicones::barss::{self, E2Table, F2Algebra, Page};
use equicones::bases::{gen_rw_basis, gen_sigma_plus_basis, gen_signed_basis, verify_bw};
use equicones::coeffs::{exterior_cones, BiDegree, GradedModule, Region};
use equicones::hopf::{make_presentation, verify_hopf_axioms, CircleMono, HopfPresentation};
use equicones::twistss::{self, TwistedWord};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

pub use chart::Chart;

/// Largest filtration the spectral sequence commands accept.
pub const T_MAX_GUARD: usize = 16;

/// Built-in presentations checked by `axioms` when none is named.
pub const BUILT_IN: &[&str] = &[
    "F2",
    "S1",
    "S_sigma",
    "K_sigma",
    "K_Z_rho",
    "classical_K1",
    "classical_CP",
    "K_nsigma(2)",
    "K_nsigma(3)",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] equicones::Error),
    /// A check ran and failed; the report has already been written.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Ascii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PageChoice {
    E1,
    E2,
}

#[derive(Debug, Parser)]
#[command(name = "equicones", version, about = "RO(C2)-graded Hopf rings and bar spectral sequences over F2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SsArgs {
    /// Built-in name such as `K_sigma` or `K_nsigma(2)`, or a presentation JSON file.
    #[arg(long)]
    pub presentation: String,
    /// Truncation index of the generator families; by default enough for the region.
    #[arg(long)]
    pub max_index: Option<u32>,
    #[arg(long, default_value_t = 6)]
    pub tmax: usize,
    /// pMin:pMax:qMin:qMax
    #[arg(long, default_value = "0:12:0:12", allow_hyphen_values = true)]
    pub region: Region,
    #[arg(long, value_enum, default_value = "e2")]
    pub page: PageChoice,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tor over F2 of a finite algebra, by the bar complex.
    Tor {
        /// Underlying algebra of a presentation.
        #[arg(long, conflicts_with_all = ["exterior", "truncated"])]
        presentation: Option<String>,
        /// Exterior algebra on generators of these degrees, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "truncated")]
        exterior: Option<Vec<i64>>,
        /// Truncated polynomial algebra `DEG:HEIGHT`.
        #[arg(long)]
        truncated: Option<String>,
        #[arg(long, default_value_t = 6)]
        tmax: usize,
        #[arg(long, default_value_t = 24)]
        degmax: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Bar spectral sequence pages.
    Barss(SsArgs),
    /// Twisted bar spectral sequence pages, must-die ledger and norm candidates.
    Twistss {
        #[command(flatten)]
        ss: SsArgs,
        /// Expected abutment for the ledger, as a representation such as `2sigma`.
        #[arg(long)]
        answer: Option<String>,
    },
    /// Generators of the homology of `K_V`.
    Basis {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 12)]
        degmax: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Checks that a generator family gives a free module.
    VerifyBw {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 12)]
        degmax: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Hopf algebra axioms of one presentation, or of every built-in one.
    Axioms {
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_index: u32,
        #[arg(long, default_value_t = 12)]
        degmax: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Draws a chart from JSON written by another command.
    Chart {
        #[arg(long)]
        input: PathBuf,
        /// Overrides the region stored in the input.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<Region>,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Everything a run depends on besides its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
}

impl RunConfig {
    pub fn from_env() -> Result<RunConfig, CliError> {
        let threads = match std::env::var("EQUICONES_THREADS") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("EQUICONES_THREADS must be a number, got {s:?}")))?,
            Err(_) => 0,
        };
        Ok(RunConfig { threads })
    }
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_env().and_then(|cfg| {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
        execute(&cli.command)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

/// A built-in name, or the path of a presentation JSON file.
pub fn load_presentation(spec: &str, max_index: u32) -> Result<HopfPresentation, CliError> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let text = fs::read_to_string(path)?;
        return Ok(HopfPresentation::from_json(&text)?);
    }
    Ok(make_presentation(spec, max_index)?)
}

fn default_max_index(r: &Region) -> u32 {
    let span = (r.p_max - r.q_min + 1).max(1) as u64;
    span.ilog2() + 1
}

fn parse_space(s: &str) -> Result<BiDegree, CliError> {
    BiDegree::parse_rep(s).ok_or_else(|| CliError::Usage(format!("cannot read {s:?} as a representation")))
}

/// Generators for `K_V`: `V = nσ`, `σ + i`, or a trivial `n`.
pub fn space_basis(v: BiDegree, deg_max: i64) -> Result<Vec<CircleMono>, CliError> {
    let (sigmas, trivial) = (v.q, v.p - v.q);
    match (sigmas, trivial) {
        (n, 0) if n >= 0 => Ok(gen_signed_basis(n as u32, deg_max)),
        (1, i) if i >= 0 => Ok(gen_sigma_plus_basis(i as u32, deg_max)),
        (0, n) if n >= 0 => Ok(gen_rw_basis(n as u32, deg_max)),
        _ => Err(CliError::Usage(format!("no basis family for {v}"))),
    }
}

fn check_tmax(t: usize) -> Result<(), CliError> {
    if t > T_MAX_GUARD {
        return Err(CliError::Usage(format!("--tmax {t} exceeds the guard of {T_MAX_GUARD}")));
    }
    Ok(())
}

fn warn(e2: &E2Table) {
    if !e2.warning.is_empty() {
        eprintln!("warning: {}", e2.warning);
    }
}

/// Writes a page or table in the chosen format; `extra` joins the JSON form.
fn emit_ss(
    ss: &SsArgs,
    a: &HopfPresentation,
    e1: &Page,
    e2: &E2Table,
    extra: serde_json::Map<String, serde_json::Value>,
) -> Result<(), CliError> {
    let chart = match ss.page {
        PageChoice::E1 => Chart::from_page(e1, ss.region),
        PageChoice::E2 => Chart {
            modules: e2.module.clone(),
            annotations: e2.annotations.clone(),
            ..Chart::empty(ss.region)
        },
    };
    let body = match ss.output.format {
        Format::Json => {
            let mut v = json!({
                "presentation": a.name,
                "t_max": ss.tmax,
                "region": ss.region,
            });
            let obj = v.as_object_mut().expect("object");
            match ss.page {
                PageChoice::E1 => {
                    obj.insert("e1".into(), serde_json::to_value(e1).expect("page"));
                }
                PageChoice::E2 => {
                    obj.insert("e2".into(), serde_json::to_value(e2).expect("table"));
                }
            }
            obj.extend(extra);
            to_json(&v)
        }
        Format::Csv => e2.to_csv(),
        Format::Svg => chart::to_svg(&chart),
        Format::Ascii => chart::to_ascii(&chart),
    };
    emit(&ss.output.out, &body)
}

fn execute(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Tor {
            presentation,
            exterior,
            truncated,
            tmax,
            degmax,
            output,
        } => {
            check_tmax(*tmax)?;
            let alg = if let Some(p) = presentation {
                F2Algebra::from_presentation(&load_presentation(p, 3)?, *degmax)
            } else if let Some(d) = exterior {
                F2Algebra::exterior(d)
            } else if let Some(t) = truncated {
                let (d, h) = t
                    .split_once(':')
                    .and_then(|(d, h)| Some((d.trim().parse().ok()?, h.trim().parse().ok()?)))
                    .ok_or_else(|| CliError::Usage(format!("--truncated wants DEG:HEIGHT, got {t:?}")))?;
                F2Algebra::truncated_polynomial(d, h)
            } else {
                return Err(CliError::Usage("tor needs --presentation, --exterior or --truncated".into()));
            };
            let table = barss::tor_f2(&alg, *tmax, *degmax);
            let body = match output.format {
                Format::Json => to_json(&table),
                Format::Csv => {
                    let mut s = String::from("s,t,dim\n");
                    for r in &table.rows {
                        s.push_str(&format!("{},{},{}\n", r.s, r.t, r.dim));
                    }
                    s
                }
                _ => return Err(CliError::Usage("tor writes json or csv".into())),
            };
            emit(&output.out, &body)
        }
        Command::Barss(ss) => {
            check_tmax(ss.tmax)?;
            let a = load_presentation(&ss.presentation, ss.max_index.unwrap_or(default_max_index(&ss.region)))?;
            let e1 = barss::bar_d1(&barss::bar_e1_equivariant(&a, ss.tmax, &ss.region));
            let e2 = barss::bar_e2(&e1, &ss.region);
            warn(&e2);
            emit_ss(ss, &a, &e1, &e2, Default::default())
        }
        Command::Twistss { ss, answer } => {
            check_tmax(ss.tmax)?;
            let a = load_presentation(&ss.presentation, ss.max_index.unwrap_or(default_max_index(&ss.region)))?;
            let e1 = twistss::twisted_d1(&twistss::twisted_e1(&a, ss.tmax, &ss.region))?;
            let e2 = twistss::twisted_e2_dims(&e1, &ss.region);
            warn(&e2);
            let mut extra = serde_json::Map::new();
            if let Some(ans) = answer {
                let v = parse_space(ans)?;
                let gens: Vec<(String, BiDegree, usize)> = space_basis(v, ss.region.p_max + ss.tmax as i64 + 2)?
                    .into_iter()
                    .map(|g| (g.to_string(), g.bidegree(), 0))
                    .collect();
                let module: GradedModule = exterior_cones(&gens, &ss.region).remove(&0).unwrap_or_default();
                let ledger = twistss::must_die_ledger(&a, &e1, &e2, &module);
                let mut cands = Vec::new();
                for m in &ledger.entries {
                    if m.fate != twistss::UnderlyingFate::Boundary {
                        continue;
                    }
                    let Some(w) = e1.words.get(&m.label) else { continue };
                    if let Ok(c) = twistss::norm_candidate(&a, &TwistedWord::from(w), &e2.annotations) {
                        cands.push(json!({ "target": m.label, "candidates": c }));
                    }
                }
                extra.insert("ledger".into(), serde_json::to_value(&ledger).expect("ledger"));
                extra.insert("norm_candidates".into(), serde_json::Value::Array(cands));
            }
            emit_ss(ss, &a, &e1, &e2, extra)
        }
        Command::Basis { space, degmax, output } => {
            let v = parse_space(space)?;
            let basis = space_basis(v, *degmax)?;
            let body = match output.format {
                Format::Json => {
                    let rows: Vec<_> = basis
                        .iter()
                        .map(|m| json!({ "generator": m.to_string(), "bidegree": m.bidegree() }))
                        .collect();
                    to_json(&json!({ "space": v, "deg_max": degmax, "generators": rows }))
                }
                Format::Csv => {
                    let mut s = String::from("generator,p,q\n");
                    for m in &basis {
                        let d = m.bidegree();
                        s.push_str(&format!("\"{m}\",{},{}\n", d.p, d.q));
                    }
                    s
                }
                _ => return Err(CliError::Usage("basis writes json or csv".into())),
            };
            emit(&output.out, &body)
        }
        Command::VerifyBw { space, degmax, output } => {
            let v = parse_space(space)?;
            // fixed-point degree d sees generators of underlying degree up to 2d + |V|
            let report = verify_bw(&space_basis(v, 2 * degmax + v.p + 8)?, v, *degmax)?;
            let body = match output.format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from("side,degree,expected,got,status\n");
                    for r in &report.rows {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            serde_json::to_value(r.side).expect("side").as_str().unwrap_or_default(),
                            r.degree,
                            r.expected,
                            r.got,
                            serde_json::to_value(r.status).expect("status").as_str().unwrap_or_default(),
                        ));
                    }
                    s
                }
                _ => return Err(CliError::Usage("verify-bw writes json or csv".into())),
            };
            emit(&output.out, &body)?;
            match report.first_failure() {
                None if report.passed() => Ok(()),
                Some(r) => Err(CliError::Verification(format!("degree {}: expected {}, got {}", r.degree, r.expected, r.got))),
                None => Err(CliError::Verification(format!("{v}"))),
            }
        }
        Command::Axioms {
            presentation,
            max_index,
            degmax,
            output,
        } => {
            let names: Vec<String> = match presentation {
                Some(p) => vec![p.clone()],
                None => BUILT_IN.iter().map(|s| s.to_string()).collect(),
            };
            let mut reports = Vec::new();
            for n in &names {
                let a = load_presentation(n, *max_index)?;
                reports.push(verify_hopf_axioms(&a, *degmax));
            }
            let body = match output.format {
                Format::Json => to_json(&reports),
                Format::Csv => {
                    let mut s = String::from("presentation,checked,passed\n");
                    for r in &reports {
                        s.push_str(&format!("{},{},{}\n", r.presentation, r.checked, r.passed()));
                    }
                    s
                }
                _ => return Err(CliError::Usage("axioms writes json or csv".into())),
            };
            emit(&output.out, &body)?;
            match reports.iter().find(|r| !r.passed()) {
                Some(r) => Err(CliError::Verification(r.presentation.clone())),
                None => Ok(()),
            }
        }
        Command::Chart {
            input,
            region,
            format,
            out,
        } => {
            let text = fs::read_to_string(input)?;
            let c = if text.trim_start().starts_with("<svg") {
                let mut c = chart::from_svg(&text)?;
                if let Some(r) = region {
                    c.region = *r;
                }
                c
            } else {
                Chart::from_json(&text, *region)?
            };
            let body = match format {
                Format::Svg => chart::to_svg(&c),
                Format::Ascii => chart::to_ascii(&c),
                Format::Json => to_json(&c),
                Format::Csv => return Err(CliError::Usage("chart writes svg, ascii or json".into())),
            };
            emit(out, &body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Verification("x".into()).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(run(["equicones", "basis", "--space", "1", "--degmax", "4", "--format", "svg"]), 1);
    }

    #[test]
    fn space_families() {
        assert_eq!(space_basis(parse_space("2sigma").unwrap(), 8).unwrap(), gen_signed_basis(2, 8));
        assert_eq!(space_basis(parse_space("sigma+2").unwrap(), 8).unwrap(), gen_sigma_plus_basis(2, 8));
        assert_eq!(space_basis(parse_space("1").unwrap(), 8).unwrap(), gen_rw_basis(1, 8));
        assert!(space_basis(parse_space("2sigma+1").unwrap(), 8).is_err());
    }

    #[test]
    fn max_index_covers_the_region() {
        assert_eq!(default_max_index(&Region::new(0, 12, 0, 12)), 4);
        assert_eq!(default_max_index(&Region::new(0, 0, 0, 0)), 1);
    }
}
