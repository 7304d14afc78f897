//! The `topodist` command line.
//!
//! Series files hold one comma-separated series per line. Labelled datasets
//! use the UCR layout: `label<TAB>v1<TAB>v2...`. Images are PGM (`P2` or
//! `P5`, bright pixels are foreground) or a text grid of `0`/`1`.
//!
//! Exit codes: 0 on success, 2 for usage or input errors, 1 otherwise.

pub mod export;
pub mod input;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use topodist::eval::{evaluate_matrix, pairwise};
use topodist::shape::{extract_contour, signed_curvature, DEFAULT_SAMPLES, DEFAULT_SIGMA, MIN_SAMPLES};
use topodist::{cdope, cdope_cost, dope, synth, Domain, GrayImage, LabeledDataset, Method, TimeSeries};

use export::{fmt_num, AlignmentExport, ReportExport};

pub const JOBS_ENV: &str = "TOPODIST_JOBS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] topodist::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Write { .. } | CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Interval,
    Circle,
}

impl From<DomainArg> for Domain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Interval => Domain::Interval,
            DomainArg::Circle => Domain::Circle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Dope,
    Cdope,
    Dtw,
    DtwCrit,
    Cdtw,
    Wasserstein,
    Bottleneck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatchMethod {
    Dope,
    Cdope,
}

#[derive(Debug, Parser)]
#[command(name = "topodist", version, about = "Order-aware distances between time series via critical points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the critical series of one input series as CSV.
    Extract {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "interval")]
        domain: DomainArg,
        /// 1-based series (line) to use when the file holds several.
        #[arg(long, default_value_t = 1)]
        series: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Distance between two series, or a distance matrix.
    Dist {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Wasserstein order; `inf` gives the bottleneck distance.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value = "interval")]
        domain: DomainArg,
        /// Write the full matrix as CSV (`-` for stdout).
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Optimal alignment between two series as JSON.
    Match {
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "dope")]
        method: MatchMethod,
        /// Defaults to `circle` for cdope.
        #[arg(long, value_enum)]
        domain: Option<DomainArg>,
    },
    /// Leave-one-out retrieval scores on a labelled TSV dataset.
    Eval {
        dataset: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value = "interval")]
        domain: DomainArg,
        /// JSON report path.
        #[arg(long)]
        report: PathBuf,
        /// Precision-recall CSV; defaults to the report path with `.pr.csv`.
        #[arg(long)]
        pr: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Curvature series of silhouettes, optionally ranked against a query.
    Shape {
        #[arg(required = true)]
        images: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SIGMA)]
        sigma: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Image to rank the others against.
        #[arg(long)]
        query: Option<PathBuf>,
        #[arg(long, requires = "query")]
        topk: Option<usize>,
        /// Treat dark pixels as foreground.
        #[arg(long)]
        invert: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Write the synthetic warped 3-class dataset as TSV.
    Synth {
        #[arg(long, default_value_t = synth::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        per_class: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn method(arg: MethodArg, p: f64) -> Result<Method, CliError> {
    if !(p > 0.0) {
        return Err(CliError::Usage(format!("--p must be positive, got {p}")));
    }
    Ok(match arg {
        MethodArg::Dope => Method::Dope,
        MethodArg::Cdope => Method::Cdope,
        MethodArg::Dtw => Method::Dtw,
        MethodArg::DtwCrit => Method::DtwCritical,
        MethodArg::Cdtw => Method::Cdtw,
        MethodArg::Wasserstein => Method::Wasserstein(p),
        MethodArg::Bottleneck => Method::Bottleneck,
    })
}

fn check_method_domain(m: Method, domain: Domain) -> Result<(), CliError> {
    match m.required_domain() {
        Some(expected) if expected != domain => Err(CliError::Usage(format!(
            "method {} works on {} series but --domain is {}",
            m.name(),
            domain_name(expected),
            domain_name(domain)
        ))),
        _ => Ok(()),
    }
}

fn domain_name(d: Domain) -> &'static str {
    match d {
        Domain::Interval => "interval",
        Domain::Circle => "circle",
    }
}

/// `--jobs`, then the environment, then rayon's default.
pub fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let jobs = match flag {
        Some(n) => Some(n),
        None => match std::env::var(JOBS_ENV) {
            Ok(v) if !v.trim().is_empty() => Some(
                v.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{JOBS_ENV}={v:?} is not a thread count")))?,
            ),
            _ => None,
        },
    };
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(jobs)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, contents: &str) -> Result<(), CliError> {
    out.write_all(contents.as_bytes()).map_err(|source| CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn emit_to(dest: Option<&Path>, out: &mut dyn Write, contents: &str) -> Result<(), CliError> {
    match dest {
        Some(p) if p != Path::new("-") => write_file(p, contents),
        _ => emit(out, contents),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Extract {
            input,
            domain,
            series,
            out: dest,
        } => {
            let all = input::read_series_files(std::slice::from_ref(&input), domain.into())?;
            let chosen = series
                .checked_sub(1)
                .and_then(|k| all.get(k))
                .ok_or_else(|| CliError::Usage(format!("--series {series} out of range (1..={})", all.len())))?;
            emit_to(dest.as_deref(), out, &export::critical_csv(&chosen.series.critical()))
        }
        Command::Dist {
            inputs,
            method: m,
            p,
            domain,
            matrix,
            jobs,
        } => {
            let m = method(m, p)?;
            let domain = domain.into();
            check_method_domain(m, domain)?;
            let items = input::read_series_files(&inputs, domain)?;
            let metric = |a: &input::NamedSeries, b: &input::NamedSeries| m.distance(&a.series, &b.series);
            match matrix {
                Some(dest) => {
                    let d = pairwise(&items, metric, resolve_jobs(jobs)?)?;
                    let ids: Vec<String> = items.iter().map(|s| s.id.clone()).collect();
                    emit_to(Some(&dest), out, &export::matrix_csv(&ids, &d))
                }
                None => {
                    if items.len() != 2 {
                        return Err(CliError::Usage(format!(
                            "expected exactly 2 series without --matrix, found {}",
                            items.len()
                        )));
                    }
                    let d = metric(&items[0], &items[1])?;
                    emit(out, &format!("{}\n", fmt_num(d)))
                }
            }
        }
        Command::Match {
            inputs,
            method: m,
            domain,
        } => {
            let domain: Domain = domain
                .map(Into::into)
                .unwrap_or(if m == MatchMethod::Cdope { Domain::Circle } else { Domain::Interval });
            let wanted = if m == MatchMethod::Cdope { Domain::Circle } else { Domain::Interval };
            if domain != wanted {
                return Err(CliError::Usage(format!(
                    "match --method {} needs --domain {}",
                    if m == MatchMethod::Cdope { "cdope" } else { "dope" },
                    domain_name(wanted)
                )));
            }
            let items = input::read_series_files(&inputs, domain)?;
            if items.len() != 2 {
                return Err(CliError::Usage(format!("expected exactly 2 series, found {}", items.len())));
            }
            let (x, y) = (items[0].series.critical(), items[1].series.critical());
            let exported = match m {
                MatchMethod::Dope => AlignmentExport::linear(&dope(&x, &y)?.1, &x, &y),
                MatchMethod::Cdope => AlignmentExport::circular(&cdope(&x, &y)?, &x, &y),
            };
            let json = serde_json::to_string_pretty(&exported).map_err(|e| CliError::Internal(e.to_string()))?;
            emit(out, &format!("{json}\n"))
        }
        Command::Eval {
            dataset,
            method: m,
            p,
            domain,
            report,
            pr,
            jobs,
        } => {
            let m = method(m, p)?;
            let domain = domain.into();
            check_method_domain(m, domain)?;
            let rows = input::parse_tsv(&input::read_text(&dataset)?, &dataset, domain)?;
            let ds = LabeledDataset::new(rows).map_err(|e| CliError::Input(format!("{}: {e}", dataset.display())))?;
            for k in ds.singletons() {
                writeln!(
                    err,
                    "warning: label {:?} occurs once; query {} skipped",
                    ds.labels()[k],
                    k
                )
                .ok();
            }
            let d = pairwise(ds.series(), |a, b| m.distance(a, b), resolve_jobs(jobs)?)?;
            let result = evaluate_matrix(ds.labels(), &d)?;
            let json = serde_json::to_string_pretty(&ReportExport::new(&m.to_string(), ds.labels(), &result))
                .map_err(|e| CliError::Internal(e.to_string()))?;
            write_file(&report, &format!("{json}\n"))?;
            let pr = pr.unwrap_or_else(|| report.with_extension("pr.csv"));
            write_file(&pr, &export::pr_csv(&result.pr_curve))?;
            emit(
                out,
                &format!(
                    "{} MAP {} MR {}\n",
                    m,
                    fmt_num(result.aggregate_map),
                    fmt_num(result.aggregate_mr)
                ),
            )
        }
        Command::Shape {
            images,
            sigma,
            samples,
            query,
            topk,
            invert,
            out_dir,
        } => {
            if samples < MIN_SAMPLES {
                return Err(CliError::Usage(format!("--samples must be at least {MIN_SAMPLES}, got {samples}")));
            }
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(CliError::Usage(format!("--sigma must be positive, got {sigma}")));
            }
            let curvature = |path: &Path| -> Result<TimeSeries<f64>, CliError> {
                let mut img = input::read_image(path)?;
                if invert {
                    img = invert_image(&img);
                }
                extract_contour::<f64>(&img)
                    .and_then(|c| signed_curvature(&c, sigma, samples))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
            };
            fs::create_dir_all(&out_dir).map_err(|source| CliError::Write {
                path: out_dir.clone(),
                source,
            })?;
            let mut series = Vec::with_capacity(images.len());
            for path in &images {
                let k = curvature(path)?;
                let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                write_file(&out_dir.join(format!("{stem}.curvature.csv")), &export::curvature_csv(k.values()))?;
                series.push(k);
            }
            let Some(query) = query else {
                return Ok(());
            };
            let q = match images.iter().position(|p| p == &query) {
                Some(k) => series[k].clone(),
                None => curvature(&query)?,
            };
            let qc = q.critical();
            let mut ranked = Vec::new();
            for (path, s) in images.iter().zip(&series) {
                if path == &query {
                    continue;
                }
                let d = cdope_cost(&qc, &s.critical())
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                ranked.push((d, path));
            }
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut text = String::from("rank,image,distance\n");
            for (r, (d, path)) in ranked.iter().take(topk.unwrap_or(ranked.len())).enumerate() {
                text.push_str(&format!("{},{},{}\n", r + 1, path.display(), fmt_num(*d)));
            }
            emit(out, &text)
        }
        Command::Synth {
            seed,
            per_class,
            out: dest,
        } => {
            let cfg = synth::WarpConfig {
                per_class,
                ..Default::default()
            };
            let mut text = String::new();
            for (label, values) in synth::warped_classes(seed, &cfg) {
                text.push_str(&label);
                for v in values {
                    text.push('\t');
                    text.push_str(&fmt_num(v));
                }
                text.push('\n');
            }
            emit_to(dest.as_deref(), out, &text)
        }
    }
}

fn invert_image(img: &GrayImage) -> GrayImage {
    use topodist::Intensity;
    GrayImage::from_fn(img.width(), img.height(), |x, y| 1.0 - img.get(x, y)).expect("same size")
}

/// Parses `args` and runs, returning the process exit code.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
