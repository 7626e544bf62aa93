//! `dvcity` command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dvcity_core::{generate_synthetic, DatasetStats, FilterState, SyntheticShape, Validation};

use crate::engine::{load_dataset, AppError, InputConfig, Snapshot};
use crate::formats::write_commit_log;
use crate::service::{self, Api};
use crate::timefmt::{describe_filter_error, format_timestamp, parse_timestamp};

#[derive(Debug, Parser)]
#[command(
    name = "dvcity",
    version,
    about = "Design-verification cityscape engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print dataset statistics.
    Stats(InputArgs),
    /// Write the tab-separated metrics table.
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        filter: FilterArgs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the scene document.
    Scene {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the JSON API (and optional static UI).
    Serve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: String,
        /// Directory with the viewer's static files.
        #[arg(long)]
        assets: Option<PathBuf>,
    },
    /// Generate a synthetic commit log and bad-commit list.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Commit log (JSON Lines, or SCM text log with --scm-log).
    #[arg(long)]
    pub commits: PathBuf,
    /// Bad commit ids, one per line.
    #[arg(long)]
    pub bad: PathBuf,
    #[arg(long)]
    pub scm_log: bool,
    /// Drop bad ids that match no commit instead of failing.
    #[arg(long)]
    pub lenient: bool,
}

impl InputArgs {
    fn config(&self) -> InputConfig {
        InputConfig {
            commit_log: self.commits.clone(),
            bad_commits: self.bad.clone(),
            scm_log: self.scm_log,
            validation: if self.lenient {
                Validation::Lenient
            } else {
                Validation::Strict
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Window start (inclusive), e.g. 2016-10-01T00:00:00Z.
    #[arg(long)]
    pub from: Option<String>,
    /// Window end (exclusive).
    #[arg(long)]
    pub to: Option<String>,
    /// Hide a commit set; repeatable.
    #[arg(long)]
    pub exclude: Vec<String>,
}

impl FilterArgs {
    pub fn filter(&self) -> Result<FilterState, AppError> {
        let ts = |flag: &str, v: &Option<String>| {
            v.as_deref()
                .map(|s| {
                    parse_timestamp(s).ok_or_else(|| {
                        AppError::Usage(format!("--{flag}: unparseable timestamp {s:?}"))
                    })
                })
                .transpose()
        };
        FilterState::new(
            ts("from", &self.from)?,
            ts("to", &self.to)?,
            self.exclude.iter().cloned(),
        )
        .map_err(|e| AppError::Usage(describe_filter_error(&e)))
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub commits: usize,
    #[arg(long)]
    pub files: usize,
    #[arg(long)]
    pub bad: usize,
    #[arg(long)]
    pub depth: usize,
    #[arg(long)]
    pub fanout: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact number of files appearing in bad commits.
    #[arg(long)]
    pub bad_files: Option<usize>,
    #[arg(long)]
    pub committers: Option<usize>,
    /// Directory receiving commits.jsonl and bad.txt.
    #[arg(long)]
    pub out_dir: PathBuf,
}

/// `key=value` lines, keys padded to one column.
pub fn format_stats(s: &DatasetStats) -> String {
    let span = match s.time_span {
        Some((a, b)) => format!("{}..{}", format_timestamp(a), format_timestamp(b)),
        None => "-".into(),
    };
    let rows = [
        ("commit_sets", s.commit_set_count.to_string()),
        ("bad_commits", s.bad_commit_count.to_string()),
        ("files", s.distinct_file_count.to_string()),
        ("bad_files", s.bad_file_count.to_string()),
        ("committers", s.committer_count.to_string()),
        ("time_span", span),
    ];
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

fn load(input: &InputArgs) -> Result<Snapshot, AppError> {
    let (dataset, dropped) = load_dataset(&input.config())?;
    for id in dropped {
        eprintln!(
            "warning: {}: unknown bad commit id {id} ignored",
            input.bad.display()
        );
    }
    Ok(Snapshot::new(dataset))
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), AppError> {
    match out {
        Some(path) => fs::write(path, body).map_err(AppError::from),
        None => {
            let mut stdout = io::stdout().lock();
            match stdout
                .write_all(body.as_bytes())
                .and_then(|()| stdout.flush())
            {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

pub fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Stats(input) => {
            let snapshot = load(&input)?;
            emit(&None, &format_stats(snapshot.stats()))
        }
        Command::Export { input, filter, out } => {
            let filter = filter.filter()?;
            emit(&out, &load(&input)?.export_tsv(&filter))
        }
        Command::Scene { input, filter, out } => {
            let filter = filter.filter()?;
            emit(&out, &load(&input)?.scene_document(&filter))
        }
        Command::Serve {
            input,
            listen,
            assets,
        } => {
            let snapshot = load(&input)?;
            service::run(Api::new(snapshot, assets), &listen)
        }
        Command::Generate(args) => generate(&args),
    }
}

fn generate(args: &GenerateArgs) -> Result<(), AppError> {
    let shape = SyntheticShape {
        bad_files: args.bad_files,
        committers: args.committers,
        ..SyntheticShape::new(args.commits, args.files, args.bad, args.depth, args.fanout)
    };
    let dataset =
        generate_synthetic(shape, args.seed).map_err(|e| AppError::Usage(e.to_string()))?;
    fs::create_dir_all(&args.out_dir)?;
    let mut log = io::BufWriter::new(fs::File::create(args.out_dir.join("commits.jsonl"))?);
    write_commit_log(&mut log, dataset.commits())?;
    let mut bad = String::new();
    for id in dataset.bad_ids() {
        bad.push_str(id);
        bad.push('\n');
    }
    fs::write(args.out_dir.join("bad.txt"), bad)?;
    Ok(())
}
