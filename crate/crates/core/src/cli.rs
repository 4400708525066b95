//! Command-line front end. The `translab` binary is a thin wrapper over
//! [`main_with_args`].

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bits::BitString;
use crate::busy_beaver::{logical_depth_estimate, search, verify, BusyBeaverRecord};
use crate::coefficient::{transition_series, CoefficientError, EcaSystem, DEFAULT_SCHEDULE};
use crate::compressor::COMPRESSOR_VERSION;
use crate::eca::{evolve, EcaRule};
use crate::experiments::{
    classify_all, conjecture1_report, conjecture3_report, ordinal_claims, CoefficientParams,
};
use crate::turing::{MachineError, TmSystem, TuringMachine};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Machine { path: PathBuf, source: MachineError },
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error("{0}")]
    Usage(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "translab",
    version,
    about = "Transition coefficients, ECA and Busy Beaver tools"
)]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "TL_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elementary cellular automata
    #[command(subcommand)]
    Eca(EcaCommand),
    /// Transition coefficient of one system
    Coefficient(CoefficientArgs),
    /// Rank all 256 ECA rules and partition them into four classes
    Classify(ClassifyArgs),
    /// Transition coefficients of the Busy Beaver shift champions
    Conjecture3(Conjecture3Args),
    /// Busy Beaver search, verification and logical depth
    #[command(subcommand)]
    Bb(BbCommand),
}

#[derive(Debug, Subcommand)]
pub enum EcaCommand {
    /// Evolve a finite seed on a 0 background
    Evolve {
        #[arg(long, value_parser = clap::value_parser!(u8))]
        rule: u8,
        #[arg(long)]
        init: BitString,
        #[arg(long)]
        steps: usize,
        /// Write the diagram as a binary PPM image
        #[arg(long)]
        ppm: Option<PathBuf>,
        /// Write the diagram as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemSpec {
    Eca(EcaRule),
    Tm(PathBuf),
}

fn parse_system(s: &str) -> Result<SystemSpec, String> {
    if let Some(rule) = s.strip_prefix("eca:") {
        let r: u8 = rule
            .parse()
            .map_err(|_| format!("rule must be 0..=255, got {rule:?}"))?;
        Ok(SystemSpec::Eca(EcaRule::new(r)))
    } else if let Some(path) = s.strip_prefix("tm:") {
        Ok(SystemSpec::Tm(PathBuf::from(path)))
    } else {
        Err("expected eca:RULE or tm:FILE".into())
    }
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// Number of Gray-enumerated initial conditions
    #[arg(long, default_value_t = crate::coefficient::DEFAULT_N)]
    pub n: usize,
    /// Step counts, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SCHEDULE)]
    pub schedule: Vec<u64>,
}

impl SeriesArgs {
    fn params(&self) -> CoefficientParams {
        CoefficientParams {
            n: self.n,
            schedule: self.schedule.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct CoefficientArgs {
    /// eca:RULE or tm:FILE
    #[arg(long, value_parser = parse_system)]
    pub system: SystemSpec,
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct Conjecture3Args {
    /// Largest number of states (1..=3)
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub max_states: u8,
    #[command(flatten)]
    pub series: SeriesArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum BbCommand {
    /// Exhaustive search over all machines with the given number of states
    Search {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        states: u8,
        #[arg(long)]
        cutoff: Option<u64>,
        /// Write champions.csv, summary.json and manifest.json here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a machine halts from a blank tape with the given counts
    Verify {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        ones: u64,
        #[arg(long)]
        steps: u64,
    },
    /// Smallest and fastest producer of a string among small machines
    Depth {
        #[arg(long)]
        target: BitString,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        states: u8,
        #[arg(long, default_value_t = 1000)]
        cutoff: u64,
    },
}

/// Provenance record written next to every artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub parameters: serde_json::Value,
    pub compressor_version: String,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    pub outputs: Vec<OutputDigest>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Collects written files and their digests for the manifest.
struct Outputs {
    written: Vec<OutputDigest>,
}

impl Outputs {
    fn new() -> Self {
        Outputs {
            written: Vec::new(),
        }
    }

    fn write(&mut self, path: &Path, data: &[u8]) -> Result<(), CliError> {
        fs::write(path, data).map_err(io_err(path))?;
        self.written.push(OutputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(data),
        });
        Ok(())
    }

    fn finish(
        self,
        manifest: &Path,
        args: &[String],
        parameters: serde_json::Value,
        started: Instant,
    ) -> Result<(), CliError> {
        let m = RunManifest {
            command_line: args.to_vec(),
            parameters,
            compressor_version: COMPRESSOR_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            wall_time_seconds: started.elapsed().as_secs_f64(),
            outputs: self.written,
        };
        fs::write(manifest, to_json(&m)).map_err(io_err(manifest))
    }
}

fn to_json(value: &impl Serialize) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("report types serialize");
    s.push(b'\n');
    s
}

fn manifest_beside(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    path.with_file_name(name)
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

pub fn read_machine(path: &Path) -> Result<TuringMachine, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let trimmed = text.trim();
    if !trimmed.contains("->") {
        if let Ok(m) = TuringMachine::from_compact(trimmed) {
            return Ok(m);
        }
    }
    text.parse().map_err(|source| CliError::Machine {
        path: path.to_path_buf(),
        source,
    })
}

fn champions_csv(record: &BusyBeaverRecord) -> String {
    let mut out = String::from("kind,compact,table\n");
    for (kind, list) in [
        ("sigma", &record.sigma_champions),
        ("shift", &record.shift_champions),
    ] {
        for m in list {
            let table = m.to_string().trim_end().replace('\n', ";");
            out.push_str(&format!("{kind},{},{table}\n", m.compact()));
        }
    }
    out
}

fn run(cli: Cli, args: &[String], stdout: &mut Vec<u8>) -> Result<(), CliError> {
    let started = Instant::now();
    let print = |stdout: &mut Vec<u8>, bytes: &[u8]| -> Result<(), CliError> {
        stdout.extend_from_slice(bytes);
        Ok(())
    };
    match cli.command {
        Command::Eca(EcaCommand::Evolve {
            rule,
            init,
            steps,
            ppm,
            csv,
        }) => {
            if init.is_empty() {
                return Err(CliError::Usage("--init must not be empty".into()));
            }
            let diagram = evolve(EcaRule::new(rule), &init, steps);
            let mut outputs = Outputs::new();
            let mut first = None;
            if let Some(path) = &ppm {
                let mut buf = Vec::new();
                diagram.write_ppm(&mut buf).expect("in-memory write");
                outputs.write(path, &buf)?;
                first.get_or_insert(path.clone());
            }
            if let Some(path) = &csv {
                let mut buf = Vec::new();
                diagram.write_csv(&mut buf).expect("in-memory write");
                outputs.write(path, &buf)?;
                first.get_or_insert(path.clone());
            }
            print(
                stdout,
                format!("{}\n", diagram.serialize().len()).as_bytes(),
            )?;
            if let Some(first) = first {
                let params = json!({ "rule": rule, "init": init, "steps": steps });
                outputs.finish(&manifest_beside(&first), args, params, started)?;
            }
        }
        Command::Coefficient(a) => {
            let (id, series) = match &a.system {
                SystemSpec::Eca(rule) => {
                    let sys = EcaSystem(*rule);
                    (
                        crate::coefficient::ComputingSystem::id(&sys),
                        transition_series(&sys, a.series.n, &a.series.schedule)?,
                    )
                }
                SystemSpec::Tm(path) => {
                    let m = read_machine(path)?;
                    let sys = TmSystem::new(m.clone(), m.compact());
                    (
                        crate::coefficient::ComputingSystem::id(&sys),
                        transition_series(&sys, a.series.n, &a.series.schedule)?,
                    )
                }
            };
            let coefficient = series.coefficient()?;
            let body = to_json(&json!({
                "system": id,
                "compressor": COMPRESSOR_VERSION,
                "series": series,
                "coefficient": coefficient,
            }));
            match &a.json {
                Some(path) => {
                    let mut outputs = Outputs::new();
                    outputs.write(path, &body)?;
                    let params =
                        json!({ "system": id, "n": a.series.n, "schedule": a.series.schedule });
                    outputs.finish(&manifest_beside(path), args, params, started)?;
                }
                None => print(stdout, &body)?,
            }
        }
        Command::Classify(a) => {
            let report = classify_all(a.series.n, &a.series.schedule)?;
            create_dir(&a.out)?;
            let mut outputs = Outputs::new();
            outputs.write(&a.out.join("ranking.csv"), report.ranking_csv().as_bytes())?;
            let body = to_json(&json!({
                "parameters": report.parameters,
                "degenerate": report.degenerate,
                "partition": report.partition,
                "claims": ordinal_claims(&report),
                "conjecture1": conjecture1_report(&report),
            }));
            outputs.write(&a.out.join("classification.json"), &body)?;
            let c1 = conjecture1_report(&report).to_string();
            outputs.write(&a.out.join("conjecture1.txt"), c1.as_bytes())?;
            print(stdout, c1.as_bytes())?;
            outputs.finish(
                &a.out.join("manifest.json"),
                args,
                json!(report.parameters),
                started,
            )?;
        }
        Command::Conjecture3(a) => {
            let report = conjecture3_report(a.max_states, &a.series.params())?;
            create_dir(&a.out)?;
            let mut outputs = Outputs::new();
            outputs.write(&a.out.join("conjecture3.json"), &to_json(&report))?;
            let text = report.to_string();
            outputs.write(&a.out.join("conjecture3.txt"), text.as_bytes())?;
            print(stdout, text.as_bytes())?;
            let params = json!({ "max_states": a.max_states, "parameters": report.parameters });
            outputs.finish(&a.out.join("manifest.json"), args, params, started)?;
        }
        Command::Bb(BbCommand::Search {
            states,
            cutoff,
            out,
        }) => {
            let cutoff = cutoff.unwrap_or_else(|| crate::busy_beaver::default_cutoff(states));
            if cutoff == 0 {
                return Err(CliError::Usage("--cutoff must be positive".into()));
            }
            let record = search(states, cutoff);
            let summary = to_json(&json!({
                "n": record.states,
                "sigma": record.sigma,
                "shift": record.shift,
                "cutoff": record.cutoff,
                "exact": record.is_exact(),
                "undecided_count": record.undecided_count,
                "halting_count": record.halting_count,
                "nonhalting_count": record.nonhalting_count,
                "wall_time_seconds": started.elapsed().as_secs_f64(),
            }));
            print(stdout, &summary)?;
            if let Some(dir) = out {
                create_dir(&dir)?;
                let mut outputs = Outputs::new();
                outputs.write(
                    &dir.join("champions.csv"),
                    champions_csv(&record).as_bytes(),
                )?;
                outputs.write(&dir.join("summary.json"), &summary)?;
                let params = json!({ "states": states, "cutoff": cutoff });
                outputs.finish(&dir.join("manifest.json"), args, params, started)?;
            }
        }
        Command::Bb(BbCommand::Verify {
            machine,
            ones,
            steps,
        }) => {
            let m = read_machine(&machine)?;
            let ok = verify(&m, ones, steps);
            let body = json!({ "machine": m, "ones": ones, "steps": steps, "verified": ok });
            print(stdout, &to_json(&body))?;
        }
        Command::Bb(BbCommand::Depth {
            target,
            states,
            cutoff,
        }) => {
            if target.is_empty() {
                return Err(CliError::Usage("--target must not be empty".into()));
            }
            let estimate = logical_depth_estimate(&target, states, cutoff);
            print(stdout, &to_json(&estimate))?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Errors are reported as one line on stderr.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    let printable: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut out = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(cli, &printable, &mut out)),
            Err(e) => Err(CliError::Usage(format!("thread pool: {e}"))),
        },
        None => run(cli, &printable, &mut out),
    };
    let result = result.and_then(|()| {
        stdout
            .write_all(&out)
            .map_err(io_err(Path::new("<stdout>")))
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}
