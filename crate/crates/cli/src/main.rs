//! Command-line front end: model validation, kernel evaluation over point
//! pairs, spectral simulation, coefficient dumps, and the self-test harness.
//!
//! Exit codes: 0 success (or verdict "valid"), 1 usage or input error,
//! 2 invalid model or constraint violation, 3 numerical failure,
//! 4 undetermined verdict.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use tensorfield::error::Error as CoreError;
use tensorfield::kernels::{eval_batch, FieldModel, ModelSpec};
use tensorfield::multimatern::{validate, MultiMaternSpec, Validity};
use tensorfield::simulate::{simulate, SimConfig};
use tensorfield::so3::GGTable;

#[derive(Parser)]
#[command(name = "tensorfield", version, about = "Isotropic tensor-valued random fields on R^3")]
struct Cli {
    /// Worker threads for batch evaluation and simulation (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a multivariate Matérn parameter set and print a verdict as JSON
    Validate {
        /// Path to the parameter JSON
        spec: PathBuf,
        /// Write the verdict here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a field model's correlation kernel over a CSV of point pairs
    KernelEval {
        /// Path to the model JSON
        model: PathBuf,
        /// CSV with columns xm1,x0,xp1,ym1,y0,yp1 (header optional)
        pairs: PathBuf,
        /// Write the result CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Radial quadrature nodes per measure
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
    },
    /// Draw Gaussian realizations of a field model at a CSV of points
    Simulate {
        /// Path to the model JSON
        model: PathBuf,
        /// CSV with columns xm1,x0,xp1 (header optional)
        points: PathBuf,
        /// Number of independent samples
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Spectral modes per sample
        #[arg(long, default_value_t = 512)]
        modes: usize,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the sample CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Radial quadrature nodes per measure
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
    },
    /// Dump the cached coefficient table as CSV
    GgCoeffs {
        /// Largest degree of the two factor representations
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=6))]
        ell_max: u32,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full acceptance/oracle suite and report per-criterion results
    Selftest,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout with success
            if e.use_stderr() {
                eprintln!("error: {}", e.render());
                std::process::exit(1);
            }
            let _ = e.print();
            std::process::exit(0);
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    std::process::exit(run(cli.command));
}

fn run(cmd: Command) -> i32 {
    match dispatch(cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

enum CliError {
    Input(String),
    Core(CoreError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Core(CoreError::Model(_)) | CliError::Core(CoreError::Containment { .. }) => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parse a numeric CSV, skipping one leading header row if it is not numeric.
fn parse_csv(path: &PathBuf, min_cols: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let text = read_to_string(path)?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match fields {
            Ok(v) if v.len() >= min_cols => rows.push(v),
            Ok(v) => {
                return Err(CliError::Input(format!(
                    "{}:{}: expected at least {min_cols} columns, found {}",
                    path.display(),
                    lineno + 1,
                    v.len()
                )))
            }
            Err(e) => {
                if lineno == 0 {
                    continue; // header row
                }
                return Err(CliError::Input(format!("{}:{}: {e}", path.display(), lineno + 1)));
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn fmt_float(v: f64) -> String {
    // 17 significant digits round-trip doubles exactly
    format!("{v:.16e}")
}

/// Log level from the TENSORFIELD_LOG environment variable; anything but
/// "quiet"/"off" enables progress notes on stderr.
fn verbose() -> bool {
    match std::env::var("TENSORFIELD_LOG") {
        Ok(v) => !matches!(v.as_str(), "" | "quiet" | "off" | "0"),
        Err(_) => false,
    }
}

fn note(msg: impl AsRef<str>) {
    if verbose() {
        eprintln!("tensorfield: {}", msg.as_ref());
    }
}

fn check_nodes(nodes: usize) -> Result<(), CliError> {
    if nodes < 16 {
        return Err(CliError::Input(format!("--nodes must be at least 16, got {nodes}")));
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Validate { spec, out } => {
            let spec: MultiMaternSpec = parse_json(&spec)?;
            let verdict = validate(&spec)?;
            let mut text = serde_json::to_string_pretty(&verdict)
                .map_err(|e| CliError::Input(e.to_string()))?;
            text.push('\n');
            write_output(&out, &text)?;
            Ok(match verdict.status {
                Validity::Valid => 0,
                Validity::Invalid => 2,
                Validity::Undetermined => 4,
            })
        }
        Command::KernelEval { model, pairs, out, nodes } => {
            check_nodes(nodes)?;
            let spec: ModelSpec = parse_json(&model)?;
            let model = FieldModel::from_spec(&spec, nodes)?;
            note(format!("model built with {nodes} radial nodes per measure"));
            let rows = parse_csv(&pairs, 6)?;
            let pairs: Vec<([f64; 3], [f64; 3])> = rows
                .iter()
                .map(|r| ([r[0], r[1], r[2]], [r[3], r[4], r[5]]))
                .collect();
            let values = eval_batch(&model, &pairs)?;
            let mut csv = String::from("pair,rho");
            for name in model.kernel_component_names() {
                csv.push(',');
                csv.push_str(&name);
            }
            csv.push('\n');
            for (i, (p, vals)) in pairs.iter().zip(values.iter()).enumerate() {
                let rho = (0..3)
                    .map(|k| (p.1[k] - p.0[k]) * (p.1[k] - p.0[k]))
                    .sum::<f64>()
                    .sqrt();
                csv.push_str(&format!("{i},{}", fmt_float(rho)));
                for v in vals {
                    csv.push(',');
                    csv.push_str(&fmt_float(*v));
                }
                csv.push('\n');
            }
            write_output(&out, &csv)?;
            Ok(0)
        }
        Command::Simulate { model, points, samples, modes, seed, out, nodes } => {
            check_nodes(nodes)?;
            let spec: ModelSpec = parse_json(&model)?;
            let model = FieldModel::from_spec(&spec, nodes)?;
            note(format!("simulating {samples} samples x {modes} modes, seed {seed}"));
            let rows = parse_csv(&points, 3)?;
            let points: Vec<[f64; 3]> = rows.iter().map(|r| [r[0], r[1], r[2]]).collect();
            let dim = model.value_dim();
            let cfg = SimConfig { model, points, n_samples: samples, n_modes: modes, seed };
            let real = simulate(&cfg)?;
            let mut csv = String::from("sample_id,point_id");
            for d in 1..=dim {
                csv.push_str(&format!(",c{d}"));
            }
            csv.push('\n');
            for s in 0..real.n_samples {
                for p in 0..real.n_points {
                    csv.push_str(&format!("{s},{p}"));
                    for v in real.value(s, p) {
                        csv.push(',');
                        csv.push_str(&fmt_float(*v));
                    }
                    csv.push('\n');
                }
            }
            write_output(&out, &csv)?;
            Ok(0)
        }
        Command::GgCoeffs { ell_max, out } => {
            let table = GGTable::new(ell_max);
            let mut csv = String::from("ell,ell1,ell2,m,m1,m2,value\n");
            for (idx, value) in table.entries_sorted() {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    idx.ell,
                    idx.ell1,
                    idx.ell2,
                    idx.m,
                    idx.m1,
                    idx.m2,
                    fmt_float(value)
                ));
            }
            write_output(&out, &csv)?;
            Ok(0)
        }
        Command::Selftest => {
            let results = tensorfield::acceptance::run_all();
            let mut passed = 0;
            for r in &results {
                println!("{}", r.line());
                if r.passed {
                    passed += 1;
                }
            }
            println!("{passed}/{} criteria passed", results.len());
            if passed == results.len() {
                Ok(0)
            } else {
                Err(CliError::Core(CoreError::Range(format!(
                    "self test failed: {passed}/{} criteria passed",
                    results.len()
                ))))
            }
        }
    }
}
