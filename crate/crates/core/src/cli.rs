//! `nwe` command-line front end.
//!
//! Exit codes: 0 certified nonlocal, 1 nontrivial measurement found (or the
//! lemma engine alone could not finish), 2 parameter error, 3 invalid input set.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructions::{prior_sizes, ConstructionKind, SizeReport};
use crate::document::{build_report, to_canonical_json, EngineSelector, StateSetDocument};
use crate::error::Error;
use crate::lemma::derive_certificate;
use crate::tensor::{StateSet, SystemShape, DEFAULT_DIM_CAP};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_NONTRIVIAL: i32 = 1;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;

/// Environment variable overriding the per-party dimension cap.
pub const DIM_CAP_VAR: &str = "NWE_DIM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "nwe",
    version,
    about = "Generate and certify locally indistinguishable product state sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a state set and write it as nwe/1 JSON.
    Generate {
        #[command(flatten)]
        source: ConstructionArgs,
        /// Output file (stdout when omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check orthogonality and certify triviality of every local measurement.
    Verify {
        /// nwe/1 document to verify ("-" for stdin).
        #[arg(long, short, conflicts_with_all = ["equal", "parties", "dim", "dims"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        source: ConstructionArgs,
        #[arg(long, value_enum, default_value = "both")]
        engine: EngineSelector,
        /// Write the JSON report here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compare set sizes with earlier constructions.
    Compare {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Print the lemma-engine certificate as text, one fact per line.
    Certificate {
        #[arg(long, short, conflicts_with_all = ["equal", "parties", "dim", "dims"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        source: ConstructionArgs,
    },
}

#[derive(Debug, Args)]
struct ConstructionArgs {
    /// Equal-dimension family; requires --parties and --dim.
    #[arg(long, requires_all = ["parties", "dim"], conflicts_with = "dims")]
    equal: bool,
    #[arg(long, requires = "equal")]
    parties: Option<usize>,
    #[arg(long, requires = "equal")]
    dim: Option<usize>,
    /// General family over a nondecreasing dimension vector, e.g. 3,3,4.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
}

impl ConstructionArgs {
    fn kind(&self) -> Option<ConstructionKind> {
        if self.equal {
            Some(ConstructionKind::EqualDims {
                parties: self.parties?,
                dim: self.dim?,
            })
        } else {
            self.dims
                .clone()
                .map(|dims| ConstructionKind::GeneralDims { dims })
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parameter(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARAMETER,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConstructionDomain(_) | Error::InvalidShape(_) => EXIT_PARAMETER,
            _ => EXIT_INVALID_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_PARAMETER
            } else {
                EXIT_CERTIFIED
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dim_cap() -> Result<usize, Failure> {
    match std::env::var(DIM_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c >= 2)
            .ok_or_else(|| {
                Failure::parameter(format!("{DIM_CAP_VAR} must be an integer >= 2, got {v:?}"))
            }),
        Err(_) => Ok(DEFAULT_DIM_CAP),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INVALID_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn load_set(
    input: Option<&Path>,
    source: &ConstructionArgs,
    cap: usize,
) -> Result<StateSet, Failure> {
    if let Some(path) = input {
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| io_failure(path, e))?;
            s
        } else {
            fs::read_to_string(path).map_err(|e| io_failure(path, e))?
        };
        let doc = StateSetDocument::parse(&text).map_err(|e| Failure::input(e.to_string()))?;
        return doc.to_set(cap).map_err(|e| Failure::input(e.to_string()));
    }
    let kind = source.kind().ok_or_else(|| {
        Failure::parameter("give --input, --dims, or --equal --parties N --dim D")
    })?;
    Ok(kind.generate_with_cap(cap)?)
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_PARAMETER,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_PARAMETER,
            message: format!("stdout: {e}"),
        }),
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    let cap = dim_cap()?;
    match command {
        Command::Generate { source, out } => {
            let kind = source
                .kind()
                .ok_or_else(|| Failure::parameter("give --dims or --equal --parties N --dim D"))?;
            let set = kind.generate_with_cap(cap)?;
            let json = StateSetDocument::from_set(&set).to_json();
            write_output(out.as_deref(), &json, stdout)?;
            let counter: &mut dyn Write = if out.is_some() { stdout } else { stderr };
            let _ = writeln!(counter, "{} states", set.len());
            Ok(EXIT_CERTIFIED)
        }
        Command::Verify {
            input,
            source,
            engine,
            out,
        } => {
            let set = load_set(input.as_deref(), &source, cap)?;
            let report = build_report(&set, engine)?;
            write_output(out.as_deref(), &report.to_json(), stdout)?;
            if !report.orthogonality.ok {
                let pairs: Vec<String> = report
                    .orthogonality
                    .violations
                    .iter()
                    .map(|(i, j)| format!("({i},{j})"))
                    .collect();
                let _ = writeln!(stderr, "error: non-orthogonal pairs: {}", pairs.join(", "));
            } else {
                let _ = writeln!(stderr, "{}", report.summary);
            }
            Ok(report.outcome.exit_code())
        }
        Command::Compare { dims, json } => {
            let shape = SystemShape::with_cap(dims, cap)?;
            let sizes = prior_sizes(&shape);
            let text = if json {
                to_canonical_json(&sizes)
            } else {
                size_table(&shape, &sizes)
            };
            write_output(None, &text, stdout)?;
            Ok(EXIT_CERTIFIED)
        }
        Command::Certificate { input, source } => {
            let set = load_set(input.as_deref(), &source, cap)?;
            let cert = derive_certificate(&set)?;
            write_output(None, &cert.render(&set), stdout)?;
            Ok(if cert.all_trivial() {
                EXIT_CERTIFIED
            } else {
                EXIT_NONTRIVIAL
            })
        }
    }
}

fn size_table(shape: &SystemShape, sizes: &SizeReport) -> String {
    let cell =
        |v: Option<usize>, why: &str| v.map_or_else(|| format!("n/a ({why})"), |x| x.to_string());
    let rows = [
        (
            "this construction",
            cell(sizes.ours, "needs n >= 3 and 3 <= d_1 <= ... <= d_n"),
        ),
        ("Jiang et al., sum(2d_i-3)+1", sizes.jiang.to_string()),
        (
            "Wang et al., 2(d_1+d_3)-3",
            cell(sizes.wang, "tripartite only"),
        ),
        ("Zhang et al., 2d_n-1", cell(sizes.zhang, "bipartite only")),
    ];
    let mut out = format!("system {shape}\n");
    out.push_str(&format!("{:<30} {}\n", "construction", "states"));
    for (name, value) in rows {
        out.push_str(&format!("{name:<30} {value}\n"));
    }
    out
}
