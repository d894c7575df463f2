use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lapmult::commands::{self, CatalogFormat, CommandError, Output};
use lapmult::enumeration::CatalogFilter;
use lapmult::numeric::DEFAULT_TOL;
use lapmult::report::to_pretty;

/// Laplacian eigenvalue multiplicities of trees.
#[derive(Parser)]
#[command(name = "lapmult", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Render {
    /// Emit the JSON report (default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit a plain-text summary.
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide multiplicity p-1, list its eigenvalues and classify m(T,1).
    Check {
        /// Edge-list file, `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        render: Render,
        /// Jacobi convergence tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Construct the p-1 eigenvectors for 2(1 - cos((2b+1)π/(2q+1))).
    Eigenbasis {
        input: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        b: u64,
        /// Also write the vectors as CSV (one row per vector).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        render: Render,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Numeric spectrum and characteristic polynomial.
    Spectrum {
        input: PathBuf,
        /// Use the signless Laplacian D + A.
        #[arg(long)]
        signless: bool,
        #[command(flatten)]
        render: Render,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Oracle-checked catalog of all trees up to a given order.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        /// extremal | unit_p1 | unit_p2 | all
        #[arg(long, default_value = "all")]
        filter: String,
        /// csv | json | dot
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<String, CommandError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CommandError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CommandError::Io(format!("{}: {e}", path.display())))
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CommandError> {
    fs::write(path, body).map_err(|e| CommandError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Output, render: &Render) -> Result<(), CommandError> {
    let body = if render.text {
        out.text.clone()
    } else {
        to_pretty(&out.json) + "\n"
    };
    io::stdout()
        .write_all(body.as_bytes())
        .map_err(|e| CommandError::Io(format!("stdout: {e}")))?;
    match &out.disagreement {
        Some(msg) => Err(CommandError::OracleDisagreement(msg.clone())),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CommandError> {
    match cli.command {
        Command::Check { input, render, tol } => {
            let out = commands::check(&read_input(&input)?, tol)?;
            emit(&out, &render)
        }
        Command::Eigenbasis {
            input,
            q,
            b,
            out,
            render,
            tol,
        } => {
            let res = commands::eigenbasis(&read_input(&input)?, q, b, tol)?;
            if let Some(path) = out {
                write_file(&path, &res.vectors_csv)?;
            }
            emit(&res.output, &render)
        }
        Command::Spectrum {
            input,
            signless,
            render,
            tol,
        } => {
            let out = commands::spectrum(&read_input(&input)?, tol, signless)?;
            emit(&out, &render)
        }
        Command::Enumerate {
            max_n,
            filter,
            format,
            jobs,
            out,
        } => {
            let filter = CatalogFilter::parse(&filter)
                .ok_or_else(|| CommandError::Invalid(format!("unknown filter `{filter}`")))?;
            let format = CatalogFormat::parse(&format)
                .ok_or_else(|| CommandError::Invalid(format!("unknown format `{format}`")))?;
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                if j == 0 {
                    return Err(CommandError::Invalid("--jobs must be at least 1".into()));
                }
                pool = pool.num_threads(j);
            }
            let pool = pool.build().map_err(|e| CommandError::Io(e.to_string()))?;
            let (body, _) = pool.install(|| commands::enumerate(max_n, filter, format))?;
            match out {
                Some(path) => write_file(&path, &body),
                None => io::stdout()
                    .write_all(body.as_bytes())
                    .map_err(|e| CommandError::Io(format!("stdout: {e}"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
