use std::fs::OpenOptions;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use branchlink::semigroup::random_plane_semigroup;
use branchlink_cli::input::parse_int;
use branchlink_cli::{analyze, bp_report, item_seed, parse_generators, CliError};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "branchlink", version, about = "Resolution graphs, determinants, link classes and splice diagrams from plane-branch semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one generator list, or one per stdin line.
    Analyze {
        /// `8,12,26,53` or `{"generators":[8,12,26,53]}`
        input: Option<String>,
        #[arg(long)]
        json: bool,
        /// Write the resolution graph in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Contract (-1)-curves of valency at most 2.
        #[arg(long)]
        minimize: bool,
    },
    /// Random valid generator lists, one per line.
    Random {
        #[arg(long, default_value_t = 3)]
        g: usize,
        #[arg(long, default_value_t = 5)]
        max_n: u64,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brieskorn-Pham surface x^a1 + y^a2 + z^a3.
    Bp {
        a1: String,
        a2: String,
        a3: String,
        #[arg(long)]
        json: bool,
    },
    /// Splice diagram and equations of an integral homology sphere link.
    Splice {
        input: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Resolution graph in DOT format.
    Graph {
        input: Option<String>,
        #[arg(long)]
        minimize: bool,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code)
}

/// Inputs from the positional argument, or one per non-empty stdin line.
fn inputs(arg: Option<String>) -> Result<Vec<String>, CliError> {
    match arg {
        Some(s) => Ok(vec![s]),
        None => {
            let mut out = Vec::new();
            for line in io::stdin().lock().lines() {
                let line = line?;
                let t = line.trim();
                if !t.is_empty() && !t.starts_with('#') {
                    out.push(t.to_string());
                }
            }
            Ok(out)
        }
    }
}

fn append(path: &Path, text: &str, first: bool) -> Result<(), CliError> {
    let mut f = OpenOptions::new().create(true).write(true).append(!first).truncate(first).open(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

/// Runs `item` on every input; the exit code is the worst item's.
fn batch(
    arg: Option<String>,
    mut item: impl FnMut(&str, usize, &mut dyn Write) -> Result<(), CliError>,
) -> Result<u8, CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut worst = 0;
    for (i, raw) in inputs(arg)?.iter().enumerate() {
        if let Err(e) = item(raw, i, &mut out) {
            if let CliError::Io(_) = e {
                return Err(e);
            }
            eprintln!("error: {raw}: {e}");
            worst = worst.max(e.exit_code());
        }
    }
    out.flush()?;
    Ok(worst)
}

fn json_line<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Analyze { input, json, dot, minimize } => batch(input, |raw, i, out| {
            let a = analyze(&parse_generators(raw)?, minimize)?;
            if let Some(path) = &dot {
                append(path, &a.graph.to_dot(), i == 0)?;
            }
            if json {
                json_line(out, &a.report)
            } else {
                writeln!(out, "{}", a.report)?;
                Ok(())
            }
        }),
        Command::Random { g, max_n, count, seed } => {
            if g < 2 || max_n < 2 {
                return Err(CliError::Invalid("need --g >= 2 and --max-n >= 2".into()));
            }
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for i in 0..count {
                let beta = random_plane_semigroup(g, max_n, item_seed(seed, i));
                let line: Vec<String> = beta.iter().map(ToString::to_string).collect();
                writeln!(out, "{}", line.join(","))?;
            }
            Ok(0)
        }
        Command::Bp { a1, a2, a3, json } => {
            let bp = bp_report(&parse_int(&a1)?, &parse_int(&a2)?, &parse_int(&a3)?)?;
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if json {
                json_line(&mut out, &bp)?;
            } else {
                write!(out, "{bp}")?;
            }
            Ok(0)
        }
        Command::Splice { input, json, dot } => batch(input, |raw, i, out| {
            let a = analyze(&parse_generators(raw)?, false)?;
            let (Some(report), Some(sd)) = (&a.report.splice, &a.splice) else {
                return Err(CliError::Invalid(format!(
                    "link is {}; splice diagrams need an integral homology sphere",
                    a.report.link.class
                )));
            };
            if let Some(path) = &dot {
                append(path, &sd.to_dot(), i == 0)?;
            }
            if json {
                json_line(out, report)
            } else {
                writeln!(out, "{report}")?;
                Ok(())
            }
        }),
        Command::Graph { input, minimize, dot } => batch(input, |raw, i, out| {
            let a = analyze(&parse_generators(raw)?, minimize)?;
            let text = a.graph.to_dot();
            match &dot {
                Some(path) => append(path, &text, i == 0),
                None => {
                    write!(out, "{text}")?;
                    Ok(())
                }
            }
        }),
    }
}
