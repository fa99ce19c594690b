//! The `oodn` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use oodn_core::{
    clone_class, difference, intersection, symmetric_difference, union, validate, warnings,
    AnyClass, ExploiterOutcome, ExploiterStats, Lineage, ModelError, Strategy,
};

use crate::descriptor::{self, emit_descriptor, looks_like_descriptor};
use crate::error::KbError;
use crate::format;

#[derive(Debug, Parser)]
#[command(name = "oodn", version, about = "Generate classes with universal exploiters")]
struct Cli {
    /// Equivalence search strategy.
    #[arg(long, global = true, default_value = "keyed")]
    strategy: Strategy,
    /// Print comparison counters.
    #[arg(long, global = true)]
    stats: bool,
    /// Name of the result class.
    #[arg(long, global = true)]
    name: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Result class file.
    #[arg(short = 'o', long = "out")]
    out: PathBuf,
    /// Also write a descriptor with the result's lineage.
    #[arg(long)]
    descriptor: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check class files against the model invariants.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Union of two or more classes.
    Union {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Homogeneous intersection of two or more classes.
    Intersect {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Difference between a class and one or more others.
    Diff {
        minuend: PathBuf,
        #[arg(required = true, num_args = 1..)]
        subtrahends: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Symmetric difference of two classes.
    Symdiff {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Copy a class under a new name (`--name`).
    Clone {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Extract one type of a class as a homogeneous class.
    Flatten {
        file: PathBuf,
        /// 1-based type index.
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Write a descriptor for a class file.
    Emit {
        file: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_all(files: &[PathBuf]) -> Result<Vec<AnyClass>, KbError> {
    files.iter().map(format::load).collect()
}

fn default_name(op: &str, inputs: &[&AnyClass]) -> String {
    std::iter::once(op)
        .chain(inputs.iter().map(|c| c.name()))
        .collect::<Vec<_>>()
        .join("_")
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, KbError> {
    let strategy = cli.strategy;
    let name_for = |op: &str, inputs: &[&AnyClass]| {
        cli.name.clone().unwrap_or_else(|| default_name(op, inputs))
    };

    let (outcome, output) = match &cli.command {
        Command::Validate { files } => return validate_files(files, out, err),
        Command::Union { files, output } => {
            let inputs = load_all(files)?;
            let name = name_for("union", &inputs.iter().collect::<Vec<_>>());
            (union(&inputs, strategy, &name)?, output)
        }
        Command::Intersect { files, output } => {
            let inputs = load_all(files)?;
            let name = name_for("intersect", &inputs.iter().collect::<Vec<_>>());
            (intersection(&inputs, strategy, &name)?, output)
        }
        Command::Diff {
            minuend,
            subtrahends,
            output,
        } => {
            let m = format::load(minuend)?;
            let subs = load_all(subtrahends)?;
            let refs: Vec<&AnyClass> = std::iter::once(&m).chain(&subs).collect();
            let name = name_for("diff", &refs);
            (difference(&m, &subs, strategy, &name)?, output)
        }
        Command::Symdiff { a, b, output } => {
            let a = format::load(a)?;
            let b = format::load(b)?;
            let name = name_for("symdiff", &[&a, &b]);
            (symmetric_difference(&a, &b, strategy, &name)?, output)
        }
        Command::Clone { file, output } => {
            let c = format::load(file)?;
            let Some(name) = &cli.name else {
                writeln!(err, "error: clone needs --name NAME").ok();
                return Ok(1);
            };
            let result = clone_class(&c, name)?;
            let outcome = ExploiterOutcome {
                result,
                stats: ExploiterStats::default(),
                lineage: Lineage::new("clone", vec![c.name().to_owned()]),
            };
            (outcome, output)
        }
        Command::Flatten {
            file,
            index,
            output,
        } => {
            let c = format::load(file)?;
            let types = c.types();
            let t = index
                .checked_sub(1)
                .and_then(|i| types.get(i))
                .ok_or(ModelError::IndexOutOfRange {
                    index: *index,
                    count: types.len(),
                })?;
            let result = match &cli.name {
                Some(n) => t.renamed(n.as_str()),
                None => t.clone(),
            };
            let result = AnyClass::from(result);
            let violations = validate(&result);
            if !violations.is_empty() {
                return Err(KbError::Validation {
                    class: result.name().to_owned(),
                    violations,
                });
            }
            let outcome = ExploiterOutcome {
                result,
                stats: ExploiterStats::default(),
                lineage: Lineage::new("flatten", vec![c.name().to_owned()]),
            };
            (outcome, output)
        }
        Command::Emit { file, out: path } => {
            let text = fs::read_to_string(file).map_err(|e| KbError::io(file, e))?;
            let (class, lineage) = if looks_like_descriptor(&text) {
                let d = descriptor::from_str(&text).map_err(|e| e.in_file(file))?;
                (d.class, Lineage::new(d.op, d.inputs))
            } else {
                let c = format::from_str(&text).map_err(|e| e.in_file(file))?;
                let lineage = Lineage::new("emit", vec![c.name().to_owned()]);
                (c, lineage)
            };
            emit_descriptor(&class, &lineage, path)?;
            summarize("emit", &class, &lineage, out)?;
            writeln!(out, "wrote descriptor {}", path.display()).ok();
            return Ok(0);
        }
    };

    format::save(&outcome.result, &output.out)?;
    if let Some(d) = &output.descriptor {
        emit_descriptor(&outcome.result, &outcome.lineage, d)?;
    }
    summarize(&outcome.lineage.op, &outcome.result, &outcome.lineage, out)?;
    if cli.stats {
        print_stats(strategy, &outcome.stats, out);
    }
    writeln!(out, "wrote {}", output.out.display()).ok();
    if let Some(d) = &output.descriptor {
        writeln!(out, "wrote descriptor {}", d.display()).ok();
    }
    Ok(0)
}

fn summarize(op: &str, c: &AnyClass, lineage: &Lineage, out: &mut dyn Write) -> Result<(), KbError> {
    let io = |e| KbError::io(Path::new("<stdout>"), e);
    writeln!(out, "{op}: {} ({})", c.name(), c.kind()).map_err(io)?;
    if let AnyClass::Heterogeneous(h) = c {
        writeln!(
            out,
            "  core: {} properties, {} methods",
            h.core_spec.len(),
            h.core_sig.len()
        )
        .map_err(io)?;
        writeln!(out, "  projections: {}", h.projections.len()).map_err(io)?;
    }
    for t in c.types() {
        let m = t.metrics();
        writeln!(
            out,
            "  type {}: dimension {}, functionality {}",
            t.name, m.dimension, m.functionality
        )
        .map_err(io)?;
    }
    for note in &lineage.notes {
        writeln!(out, "  note: {note}").map_err(io)?;
    }
    Ok(())
}

fn print_stats(strategy: Strategy, s: &ExploiterStats, out: &mut dyn Write) {
    let _ = writeln!(out, "stats ({strategy}):");
    let _ = writeln!(out, "  property_comparisons: {}", s.property_comparisons);
    let _ = writeln!(out, "  method_comparisons: {}", s.method_comparisons);
    let _ = writeln!(out, "  tuples_considered: {}", s.tuples_considered);
}

fn validate_files(files: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, KbError> {
    let mut code = 0;
    for f in files {
        match format::load(f) {
            Ok(c) => {
                writeln!(out, "{}: ok ({} `{}`)", f.display(), c.kind(), c.name()).ok();
                for w in warnings(&c) {
                    writeln!(out, "  warning: {w}").ok();
                }
            }
            Err(KbError::Validation { class, violations }) => {
                writeln!(out, "{}: invalid class `{class}`", f.display()).ok();
                for v in &violations {
                    writeln!(out, "  - {v}").ok();
                }
                if code == 0 {
                    code = 3;
                }
            }
            Err(e) => {
                writeln!(err, "error: {e}").ok();
                code = 1;
            }
        }
    }
    Ok(code)
}
