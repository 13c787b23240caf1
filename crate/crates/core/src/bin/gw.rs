use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gwords::gword::{parse_exponent, Exponent};
use gwords::numeric::{haar_unitary, RefuteConfig};
use gwords::pipeline::{self, ClassificationReport, ClassifyOptions, UNKNOWN_NOTE};
use gwords::trace::{paper_unitary, symbolic_trace, Mode, Parameterization};
use gwords::{Error, Word};

#[derive(Parser)]
#[command(name = "gw", version, about = "Decide whether generalized words in two positive definite matrices are good")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one word and print its certificates.
    Classify {
        word: String,
        /// Search numerically when no theorem decides the word.
        #[arg(long)]
        refute: bool,
        /// Also search for an explicit witness behind theorem-based verdicts.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify every word of one class over a finite exponent set.
    Sweep {
        #[arg(long = "class")]
        class: usize,
        /// Comma list (`-2,-1,1,2`, `1/2,3`) or inclusive range (`-2..2`); zeros are dropped.
        #[arg(long, allow_hyphen_values = true)]
        exponents: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        refute: bool,
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Push every non-nearly-symmetric word to a verdict and list the rest.
    Conjecture {
        #[arg(long = "class")]
        class: usize,
        #[arg(long, allow_hyphen_values = true)]
        exponents: String,
        /// Largest sample count per search round.
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the symbolic trace expansion of a word as JSON.
    Trace {
        word: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Use the reference unitary (the default).
        #[arg(long, conflicts_with = "seed")]
        paper_u: bool,
        /// Use a Haar unitary drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Keep only the imaginary parts of the coefficients.
        #[arg(long)]
        imag: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    Positive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::General => Mode::General,
            ModeArg::Positive => Mode::Positive,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(e.into())
    }
}

fn options(refute: bool, witness: bool, samples: usize, seed: u64) -> ClassifyOptions {
    ClassifyOptions {
        refute,
        witness,
        config: RefuteConfig {
            samples,
            seed,
            ..RefuteConfig::default()
        },
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let pool = pipeline::thread_pool_from_env()?;
    match cli.command {
        Command::Classify {
            word,
            refute,
            witness,
            samples,
            seed,
            json,
        } => {
            let report = pool.install(|| pipeline::classify(&word, &options(refute, witness, samples, seed)))?;
            let mut out = io::stdout().lock();
            if json {
                serde_json::to_writer_pretty(&mut out, &report.to_json())?;
                writeln!(out)?;
            } else {
                print_report(&mut out, &report)?;
            }
        }
        Command::Sweep {
            class,
            exponents,
            out,
            format,
            refute,
            witness,
            samples,
            seed,
        } => {
            let set = parse_exponent_list(&exponents)?;
            let opts = options(refute, witness, samples, seed);
            let report = pool.install(|| pipeline::sweep(class, &set, &opts))?;
            let sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(File::create(path)?),
                None => Box::new(io::stdout().lock()),
            };
            let mut sink = BufWriter::new(sink);
            match format {
                Format::Csv => {
                    let mut writer = csv::Writer::from_writer(&mut sink);
                    for row in &report.rows {
                        writer.serialize(row.csv_row())?;
                    }
                    writer.flush()?;
                    for (verdict, count) in &report.summary {
                        eprintln!("{verdict}: {count}");
                    }
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut sink, &report.to_json())?;
                    writeln!(sink)?;
                }
            }
            sink.flush()?;
        }
        Command::Conjecture {
            class,
            exponents,
            budget,
            seed,
        } => {
            let set = parse_exponent_list(&exponents)?;
            let report = pool.install(|| pipeline::conjecture_check(class, &set, budget, seed))?;
            let mut out = io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        Command::Trace {
            word,
            mode,
            paper_u: _,
            seed,
            imag,
        } => {
            let word = Word::parse(&word).map_err(Error::from)?;
            let u = match seed {
                Some(s) => haar_unitary::<f64>(3, s),
                None => paper_unitary(),
            };
            let param = Parameterization::from_unitary(&u, mode.into())?;
            let expansion = pool.install(|| symbolic_trace(&word, &param))?;
            let dto = if imag {
                expansion.imaginary_json()
            } else {
                expansion.to_json()
            };
            let mut out = io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, &dto)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// `a,b,c` or the inclusive integer range `lo..hi`; zeros are dropped and
/// an empty string gives the empty set.
fn parse_exponent_list(text: &str) -> Result<Vec<Exponent>, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let values = if let Some((lo, hi)) = text.split_once("..") {
        let bound = |s: &str| -> Result<i64, Error> {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("range bound `{s}` is not an integer")))
        };
        (bound(lo)?..=bound(hi)?).map(Exponent::int).collect()
    } else {
        text.split(',')
            .map(|s| parse_exponent(s).map_err(Error::from))
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(values.into_iter().filter(|e| !e.is_zero()).collect())
}

fn print_report(out: &mut impl Write, r: &ClassificationReport) -> io::Result<()> {
    writeln!(out, "input:          {}", r.input)?;
    writeln!(out, "standard form:  {}", r.standard_form)?;
    writeln!(out, "class:          {}", r.class_number)?;
    writeln!(out, "verdict:        {}", r.verdict)?;
    if r.verdict == pipeline::Verdict::UnknownConjecturedBad {
        writeln!(out, "note:           {UNKNOWN_NOTE}")?;
    }
    match r.near_symmetry {
        Some(split) => {
            let (left, right) = split.factors(&r.standard_form);
            writeln!(out, "near symmetry:  ({left}) ({right})")?;
        }
        None => writeln!(out, "near symmetry:  none")?,
    }
    if let Some(e) = &r.exactness {
        let l: Vec<String> = e.l_values.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "pair sums:      ({}), minimum {} at odd {} / even {} -> {}",
            l.join(", "),
            e.min_value,
            e.count_odd,
            e.count_even,
            if e.exact { "exact" } else { "inexact" }
        )?;
    }
    if let Some(rel) = &r.relations {
        let mode = if rel.approximate { " (approximate)" } else { "" };
        writeln!(out, "relations:      {} nontrivial{mode}", rel.nontrivial)?;
    }
    if let Some(c) = &r.counterexample {
        writeln!(out, "counterexample: {:?}", c.construction)?;
        writeln!(out, "evidence:       {:?}", c.evidence)?;
        writeln!(out, "A =\n{}", c.a.matrix())?;
        writeln!(out, "B =\n{}", c.b.matrix())?;
    }
    writeln!(out, "seed:           {}", r.seed)?;
    writeln!(out, "elapsed:        {:.3?}", r.elapsed)?;
    Ok(())
}
