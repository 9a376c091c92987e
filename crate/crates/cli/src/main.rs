//! `distlab`: runs the verification suites and writes JSON or text reports.
//!
//! Exit codes: 0 when every check passes, 1 on any failed check, 2 on usage
//! errors.

mod report;
mod suites;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use distlab_core::check::CheckRecord;
use report::{Record, Report};
use suites::{DiffArg, Options, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "distlab",
    version,
    about = "Exact verification of cyclotomic distribution invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H^1 and H^2 of complex conjugation on U_m and O_m.
    Cohomology {
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// I(L_m, d; theta) against its closed form, and the abstract index formula for phi_m.
    Index {
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spectral sequence pages of the double complexes built from L_m.
    Spectral {
        #[command(flatten)]
        levels: LevelArgs,
        /// Differential; both when omitted.
        #[arg(long, value_enum)]
        d: Option<DiffArg>,
        /// Highest row of the K double complex.
        #[arg(long, default_value_t = 6)]
        qmax: i32,
        /// Page to tabulate.
        #[arg(long, default_value_t = 2)]
        page: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Alternating determinants of phi_m and the Euler factor character products.
    Detphi {
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// [R^- : S^-], (R^- : alpha((1 - c)U)) and (U^- : (1 - c)U).
    Stickelberger {
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Relative class number from B_{1, chi}, with the oracle self-checks.
    Hminus {
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs a named suite over a set of levels.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        levels: LevelArgs,
        /// Seed for the randomized complex pairs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of randomized complex pairs.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct LevelArgs {
    /// A single level.
    #[arg(long)]
    m: Option<u64>,
    /// Comma-separated levels.
    #[arg(long, value_delimiter = ',')]
    m_list: Vec<u64>,
    /// Every admissible level up to this bound.
    #[arg(long)]
    m_max: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Attach wall-clock times to records (makes reports nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("distlab: {msg}");
    ExitCode::from(2)
}

impl LevelArgs {
    fn resolve(&self, min: u64) -> Result<Vec<u64>, String> {
        let mut set = BTreeSet::new();
        for &m in self.m.iter().chain(&self.m_list) {
            if m % 4 == 2 {
                return Err(format!(
                    "level {m} is congruent to 2 mod 4; Q(zeta_{m}) = Q(zeta_{}) so use level {} instead",
                    m / 2,
                    m / 2
                ));
            }
            if m < min {
                return Err(format!(
                    "level {m} is below the smallest supported level {min}"
                ));
            }
            set.insert(m);
        }
        if let Some(max) = self.m_max {
            set.extend((min..=max).filter(|m| m % 4 != 2));
        }
        if set.is_empty() {
            return Err("no levels given; pass --m, --m-list or --m-max".into());
        }
        Ok(set.into_iter().collect())
    }
}

fn per_level(ms: &[u64], f: impl Fn(u64) -> Vec<Record> + Sync) -> Vec<Record> {
    ms.par_iter().flat_map_iter(|&m| f(m)).collect()
}

fn emit(report: &Report, out: &OutputArgs) -> ExitCode {
    let body = match out.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &out.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return usage(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{body}"),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> ExitCode {
    let base = |output: &OutputArgs| Options {
        timings: output.timings,
        q_max: 6,
        seed: 0,
        trials: 0,
    };
    let (suite_name, levels, output, min) = match &cli.command {
        Command::Cohomology { levels, output } => ("cohomology", levels, output, 3),
        Command::Index { levels, output } => ("index", levels, output, 1),
        Command::Spectral { levels, output, .. } => ("spectral", levels, output, 1),
        Command::Detphi { levels, output } => ("detphi", levels, output, 1),
        Command::Stickelberger { levels, output } => ("stickelberger", levels, output, 3),
        Command::Hminus { levels, output } => ("hminus", levels, output, 3),
        Command::Verify {
            suite,
            levels,
            output,
            ..
        } => (suite.name(), levels, output, suite.min_level()),
    };
    let ms = match levels.resolve(min) {
        Ok(ms) => ms,
        Err(msg) => return usage(&msg),
    };
    let mut opts = base(output);
    let mut pages = Vec::new();
    let records = match &cli.command {
        Command::Cohomology { .. } => per_level(&ms, |m| suites::cohomology(m, &opts)),
        Command::Index { .. } => per_level(&ms, |m| {
            let mut v = suites::index(m, &opts);
            v.extend(suites::abstract_index(m, &opts));
            v
        }),
        Command::Spectral { d, qmax, page, .. } => {
            if *qmax < 1 {
                return usage("--qmax must be at least 1");
            }
            if *page < 1 {
                return usage("--page must be at least 1");
            }
            opts.q_max = *qmax;
            let ds = suites::both_or(*d);
            let mut recs = per_level(&ms, |m| suites::spectral(m, &ds, &opts));
            for &m in &ms {
                for &w in &ds {
                    match suites::page_table(m, w, *page, *qmax) {
                        Ok(t) => pages.push(t),
                        Err(e) => recs.push(Record::from_check(
                            CheckRecord::error(
                                "page_table",
                                Some(m),
                                format!("{}, r = {page}", w.name()),
                                &e,
                            ),
                            None,
                        )),
                    }
                }
            }
            recs
        }
        Command::Detphi { .. } => per_level(&ms, |m| suites::detphi(m, &opts)),
        Command::Stickelberger { .. } => per_level(&ms, |m| suites::stickelberger(m, &opts)),
        Command::Hminus { .. } => per_level(&ms, |m| {
            let mut v = suites::hminus_value(m, &opts);
            v.extend(suites::oracle(m, &opts));
            v
        }),
        Command::Verify {
            suite,
            seed,
            trials,
            ..
        } => {
            opts.seed = *seed;
            opts.trials = *trials;
            let mut recs = per_level(&ms, |m| suites::suite(*suite, m, &opts));
            if matches!(suite, Suite::All | Suite::Abstract) {
                recs.extend(suites::random_pairs(&opts));
            }
            recs
        }
    };
    emit(&Report::new(suite_name, &ms, records, pages), output)
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            ExitCode::from(code)
        }
    }
}
