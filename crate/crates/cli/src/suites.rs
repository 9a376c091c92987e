//! Mapping from subcommands and suite names to core checks.

use std::time::Instant;

use clap::ValueEnum;
use distlab_core::abgroup::random_pairs_check;
use distlab_core::check::CheckRecord;
use distlab_core::cyclotomic::{euler_factor_check, h_minus, h_minus_check, l_value_check};
use distlab_core::distribution::{basis_check, em_kernel_check, phi_relation_check, OpKind};
use distlab_core::lcomplex::{
    abstract_index_l_check, acyclicity_and_h0, det_phi_check, det_phi_graded_check,
    det_phi_theta_check, homotopy_check, phi_intertwining_check, Differential,
};
use distlab_core::ntheory::{p_part, primes_dividing};
use distlab_core::spectral::{
    antidiagonal_check, build_double, cohomology_theorem_check, e2_pattern_check,
    f_degeneration_check, index_values_check, sf_check, total_cohomology_check, DoubleKind,
    SpectralSequence, F_ROWS,
};
use distlab_core::stickelberger::{main_theorem_check, sin6_check, u_minus_index_check};
use distlab_core::Result;

use crate::report::{Cell, PageTable, Record};

/// Relative tolerance for the floating-point `L(1, chi)` cross-check.
pub const L_VALUE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Distribution,
    Cohomology,
    Acyclicity,
    Detphi,
    Spectral,
    Index,
    Abstract,
    Stickelberger,
    Oracle,
}

impl Suite {
    pub const EVERY: [Suite; 9] = [
        Suite::Distribution,
        Suite::Cohomology,
        Suite::Acyclicity,
        Suite::Detphi,
        Suite::Spectral,
        Suite::Index,
        Suite::Abstract,
        Suite::Stickelberger,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Distribution => "distribution",
            Suite::Cohomology => "cohomology",
            Suite::Acyclicity => "acyclicity",
            Suite::Detphi => "detphi",
            Suite::Spectral => "spectral",
            Suite::Index => "index",
            Suite::Abstract => "abstract",
            Suite::Stickelberger => "stickelberger",
            Suite::Oracle => "oracle",
        }
    }

    /// Smallest level the suite accepts.
    pub fn min_level(self) -> u64 {
        match self {
            Suite::Cohomology | Suite::Stickelberger | Suite::Oracle | Suite::All => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiffArg {
    D1,
    D2,
}

impl DiffArg {
    pub fn to_core(self) -> Differential {
        match self {
            DiffArg::D1 => Differential::D1,
            DiffArg::D2 => Differential::D2,
        }
    }
}

pub fn both_or(d: Option<DiffArg>) -> Vec<Differential> {
    match d {
        Some(d) => vec![d.to_core()],
        None => vec![Differential::D1, Differential::D2],
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub timings: bool,
    pub q_max: i32,
    pub seed: u64,
    pub trials: usize,
}

/// Runs `f`, attaching its wall time to every record it produced when
/// timings are requested.
pub fn timed(opts: &Options, f: impl FnOnce() -> Vec<CheckRecord>) -> Vec<Record> {
    let start = Instant::now();
    let recs = f();
    let ms = opts.timings.then(|| start.elapsed().as_millis() as u64);
    recs.into_iter()
        .map(|c| Record::from_check(c, ms))
        .collect()
}

pub fn cohomology(m: u64, opts: &Options) -> Vec<Record> {
    timed(opts, || cohomology_theorem_check(m))
}

pub fn distribution(m: u64, opts: &Options) -> Vec<Record> {
    timed(opts, || {
        vec![
            basis_check(m, OpKind::X),
            basis_check(m, OpKind::Y),
            phi_relation_check(m),
            em_kernel_check(m),
        ]
    })
}

pub fn acyclicity(m: u64, ds: &[Differential], opts: &Options) -> Vec<Record> {
    let mut out = timed(opts, || vec![phi_intertwining_check(m)]);
    for &d in ds {
        out.extend(timed(opts, || vec![acyclicity_and_h0(m, d)]));
        out.extend(timed(opts, || vec![homotopy_check(m, d)]));
    }
    out
}

pub fn detphi(m: u64, opts: &Options) -> Vec<Record> {
    let mut out = timed(opts, || vec![det_phi_check(m), det_phi_theta_check(m)]);
    out.extend(timed(opts, || det_phi_graded_check(m)));
    for p in primes_dividing(m) {
        out.extend(timed(opts, || euler_factor_check(p, m / p_part(m, p))));
    }
    out
}

pub fn index(m: u64, opts: &Options) -> Vec<Record> {
    timed(opts, || index_values_check(m))
}

pub fn abstract_index(m: u64, opts: &Options) -> Vec<Record> {
    timed(opts, || vec![abstract_index_l_check(m)])
}

pub fn random_pairs(opts: &Options) -> Vec<Record> {
    timed(opts, || random_pairs_check(opts.seed, opts.trials))
}

pub fn spectral(m: u64, ds: &[Differential], opts: &Options) -> Vec<Record> {
    let mut out = Vec::new();
    for &d in ds {
        out.extend(timed(opts, || vec![e2_pattern_check(m, d, opts.q_max)]));
        out.extend(timed(opts, || {
            vec![antidiagonal_check(m, d, (0, opts.q_max), F_ROWS)]
        }));
        out.extend(timed(opts, || {
            vec![total_cohomology_check(m, d, opts.q_max)]
        }));
        out.extend(timed(opts, || vec![f_degeneration_check(m, d, F_ROWS)]));
        out.extend(timed(opts, || vec![sf_check(m, d)]));
    }
    out
}

pub fn stickelberger(m: u64, opts: &Options) -> Vec<Record> {
    let mut out = timed(opts, || vec![main_theorem_check(m)]);
    out.extend(timed(opts, || vec![sin6_check(m)]));
    out.extend(timed(opts, || vec![u_minus_index_check(m)]));
    out
}

pub fn oracle(m: u64, opts: &Options) -> Vec<Record> {
    let mut out = timed(opts, || vec![h_minus_check(m)]);
    out.extend(timed(opts, || vec![l_value_check(m, L_VALUE_TOL)]));
    out
}

/// `h^-` as a plain value record.
pub fn hminus_value(m: u64, opts: &Options) -> Vec<Record> {
    timed(opts, || {
        vec![match h_minus(m) {
            Ok(h) => CheckRecord::with_flag(
                "h_minus",
                Some(m),
                "odd B_1 orbit norms",
                "-",
                h.to_string(),
                true,
            ),
            Err(e) => CheckRecord::error("h_minus", Some(m), "", &e),
        }]
    })
}

pub fn suite(s: Suite, m: u64, opts: &Options) -> Vec<Record> {
    let both = [Differential::D1, Differential::D2];
    match s {
        Suite::All => Suite::EVERY
            .iter()
            .flat_map(|&s| suite(s, m, opts))
            .collect(),
        Suite::Distribution => distribution(m, opts),
        Suite::Cohomology => cohomology(m, opts),
        Suite::Acyclicity => acyclicity(m, &both, opts),
        Suite::Detphi => detphi(m, opts),
        Suite::Spectral => spectral(m, &both, opts),
        Suite::Index => index(m, opts),
        Suite::Abstract => abstract_index(m, opts),
        Suite::Stickelberger => stickelberger(m, opts),
        Suite::Oracle => oracle(m, opts),
    }
}

/// `E_r` of the `K` double complex with rows `0..=q_max`.
pub fn page_table(m: u64, d: Differential, page: usize, q_max: i32) -> Result<PageTable> {
    let dc = build_double(m, d, DoubleKind::K, 0, q_max)?;
    let mut ss = SpectralSequence::new(&dc);
    let cells = ss
        .page(page)?
        .cells
        .into_iter()
        .map(|((p, q), g)| Cell {
            p,
            q,
            group: g.to_string(),
        })
        .collect();
    Ok(PageTable {
        m,
        d: d.name().to_string(),
        page,
        q_max,
        cells,
    })
}
