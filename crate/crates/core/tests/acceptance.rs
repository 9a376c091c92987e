//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p distlab-core --test acceptance`. Every comparison is
//! exact except the floating-point `L(1, chi)` cross-check (relative 1e-6).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use distlab_core::abgroup::random_pairs_check;
use distlab_core::check::CheckRecord;
use distlab_core::cyclotomic::{euler_factor_check, h_minus_check, l_value_check};
use distlab_core::lcomplex::{
    abstract_index_l_check, acyclicity_and_h0, det_phi_check, det_phi_graded_check,
    det_phi_theta_check, homotopy_check, Differential,
};
use distlab_core::ntheory::{p_part, primes_dividing};
use distlab_core::spectral::{
    cohomology_theorem_check, index_values_check, verify_spectral_results,
};
use distlab_core::stickelberger::{
    main_theorem_check, sin6_check, two_exponent, u_minus_index_check,
};
use rayon::prelude::*;

const BOTH: [Differential; 2] = [Differential::D1, Differential::D2];
const SEED: u64 = 20_240_601;
const STICKELBERGER_LEVELS: [u64; 16] =
    [5, 7, 8, 9, 11, 12, 13, 15, 16, 20, 21, 23, 24, 33, 35, 105];

fn levels(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|m| m % 4 != 2).collect()
}

struct Outcome {
    records: Vec<CheckRecord>,
    limit: Option<Duration>,
    elapsed: Duration,
}

fn run(limit: Option<Duration>, f: impl FnOnce() -> Vec<CheckRecord>) -> Outcome {
    let start = Instant::now();
    let records = f();
    Outcome {
        records,
        limit,
        elapsed: start.elapsed(),
    }
}

fn report(n: usize, title: &str, o: &Outcome) -> bool {
    let failed: Vec<&CheckRecord> = o.records.iter().filter(|r| !r.pass).collect();
    let in_time = o.limit.is_none_or(|l| o.elapsed <= l);
    let ok = failed.is_empty() && !o.records.is_empty() && in_time;
    let limit = o
        .limit
        .map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
    println!(
        "{} criterion {n}: {title} ({} checks, {} failed, {:.2}s{limit})",
        if ok { "PASS" } else { "FAIL" },
        o.records.len(),
        failed.len(),
        o.elapsed.as_secs_f64()
    );
    for r in failed.iter().take(10) {
        println!(
            "    m={:?} {}: expected {} computed {} [{}]",
            r.m, r.name, r.expected, r.computed, r.inputs
        );
    }
    if !in_time {
        println!("    time limit exceeded");
    }
    ok
}

fn criterion_1() -> Outcome {
    run(Some(Duration::from_secs(300)), || {
        levels(3, 200)
            .par_iter()
            .flat_map_iter(|&m| cohomology_theorem_check(m))
            .collect()
    })
}

fn criterion_2() -> Outcome {
    run(None, || {
        levels(1, 120)
            .par_iter()
            .flat_map_iter(|&m| {
                BOTH.into_iter()
                    .flat_map(move |d| [acyclicity_and_h0(m, d), homotopy_check(m, d)])
            })
            .collect()
    })
}

fn criterion_3() -> Outcome {
    run(None, || {
        let ms = levels(1, 60);
        let mut out: Vec<CheckRecord> = ms
            .par_iter()
            .flat_map_iter(|&m| {
                let mut v = vec![det_phi_check(m), det_phi_theta_check(m)];
                v.extend(det_phi_graded_check(m));
                v
            })
            .collect();
        let mut pairs: Vec<(u64, u64)> = ms
            .iter()
            .flat_map(|&m| {
                primes_dividing(m)
                    .into_iter()
                    .map(move |p| (p, m / p_part(m, p)))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        out.par_extend(
            pairs
                .par_iter()
                .flat_map_iter(|&(p, f)| euler_factor_check(p, f)),
        );
        out
    })
}

fn criterion_4() -> Outcome {
    run(None, || {
        [4u64, 8, 9, 12, 15, 16, 105]
            .par_iter()
            .flat_map_iter(|&m| {
                BOTH.into_iter()
                    .flat_map(move |d| verify_spectral_results(m, d))
            })
            .collect()
    })
}

fn criterion_5() -> Outcome {
    run(None, || {
        levels(1, 120)
            .par_iter()
            .flat_map_iter(|&m| index_values_check(m))
            .collect()
    })
}

fn criterion_6() -> Outcome {
    run(None, || {
        let mut out: Vec<CheckRecord> = [4u64, 5, 7, 8, 9, 12, 15, 16, 21, 24]
            .par_iter()
            .map(|&m| abstract_index_l_check(m))
            .collect();
        out.extend(random_pairs_check(SEED, 100));
        out
    })
}

fn criterion_7() -> Outcome {
    run(Some(Duration::from_secs(600)), || {
        STICKELBERGER_LEVELS
            .par_iter()
            .flat_map_iter(|&m| {
                let a = two_exponent(m);
                let want = if m == 105 { 1 } else { 0 };
                [
                    main_theorem_check(m),
                    sin6_check(m),
                    u_minus_index_check(m),
                    CheckRecord::new("two_exponent", Some(m), "", &want, &a),
                ]
            })
            .collect()
    })
}

fn criterion_8() -> Outcome {
    run(None, || {
        let mut ms = levels(3, 40);
        ms.extend(STICKELBERGER_LEVELS);
        ms.sort_unstable();
        ms.dedup();
        let mut out: Vec<CheckRecord> = ms.par_iter().map(|&m| h_minus_check(m)).collect();
        out.par_extend(levels(3, 40).par_iter().map(|&m| l_value_check(m, 1e-6)));
        out
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("H^1, H^2 of U_m and O_m for m <= 200", criterion_1),
        (
            "acyclicity, H^0 and homotopy identities for m <= 120",
            criterion_2,
        ),
        (
            "determinants of phi_m for m <= 60 and Euler factor character products",
            criterion_3,
        ),
        (
            "E2 patterns, antidiagonal identity and F degeneration",
            criterion_4,
        ),
        ("I(L_m, d; theta) closed forms for m <= 120", criterion_5),
        (
            "abstract index formula and 100 random regulator pairs",
            criterion_6,
        ),
        (
            "[R^- : S^-] = 2^a h^-, alpha lattice and U^- indices",
            criterion_7,
        ),
        (
            "h^- integrality and L(1, chi) float cross-check",
            criterion_8,
        ),
    ];
    let mut all = true;
    for (k, (title, f)) in criteria.iter().enumerate() {
        all &= report(k + 1, title, &f());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
