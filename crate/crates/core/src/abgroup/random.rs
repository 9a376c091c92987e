use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::{euler_regulator_check, BoundedComplex};
use crate::arith::{Int, Rat};
use crate::check::CheckRecord;
use crate::linalg::{det_int, inverse, left_kernel, IMat, QMat};

/// Two complexes of free groups with a rational chain isomorphism between
/// their real extensions.
#[derive(Clone, Debug)]
pub struct AdmissiblePair {
    pub a: BoundedComplex,
    pub b: BoundedComplex,
    pub lambda: Vec<QMat>,
}

fn random_imat<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IMat {
    IMat::from_fn(rows, cols, |_, _| {
        Int::from(rng.random_range(-bound..=bound))
    })
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IMat {
    loop {
        let m = random_imat(rng, n, n, bound);
        if !det_int(&m).expect("square").is_zero() {
            return m;
        }
    }
}

fn adjugate(m: &IMat) -> IMat {
    let det = Rat::from_int(det_int(m).expect("square"));
    inverse(&m.to_qmat())
        .expect("invertible")
        .scale(&det)
        .to_imat()
        .expect("adjugate is integral")
}

/// Random pair of complexes in degrees `[lo, 0]`.
///
/// `A` is random; `B` is built as `d_B^i = M_i d_A^i adj(lambda^i)` with
/// `lambda^{i+1} = det(lambda^i) M_i`, which commutes with the differentials
/// and keeps `B` integral. The whole map is then scaled by a random rational.
pub fn random_admissible_pair<R: Rng>(rng: &mut R, lo: i32) -> AdmissiblePair {
    let len = (1 - lo) as usize;
    let ranks: Vec<usize> = (0..len).map(|_| rng.random_range(1..=3)).collect();
    let mut da = Vec::new();
    for k in 0..len - 1 {
        let d = if k == 0 {
            random_imat(rng, ranks[1], ranks[0], 3)
        } else {
            let ker = left_kernel(&da[k - 1]);
            random_imat(rng, ranks[k + 1], ker.rows(), 2).mul(&ker)
        };
        da.push(d);
    }
    let mut lam = vec![random_invertible(rng, ranks[0], 3)];
    let mut db = Vec::new();
    for k in 0..len - 1 {
        let m = random_invertible(rng, ranks[k + 1], 2);
        db.push(m.mul(&da[k]).mul(&adjugate(&lam[k])));
        let det = det_int(&lam[k]).expect("square");
        lam.push(m.scale(&det));
    }
    let s = Rat::new(rng.random_range(1..=5i64), rng.random_range(1..=5i64));
    let lambda = lam.iter().map(|l| l.to_qmat().scale(&s)).collect();
    AdmissiblePair {
        a: BoundedComplex::new(lo, ranks.clone(), da).expect("A is a complex"),
        b: BoundedComplex::new(lo, ranks, db).expect("B is a complex"),
        lambda,
    }
}

/// Euler-characteristic regulator identity on `trials` random pairs drawn
/// from a ChaCha stream seeded with `seed`.
pub fn random_pairs_check(seed: u64, trials: usize) -> Vec<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|k| {
            let lo = rng.random_range(-3..=-1);
            let pair = random_admissible_pair(&mut rng, lo);
            match euler_regulator_check(&pair.a, &pair.b, &pair.lambda) {
                Ok(mut rec) => {
                    rec.inputs = format!("seed {seed}, trial {k}, {}", rec.inputs);
                    rec
                }
                Err(e) => CheckRecord::error(
                    "euler_regulator",
                    None,
                    format!("seed {seed}, trial {k}"),
                    &e,
                ),
            }
        })
        .collect()
}
