//! The free group on `(1/m)Z/Z`, its distribution and predistribution
//! relations, the operators `X_n` and `Y_n`, and the connecting map `phi_m`.
//!
//! Coordinates on `A_m` are indexed by the numerator `k` of `k/m`.

use std::fmt;

use crate::abgroup::{FgAbGroup, Quotient};
use crate::arith::{Int, Rat};
use crate::check::CheckRecord;
use crate::cyclotomic::power_residues;
use crate::error::{Error, Result};
use crate::linalg::{det_int, hnf_basis, inverse, left_kernel, IMat, Lattice, QMat};
use crate::ntheory::{divisors, euler_phi, factor, gcd, mod_inv, primes_dividing};

pub use crate::ntheory::mobius;

/// Element `num/den` of `Q/Z` in lowest terms with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZElem {
    num: u64,
    den: u64,
}

impl QZElem {
    pub fn new(num: i64, den: u64) -> QZElem {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = gcd(n, den);
        if n == 0 {
            QZElem { num: 0, den: 1 }
        } else {
            QZElem {
                num: n / g,
                den: den / g,
            }
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn neg(&self) -> QZElem {
        QZElem::new(-(self.num as i64), self.den)
    }

    /// Numerator `k` with `self = k/m`; `None` if the denominator does not divide `m`.
    pub fn at_level(&self, m: u64) -> Option<u64> {
        m.is_multiple_of(self.den)
            .then(|| self.num * (m / self.den))
    }

    /// Digit `a_{p1}` of the expansion `a = sum_p sum_v a_{pv} p^{-v}`.
    pub fn leading_digit(&self, p: u64) -> u64 {
        let pe = crate::ntheory::p_part(self.den, p);
        if pe == 1 {
            return 0;
        }
        let rest = self.den / pe;
        let inv = mod_inv(rest as i64, pe as i64).expect("coprime parts") as u64;
        let b = (self.num % pe) * inv % pe;
        b / (pe / p)
    }

    /// Number of primes `p` with leading digit `a_{p1} = p - 1`.
    pub fn top_digit_count(&self) -> usize {
        primes_dividing(self.den)
            .into_iter()
            .filter(|&p| self.leading_digit(p) == p - 1)
            .count()
    }
}

impl fmt::Display for QZElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Membership in `R_0`: no prime has leading digit `p - 1`.
pub fn r0_member(a: QZElem) -> bool {
    a.top_digit_count() == 0
}

/// Membership in `R_k`: at most `k` primes have leading digit `p - 1`.
pub fn rk_member(a: QZElem, k: usize) -> bool {
    a.top_digit_count() <= k
}

/// Ordered coordinate labels `k/m`, `k = 0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelBasis {
    m: u64,
}

impl LevelBasis {
    pub fn new(m: u64) -> Self {
        LevelBasis { m }
    }

    pub fn len(&self) -> usize {
        self.m as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, k: usize) -> QZElem {
        QZElem::new(k as i64, self.m)
    }

    pub fn index_of(&self, a: QZElem) -> Option<usize> {
        a.at_level(self.m).map(|k| k as usize)
    }
}

/// Which family of operators to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    X,
    Y,
}

/// `X_n` or `Y_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperatorMonomial {
    pub n: u64,
    pub kind: OpKind,
}

/// Matrix of `X_n` from `A_{m/n}`-valued arguments into `A_m`: an `m x (m/n)`
/// integer matrix whose column `j` is `X_n[j n / m] = sum_{n b = a} [b]`.
///
/// Sparse description of `X_n[a]` at level `m` for `a = j n/m`: the numerators
/// of the `n` preimages.
pub fn x_preimages(n: u64, m: u64, j: u64) -> impl Iterator<Item = u64> {
    let step = m / n;
    (0..n).map(move |t| j + t * step)
}

/// Coefficients `c_l` with `Y_n = sum_{l | n} c_l X_l`.
pub fn y_expansion(n: u64) -> Vec<(u64, i64)> {
    let mut terms = vec![(1u64, 1i64)];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        let mut binom = 1i64;
        let mut pk = 1u64;
        for k in 0..=e as i64 {
            if k > 0 {
                binom = binom * (e as i64 - k + 1) / k;
                pk *= p;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for &(l, c) in &terms {
                next.push((l * pk, c * sign * binom));
            }
        }
        terms = next;
    }
    terms.sort_unstable();
    terms
}

pub fn operator_matrix(op: OperatorMonomial, m: u64) -> Result<IMat> {
    let n = op.n;
    if n == 0 || !m.is_multiple_of(n) {
        return Err(Error::PreimageOutsideLevel(format!("X_{n}"), m));
    }
    let cols = (m / n) as usize;
    let mut out = IMat::zeros(m as usize, cols);
    let terms = match op.kind {
        OpKind::X => vec![(n, 1i64)],
        OpKind::Y => y_expansion(n),
    };
    for j in 0..cols as u64 {
        for &(l, c) in &terms {
            // a = j n/m = (j n/l) l/m.
            for b in x_preimages(l, m, j * (n / l)) {
                let e = &mut out[(b as usize, j as usize)];
                *e = &*e + &Int::from(c);
            }
        }
    }
    Ok(out)
}

/// Columns `X_n[a]` (or `Y_n[a]`) for `n | m` and `a` in `R_0 cap (n/m)Z/Z`,
/// ordered by `n` then `a`.
pub fn r0_basis(m: u64, kind: OpKind) -> Result<(Vec<(u64, QZElem)>, IMat)> {
    let mut labels = Vec::new();
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for n in divisors(m) {
        let op = operator_matrix(OperatorMonomial { n, kind }, m)?;
        for j in 0..m / n {
            let a = QZElem::new((j * n) as i64, m);
            if r0_member(a) {
                labels.push((n, a));
                cols.push(op.col(j as usize));
            }
        }
    }
    let b = IMat::from_rows(m as usize, cols).transpose();
    Ok((labels, b))
}

/// Unimodularity of the `R_0` basis of `A_m`.
pub fn basis_check(m: u64, kind: OpKind) -> CheckRecord {
    let name = match kind {
        OpKind::X => "basis_x",
        OpKind::Y => "basis_y",
    };
    match r0_basis(m, kind) {
        Ok((labels, b)) => {
            if labels.len() != m as usize {
                return CheckRecord::new(name, Some(m), "basis size", &(m as usize), &labels.len());
            }
            let det = det_int(&b).map(|d| d.abs()).unwrap_or(Int::ZERO);
            CheckRecord::new(name, Some(m), "|det| of basis matrix", &Int::ONE, &det)
        }
        Err(e) => CheckRecord::error(name, Some(m), "", &e),
    }
}

/// Distribution relations `[a] - sum_{pb=a}[b]` for primes `p | m`,
/// `a` in `(p/m)Z/Z`, as rows.
pub fn distribution_relations(m: u64) -> IMat {
    relations(m, true)
}

/// Predistribution relations `sum_{pb=a}[b]` for primes `p | m`.
pub fn predistribution_relations(m: u64) -> IMat {
    relations(m, false)
}

fn relations(m: u64, with_identity: bool) -> IMat {
    let mut rows = Vec::new();
    for p in primes_dividing(m) {
        for j in 0..m / p {
            let mut row = vec![Int::ZERO; m as usize];
            if with_identity {
                row[(j * p) as usize] = Int::ONE;
            }
            for b in x_preimages(p, m, j) {
                let e = &mut row[b as usize];
                *e = &*e - &Int::from(if with_identity { 1 } else { -1 });
            }
            rows.push(row);
        }
    }
    IMat::from_rows(m as usize, rows)
}

/// Relations for every divisor `n > 1` of `m`, not only primes.
pub fn all_divisor_relations(m: u64, distribution: bool) -> IMat {
    let mut rows = Vec::new();
    for n in divisors(m).into_iter().filter(|&n| n > 1) {
        for j in 0..m / n {
            let mut row = vec![Int::ZERO; m as usize];
            if distribution {
                row[(j * n) as usize] = Int::ONE;
            }
            for b in x_preimages(n, m, j) {
                let e = &mut row[b as usize];
                *e = &*e - &Int::from(if distribution { 1 } else { -1 });
            }
            rows.push(row);
        }
    }
    IMat::from_rows(m as usize, rows)
}

pub fn build_um(m: u64) -> FgAbGroup {
    FgAbGroup::from_presentation(m as usize, &distribution_relations(m))
}

pub fn build_om(m: u64) -> FgAbGroup {
    FgAbGroup::from_presentation(m as usize, &predistribution_relations(m))
}

/// `U_m` with explicit coordinates.
pub fn um_quotient(m: u64) -> Quotient {
    Quotient::new(&distribution_relations(m))
}

/// `O_m` with explicit coordinates.
pub fn om_quotient(m: u64) -> Quotient {
    Quotient::new(&predistribution_relations(m))
}

/// Involution `[a] -> [-a]` on `A_m` (a permutation matrix).
pub fn conjugation(m: u64) -> IMat {
    let mut c = IMat::zeros(m as usize, m as usize);
    for k in 0..m {
        c[(((m - k) % m) as usize, k as usize)] = Int::ONE;
    }
    c
}

/// `S_p[x] = [p x]` on a cyclic coordinate set of size `h` (column convention).
pub fn multiplication_matrix(p: u64, h: u64) -> QMat {
    let mut s = QMat::zeros(h as usize, h as usize);
    for k in 0..h {
        s[(((p * k) % h) as usize, k as usize)] = Rat::one();
    }
    s
}

/// `prod_{p in primes} (I - S_p/p)` on `h` cyclic coordinates.
pub fn euler_operator(primes: &[u64], h: u64) -> QMat {
    let id = QMat::identity(h as usize);
    primes.iter().fold(id.clone(), |acc, &p| {
        let f = id.sub(&multiplication_matrix(p, h).scale(&Rat::new(1, p as i64)));
        acc.mul(&f)
    })
}

/// `phi_m = prod_{p | m} (I - S_p/p)^{-1}` on `A_m`.
pub fn phi_matrix(m: u64) -> QMat {
    inverse(&phi_inverse_matrix(m)).expect("I - S_p/p is invertible")
}

/// `phi_m^{-1} = prod_{p | m} (I - S_p/p)`.
pub fn phi_inverse_matrix(m: u64) -> QMat {
    euler_operator(&primes_dividing(m), m)
}

/// `phi_m` applied to each distribution relation lies in the rational span of
/// the predistribution relations.
pub fn phi_relation_check(m: u64) -> CheckRecord {
    let phi = phi_matrix(m);
    let pre = Lattice::from_int_rows(&predistribution_relations(m));
    let rel = distribution_relations(m).to_qmat();
    let imgs = rel.mul(&phi.transpose());
    let bad = imgs.row_vecs().iter().filter(|r| !pre.spans(r)).count();
    CheckRecord::new(
        "phi_relations",
        Some(m),
        format!("{} relations", rel.rows()),
        &0usize,
        &bad,
    )
}

/// Kernel of `A_m -> Z[x]/Phi_m`, `[k/m] -> x^k`, as a saturated Hermite basis.
pub fn evaluation_kernel(m: u64) -> IMat {
    let res = power_residues(m, m as usize);
    let e = IMat::from_rows(res[0].len(), res);
    left_kernel(&e)
}

/// The evaluation kernel equals the lattice of predistribution relations.
pub fn em_kernel_check(m: u64) -> CheckRecord {
    let ker = evaluation_kernel(m);
    let pre = hnf_basis(&predistribution_relations(m));
    let rank_ok = ker.rows() + euler_phi(m) as usize == m as usize;
    CheckRecord::with_flag(
        "em_kernel",
        Some(m),
        format!("kernel rank {}", ker.rows()),
        "kernel lattice = predistribution lattice",
        if ker == pre { "equal" } else { "different" },
        ker == pre && rank_ok,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qz_digits() {
        assert!(r0_member(QZElem::new(1, 3)));
        assert!(!r0_member(QZElem::new(2, 3)));
        assert!(!r0_member(QZElem::new(5, 6)));
        assert!(r0_member(QZElem::new(0, 7)));
        assert!(rk_member(QZElem::new(5, 6), 1));
        assert_eq!(QZElem::new(-1, 4), QZElem::new(3, 4));
        // 7/12 = 1/4 + 1/3: digits a_{2,1} = 0 (1/4 = 0/2 + 1/4), a_{3,1} = 1.
        assert!(r0_member(QZElem::new(7, 12)));
    }

    #[test]
    fn operators_on_a4() {
        let x1 = operator_matrix(
            OperatorMonomial {
                n: 1,
                kind: OpKind::X,
            },
            4,
        )
        .unwrap();
        assert!(x1.is_identity());
        let x2 = operator_matrix(
            OperatorMonomial {
                n: 2,
                kind: OpKind::X,
            },
            4,
        )
        .unwrap();
        // Column 1 is a = 1/2: preimages 1/4 and 3/4.
        assert_eq!(x2.col(1), vec![Int::ZERO, Int::ONE, Int::ZERO, Int::ONE]);
        let y2 = operator_matrix(
            OperatorMonomial {
                n: 2,
                kind: OpKind::Y,
            },
            4,
        )
        .unwrap();
        assert_eq!(y2.col(1), vec![Int::ZERO, -Int::ONE, Int::ONE, -Int::ONE]);
        assert!(operator_matrix(
            OperatorMonomial {
                n: 3,
                kind: OpKind::X
            },
            4
        )
        .is_err());
        assert_eq!(y_expansion(4), vec![(1, 1), (2, -2), (4, 1)]);
    }

    #[test]
    fn small_levels() {
        assert_eq!(build_um(1), FgAbGroup::free(1));
        assert_eq!(build_um(12), FgAbGroup::free(4));
        assert_eq!(build_om(4), FgAbGroup::free(2));
        assert!(phi_matrix(1).is_identity());
        let det = crate::linalg::det_exact(&phi_matrix(4)).unwrap();
        assert_eq!(det, Rat::from(2));
        let half = crate::linalg::det_exact(&euler_operator(&[2], 4)).unwrap();
        assert_eq!(half, Rat::new(1, 2));
    }

    /// `sum_{e >= 0} S_p^e / p^e` summed in closed form: the orbit of
    /// `k -> p^e k mod m` has a preperiod `s` and period `t`.
    fn geometric_resolvent(p: u64, m: u64) -> QMat {
        let mut out = QMat::zeros(m as usize, m as usize);
        for k in 0..m {
            let mut seen = std::collections::HashMap::new();
            let mut orbit = Vec::new();
            let mut x = k;
            while !seen.contains_key(&x) {
                seen.insert(x, orbit.len());
                orbit.push(x);
                x = p * x % m;
            }
            let s = seen[&x];
            let t = orbit.len() - s;
            let q = Rat::new(1, p as i64);
            let tail = (Rat::one() - q.pow(t as i32)).recip();
            for (e, &y) in orbit.iter().enumerate() {
                let w = if e < s {
                    q.pow(e as i32)
                } else {
                    q.pow(e as i32) * tail.clone()
                };
                let cell = &mut out[(y as usize, k as usize)];
                *cell = &*cell + &w;
            }
        }
        out
    }

    #[test]
    fn phi_matches_geometric_series() {
        for m in 1..=30u64 {
            let direct = primes_dividing(m)
                .into_iter()
                .fold(QMat::identity(m as usize), |acc, p| {
                    acc.mul(&geometric_resolvent(p, m))
                });
            assert_eq!(direct, phi_matrix(m), "m = {m}");
        }
    }

    #[test]
    fn phi_inverse_matches_mobius_sum() {
        for m in [1u64, 4, 6, 12, 30, 60] {
            let mut mob = QMat::zeros(m as usize, m as usize);
            for n in divisors(m) {
                let mu = mobius(n);
                if mu == 0 {
                    continue;
                }
                for k in 0..m {
                    let cell = &mut mob[((n * k % m) as usize, k as usize)];
                    *cell = &*cell + &Rat::new(mu, n as i64);
                }
            }
            assert_eq!(mob, phi_inverse_matrix(m));
            assert!(phi_matrix(m).mul(&mob).is_identity());
        }
    }

    #[test]
    fn phi_relations_small() {
        assert!(phi_relation_check(1).pass);
        let r = phi_relation_check(6);
        assert!(r.pass && r.inputs.starts_with("5 "), "{r:?}");
        assert!(phi_relation_check(12).pass);
    }

    #[test]
    fn bases_at_small_levels() {
        for m in [1u64, 2, 3, 4, 5, 8, 9, 12, 30] {
            assert!(basis_check(m, OpKind::X).pass, "X m = {m}");
            assert!(basis_check(m, OpKind::Y).pass, "Y m = {m}");
        }
    }

    #[test]
    fn prime_level_kernel() {
        let k = evaluation_kernel(5);
        assert_eq!(k, IMat::from_i64(1, 5, &[1, 1, 1, 1, 1]));
        assert!(em_kernel_check(4).pass);
    }
}
