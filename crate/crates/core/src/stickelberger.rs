//! The group ring `Z[G_m]`, Stickelberger elements and ideals, minus parts,
//! and the lattice `alpha((1 - c) U_m)`.
//!
//! Group ring coordinates are indexed by `t in (Z/m)^*` in increasing order,
//! coordinate `t` holding the coefficient of `sigma_t`.

use std::collections::HashMap;

use crate::arith::{Int, Rat};
use crate::check::CheckRecord;
use crate::cyclotomic::{h_minus, roots_of_unity, unit_index};
use crate::distribution::{conjugation, um_quotient};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, IMat, Lattice, QMat};
use crate::ntheory::{gcd, mod_inv, omega};

/// Element of `Q[G_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElem {
    m: u64,
    coeffs: Vec<Rat>,
}

/// `(Z/m)^*` in increasing order with an index lookup.
#[derive(Clone, Debug)]
pub struct Units {
    m: u64,
    elems: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl Units {
    pub fn new(m: u64) -> Units {
        let elems: Vec<u64> = (1..=m).map(|t| t % m).filter(|&t| gcd(t, m) == 1).collect();
        let mut elems = elems;
        elems.sort_unstable();
        let index = elems.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Units { m, elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn pos(&self, t: i64) -> usize {
        self.index[&(t.rem_euclid(self.m as i64) as u64)]
    }

    pub fn inv(&self, t: u64) -> u64 {
        mod_inv(t as i64, self.m as i64).expect("unit") as u64
    }

    /// Matrix of `v -> v * (1 + c)` (row convention).
    pub fn one_plus_c(&self) -> QMat {
        let n = self.len();
        let mut out = QMat::identity(n);
        for (i, &t) in self.elems.iter().enumerate() {
            let j = self.pos(-(t as i64));
            out[(i, j)] = &out[(i, j)] + &Rat::one();
        }
        out
    }
}

impl GroupRingElem {
    pub fn new(m: u64, coeffs: Vec<Rat>) -> GroupRingElem {
        GroupRingElem { m, coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn level(&self) -> u64 {
        self.m
    }

    pub fn mul(&self, other: &GroupRingElem) -> GroupRingElem {
        let u = Units::new(self.m);
        let mut out = vec![Rat::zero(); u.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = u.pos((u.elems[i] * u.elems[j]) as i64);
                out[k] = &out[k] + &(a * b);
            }
        }
        GroupRingElem {
            m: self.m,
            coeffs: out,
        }
    }

    /// `sigma_t`.
    pub fn sigma(m: u64, t: u64) -> GroupRingElem {
        let u = Units::new(m);
        let mut coeffs = vec![Rat::zero(); u.len()];
        coeffs[u.pos(t as i64)] = Rat::one();
        GroupRingElem { m, coeffs }
    }

    /// `sum_t sigma_t`.
    pub fn norm_element(m: u64) -> GroupRingElem {
        GroupRingElem {
            m,
            coeffs: vec![Rat::one(); Units::new(m).len()],
        }
    }
}

fn check_level(m: u64) -> Result<()> {
    if m % 4 == 2 {
        return Err(Error::InvalidLevel(m));
    }
    if m < 3 {
        return Err(Error::InvalidArgument(format!("level {m} is too small")));
    }
    Ok(())
}

/// `omega(x) = sum_t {x t} sigma_t^{-1}` for `x = k/m`.
pub fn omega_vector(units: &Units, k: i64) -> Vec<Rat> {
    let m = units.m as i64;
    let mut v = vec![Rat::zero(); units.len()];
    for &t in units.elems() {
        let j = units.pos(units.inv(t) as i64);
        v[j] = Rat::new((k * t as i64).rem_euclid(m), m);
    }
    v
}

/// `theta = sum_t {t/m} sigma_t^{-1}`.
pub fn theta_element(m: u64) -> Result<GroupRingElem> {
    check_level(m)?;
    Ok(GroupRingElem {
        m,
        coeffs: omega_vector(&Units::new(m), 1),
    })
}

/// `R^- = ker(1 + c)` in `Z[G]`.
pub fn r_minus(units: &Units) -> Lattice {
    let rows: Vec<Vec<Int>> = units
        .elems()
        .iter()
        .filter(|&&t| 2 * t < units.m)
        .map(|&t| {
            let mut v = vec![Int::ZERO; units.len()];
            v[units.pos(t as i64)] = Int::ONE;
            v[units.pos(-(t as i64))] = Int::from(-1);
            v
        })
        .collect();
    Lattice::from_int_rows(&IMat::from_rows(units.len(), rows))
}

/// Stickelberger ideal and minus parts at level `m`.
#[derive(Clone, Debug)]
pub struct StickelbergerData {
    pub m: u64,
    pub theta: GroupRingElem,
    pub s: Lattice,
    pub s_minus: Lattice,
    pub r_minus: Lattice,
}

/// `S = S' cap Z[G]` with `S'` the span of all `omega(x)`, `x in (1/m)Z/Z`.
pub fn stickelberger_ideal(m: u64) -> Result<StickelbergerData> {
    let theta = theta_element(m)?;
    let units = Units::new(m);
    let rows: Vec<Vec<Rat>> = (0..m as i64).map(|k| omega_vector(&units, k)).collect();
    let s_prime = Lattice::from_rows(&QMat::from_rows(units.len(), rows));
    finish(m, theta, &units, &s_prime)
}

/// `Z[G] theta cap Z[G]`, kept as a contrast to [`stickelberger_ideal`].
pub fn principal_stickelberger_ideal(m: u64) -> Result<StickelbergerData> {
    let theta = theta_element(m)?;
    let units = Units::new(m);
    let rows: Vec<Vec<Rat>> = units
        .elems()
        .iter()
        .map(|&s| GroupRingElem::sigma(m, s).mul(&theta).coeffs)
        .collect();
    let r_theta = Lattice::from_rows(&QMat::from_rows(units.len(), rows));
    finish(m, theta, &units, &r_theta)
}

fn finish(
    m: u64,
    theta: GroupRingElem,
    units: &Units,
    span: &Lattice,
) -> Result<StickelbergerData> {
    let s = span.intersect(&Lattice::standard(units.len()))?;
    let s_minus = s.intersect_kernel(&units.one_plus_c())?;
    Ok(StickelbergerData {
        m,
        theta,
        s,
        s_minus,
        r_minus: r_minus(units),
    })
}

/// `alpha(x) = sum_t (1/2 - {x t}) sigma_t^{-1}` for `x = k/m`, zero for `x = 0`.
pub fn alpha_vector(units: &Units, k: i64) -> Vec<Rat> {
    if k.rem_euclid(units.m as i64) == 0 {
        return vec![Rat::zero(); units.len()];
    }
    let half = Rat::new(1, 2);
    omega_vector(units, k)
        .into_iter()
        .map(|x| &half - &x)
        .collect()
}

/// The lattice `alpha((1 - c) U_m)`, spanned by `alpha(x)` over `x in (1/m)Z/Z`.
pub fn alpha_lattice(m: u64) -> Result<Lattice> {
    check_level(m)?;
    let units = Units::new(m);
    let rows: Vec<Vec<Rat>> = (0..m as i64).map(|k| alpha_vector(&units, k)).collect();
    Ok(Lattice::from_rows(&QMat::from_rows(units.len(), rows)))
}

/// `(U^- : (1 - c) U)` computed on the free coordinates of `U_m`.
pub fn u_minus_index(m: u64) -> Result<Rat> {
    check_level(m)?;
    let q = um_quotient(m);
    if !q.group().is_free() {
        return Err(Error::NotFree(format!("U_{m} = {}", q.group())));
    }
    // Involution on U_m, row convention.
    let c = q
        .free_lifts()
        .mul(&conjugation(m).transpose())
        .mul(&q.free_projection());
    let n = c.rows();
    let minus = Lattice::from_int_rows(&kernel_basis(&c.add(&IMat::identity(n)).transpose()));
    let image = Lattice::from_int_rows(&IMat::identity(n).sub(&c));
    minus.index(&image)
}

fn expected_u_minus(m: u64) -> Rat {
    Rat::from(2).pow(1 << (omega(m) - 1))
}

pub fn u_minus_index_check(m: u64) -> CheckRecord {
    match u_minus_index(m) {
        Ok(v) => CheckRecord::new(
            "u_minus_index",
            Some(m),
            format!("r = {}", omega(m)),
            &expected_u_minus(m),
            &v,
        ),
        Err(e) => CheckRecord::error("u_minus_index", Some(m), "", &e),
    }
}

/// `h^-/(wQ)` times `2^{2^{r-2}}` when `r > 1`.
pub fn expected_sin6(m: u64) -> Result<Rat> {
    let h = h_minus(m)?;
    let base = Rat::new(h as i64, (roots_of_unity(m) * unit_index(m)) as i64);
    let r = omega(m);
    Ok(if r > 1 {
        base * Rat::from(2).pow(1 << (r - 2))
    } else {
        base
    })
}

/// `(R^- : alpha((1 - c) U))`.
pub fn sin6_value(m: u64) -> Result<Rat> {
    let units = Units::new(m);
    r_minus(&units).index(&alpha_lattice(m)?)
}

pub fn sin6_check(m: u64) -> CheckRecord {
    match sin6_value(m).and_then(|v| Ok((v, expected_sin6(m)?))) {
        Ok((v, want)) => CheckRecord::new("sin6", Some(m), "h^- from B_1 norms", &want, &v),
        Err(e) => CheckRecord::error("sin6", Some(m), "", &e),
    }
}

/// `a = 0` for `r = 1`, `2^{r-2} - 1` for `r > 1`.
pub fn two_exponent(m: u64) -> u32 {
    match omega(m) {
        0 | 1 => 0,
        r => (1 << (r - 2)) - 1,
    }
}

/// `[R^- : S^-]`.
pub fn minus_index(data: &StickelbergerData) -> Result<Rat> {
    data.r_minus.index(&data.s_minus)
}

pub fn main_theorem_check(m: u64) -> CheckRecord {
    let run = || -> Result<(Rat, Rat)> {
        let lhs = minus_index(&stickelberger_ideal(m)?)?;
        let rhs = Rat::from(2).pow(two_exponent(m) as i32) * Rat::from(h_minus(m)? as i64);
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => CheckRecord::new(
            "stickelberger_index",
            Some(m),
            format!("a = {}", two_exponent(m)),
            &rhs,
            &lhs,
        ),
        Err(e) => CheckRecord::error("stickelberger_index", Some(m), "", &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(a, b)| Rat::new(a, b)).collect()
    }

    #[test]
    fn theta_small() {
        // sigma_1^{-1} = sigma_1, sigma_2^{-1} = sigma_2 mod 3.
        assert_eq!(
            theta_element(3).unwrap().coeffs(),
            rats(&[(1, 3), (2, 3)]).as_slice()
        );
        // Mod 5: sigma_t^{-1} has coefficient {t/5}; inverses 1,3,2,4.
        assert_eq!(
            theta_element(5).unwrap().coeffs(),
            rats(&[(1, 5), (3, 5), (2, 5), (4, 5)]).as_slice()
        );
        assert!(theta_element(6).is_err());
    }

    #[test]
    fn one_plus_c_theta_is_norm() {
        for m in [3u64, 5, 12, 15] {
            let th = theta_element(m).unwrap();
            let one_plus_c = GroupRingElem::sigma(m, 1)
                .coeffs
                .iter()
                .zip(GroupRingElem::sigma(m, m - 1).coeffs.iter())
                .map(|(a, b)| a + b)
                .collect();
            let prod = GroupRingElem::new(m, one_plus_c).mul(&th);
            assert_eq!(prod, GroupRingElem::norm_element(m));
        }
    }

    #[test]
    fn ideal_ranks() {
        for m in [5u64, 7, 12] {
            let d = stickelberger_ideal(m).unwrap();
            let half = Units::new(m).len() / 2;
            assert_eq!(d.s.rank(), half + 1);
            assert!(d.s.is_integral());
            assert_eq!(d.s_minus.rank(), half);
            assert_eq!(alpha_lattice(m).unwrap().rank(), half);
        }
    }

    #[test]
    fn alpha_values() {
        let u = Units::new(3);
        assert_eq!(alpha_vector(&u, 1), rats(&[(1, 6), (-1, 6)]));
        assert!(alpha_vector(&u, 0).iter().all(Rat::is_zero));
        let u4 = Units::new(4);
        assert!(alpha_vector(&u4, 2).iter().all(Rat::is_zero));
    }

    #[test]
    fn indices_small() {
        assert_eq!(u_minus_index(5).unwrap(), Rat::from(2));
        assert_eq!(u_minus_index(12).unwrap(), Rat::from(4));
        assert_eq!(sin6_value(5).unwrap(), Rat::new(1, 10));
        assert_eq!(sin6_value(12).unwrap(), Rat::new(1, 12));
        for m in [5u64, 7, 12, 15] {
            assert!(main_theorem_check(m).pass, "{m}");
            assert!(sin6_check(m).pass, "{m}");
        }
    }

    #[test]
    fn principal_ideal_differs() {
        let d = principal_stickelberger_ideal(12).unwrap();
        assert_eq!(minus_index(&d).unwrap(), Rat::from(2));
    }
}
