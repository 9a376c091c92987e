use std::collections::BTreeSet;

use crate::arith::Rat;
use crate::check::CheckRecord;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::ntheory::{crt, divisors, euler_phi, factor, gcd, lcm, mod_pow, order_mod};

/// Cyclic decomposition of `(Z/f)^*`: generators lifted by CRT and their orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    pub modulus: u64,
    pub gens: Vec<u64>,
    pub orders: Vec<u64>,
}

fn smallest_primitive_root(pe: u64) -> u64 {
    let phi = euler_phi(pe);
    (2..pe)
        .find(|&g| order_mod(g, pe) == Some(phi))
        .expect("odd prime powers are cyclic")
}

impl UnitGroup {
    pub fn new(f: u64) -> UnitGroup {
        let parts: Vec<(u64, u32)> = factor(f);
        let mut local: Vec<(usize, u64, u64)> = Vec::new();
        for (idx, &(p, e)) in parts.iter().enumerate() {
            let pe = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    local.push((idx, pe - 1, 2));
                }
                if e >= 3 {
                    local.push((idx, 5, pe / 4));
                }
            } else {
                local.push((idx, smallest_primitive_root(pe), euler_phi(pe)));
            }
        }
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (idx, g, ord) in local {
            let residues: Vec<(i64, i64)> = parts
                .iter()
                .enumerate()
                .map(|(j, &(p, e))| {
                    let pe = p.pow(e) as i64;
                    (if j == idx { g as i64 } else { 1 }, pe)
                })
                .collect();
            gens.push(crt(&residues).0 as u64);
            orders.push(ord);
        }
        UnitGroup {
            modulus: f,
            gens,
            orders,
        }
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| lcm(a, b))
    }

    /// Discrete logarithms `a -> (e_i)` with `a = prod g_i^{e_i}`, indexed by residue.
    pub fn log_table(&self) -> Vec<Option<Vec<u64>>> {
        let f = self.modulus;
        let mut table = vec![None; f as usize];
        let mut exps = vec![0u64; self.gens.len()];
        loop {
            let a = self
                .gens
                .iter()
                .zip(&exps)
                .fold(1 % f, |acc, (&g, &e)| acc * mod_pow(g, e, f) % f);
            table[a as usize] = Some(exps.clone());
            let mut k = 0;
            loop {
                if k == exps.len() {
                    return table;
                }
                exps[k] += 1;
                if exps[k] < self.orders[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }
}

/// Dirichlet character modulo `f` with values `zeta_E^{v(a)}`, `E` the exponent
/// of `(Z/f)^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    modulus: u64,
    base: u64,
    values: Vec<Option<u64>>,
    conductor: u64,
}

impl DirichletChar {
    fn from_values(modulus: u64, base: u64, values: Vec<Option<u64>>) -> DirichletChar {
        let mut chi = DirichletChar {
            modulus,
            base,
            values,
            conductor: modulus,
        };
        chi.conductor = chi.compute_conductor();
        chi
    }

    fn compute_conductor(&self) -> u64 {
        let f = self.modulus;
        divisors(f)
            .into_iter()
            .find(|&d| {
                (0..f)
                    .filter(|&a| a % d == 1 % d)
                    .all(|a| matches!(self.values[a as usize], None | Some(0)))
            })
            .unwrap_or(f)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| matches!(v, None | Some(0)))
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.modulus > 2
            && self.values[(self.modulus - 1) as usize] == Some(self.base / 2)
            && self.base.is_multiple_of(2)
    }

    /// Order of the character.
    pub fn order(&self) -> u64 {
        let g = self
            .values
            .iter()
            .flatten()
            .fold(self.base, |g, &v| gcd(g, v));
        self.base / g
    }

    /// `chi(a)` as `Some(k)` meaning `zeta_order^k`; `None` when `gcd(a, f) > 1`.
    pub fn value(&self, a: i64) -> Option<u64> {
        let k = self.values[a.rem_euclid(self.modulus as i64) as usize]?;
        let step = self.base / self.order();
        Some(k / step)
    }

    /// `chi(a)` in `Q(zeta_order)`, zero off the units.
    pub fn value_cyc(&self, a: i64) -> CycNum {
        let n = self.order();
        match self.value(a) {
            Some(k) => CycNum::zeta_pow(n, k as i64),
            None => CycNum::zero(n),
        }
    }

    /// Complex conjugate character.
    pub fn conj(&self) -> DirichletChar {
        let values = self
            .values
            .iter()
            .map(|v| v.map(|k| (self.base - k) % self.base))
            .collect();
        DirichletChar::from_values(self.modulus, self.base, values)
    }

    /// `chi^t`.
    pub fn power(&self, t: u64) -> DirichletChar {
        let values = self
            .values
            .iter()
            .map(|v| v.map(|k| k * t % self.base))
            .collect();
        DirichletChar::from_values(self.modulus, self.base, values)
    }

    /// The primitive character inducing this one, at modulus equal to the conductor.
    pub fn primitive(&self) -> DirichletChar {
        let d = self.conductor;
        if d == self.modulus {
            return self.clone();
        }
        let ug = UnitGroup::new(d);
        let base = ug.exponent();
        let values = (0..d)
            .map(|a| {
                if gcd(a, d) != 1 {
                    return None;
                }
                let lift = (0..self.modulus / d)
                    .map(|t| a + t * d)
                    .find(|&b| gcd(b, self.modulus) == 1)?;
                let k = self.value(lift as i64)?;
                Some(k * base / self.order())
            })
            .collect();
        DirichletChar::from_values(d, base, values)
    }

    /// Galois orbit key: the set of value vectors of `chi^t`, `gcd(t, order) = 1`.
    fn orbit_key(&self) -> Vec<Option<u64>> {
        let n = self.order();
        (1..=n)
            .filter(|&t| gcd(t, n) == 1)
            .map(|t| self.power(t).values)
            .min()
            .expect("nonempty orbit")
    }
}

/// All `phi(f)` characters modulo `f`, in lexicographic order of generator exponents.
pub fn enumerate_chars(f: u64) -> Vec<DirichletChar> {
    let ug = UnitGroup::new(f);
    let base = ug.exponent();
    let logs = ug.log_table();
    let mut out = Vec::new();
    let mut js = vec![0u64; ug.gens.len()];
    loop {
        let values = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|es| {
                    es.iter()
                        .zip(&js)
                        .zip(&ug.orders)
                        .map(|((&e, &j), &o)| e * j * (base / o))
                        .sum::<u64>()
                        % base
                })
            })
            .collect();
        out.push(DirichletChar::from_values(f, base, values));
        let mut k = 0;
        loop {
            if k == js.len() {
                return out;
            }
            js[k] += 1;
            if js[k] < ug.orders[k] {
                break;
            }
            js[k] = 0;
            k += 1;
        }
    }
}

/// Representatives of the Galois orbits of a set of characters, with orbit sizes.
pub fn galois_orbits(chars: &[DirichletChar]) -> Vec<(DirichletChar, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for chi in chars {
        let key = chi.orbit_key();
        if seen.insert(key) {
            out.push((chi.clone(), euler_phi(chi.order()) as usize));
        }
    }
    out
}

/// `B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a`, at the modulus of `chi` or, with
/// `primitive`, at its conductor.
pub fn b1_chi(chi: &DirichletChar, primitive: bool) -> Result<CycNum> {
    if chi.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let chi = if primitive {
        chi.primitive()
    } else {
        chi.clone()
    };
    let f = chi.modulus();
    let n = chi.order();
    let terms =
        (1..=f).filter_map(|a| chi.value(a as i64).map(|k| (k as i64, Rat::from(a as i64))));
    Ok(CycNum::from_exponents(n, terms).scale(&Rat::new(1, f as i64)))
}

/// Roots of unity in `Q(zeta_m)`.
pub fn roots_of_unity(m: u64) -> u64 {
    if m % 2 == 1 {
        2 * m
    } else {
        m
    }
}

/// Unit index `Q`: 1 for prime powers, 2 otherwise.
pub fn unit_index(m: u64) -> u64 {
    if factor(m).len() <= 1 {
        1
    } else {
        2
    }
}

fn check_level(m: u64) -> Result<()> {
    if m % 4 == 2 {
        return Err(Error::InvalidLevel(m));
    }
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "relative class number needs m >= 3, got {m}"
        )));
    }
    Ok(())
}

/// Norms `N(-B_{1,chi}/2)` over the Galois orbits of odd characters mod `m`,
/// with the conductor of each orbit.
pub fn odd_orbit_norms(m: u64) -> Result<Vec<(u64, Rat)>> {
    let odd: Vec<DirichletChar> = enumerate_chars(m)
        .into_iter()
        .filter(DirichletChar::is_odd)
        .collect();
    galois_orbits(&odd)
        .into_iter()
        .map(|(chi, _)| {
            let b = b1_chi(&chi, true)?;
            Ok((chi.conductor(), b.scale(&Rat::new(-1, 2)).norm()))
        })
        .collect()
}

/// Relative class number of `Q(zeta_m)`.
pub fn h_minus(m: u64) -> Result<u64> {
    check_level(m)?;
    let prod: Rat = odd_orbit_norms(m)?.into_iter().map(|(_, r)| r).product();
    let h = prod * Rat::from((unit_index(m) * roots_of_unity(m)) as i64);
    match h.to_int().and_then(|i| i.to_i64()) {
        Some(v) if v > 0 => Ok(v as u64),
        _ => Err(Error::NonIntegral(format!(
            "h^- at m = {m} came out as {h}"
        ))),
    }
}

/// Floating-point `L(1, chi)` for a nontrivial primitive character, from
/// `L(1, chi) = -(1/f) sum_a chi(a) psi(a/f)`.
pub fn l_value_float(chi: &DirichletChar) -> (f64, f64) {
    let f = chi.modulus();
    let n = chi.order() as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for a in 1..f {
        if let Some(k) = chi.value(a as i64) {
            let t = std::f64::consts::TAU * k as f64 / n;
            let psi = statrs::function::gamma::digamma(a as f64 / f as f64);
            re -= t.cos() * psi;
            im -= t.sin() * psi;
        }
    }
    (re / f as f64, im / f as f64)
}

/// Compares `|L(1, chi)|` with `pi |B_{1, conj chi}| / sqrt f` for every odd
/// character mod `m`; returns the largest relative deviation.
pub fn l_value_deviation(m: u64) -> Result<f64> {
    let mut worst = 0.0f64;
    for chi in enumerate_chars(m).into_iter().filter(DirichletChar::is_odd) {
        let p = chi.primitive();
        let (re, im) = l_value_float(&p);
        let (bre, bim) = b1_chi(&p.conj(), false)?.to_complex();
        let exact = std::f64::consts::PI * bre.hypot(bim) / (p.modulus() as f64).sqrt();
        worst = worst.max((re.hypot(im) - exact).abs() / exact);
    }
    Ok(worst)
}

/// `c_{p,f}`: order of `p` modulo `f`, with `c_{p,1} = 1`.
pub fn order_mod_checked(p: u64, f: u64) -> Result<u64> {
    order_mod(p, f).ok_or(Error::NotCoprime(p, f))
}

/// `a_{p,f} = (1 - p^{-c})^{-phi(f)/c}`.
pub fn a_pf(p: u64, f: u64) -> Result<Rat> {
    let c = order_mod_checked(p, f)?;
    let base = Rat::one() - Rat::new(1, p as i64).pow(c as i32);
    Ok(base.pow(-((euler_phi(f) / c) as i32)))
}

/// Product of `(1 - chi(p)/p)^{-1}` over the odd characters mod `f`.
///
/// Equals `(1 + p^{-c/2})^{-phi(f)/c}` when `-1` is a power of `p` mod `f`,
/// `(1 - p^{-c})^{-phi(f)/(2c)}` otherwise, and 1 for `f <= 2`.
pub fn b_pf(p: u64, f: u64) -> Result<Rat> {
    let c = order_mod_checked(p, f)?;
    if f <= 2 {
        return Ok(Rat::one());
    }
    let phi = euler_phi(f);
    let q = Rat::new(1, p as i64);
    if c % 2 == 0 && mod_pow(p, c / 2, f) == f - 1 {
        Ok((Rat::one() + q.pow((c / 2) as i32)).pow(-((phi / c) as i32)))
    } else {
        Ok((Rat::one() - q.pow(c as i32)).pow(-((phi / (2 * c)) as i32)))
    }
}

/// `prod_chi (1 - chi(p)/p)^{-1}` over all (or only odd) characters mod `f`,
/// evaluated in cyclotomic arithmetic.
pub fn euler_factor_product(p: u64, f: u64, odd_only: bool) -> Result<Rat> {
    if gcd(p, f) != 1 {
        return Err(Error::NotCoprime(p, f));
    }
    let chars: Vec<DirichletChar> = enumerate_chars(f)
        .into_iter()
        .filter(|c| !odd_only || c.is_odd())
        .collect();
    let base = UnitGroup::new(f).exponent();
    let mut acc = CycNum::one(base);
    for chi in &chars {
        // chi(p) as a power of zeta_base.
        let k = chi.values[(p % f) as usize].expect("p is a unit");
        let term =
            CycNum::one(base).sub(&CycNum::zeta_pow(base, k as i64).scale(&Rat::new(1, p as i64)));
        acc = acc.mul(&term);
    }
    let r = acc
        .to_rat()
        .ok_or_else(|| Error::NonIntegral("Euler product not rational".into()))?;
    Ok(r.recip())
}

/// Character products against `a_{p,f}` (all characters) and `b_{p,f}` (odd ones).
pub fn euler_factor_check(p: u64, f: u64) -> Vec<CheckRecord> {
    let inputs = format!("p = {p}, f = {f}");
    [("euler_factor_a", false), ("euler_factor_b", true)]
        .into_iter()
        .map(|(name, odd)| {
            let closed = if odd { b_pf(p, f) } else { a_pf(p, f) };
            match closed.and_then(|c| Ok((c, euler_factor_product(p, f, odd)?))) {
                Ok((want, got)) => CheckRecord::new(name, Some(f), inputs.clone(), &want, &got),
                Err(e) => CheckRecord::error(name, Some(f), inputs.clone(), &e),
            }
        })
        .collect()
}

/// `h^-` is a positive integer.
pub fn h_minus_check(m: u64) -> CheckRecord {
    match h_minus(m) {
        Ok(h) => CheckRecord::with_flag(
            "h_minus_integral",
            Some(m),
            "",
            "positive integer",
            h.to_string(),
            true,
        ),
        Err(e) => CheckRecord::error("h_minus_integral", Some(m), "", &e),
    }
}

/// Largest relative deviation between `|L(1, chi)|` from digamma sums and
/// from `B_{1, chi}`, against `tol`.
pub fn l_value_check(m: u64, tol: f64) -> CheckRecord {
    match l_value_deviation(m) {
        Ok(d) => CheckRecord::with_flag(
            "l_value_float",
            Some(m),
            "odd characters",
            format!("relative deviation < {tol:e}"),
            format!("{d:.3e}"),
            d < tol,
        ),
        Err(e) => CheckRecord::error("l_value_float", Some(m), "", &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_groups() {
        let u = UnitGroup::new(8);
        assert_eq!((u.gens.clone(), u.orders.clone()), (vec![7, 5], vec![2, 2]));
        let u = UnitGroup::new(15);
        assert_eq!(u.orders, vec![2, 4]);
        assert_eq!(u.log_table().iter().flatten().count(), 8);
        assert!(UnitGroup::new(2).gens.is_empty());
    }

    #[test]
    fn character_counts() {
        for m in [4u64, 5, 12, 15, 16, 21] {
            let ch = enumerate_chars(m);
            assert_eq!(ch.len() as u64, euler_phi(m));
            assert_eq!(
                ch.iter().filter(|c| c.is_odd()).count() as u64,
                euler_phi(m) / 2
            );
            assert_eq!(ch.iter().filter(|c| c.is_trivial()).count(), 1);
        }
        let c12 = enumerate_chars(12);
        let conductors: BTreeSet<u64> = c12.iter().map(|c| c.conductor()).collect();
        assert_eq!(conductors, [1, 3, 4, 12].into_iter().collect());
    }

    #[test]
    fn bernoulli_small() {
        let odd4 = enumerate_chars(4).into_iter().find(|c| c.is_odd()).unwrap();
        assert_eq!(b1_chi(&odd4, true).unwrap().to_rat(), Some(Rat::new(-1, 2)));
        let odd3 = enumerate_chars(3).into_iter().find(|c| c.is_odd()).unwrap();
        assert_eq!(b1_chi(&odd3, true).unwrap().to_rat(), Some(Rat::new(-1, 3)));
        let triv = enumerate_chars(5)
            .into_iter()
            .find(|c| c.is_trivial())
            .unwrap();
        assert!(matches!(b1_chi(&triv, false), Err(Error::TrivialCharacter)));
    }

    #[test]
    fn conjugate_bernoulli() {
        for chi in enumerate_chars(13).into_iter().filter(|c| !c.is_trivial()) {
            let b = b1_chi(&chi, true).unwrap();
            let bc = b1_chi(&chi.conj(), true).unwrap();
            let n = chi.order();
            // Both live in Q(zeta_n) with matching levels.
            assert_eq!(bc.level(), n);
            assert_eq!(bc, b.conj());
        }
    }

    #[test]
    fn relative_class_numbers() {
        for m in [3u64, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 20, 21, 24] {
            assert_eq!(h_minus(m).unwrap(), 1, "m = {m}");
        }
        assert_eq!(h_minus(23).unwrap(), 3);
        assert!(matches!(h_minus(6), Err(Error::InvalidLevel(6))));
    }

    #[test]
    fn l_values_agree() {
        assert!(l_value_deviation(23).unwrap() < 1e-6);
    }

    #[test]
    fn local_factors() {
        assert_eq!(order_mod_checked(2, 1).unwrap(), 1);
        assert_eq!(a_pf(2, 1).unwrap(), Rat::from(2));
        assert_eq!(a_pf(2, 3).unwrap(), Rat::new(4, 3));
        assert_eq!(b_pf(2, 3).unwrap(), Rat::new(2, 3));
        assert_eq!(order_mod_checked(3, 5).unwrap(), 4);
        assert_eq!(a_pf(3, 5).unwrap(), Rat::new(81, 80));
        assert_eq!(b_pf(3, 8).unwrap(), Rat::new(9, 8));
        assert!(a_pf(3, 6).is_err());
    }

    #[test]
    fn factors_match_character_products() {
        for f in [1u64, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20] {
            for p in [2u64, 3, 5, 7, 11] {
                if gcd(p, f) != 1 {
                    continue;
                }
                assert_eq!(
                    euler_factor_product(p, f, false).unwrap(),
                    a_pf(p, f).unwrap(),
                    "a p={p} f={f}"
                );
                assert_eq!(
                    euler_factor_product(p, f, true).unwrap(),
                    b_pf(p, f).unwrap(),
                    "b p={p} f={f}"
                );
            }
        }
    }
}
