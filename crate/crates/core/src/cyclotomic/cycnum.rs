use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{Int, Rat};
use crate::cyclotomic::poly::power_residues;
use crate::ntheory::gcd;

/// Table of `x^k mod Phi_n` for `k = 0..n`.
fn residue_table(n: u64) -> Arc<Vec<Vec<Int>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Vec<Int>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache").get(&n) {
        return t.clone();
    }
    let t = Arc::new(power_residues(n, n as usize));
    cache.lock().expect("cache").insert(n, t.clone());
    t
}

/// Element of `Q(zeta_n)` as a rational vector in the power basis
/// `1, zeta, .., zeta^{d-1}`, `d = deg Phi_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    level: u64,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(level: u64) -> CycNum {
        let d = residue_table(level)[0].len();
        CycNum {
            level,
            coeffs: vec![Rat::zero(); d],
        }
    }

    pub fn from_rat(level: u64, r: Rat) -> CycNum {
        let mut z = CycNum::zero(level);
        z.coeffs[0] = r;
        z
    }

    pub fn one(level: u64) -> CycNum {
        CycNum::from_rat(level, Rat::one())
    }

    /// `zeta_level^k`.
    pub fn zeta_pow(level: u64, k: i64) -> CycNum {
        let t = residue_table(level);
        let k = k.rem_euclid(level as i64) as usize;
        CycNum {
            level,
            coeffs: t[k].iter().map(|c| Rat::from_int(c.clone())).collect(),
        }
    }

    /// Builds `sum_k a_k zeta^k` from coefficients on arbitrary exponents.
    pub fn from_exponents(level: u64, terms: impl IntoIterator<Item = (i64, Rat)>) -> CycNum {
        let mut acc = vec![Rat::zero(); level as usize];
        for (k, c) in terms {
            let k = k.rem_euclid(level as i64) as usize;
            acc[k] = &acc[k] + &c;
        }
        CycNum::reduce(level, &acc)
    }

    fn reduce(level: u64, by_exponent: &[Rat]) -> CycNum {
        let t = residue_table(level);
        let mut out = CycNum::zero(level);
        for (k, c) in by_exponent.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in t[k % level as usize].iter().enumerate() {
                if !r.is_zero() {
                    out.coeffs[j] = &out.coeffs[j] + &(c * &Rat::from_int(r.clone()));
                }
            }
        }
        out
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn to_rat(&self) -> Option<Rat> {
        self.coeffs[1..]
            .iter()
            .all(Rat::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn same_level(&self, other: &CycNum) {
        assert_eq!(self.level, other.level, "cyclotomic levels differ");
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        self.same_level(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum {
            level: self.level,
            coeffs,
        }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        self.same_level(other);
        let n = self.level as usize;
        let mut acc = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % n;
                    acc[k] = &acc[k] + &(a * b);
                }
            }
        }
        CycNum::reduce(self.level, &acc)
    }

    /// `sigma_a: zeta -> zeta^a`, `gcd(a, level) = 1`.
    pub fn galois(&self, a: i64) -> CycNum {
        let n = self.level as i64;
        assert_eq!(
            gcd(a.rem_euclid(n) as u64, self.level),
            1,
            "sigma_a needs a unit"
        );
        CycNum::from_exponents(
            self.level,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (a * k as i64, c.clone())),
        )
    }

    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// Norm from `Q(zeta_level)` to `Q`.
    pub fn norm(&self) -> Rat {
        let n = self.level;
        let mut acc = CycNum::one(n);
        for a in (1..=n).filter(|&a| gcd(a % n, n) == 1) {
            acc = acc.mul(&self.galois(a as i64));
        }
        acc.to_rat().expect("norm is rational")
    }

    /// Complex value at `zeta = exp(2 pi i / level)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let t = std::f64::consts::TAU * k as f64 / n;
                let v = c.to_f64();
                (re + v * t.cos(), im + v * t.sin())
            })
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
