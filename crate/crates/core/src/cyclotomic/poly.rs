use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::Int;
use crate::ntheory::divisors;

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Int> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Int>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![Int::ZERO; n as usize + 1];
    num[0] = Int::from(-1);
    num[n as usize] = Int::ONE;
    for d in divisors(n) {
        if d < n {
            num = div_exact_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().expect("cache").insert(n, num.clone());
    num
}

/// Exact quotient of `a` by a monic `b`.
fn div_exact_monic(a: &[Int], b: &[Int]) -> Vec<Int> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![Int::ZERO; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&c * bj);
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

/// Residues of `x^k` modulo `Phi_n` for `k = 0..count`, each of length `deg Phi_n`.
pub fn power_residues(n: u64, count: usize) -> Vec<Vec<Int>> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut cur = vec![Int::ZERO; deg];
    if deg > 0 {
        cur[0] = Int::ONE;
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(cur.clone());
        // Multiply by x and reduce with the monic Phi_n.
        let top = cur[deg - 1].clone();
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1].clone();
        }
        cur[0] = Int::ZERO;
        if !top.is_zero() {
            for j in 0..deg {
                cur[j] = &cur[j] - &(&top * &phi[j]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&Int::from(-2)));
    }

    #[test]
    fn residues_wrap_around() {
        let r = power_residues(3, 4);
        assert_eq!(r[2], ints(&[-1, -1]));
        assert_eq!(r[3], ints(&[1, 0]));
    }
}
