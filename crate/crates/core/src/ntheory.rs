//! Elementary number theory on machine integers.

/// Prime factorisation as `(p, e)` pairs with `p` ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_dividing(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> u32 {
    factor(n).len() as u32
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

pub fn is_prime_power(n: u64) -> bool {
    factor(n).len() == 1
}

pub fn is_power_of_two(n: u64) -> bool {
    n >= 1 && n.is_power_of_two()
}

/// Divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Squarefree divisors in ascending order.
pub fn squarefree_divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for p in primes_dividing(n) {
        let len = out.len();
        for i in 0..len {
            out.push(out[i] * p);
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Largest power of `p` dividing `n`, as `p^e`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

pub fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1 || m == 1).then(|| s0.rem_euclid(m))
}

/// Multiplicative order of `a` modulo `m`; `None` unless `gcd(a, m) = 1`.
pub fn order_mod(a: u64, m: u64) -> Option<u64> {
    if gcd(a, m) != 1 {
        return None;
    }
    if m == 1 {
        return Some(1);
    }
    let phi = euler_phi(m);
    divisors(phi).into_iter().find(|&d| mod_pow(a, d, m) == 1)
}

/// Solves `x = r_i mod m_i` for pairwise coprime moduli; returns `x mod prod m_i`.
pub fn crt(residues: &[(i64, i64)]) -> (i64, i64) {
    residues.iter().fold((0i64, 1i64), |(x, m), &(r, n)| {
        let inv = mod_inv(m, n).expect("moduli must be coprime");
        let t = ((r - x).rem_euclid(n) as i128 * inv as i128).rem_euclid(n as i128) as i64;
        let mm = m * n;
        ((x + m * t).rem_euclid(mm), mm)
    })
}

/// `true` for levels where the cyclotomic and distribution theory is set up:
/// positive `m` not congruent to 2 mod 4.
pub fn is_admissible_level(m: u64) -> bool {
    m >= 1 && m % 4 != 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(squarefree_divisors(12), vec![1, 2, 3, 6]);
        assert_eq!(euler_phi(105), 48);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(order_mod(2, 7), Some(3));
        assert_eq!(order_mod(2, 8), None);
        assert_eq!(crt(&[(2, 3), (3, 5), (2, 7)]), (23, 105));
    }

    proptest! {
        #[test]
        fn mobius_sums_vanish(n in 2u64..2000) {
            let s: i64 = divisors(n).into_iter().map(mobius).sum();
            prop_assert_eq!(s, 0);
        }

        #[test]
        fn phi_sums_to_n(n in 1u64..2000) {
            let s: u64 = divisors(n).into_iter().map(euler_phi).sum();
            prop_assert_eq!(s, n);
        }

        #[test]
        fn inverse_is_inverse(a in 1i64..500, m in 2i64..500) {
            if let Some(b) = mod_inv(a, m) {
                prop_assert_eq!((a * b).rem_euclid(m), 1);
            } else {
                prop_assert!(gcd(a as u64, m as u64) > 1);
            }
        }
    }
}
