//! Exact integers and rationals.
//!
//! [`Int`] keeps values that fit in an `i64` inline and only promotes to a
//! heap-allocated [`BigInt`] on overflow. Almost every matrix this crate builds
//! has entries in `{-2, ..., 2}`, so the inline path carries nearly all of the
//! arithmetic while intermediate growth during elimination stays exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};

/// Arbitrary-precision integer with an inline small representation.
///
/// Canonical: `Large` never holds a value that fits in an `i64`.
#[derive(Clone)]
pub enum Int {
    Small(i64),
    Large(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Large(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Large(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Large(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Large(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Large(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                match i64::try_from(x) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Large(BigInt::from(x)),
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        (self / &self.gcd(other) * other).abs()
    }

    /// Quotient rounded toward negative infinity.
    pub fn div_floor(&self, d: &Int) -> Int {
        assert!(!d.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, d) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return if r != 0 && ((r < 0) != (*b < 0)) {
                    Int::Small(q - 1)
                } else {
                    Int::Small(q)
                };
            }
        }
        Int::from_big(self.to_big().div_floor(&d.to_big()))
    }

    /// Remainder with the sign of the divisor (so in `[0, d)` for `d > 0`).
    pub fn mod_floor(&self, d: &Int) -> Int {
        self - &(&self.div_floor(d) * d)
    }

    /// Division that is known to be exact.
    pub fn div_exact(&self, d: &Int) -> Int {
        let q = self.div_floor(d);
        debug_assert!((&q * d) == *self, "inexact division {self} / {d}");
        q
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor(self).is_zero()
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

macro_rules! int_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(v: $t) -> Int {
                match i64::try_from(v) {
                    Ok(s) => Int::Small(s),
                    Err(_) => Int::Large(BigInt::from(v)),
                }
            }
        }
    )*};
}
int_from!(i8, i16, i32, i64, u8, u16, u32, u64, usize, i128, u128);

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Large(a), Int::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => v.hash(state),
            Int::Large(b) => b.hash(state),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Large(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Large(-BigInt::from(*v)),
            },
            Int::Large(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! int_binop {
    ($tr:ident, $method:ident, $checked:ident, $big:tt) => {
        impl $tr<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_big() $big rhs.to_big())
            }
        }
        impl $tr<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                <&Int as $tr<&Int>>::$method(&self, &rhs)
            }
        }
        impl $tr<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                <&Int as $tr<&Int>>::$method(&self, rhs)
            }
        }
        impl $tr<Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                <&Int as $tr<&Int>>::$method(self, &rhs)
            }
        }
    };
}
int_binop!(Add, add, checked_add, +);
int_binop!(Sub, sub, checked_sub, -);
int_binop!(Mul, mul, checked_mul, *);

/// Floor division, matching [`Int::div_floor`].
impl Div<&Int> for &Int {
    type Output = Int;
    fn div(self, rhs: &Int) -> Int {
        self.div_floor(rhs)
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |a, b| a + b)
    }
}

impl std::iter::Product for Int {
    fn product<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ONE, |a, b| a * b)
    }
}

/// Exact rational, always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int,
}

impl Rat {
    pub fn zero() -> Rat {
        Rat {
            num: Int::ZERO,
            den: Int::ONE,
        }
    }

    pub fn one() -> Rat {
        Rat {
            num: Int::ONE,
            den: Int::ONE,
        }
    }

    /// Builds `num / den` in lowest terms. Panics on a zero denominator.
    pub fn new(num: impl Into<Int>, den: impl Into<Int>) -> Rat {
        let (num, den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator");
        if den.is_one() {
            return Rat { num, den };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g), den.div_exact(&g));
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Rat { num: n, den: d }
    }

    pub fn from_int(v: impl Into<Int>) -> Rat {
        Rat {
            num: v.into(),
            den: Int::ONE,
        }
    }

    pub fn numer(&self) -> &Int {
        &self.num
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_int(&self) -> Option<Int> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn signum(&self) -> i32 {
        self.num.signum()
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat::new(self.den.clone(), self.num.clone())
    }

    pub fn floor(&self) -> Int {
        self.num.div_floor(&self.den)
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        Rat::new(self.num.mod_floor(&self.den), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Rat {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let e = e.unsigned_abs();
        Rat {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match (&self.num, &self.den) {
            (Int::Small(n), Int::Small(d)) => *n as f64 / *d as f64,
            _ => {
                let (n, d) = (self.num.to_big(), self.den.to_big());
                let shift = d.bits().saturating_sub(60).max(n.bits().saturating_sub(60));
                ((n >> shift).to_f64().unwrap_or(f64::NAN))
                    / ((d >> shift).to_f64().unwrap_or(f64::NAN))
            }
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<Int> for Rat {
    fn from(v: Int) -> Rat {
        Rat::from_int(v)
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::from_int(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl Add<&Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if self.den == rhs.den {
            return Rat::new(&self.num + &rhs.num, self.den.clone());
        }
        Rat::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Rat> for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        if self.den == rhs.den {
            return Rat::new(&self.num - &rhs.num, self.den.clone());
        }
        Rat::new(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul<&Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rat::from_int(&self.num * &rhs.num);
        }
        Rat::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! rat_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                <&Rat as $tr<&Rat>>::$method(&self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                <&Rat as $tr<&Rat>>::$method(&self, rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                <&Rat as $tr<&Rat>>::$method(self, &rhs)
            }
        }
    };
}
rat_owned!(Add, add);
rat_owned!(Sub, sub);
rat_owned!(Mul, mul);
rat_owned!(Div, div);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl std::iter::Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

/// Ring operations needed by the generic dense matrix code.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for Int {
    fn zero() -> Int {
        Int::ZERO
    }
    fn one() -> Int {
        Int::ONE
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn add(&self, rhs: &Int) -> Int {
        self + rhs
    }
    fn sub(&self, rhs: &Int) -> Int {
        self - rhs
    }
    fn mul(&self, rhs: &Int) -> Int {
        self * rhs
    }
    fn neg(&self) -> Int {
        -self
    }
}

impl Scalar for Rat {
    fn zero() -> Rat {
        Rat::zero()
    }
    fn one() -> Rat {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Rat) -> Rat {
        self + rhs
    }
    fn sub(&self, rhs: &Rat) -> Rat {
        self - rhs
    }
    fn mul(&self, rhs: &Rat) -> Rat {
        self * rhs
    }
    fn neg(&self) -> Rat {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX) + Int::from(1);
        assert!(matches!(big, Int::Large(_)));
        let back = &big - &Int::from(1);
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = Int::from(i64::MIN) * Int::from(i64::MIN);
        assert_eq!(sq.div_exact(&Int::from(i64::MIN)), Int::from(i64::MIN));
        assert_eq!(-Int::from(i64::MIN), Int::from(i64::MAX) + Int::ONE);
    }

    #[test]
    fn floor_division_signs() {
        let cases = [(7, 2, 3), (-7, 2, -4), (7, -2, -4), (-7, -2, 3), (6, 3, 2)];
        for (a, b, q) in cases {
            assert_eq!(Int::from(a).div_floor(&Int::from(b)), Int::from(q));
        }
        assert_eq!(Int::from(-7).mod_floor(&Int::from(3)), Int::from(2));
    }

    #[test]
    fn rational_normalisation() {
        let r = Rat::new(6, -4);
        assert_eq!(r.numer(), &Int::from(-3));
        assert_eq!(r.denom(), &Int::from(2));
        assert_eq!(Rat::new(-5, 3).fract(), Rat::new(1, 3));
        assert_eq!(Rat::new(2, 3).pow(-2), Rat::new(9, 4));
    }

    proptest! {
        #[test]
        fn int_ops_match_i128(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            prop_assert_eq!((&x + &y).to_big(), BigInt::from(a as i128 + b as i128));
            prop_assert_eq!((&x * &y).to_big(), BigInt::from(a as i128 * b as i128));
            prop_assert_eq!((&x - &y).to_big(), BigInt::from(a as i128 - b as i128));
            if b != 0 {
                let q = x.div_floor(&y);
                let r = x.mod_floor(&y);
                prop_assert_eq!(&q * &y + &r, x.clone());
                prop_assert!(r.is_zero() || r.signum() == y.signum());
            }
        }

        #[test]
        fn rat_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let (x, y) = (Rat::new(a, b), Rat::new(c, d));
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
        }
    }
}
