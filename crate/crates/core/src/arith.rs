//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Integer as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Ceiling of an exact rational as i64.
pub fn ceil_i64(x: &BigRational) -> i64 {
    x.ceil()
        .to_integer()
        .to_i64()
        .expect("rational out of i64 range")
}

pub fn floor_i64(x: &BigRational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("rational out of i64 range")
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c >= 0 && c * c == n)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Lowest-terms rational as the decimal-free string `p/q` (or `p`).
pub fn fmt_rat(x: &BigRational) -> String {
    x.to_string()
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    s.trim().parse::<BigRational>().ok()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `x^e` for a rational base and nonnegative exponent.
pub fn rat_pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Floor division for `b > 0`.
pub fn fdiv(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

/// Ceiling division for `b > 0`.
pub fn cdiv(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Serde adapter writing a rational as `"p/q"`.
pub mod rat_str {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}
