//! Level-one modular forms: Bernoulli numbers, Eisenstein series, `Δ`, `j`,
//! the decomposition `f = Δ^t E4^δ E6^ε G(f, j)`, and the Jacobi moment
//! series `E_{2m,3}`.

mod jpoly;

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, rat};
use crate::qseries::{eta_power, QSeries, QSeriesError};

pub use jpoly::JPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModFormError {
    #[error("weight {0} is not of the form 12t + 4δ + 6ε with a nonzero form")]
    WeightUnrepresentable(i64),
    #[error("nonzero remainder at exponent {exponent} (coefficient {coeff})")]
    NonzeroRemainder {
        exponent: BigRational,
        coeff: BigRational,
    },
    #[error("input is not a holomorphic q-expansion: exponent {0}")]
    NotHolomorphic(BigRational),
    #[error("order {0} is too small to decide the decomposition")]
    InsufficientOrder(BigRational),
    #[error("Eisenstein series need an even weight >= 2, got {0}")]
    BadWeight(i64),
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

fn bernoulli_table() -> &'static Mutex<Vec<BigRational>> {
    static TABLE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`, from `sum_{k<=n} C(n+1,k) B_k = 0`.
pub fn bernoulli(n: usize) -> BigRational {
    let mut table = bernoulli_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        // C(m+1, k) built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in table.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        table.push(-acc / int(m as i64 + 1));
    }
    table[n].clone()
}

/// `sigma_e(n)` for `n < count`.
fn divisor_sums(e: u32, count: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); count];
    for d in 1..count {
        let pd = BigInt::from(d).pow(e);
        let mut n = d;
        while n < count {
            out[n] += &pd;
            n += d;
        }
    }
    out
}

/// `E2` is only quasimodular.
pub fn is_quasimodular(weight: i64) -> bool {
    weight == 2
}

/// `E_w = 1 - (2w / B_w) sum sigma_{w-1}(n) q^n` below `q^terms`.
pub fn eisenstein(weight: i64, terms: i64) -> Result<QSeries, ModFormError> {
    if weight < 2 || weight % 2 != 0 {
        return Err(ModFormError::BadWeight(weight));
    }
    let factor = -int(2 * weight) / bernoulli(weight as usize);
    let count = terms.max(0) as usize;
    let sig = divisor_sums((weight - 1) as u32, count);
    let coeffs = (0..count).map(|n| {
        if n == 0 {
            BigRational::one()
        } else {
            &factor * BigRational::from_integer(sig[n].clone())
        }
    });
    Ok(QSeries::from_raw(
        1,
        coeffs.enumerate().map(|(n, c)| (n as i64, c)),
        terms,
    ))
}

/// `Δ = (E4^3 - E6^2) / 1728` below `q^terms`.
pub fn delta_form(terms: i64) -> QSeries {
    let e4 = eisenstein(4, terms).expect("weight 4");
    let e6 = eisenstein(6, terms).expect("weight 6");
    (&e4.pow(3) - &e6.pow(2)).scale(&rat(1, 1728))
}

/// `Δ = η^24`, the independent product route.
pub fn delta_from_eta(terms: i64) -> QSeries {
    eta_power(24, &int(terms)).reduce_lattice()
}

/// `j = 1728 E4^3 / (E4^3 - E6^2)` below `q^terms`; leading term `q^{-1}`.
pub fn j_function(terms: i64) -> QSeries {
    let n = terms + 2;
    let e4 = eisenstein(4, n).expect("weight 4");
    let e6 = eisenstein(6, n).expect("weight 6");
    let e4c = e4.pow(3);
    let den = &e4c - &e6.pow(2);
    let j = e4c.scale(&int(1728)) * den.invert().expect("Δ is nonzero");
    j.truncate(&int(terms))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub t: u32,
    pub delta: u32,
    pub epsilon: u32,
    #[serde(rename = "G")]
    pub g: JPolynomial,
}

impl Decomposition {
    pub fn weight(&self) -> i64 {
        12 * self.t as i64 + 4 * self.delta as i64 + 6 * self.epsilon as i64
    }
}

/// The unique `(t, δ, ε)` with `weight = 12t + 4δ + 6ε`, `δ <= 2`, `ε <= 1`.
pub fn weight_exponents(weight: i64) -> Option<(u32, u32, u32)> {
    if weight < 0 || weight % 2 != 0 {
        return None;
    }
    for epsilon in 0..=1 {
        for delta in 0..=2 {
            let rest = weight - 4 * delta - 6 * epsilon;
            if rest >= 0 && rest % 12 == 0 {
                return Some(((rest / 12) as u32, delta as u32, epsilon as u32));
            }
        }
    }
    None
}

/// Writes a holomorphic form of the given weight as `Δ^t E4^δ E6^ε G(j)`.
///
/// `h = f / (Δ^t E4^δ E6^ε)` has a pole of order at most `t` at infinity;
/// `G` is peeled off greedily by cancelling the most negative power of `q`
/// against a multiple of `j^d`, and the leftover must vanish to the
/// tracked order.
pub fn decompose(f: &QSeries, weight: i64) -> Result<Decomposition, ModFormError> {
    let f = f.reduce_lattice();
    let Some((t, delta, epsilon)) = weight_exponents(weight) else {
        if f.is_zero() && weight >= 0 && weight % 2 == 0 {
            return Ok(Decomposition {
                t: 0,
                delta: 0,
                epsilon: 0,
                g: JPolynomial::zero(),
            });
        }
        return Err(ModFormError::WeightUnrepresentable(weight));
    };
    if let Some((e, _)) = f.terms().find(|(e, _)| !e.is_integer() || *e < BigRational::zero()) {
        return Err(ModFormError::NotHolomorphic(e));
    }
    let n = f.order().ceil().to_integer();
    let n: i64 = n.try_into().expect("order overflow");
    if f.is_zero() {
        return Ok(Decomposition {
            t,
            delta,
            epsilon,
            g: JPolynomial::zero(),
        });
    }
    let ti = t as i64;
    if n - ti < 1 {
        return Err(ModFormError::InsufficientOrder(f.order()));
    }
    let m = n + ti;
    let mut denom = QSeries::constant(BigRational::one(), &int(m));
    if t > 0 {
        denom = &denom * &delta_form(m).pow(t);
    }
    if delta > 0 {
        denom = &denom * &eisenstein(4, m)?.pow(delta);
    }
    if epsilon > 0 {
        denom = &denom * &eisenstein(6, m)?;
    }
    let mut h = &f * &denom.invert()?;
    let j = j_function(n + 1);
    let mut j_powers = vec![QSeries::constant(BigRational::one(), &int(n + 1))];
    for d in 1..=t as usize {
        let next = &j_powers[d - 1] * &j;
        j_powers.push(next);
    }
    let mut g = JPolynomial::zero();
    while let Ok((e, c)) = h.leading_term() {
        if e > BigRational::zero() || e < -int(ti) {
            return Err(ModFormError::NonzeroRemainder { exponent: e, coeff: c });
        }
        let d: usize = (-e.to_integer()).try_into().expect("small exponent");
        g = &g + &JPolynomial::monomial(c.clone(), d);
        h = &h - &j_powers[d].scale(&c);
    }
    if h.order() < int(1) {
        return Err(ModFormError::InsufficientOrder(h.order()));
    }
    Ok(Decomposition { t, delta, epsilon, g })
}

/// Rebuilds `Δ^t E4^δ E6^ε G(j)` below `q^terms`; the inverse of [`decompose`].
pub fn compose(d: &Decomposition, terms: i64) -> QSeries {
    let t = d.t as i64;
    let deg = d.g.degree().unwrap_or(0) as i64;
    let m = terms + deg + 2;
    let j = j_function(m);
    let mut gj = QSeries::zero(1, &int(m));
    let mut jp = QSeries::constant(BigRational::one(), &int(m));
    for (k, c) in d.g.coeffs().iter().enumerate() {
        if k > 0 {
            jp = &jp * &j;
        }
        gj = &gj + &jp.scale(c);
    }
    let mut out = gj;
    if t > 0 {
        out = &out * &delta_form(m).pow(d.t);
    }
    if d.delta > 0 {
        out = &out * &eisenstein(4, m).expect("weight 4").pow(d.delta);
    }
    if d.epsilon > 0 {
        out = &out * &eisenstein(6, m).expect("weight 6");
    }
    out.truncate(&int(terms))
}

/// `m! [y^m] (η(q e^y)/η(q))^3 = (sum (-1)^n (2n+1)^{2m+1}/8^m q^{(2n+1)^2/8}) / η^3`.
pub fn jacobi_moment(m: u32, terms: i64) -> QSeries {
    let order = int(terms) + rat(1, 8);
    let eight_m = BigRational::from_integer(BigInt::from(8).pow(m));
    let mut num = Vec::new();
    let mut n = 0i64;
    loop {
        let odd = 2 * n + 1;
        if int(odd * odd) >= &order * int(8) {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(BigInt::from(odd).pow(2 * m + 1) * sign) / &eight_m;
        num.push((odd * odd, c));
        n += 1;
    }
    let order_num = crate::qseries::order_to_lattice(&order, 8);
    let numerator = QSeries::from_raw(8, num, order_num);
    let inv = eta_power(3, &(int(terms) + rat(1, 4)))
        .invert()
        .expect("η^3 is nonzero");
    (&numerator * &inv).truncate(&int(terms)).reduce_lattice()
}

/// `E_{2m,3}`: the moment series scaled to leading coefficient 1.
pub fn e2m3(m: u32, terms: i64) -> QSeries {
    jacobi_moment(m, terms)
        .normalized()
        .expect("moment series has a nonzero constant term")
}
