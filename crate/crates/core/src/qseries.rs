//! Truncated q-series with exact rational coefficients.
//!
//! A [`QSeries`] stores exponents as integer numerators over a per-series
//! lattice denominator `N`, so `q^{n/N}` is keyed by `n`. Every series carries
//! an order `O`: coefficients at exponents below `O` are exact, nothing is
//! known at or above it. Binary operations rescale both operands to the lcm
//! of their lattices first.
//!
//! Precision rules:
//! - sum: `min(Oa, Ob)`
//! - product: `min(Oa + lead(b), Ob + lead(a))`, where an empty series uses
//!   its own order in place of a leading exponent
//! - inverse: `Oa - 2 lead(a)`

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{cdiv, ceil_i64, gcd_i64, int, lcm_i64, parse_rat, rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("cannot invert a series with no stored terms")]
    InversionOfZero,
    #[error("series has no stored terms below its order")]
    ZeroSeries,
    #[error("malformed series: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "QSeriesWire", try_from = "QSeriesWire")]
pub struct QSeries {
    lattice_den: i64,
    terms: BTreeMap<i64, BigRational>,
    order_num: i64,
}

impl QSeries {
    /// Builds a series from raw lattice numerators. Zero coefficients and
    /// terms at or beyond the order are dropped, duplicates are summed.
    pub fn from_raw<I>(lattice_den: i64, terms: I, order_num: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(lattice_den > 0, "lattice denominator must be positive");
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (n, c) in terms {
            if n >= order_num || c.is_zero() {
                continue;
            }
            *map.entry(n).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        QSeries {
            lattice_den,
            terms: map,
            order_num,
        }
    }

    /// The zero series, known to vanish below `order` (rounded up onto the lattice).
    pub fn zero(lattice_den: i64, order: &BigRational) -> Self {
        Self::from_raw(lattice_den, [], order_to_lattice(order, lattice_den))
    }

    /// `coeff * q^exp` known to `order`. The lattice is the lcm of the
    /// denominators of `exp` and `order`.
    pub fn monomial(coeff: BigRational, exp: &BigRational, order: &BigRational) -> Self {
        let den = lcm_i64(den_i64(exp), den_i64(order));
        let n = exp_to_num(exp, den);
        Self::from_raw(den, [(n, coeff)], exp_to_num(order, den))
    }

    pub fn constant(c: BigRational, order: &BigRational) -> Self {
        Self::monomial(c, &BigRational::zero(), order)
    }

    /// Dense integral-power series `sum coeffs[n] q^{shift + n}` known to `shift + coeffs.len()`.
    pub fn from_dense(shift: i64, coeffs: &[BigRational]) -> Self {
        Self::from_raw(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| (shift + n as i64, c.clone())),
            shift + coeffs.len() as i64,
        )
    }

    pub fn lattice_den(&self) -> i64 {
        self.lattice_den
    }

    pub fn order(&self) -> BigRational {
        rat(self.order_num, self.lattice_den)
    }

    pub fn order_num(&self) -> i64 {
        self.order_num
    }

    /// Stored terms keyed by exponent numerator.
    pub fn raw_terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    /// Stored terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (BigRational, &BigRational)> + '_ {
        let den = self.lattice_den;
        self.terms.iter().map(move |(&n, c)| (rat(n, den), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when no term is stored, i.e. the series is zero to its order.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at an exact exponent. Exponents off the lattice read as zero.
    /// Panics if the exponent is at or beyond the order.
    pub fn coeff(&self, exp: &BigRational) -> BigRational {
        assert!(
            *exp < self.order(),
            "coefficient at {exp} requested beyond order {}",
            self.order()
        );
        let scaled = exp * int(self.lattice_den);
        if !scaled.is_integer() {
            return BigRational::zero();
        }
        let n: i64 = scaled.to_integer().try_into().expect("exponent overflow");
        self.terms.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_num(&self, n: i64) -> BigRational {
        self.terms.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead_num(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Smallest stored exponent and its coefficient.
    pub fn leading_term(&self) -> Result<(BigRational, BigRational), QSeriesError> {
        self.terms
            .iter()
            .next()
            .map(|(&n, c)| (rat(n, self.lattice_den), c.clone()))
            .ok_or(QSeriesError::ZeroSeries)
    }

    /// Leading exponent, or the order for an empty series (a lower bound on
    /// the valuation either way).
    pub fn valuation_bound(&self) -> BigRational {
        match self.lead_num() {
            Some(n) => rat(n, self.lattice_den),
            None => self.order(),
        }
    }

    /// Same series on the finer lattice `den`, which must be a multiple of the current one.
    pub fn rescale(&self, den: i64) -> QSeries {
        assert!(
            den % self.lattice_den == 0,
            "lattice {den} is not a refinement of {}",
            self.lattice_den
        );
        let f = den / self.lattice_den;
        QSeries {
            lattice_den: den,
            terms: self.terms.iter().map(|(&n, c)| (n * f, c.clone())).collect(),
            order_num: self.order_num * f,
        }
    }

    /// Coarsest lattice holding every stored term. The order is rounded up
    /// onto that lattice, which loses no information since no coefficient can
    /// live between the old and the new order.
    pub fn reduce_lattice(&self) -> QSeries {
        let mut g = self.lattice_den;
        for &n in self.terms.keys() {
            g = gcd_i64(g, n);
        }
        let g = g.abs().max(1);
        QSeries {
            lattice_den: self.lattice_den / g,
            terms: self.terms.iter().map(|(&n, c)| (n / g, c.clone())).collect(),
            order_num: cdiv(self.order_num, g),
        }
    }

    /// Lowers the order to `order` if it is smaller.
    pub fn truncate(&self, order: &BigRational) -> QSeries {
        let den = lcm_i64(self.lattice_den, den_i64(order));
        let s = self.rescale(den);
        let o = exp_to_num(order, den).min(s.order_num);
        QSeries::from_raw(den, s.terms, o)
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries::from_raw(
            self.lattice_den,
            self.terms.iter().map(|(&n, v)| (n, v * c)),
            self.order_num,
        )
    }

    /// Multiplication by `q^exp`; the order moves with the terms.
    pub fn shift(&self, exp: &BigRational) -> QSeries {
        let den = lcm_i64(self.lattice_den, den_i64(exp));
        let s = self.rescale(den);
        let d = exp_to_num(exp, den);
        QSeries {
            lattice_den: den,
            terms: s.terms.into_iter().map(|(n, c)| (n + d, c)).collect(),
            order_num: s.order_num + d,
        }
    }

    /// `s`-fold Ramanujan derivative `(q d/dq)^s`: the coefficient at exponent
    /// `e` is multiplied by `e^s`. The order is unchanged.
    pub fn derive(&self, s: u32) -> QSeries {
        if s == 0 {
            return self.clone();
        }
        let den = self.lattice_den;
        QSeries::from_raw(
            den,
            self.terms.iter().map(|(&n, c)| {
                let e = rat(n, den);
                let mut f = BigRational::one();
                for _ in 0..s {
                    f *= &e;
                }
                (n, c * f)
            }),
            self.order_num,
        )
    }

    /// Multiplicative inverse to the contracted order `O - 2 lead`.
    pub fn invert(&self) -> Result<QSeries, QSeriesError> {
        let (&lead, a0) = self
            .terms
            .iter()
            .next()
            .ok_or(QSeriesError::InversionOfZero)?;
        let rel = self.order_num - lead;
        // Offsets of the tail relative to the lead all live on a sublattice of step g.
        let mut g = 0i64;
        for &n in self.terms.keys() {
            g = gcd_i64(g, n - lead);
        }
        if g == 0 {
            g = rel.max(1);
        }
        let tail: Vec<(usize, &BigRational)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&n, c)| (((n - lead) / g) as usize, c))
            .collect();
        let count = cdiv(rel, g).max(0) as usize;
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(count);
        for idx in 0..count {
            if idx == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut acc = BigRational::zero();
            for &(t, c) in &tail {
                if t > idx {
                    break;
                }
                let prev = &b[idx - t];
                if !prev.is_zero() {
                    acc += c * prev;
                }
            }
            b.push(-(acc * &inv0));
        }
        let order_num = self.order_num - 2 * lead;
        Ok(QSeries::from_raw(
            self.lattice_den,
            b.into_iter()
                .enumerate()
                .map(|(idx, c)| (-lead + idx as i64 * g, c)),
            order_num,
        ))
    }

    /// `self / other` as `self * other^{-1}`.
    pub fn div(&self, other: &QSeries) -> Result<QSeries, QSeriesError> {
        Ok(self * &other.invert()?)
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut acc: Option<QSeries> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => &a * self,
            });
        }
        acc.unwrap_or_else(|| QSeries::constant(BigRational::one(), &self.unit_order()))
    }

    /// Divides by the leading coefficient. Errors on an empty series.
    pub fn normalized(&self) -> Result<QSeries, QSeriesError> {
        let (_, c) = self.leading_term()?;
        Ok(self.scale(&c.recip()))
    }

    /// Order that the constant 1 inherits when used as the identity against
    /// this series: wide enough to never be the binding constraint.
    fn unit_order(&self) -> BigRational {
        self.order() - self.valuation_bound()
    }

    /// Exponents at which two series differ below their common order.
    pub fn first_difference(&self, other: &QSeries) -> Option<(BigRational, BigRational, BigRational)> {
        let (a, b) = align(self, other);
        let o = a.order_num.min(b.order_num);
        let keys: std::collections::BTreeSet<i64> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .copied()
            .filter(|&n| n < o)
            .collect();
        for n in keys {
            let x = a.coeff_num(n);
            let y = b.coeff_num(n);
            if x != y {
                return Some((rat(n, a.lattice_den), x, y));
            }
        }
        None
    }

    /// Exact agreement below the smaller of the two orders.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_difference(other).is_none()
    }
}

/// Rescales both operands to the lcm of their lattices.
pub fn align(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
    let den = lcm_i64(a.lattice_den, b.lattice_den);
    (a.rescale(den), b.rescale(den))
}

fn den_i64(x: &BigRational) -> i64 {
    x.denom().try_into().expect("denominator overflow")
}

fn exp_to_num(x: &BigRational, den: i64) -> i64 {
    let scaled = x * int(den);
    assert!(scaled.is_integer(), "{x} is not on lattice 1/{den}");
    scaled.to_integer().try_into().expect("exponent overflow")
}

/// Smallest lattice numerator `n` with `n/den >= order`.
pub fn order_to_lattice(order: &BigRational, den: i64) -> i64 {
    ceil_i64(&(order * int(den)))
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let (a, b) = align(self, rhs);
        let o = a.order_num.min(b.order_num);
        QSeries::from_raw(a.lattice_den, a.terms.into_iter().chain(b.terms), o)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            lattice_den: self.lattice_den,
            terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect(),
            order_num: self.order_num,
        }
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let (a, b) = align(self, rhs);
        let va = a.lead_num().unwrap_or(a.order_num);
        let vb = b.lead_num().unwrap_or(b.order_num);
        let o = (a.order_num + vb).min(b.order_num + va);
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&na, ca) in &a.terms {
            for (&nb, cb) in &b.terms {
                let n = na + nb;
                if n >= o {
                    break;
                }
                let p = ca * cb;
                match out.get_mut(&n) {
                    Some(acc) => *acc += p,
                    None => {
                        out.insert(n, p);
                    }
                }
            }
        }
        QSeries::from_raw(a.lattice_den, out, o)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", self.order())
    }
}

/// JSON wire form: `{"lattice_den": N, "order": "num/den", "terms": [[n, "p/q"], ...]}`.
#[derive(Serialize, Deserialize)]
struct QSeriesWire {
    lattice_den: i64,
    order: String,
    terms: Vec<(i64, String)>,
}

impl From<QSeries> for QSeriesWire {
    fn from(s: QSeries) -> Self {
        QSeriesWire {
            lattice_den: s.lattice_den,
            order: s.order().to_string(),
            terms: s.terms.iter().map(|(&n, c)| (n, c.to_string())).collect(),
        }
    }
}

impl TryFrom<QSeriesWire> for QSeries {
    type Error = QSeriesError;
    fn try_from(w: QSeriesWire) -> Result<Self, Self::Error> {
        if w.lattice_den <= 0 {
            return Err(QSeriesError::Malformed("lattice_den must be positive".into()));
        }
        let order = parse_rat(&w.order)
            .ok_or_else(|| QSeriesError::Malformed(format!("bad order {:?}", w.order)))?;
        let scaled = &order * int(w.lattice_den);
        if !scaled.is_integer() {
            return Err(QSeriesError::Malformed(format!(
                "order {order} is not on lattice 1/{}",
                w.lattice_den
            )));
        }
        let order_num: i64 = scaled
            .to_integer()
            .try_into()
            .map_err(|_| QSeriesError::Malformed("order overflow".into()))?;
        let mut terms = BTreeMap::new();
        let mut last: Option<i64> = None;
        for (n, c) in w.terms {
            let c = parse_rat(&c)
                .ok_or_else(|| QSeriesError::Malformed(format!("bad coefficient {c:?}")))?;
            if last.is_some_and(|l| l >= n) {
                return Err(QSeriesError::Malformed("terms not strictly ascending".into()));
            }
            if c.is_zero() || n >= order_num {
                return Err(QSeriesError::Malformed(format!(
                    "term at {n} violates series invariants"
                )));
            }
            last = Some(n);
            terms.insert(n, c);
        }
        Ok(QSeries {
            lattice_den: w.lattice_den,
            terms,
            order_num,
        })
    }
}

/// `q^{r/24} prod_{n>=1} (1 - q^n)^r` expanded exactly below `order`, on lattice 24.
///
/// The product is multiplied out factor by factor; the power is then taken
/// with the recurrence `n g_n = sum_k ((r+1)k - n) f_k g_{n-k}`, which is
/// valid for negative `r` as well.
pub fn eta_power(r: i64, order: &BigRational) -> QSeries {
    let order_num = order_to_lattice(order, 24);
    let count = cdiv(order_num - r, 24);
    if count <= 0 {
        return QSeries::from_raw(24, [], order_num);
    }
    let count = count as usize;
    let base = euler_product(count);
    let powered = series_power(&base, r);
    QSeries::from_raw(
        24,
        powered
            .into_iter()
            .enumerate()
            .map(|(n, c)| (r + 24 * n as i64, BigRational::from_integer(c))),
        order_num,
    )
}

/// First `count` coefficients of `prod_{n>=1} (1 - q^n)`, multiplied out directly.
fn euler_product(count: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); count];
    c[0] = BigInt::one();
    for n in 1..count {
        for d in (n..count).rev() {
            let t = c[d - n].clone();
            if !t.is_zero() {
                c[d] -= t;
            }
        }
    }
    c
}

/// `f^r` for an integer power series with `f_0 = 1`, truncated to `f.len()` terms.
fn series_power(f: &[BigInt], r: i64) -> Vec<BigInt> {
    let n_terms = f.len();
    let mut g = vec![BigInt::zero(); n_terms];
    g[0] = BigInt::one();
    if r == 0 {
        return g;
    }
    if r == 1 {
        return f.to_vec();
    }
    let support: Vec<(usize, &BigInt)> = f
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let r1 = BigInt::from(r + 1);
    for n in 1..n_terms {
        let mut acc = BigInt::zero();
        let bn = BigInt::from(n);
        for &(k, fk) in &support {
            if k > n {
                break;
            }
            let w = &r1 * BigInt::from(k) - &bn;
            acc += w * fk * &g[n - k];
        }
        let (q, rem) = acc.div_rem(&bn);
        debug_assert!(rem.is_zero(), "power recurrence left a remainder");
        g[n] = q;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(terms: i64) -> QSeries {
        QSeries::from_raw(1, (0..terms).map(|n| (n, int(1))), terms)
    }

    #[test]
    fn align_uses_lcm() {
        let a = QSeries::from_raw(8, [(1, int(1))], 16);
        let b = QSeries::from_raw(12, [(1, int(2))], 24);
        let (x, y) = align(&a, &b);
        assert_eq!(x.lattice_den(), 24);
        assert_eq!(y.lattice_den(), 24);
        assert_eq!(x.order(), a.order());
        assert_eq!(y.coeff(&rat(1, 12)), int(2));
        let (s, t) = align(&a, &a);
        assert_eq!((s, t), (a.clone(), a));
    }

    #[test]
    fn one_minus_q_times_geometric() {
        let one_minus_q = QSeries::from_raw(1, [(0, int(1)), (1, int(-1))], 40);
        let p = &one_minus_q * &geometric(30);
        assert_eq!(p.order(), int(30));
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&int(0)), int(1));
    }

    #[test]
    fn sum_with_negation_is_zero_with_min_order() {
        let a = geometric(10);
        let b = -&geometric(7);
        let z = &a + &b;
        assert_eq!(z.order(), int(7));
        // q^7 + q^8 + q^9 falls beyond the common order.
        assert!(z.is_zero());
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.order(), int(10));
    }

    #[test]
    fn empty_factor_product_order() {
        let z = QSeries::zero(1, &int(5));
        let b = geometric(20);
        let p = &z * &b;
        assert!(p.is_zero());
        assert_eq!(p.order(), int(5));
        let p = &z * &QSeries::zero(1, &int(3));
        assert_eq!(p.order(), int(8));
    }

    #[test]
    fn invert_geometric() {
        let one_minus_q = QSeries::from_raw(1, [(0, int(1)), (1, int(-1))], 25);
        let inv = one_minus_q.invert().unwrap();
        assert_eq!(inv.order(), int(25));
        assert_eq!(inv, geometric(25));
    }

    #[test]
    fn invert_eta_cubed() {
        let e3 = eta_power(3, &int(20));
        let inv = e3.invert().unwrap();
        assert_eq!(inv.leading_term().unwrap(), (rat(-1, 8), int(1)));
        assert_eq!(inv.order(), int(20) - rat(1, 4));
        let p = &inv * &e3;
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&int(0)), int(1));
        assert!(p.order() >= int(19));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            QSeries::zero(1, &int(3)).invert(),
            Err(QSeriesError::InversionOfZero)
        );
    }

    #[test]
    fn derive_monomials() {
        let m = QSeries::monomial(int(1), &rat(1, 8), &int(5));
        let d = m.derive(1);
        assert_eq!(d.leading_term().unwrap(), (rat(1, 8), rat(1, 8)));
        let c = QSeries::constant(int(7), &int(5));
        assert!(c.derive(1).is_zero());
        assert_eq!(c.derive(1).order(), int(5));
    }

    #[test]
    fn eta_examples() {
        let eta = eta_power(1, &int(16));
        let expect = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)];
        let want = QSeries::from_raw(
            24,
            expect.iter().map(|&(n, c)| (1 + 24 * n, int(c))),
            eta.order_num(),
        );
        assert_eq!(eta, want);
        let e3 = eta_power(3, &int(11));
        let want = QSeries::from_raw(
            24,
            [(0, 1), (1, -3), (3, 5), (6, -7), (10, 9)]
                .iter()
                .map(|&(n, c)| (3 + 24 * n, int(c))),
            e3.order_num(),
        );
        assert_eq!(e3, want);
        let e0 = eta_power(0, &int(3));
        assert_eq!(e0.num_terms(), 1);
        assert_eq!(e0.coeff(&int(0)), int(1));
    }

    #[test]
    fn eta_power_matches_repeated_product() {
        let eta = eta_power(1, &int(30));
        for r in 2..=4u32 {
            let direct = eta_power(r as i64, &int(30));
            let prod = eta.pow(r);
            assert!(direct.agrees_with(&prod), "r = {r}");
            assert!(prod.order() >= int(29));
        }
        let inv = eta_power(-1, &int(20));
        assert!(inv.agrees_with(&eta.invert().unwrap()));
    }

    #[test]
    fn leading_term_cases() {
        assert_eq!(
            eta_power(4, &int(3)).leading_term().unwrap(),
            (rat(1, 6), int(1))
        );
        let s = QSeries::from_raw(1, [(2, int(5)), (3, int(-1))], 10);
        assert_eq!(s.leading_term().unwrap(), (int(2), int(5)));
        assert_eq!(
            QSeries::zero(1, &int(4)).leading_term(),
            Err(QSeriesError::ZeroSeries)
        );
    }

    #[test]
    fn reduce_lattice_keeps_information() {
        let s = QSeries::from_raw(24, [(0, int(1)), (24, int(3))], 61);
        let r = s.reduce_lattice();
        assert_eq!(r.lattice_den(), 1);
        assert_eq!(r.order(), int(3));
        assert_eq!(r.coeff(&int(1)), int(3));
    }

    #[test]
    fn json_wire_shape() {
        let s = QSeries::from_raw(24, [(1, int(1)), (25, rat(-3, 2))], 49);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"lattice_den": 24, "order": "49/24", "terms": [[1, "1"], [25, "-3/2"]]})
        );
        let back: QSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::json!({"lattice_den": 2, "order": "1/3", "terms": []});
        assert!(serde_json::from_value::<QSeries>(bad).is_err());
    }
}
