//! Real roots of `j`-polynomials: squarefreeness, Sturm isolation and
//! correctly rounded decimal refinement, all in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, rat};
use crate::modforms::JPolynomial;
use crate::modp::ReportKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial {0} has a repeated factor")]
    NotSquarefree(String),
    #[error("no sign change of {poly} on ({lo}, {hi}]")]
    NoSignChange {
        poly: String,
        lo: BigRational,
        hi: BigRational,
    },
}

/// Significant digits used by [`check_zero_location`].
pub const DEFAULT_DIGITS: u32 = 10;

pub fn is_squarefree(g: &JPolynomial) -> Result<bool, RootError> {
    if g.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    Ok(g.gcd(&g.derivative()).degree() == Some(0))
}

fn sturm_sequence(g: &JPolynomial) -> Vec<JPolynomial> {
    let mut seq = vec![g.clone(), g.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(-&r);
    }
    seq.pop();
    seq
}

fn variations(seq: &[JPolynomial], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(lo, hi]`.
fn count_in(seq: &[JPolynomial], lo: &BigRational, hi: &BigRational) -> usize {
    variations(seq, lo) - variations(seq, hi)
}

/// `1 + max |a_i / a_n|`: every root lies strictly inside `(-B, B)`.
pub fn cauchy_bound(g: &JPolynomial) -> BigRational {
    let lc = g.leading_coeff().expect("nonzero polynomial").abs();
    let n = g.coeffs().len() - 1;
    let m = g.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(BigRational::zero);
    m + int(1)
}

/// Disjoint half-open intervals `(lo, hi]`, one per real root, in increasing order.
pub fn isolate_real_roots(g: &JPolynomial) -> Result<Vec<(BigRational, BigRational)>, RootError> {
    if !is_squarefree(g)? {
        return Err(RootError::NotSquarefree(g.to_string()));
    }
    if g.degree() == Some(0) {
        return Ok(vec![]);
    }
    let seq = sturm_sequence(g);
    let b = cauchy_bound(g);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_in(&seq, &lo, &hi) {
            0 => {}
            1 => out.push(clear_lower_end(g, &seq, lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Shrinks `(lo, hi]` holding one root so that `lo` is not itself a root
/// of `g`; refinement needs a sign change across the interval.
fn clear_lower_end(
    g: &JPolynomial,
    seq: &[JPolynomial],
    mut lo: BigRational,
    mut hi: BigRational,
) -> (BigRational, BigRational) {
    if !g.eval(&lo).is_zero() {
        return (lo, hi);
    }
    let floor = lo.clone();
    loop {
        let mid = (&floor + &hi) / int(2);
        if count_in(seq, &mid, &hi) == 1 {
            lo = mid;
            return (lo, hi);
        }
        hi = mid;
    }
}

fn pow10(e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(10).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `floor(log10 |x|)` for nonzero `x`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let x = x.abs();
    let mut e = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
    while pow10(e) > x {
        e -= 1;
    }
    while pow10(e + 1) <= x {
        e += 1;
    }
    e
}

/// `x` rounded half away from zero to `digits` significant digits, as
/// `(mantissa, scale)` with value `mantissa * 10^scale`.
fn round_sig(x: &BigRational, digits: u32) -> (BigInt, i64) {
    if x.is_zero() {
        return (BigInt::zero(), 0);
    }
    let mut scale = decimal_exponent(x) - digits as i64 + 1;
    loop {
        let y = x / pow10(scale);
        let half = rat(1, 2);
        let m = if y.is_negative() {
            -(-y + &half).floor().to_integer()
        } else {
            (y + &half).floor().to_integer()
        };
        if m.abs().to_string().len() as u32 > digits {
            scale += 1;
            continue;
        }
        return (m, scale);
    }
}

fn render(m: &BigInt, scale: i64, trim: bool) -> String {
    let neg = m.is_negative();
    let digits = m.abs().to_string();
    let mut s = if scale >= 0 {
        format!("{digits}{}", "0".repeat(scale as usize))
    } else {
        let frac = (-scale) as usize;
        let padded = format!("{digits:0>width$}", width = frac + 1);
        let (a, b) = padded.split_at(padded.len() - frac);
        format!("{a}.{b}")
    };
    if trim && s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

/// Bisects `(lo, hi]` until both ends round to the same `digits` significant
/// digits, then returns that correctly rounded decimal. An exactly hit root
/// is printed without trailing zeros.
pub fn refine_root(
    g: &JPolynomial,
    interval: &(BigRational, BigRational),
    digits: u32,
) -> Result<String, RootError> {
    let (mut lo, mut hi) = interval.clone();
    let ghi = g.eval(&hi);
    if ghi.is_zero() {
        let (m, s) = round_sig(&hi, digits);
        return Ok(render(&m, s, (BigRational::from_integer(m.clone()) * pow10(s)) == hi));
    }
    let glo = g.eval(&lo);
    if glo.is_zero() || glo.is_positive() == ghi.is_positive() {
        return Err(RootError::NoSignChange {
            poly: g.to_string(),
            lo,
            hi,
        });
    }
    let lo_positive = glo.is_positive();
    for _ in 0..4096 {
        let (ml, sl) = round_sig(&lo, digits);
        let (mh, sh) = round_sig(&hi, digits);
        if ml == mh && sl == sh {
            let value = BigRational::from_integer(ml.clone()) * pow10(sl);
            return Ok(render(&ml, sl, g.eval(&value).is_zero()));
        }
        let mid = (&lo + &hi) / int(2);
        let gm = g.eval(&mid);
        if gm.is_zero() {
            let (m, s) = round_sig(&mid, digits);
            let exact = BigRational::from_integer(m.clone()) * pow10(s) == mid;
            return Ok(render(&m, s, exact));
        }
        if gm.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (m, s) = round_sig(&((&lo + &hi) / int(2)), digits);
    Ok(render(&m, s, false))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    #[serde(with = "crate::arith::rat_str")]
    pub lo: BigRational,
    #[serde(with = "crate::arith::rat_str")]
    pub hi: BigRational,
    pub approx: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub polynomial: JPolynomial,
    pub is_squarefree: bool,
    pub roots: Vec<RootEntry>,
    pub all_real: bool,
    pub all_in_0_1728: bool,
    pub kind: ReportKind,
}

/// Whether every zero of `g` is real, simple and inside `[0, 1728]`.
/// Roots of the squarefree part are listed even when `g` is not squarefree.
pub fn check_zero_location(g: &JPolynomial) -> Result<RootReport, RootError> {
    let squarefree = is_squarefree(g)?;
    let degree = g.degree().expect("nonzero");
    let core = if squarefree {
        g.clone()
    } else {
        g.div_rem(&g.gcd(&g.derivative())).0
    };
    let intervals = isolate_real_roots(&core)?;
    let roots = intervals
        .iter()
        .map(|iv| {
            Ok(RootEntry {
                lo: iv.0.clone(),
                hi: iv.1.clone(),
                approx: refine_root(&core, iv, DEFAULT_DIGITS)?,
            })
        })
        .collect::<Result<Vec<_>, RootError>>()?;
    let all_real = squarefree && roots.len() == degree;
    let inside = if core.degree() == Some(0) {
        0
    } else {
        let seq = sturm_sequence(&core);
        let at_zero = usize::from(core.eval(&BigRational::zero()).is_zero());
        count_in(&seq, &BigRational::zero(), &int(1728)) + at_zero
    };
    Ok(RootReport {
        polynomial: g.clone(),
        is_squarefree: squarefree,
        all_in_0_1728: all_real && inside == roots.len(),
        roots,
        all_real,
        kind: ReportKind::Evidence,
    })
}

impl RootReport {
    pub fn approximations(&self) -> Vec<&str> {
        self.roots.iter().map(|r| r.approx.as_str()).collect()
    }
}

impl Default for RootReport {
    fn default() -> Self {
        RootReport {
            polynomial: JPolynomial::one(),
            is_squarefree: true,
            roots: vec![],
            all_real: true,
            all_in_0_1728: true,
            kind: ReportKind::Evidence,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn linear(c: BigRational) -> JPolynomial {
        JPolynomial::new(vec![-c, BigRational::one()])
    }

    #[test]
    fn root_on_open_end_is_moved_off() {
        // j^2 - j: bisection lands on 0 as the open end of the interval for 1
        let g = JPolynomial::from_ints(&[0, -1, 1]);
        let roots = isolate_real_roots(&g).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(!g.eval(&r.0).is_zero());
        }
        let approx: Vec<String> = roots.iter().map(|r| refine_root(&g, r, 10).unwrap()).collect();
        assert_eq!(approx, vec!["0", "1"]);
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&linear(rat(1302528, 1075))).unwrap());
        let sq = JPolynomial::from_ints(&[1, -2, 1]);
        assert!(!is_squarefree(&sq).unwrap());
        assert_eq!(is_squarefree(&JPolynomial::zero()), Err(RootError::ZeroPolynomial));
        assert!(isolate_real_roots(&sq).is_err());
    }

    #[test]
    fn isolation_examples() {
        let g = linear(rat(1302528, 1075));
        let iv = isolate_real_roots(&g).unwrap();
        assert_eq!(iv.len(), 1);
        let x = rat(1302528, 1075);
        assert!(iv[0].0 < x && x <= iv[0].1);
        assert!(isolate_real_roots(&JPolynomial::from_ints(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn refinement_examples() {
        let g = linear(rat(1302528, 1075));
        let iv = isolate_real_roots(&g).unwrap();
        // 1211.65395348...
        assert_eq!(refine_root(&g, &iv[0], 10).unwrap(), "1211.653953");
        let g = linear(rat(8696400, 20119));
        let iv = isolate_real_roots(&g).unwrap();
        assert_eq!(refine_root(&g, &iv[0], 10).unwrap(), "432.2481237");
        let g = linear(int(1728));
        let iv = isolate_real_roots(&g).unwrap();
        assert_eq!(refine_root(&g, &iv[0], 10).unwrap(), "1728");
        let g = JPolynomial::from_ints(&[-2, 0, 1]);
        let iv = isolate_real_roots(&g).unwrap();
        assert_eq!(refine_root(&g, &iv[0], 5).unwrap(), "-1.4142");
        assert_eq!(refine_root(&g, &iv[1], 12).unwrap(), "1.41421356237");
        assert!(refine_root(&g, &(int(2), int(3)), 5).is_err());
    }

    #[test]
    fn location_reports() {
        let r = check_zero_location(&linear(int(2000))).unwrap();
        assert!(r.all_real && !r.all_in_0_1728);
        let r = check_zero_location(&JPolynomial::one()).unwrap();
        assert!(r.roots.is_empty() && r.all_in_0_1728);
        let r = check_zero_location(&linear(int(0))).unwrap();
        assert!(r.all_in_0_1728);
        assert_eq!(r.approximations(), vec!["0"]);
        let r = check_zero_location(&JPolynomial::from_ints(&[1, 0, 1])).unwrap();
        assert!(!r.all_real && !r.all_in_0_1728);
    }
}
