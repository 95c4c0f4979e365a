//! p-adic valuations and coefficient-wise congruences of q-series, and the
//! congruence checks at `p = 2k + 3` for affine levels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorial, int, is_prime, mod_inverse, parse_rat, rat};
use crate::characters::{
    affine_leading_exponent, classify_vanishing_affine, theta_any_index, CharError, Family,
};
use crate::modforms::jacobi_moment;
use crate::qseries::QSeries;
use crate::wronskian::{f_form, WronskianError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModpError {
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("coefficient {coeff} at exponent {exponent} is not {p}-integral")]
    NotPIntegral {
        p: i64,
        exponent: BigRational,
        coeff: BigRational,
    },
    #[error("modulus exponent must be >= 1")]
    BadModulus,
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Wronskian(#[from] WronskianError),
}

/// `v_p`, with `+∞` for zero ordered above every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

fn v_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn p_valuation(x: &BigRational, p: i64) -> Result<Valuation, ModpError> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let pb = BigInt::from(p);
    Ok(Valuation::Finite(v_int(x.numer(), &pb) - v_int(x.denom(), &pb)))
}

fn check_prime(p: i64) -> Result<(), ModpError> {
    if p < 2 || !is_prime(p as u64) {
        return Err(ModpError::NotPrime(p));
    }
    Ok(())
}

/// `x mod p^e` for a p-integral rational, as the least non-negative residue.
pub fn reduce_mod(x: &BigRational, p: i64, e: u32) -> Option<BigInt> {
    let m = BigInt::from(p).pow(e);
    let inv = mod_inverse(&x.denom().mod_floor(&m), &m)?;
    Some((x.numer() * inv).mod_floor(&m))
}

/// Whether a check proves a theorem or only gathers evidence for a conjecture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Assertion,
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReportWire", try_from = "ReportWire")]
pub struct CongruenceReport {
    pub check: String,
    pub p: i64,
    pub modulus_exp: u32,
    pub checked_order: BigRational,
    pub holds: bool,
    pub first_failure: Option<(BigRational, BigRational, BigRational)>,
    pub min_valuation: Valuation,
    pub kind: ReportKind,
}

impl CongruenceReport {
    fn with(mut self, check: impl Into<String>, kind: ReportKind) -> Self {
        self.check = check.into();
        self.kind = kind;
        self
    }
}

#[derive(Serialize, Deserialize)]
struct ReportWire {
    check: String,
    p: i64,
    modulus_exp: u32,
    order: String,
    holds: bool,
    first_failure: Option<(String, String, String)>,
    min_valuation: Option<i64>,
    kind: ReportKind,
}

impl From<CongruenceReport> for ReportWire {
    fn from(r: CongruenceReport) -> Self {
        ReportWire {
            check: r.check,
            p: r.p,
            modulus_exp: r.modulus_exp,
            order: r.checked_order.to_string(),
            holds: r.holds,
            first_failure: r
                .first_failure
                .map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string())),
            min_valuation: match r.min_valuation {
                Valuation::Finite(v) => Some(v),
                Valuation::Infinity => None,
            },
            kind: r.kind,
        }
    }
}

impl TryFrom<ReportWire> for CongruenceReport {
    type Error = String;
    fn try_from(w: ReportWire) -> Result<Self, String> {
        let parse = |s: &str| parse_rat(s).ok_or_else(|| format!("bad rational {s:?}"));
        let first_failure = match w.first_failure {
            Some((e, a, b)) => Some((parse(&e)?, parse(&a)?, parse(&b)?)),
            None => None,
        };
        if w.holds == first_failure.is_some() {
            return Err("holds must be true exactly when first_failure is null".into());
        }
        Ok(CongruenceReport {
            check: w.check,
            p: w.p,
            modulus_exp: w.modulus_exp,
            checked_order: parse(&w.order)?,
            holds: w.holds,
            first_failure,
            min_valuation: w.min_valuation.map_or(Valuation::Infinity, Valuation::Finite),
            kind: w.kind,
        })
    }
}

fn min_valuation<'a>(
    coeffs: impl Iterator<Item = &'a BigRational>,
    p: i64,
) -> Valuation {
    coeffs
        .map(|c| p_valuation(c, p).expect("p checked prime"))
        .min()
        .unwrap_or(Valuation::Infinity)
}

/// Every coefficient below the order has `v_p >= 0`.
pub fn is_p_integral(a: &QSeries, p: i64) -> Result<CongruenceReport, ModpError> {
    check_prime(p)?;
    let bad = a
        .terms()
        .find(|(_, c)| p_valuation(c, p).unwrap() < Valuation::Finite(0));
    Ok(CongruenceReport {
        check: "p-integrality".into(),
        p,
        modulus_exp: 1,
        checked_order: a.order(),
        holds: bad.is_none(),
        first_failure: bad.map(|(e, c)| (e, c.clone(), BigRational::zero())),
        min_valuation: min_valuation(a.raw_terms().values(), p),
        kind: ReportKind::Assertion,
    })
}

/// `a ≡ b (mod p^e)` coefficient by coefficient below the common order.
pub fn congruent_mod(a: &QSeries, b: &QSeries, p: i64, e: u32) -> Result<CongruenceReport, ModpError> {
    check_prime(p)?;
    if e == 0 {
        return Err(ModpError::BadModulus);
    }
    let order = a.order().min(b.order());
    let a = a.truncate(&order);
    let b = b.truncate(&order);
    let exps: BTreeSet<BigRational> = a.terms().chain(b.terms()).map(|(x, _)| x).collect();
    let mut first_failure = None;
    for x in exps {
        let (ca, cb) = (a.coeff(&x), b.coeff(&x));
        let reduce = |c: &BigRational| {
            reduce_mod(c, p, e).ok_or_else(|| ModpError::NotPIntegral {
                p,
                exponent: x.clone(),
                coeff: c.clone(),
            })
        };
        if reduce(&ca)? != reduce(&cb)? && first_failure.is_none() {
            first_failure = Some((x.clone(), ca, cb));
        }
    }
    Ok(CongruenceReport {
        check: "congruence".into(),
        p,
        modulus_exp: e,
        checked_order: order,
        holds: first_failure.is_none(),
        first_failure,
        min_valuation: min_valuation(a.raw_terms().values().chain(b.raw_terms().values()), p),
        kind: ReportKind::Assertion,
    })
}

fn level_prime(k: i64) -> Result<i64, ModpError> {
    if k < 1 {
        return Err(CharError::InvalidSpec(format!("level {k} must be >= 1")).into());
    }
    let p = 2 * k + 3;
    check_prime(p)?;
    Ok(p)
}

/// `D^{k+1} θ_{k,i} ≡ (4(k+2))^{-k-1} θ_{k,i} (mod p)` for every `i`, below `q^terms`.
pub fn check_theta_congruence(k: i64, terms: i64) -> Result<Vec<CongruenceReport>, ModpError> {
    let p = level_prime(k)?;
    let c = BigRational::from_integer(BigInt::from(4 * (k + 2)).pow((k + 1) as u32)).recip();
    (1..=k + 1)
        .map(|i| {
            let theta = theta_any_index(k, i, &int(terms));
            let lhs = theta.derive((k + 1) as u32);
            let rhs = theta.scale(&c);
            Ok(congruent_mod(&lhs, &rhs, p, 1)?.with(format!("theta k={k} i={i}"), ReportKind::Assertion))
        })
        .collect()
}

/// `m! [y^m] (η(q e^y)/η(q))^3 ≡ 2^{-3m} (mod p)` with `p = 2m + 1`.
pub fn check_jacobi_moment_congruence(p: i64, terms: i64) -> Result<CongruenceReport, ModpError> {
    check_prime(p)?;
    if p < 5 {
        return Err(CharError::InvalidSpec(format!("prime {p} must be >= 5")).into());
    }
    let m = ((p - 1) / 2) as u32;
    let lhs = jacobi_moment(m, terms);
    let rhs = QSeries::constant(
        BigRational::from_integer(BigInt::from(2).pow(3 * m)).recip(),
        &int(terms),
    );
    Ok(congruent_mod(&lhs, &rhs, p, 1)?.with(format!("jacobi moment m={m}"), ReportKind::Assertion))
}

fn vacuous(check: String, p: i64, order: BigRational, kind: ReportKind) -> CongruenceReport {
    CongruenceReport {
        check,
        p,
        modulus_exp: 1,
        checked_order: order,
        holds: true,
        first_failure: None,
        min_valuation: Valuation::Infinity,
        kind,
    }
}

fn comparison(
    check: String,
    p: i64,
    exponent: BigRational,
    got: BigRational,
    want: BigRational,
    extra_ok: bool,
) -> CongruenceReport {
    let holds = got == want && extra_ok;
    CongruenceReport {
        check,
        p,
        modulus_exp: 1,
        checked_order: exponent.clone() + int(1),
        holds,
        first_failure: (!holds).then(|| (exponent, got.clone(), want)),
        min_valuation: p_valuation(&got, p).unwrap(),
        kind: ReportKind::Assertion,
    }
}

/// `a_0 = Π (h_{k,i} - c_k/24)`, the leading coefficient of `F`.
pub fn a0_product(k: i64) -> BigRational {
    (1..=k + 1).map(|i| affine_leading_exponent(k, i)).product()
}

/// `Π_{m<n} (n^2 - m^2) / 4(k+2)`: the leading coefficient of `W` for the
/// basis `ch_{k,i} / i` with leading coefficients 1.
pub fn w_lead_product(k: i64) -> BigRational {
    let mut acc = BigRational::one();
    for m in 1..=k + 1 {
        for n in m + 1..=k + 1 {
            acc *= rat(n * n - m * m, 4 * (k + 2));
        }
    }
    acc
}

/// The three integrality checks on `F` at `p = 2k + 3`:
/// the leading coefficient `a_0` of `F` equals [`a0_product`] with `v_p = 1`;
/// the leading coefficient of `W`, divided by `(k+1)!` for the top-level
/// dimensions `1..k+1`, is `±`[`w_lead_product`] and a p-unit; `ℱ` is p-integral.
pub fn check_f_integrality(k: i64, terms: i64) -> Result<Vec<CongruenceReport>, ModpError> {
    let p = level_prime(k)?;
    let family = Family::Affine { k };
    if classify_vanishing_affine(k)?.vanishes {
        return Ok(vec![vacuous(format!("F k={k} vanishes"), p, int(terms), ReportKind::Assertion)]);
    }
    let res = f_form(family, terms)?;
    let (_, a0) = res.f.leading_term().map_err(WronskianError::from)?;
    let want_a0 = a0_product(k);
    let a0_report = comparison(
        format!("leading coefficient of F, k={k}"),
        p,
        BigRational::zero(),
        a0.clone(),
        want_a0,
        p_valuation(&a0, p)? == Valuation::Finite(1),
    );
    let (w_exp, b0) = res.w.leading_term().map_err(WronskianError::from)?;
    let b0 = b0 / BigRational::from_integer(factorial((k + 1) as u64));
    let want_b0 = w_lead_product(k);
    let b0 = if b0 == -&want_b0 { -b0 } else { b0 };
    let b0_report = comparison(
        format!("leading coefficient of W, k={k}"),
        p,
        w_exp,
        b0.clone(),
        want_b0,
        p_valuation(&b0, p)? == Valuation::Finite(0),
    );
    let nf = res.normalized_f.expect("non-vanishing F");
    let integral = is_p_integral(&nf, p)?.with(format!("normalized F p-integral, k={k}"), ReportKind::Assertion);
    Ok(vec![a0_report, b0_report, integral])
}

/// `ℱ ≡ 1 (mod p)`: evidence for the conjecture, never an assertion.
pub fn check_hasse_conjecture(k: i64, terms: i64) -> Result<CongruenceReport, ModpError> {
    let p = level_prime(k)?;
    let check = format!("normalized F ≡ 1 mod {p}, k={k}");
    if classify_vanishing_affine(k)?.vanishes {
        return Ok(vacuous(check, p, int(terms), ReportKind::Evidence));
    }
    let res = f_form(Family::Affine { k }, terms)?;
    let nf = res.normalized_f.expect("non-vanishing F");
    let one = QSeries::constant(BigRational::one(), &nf.order());
    Ok(congruent_mod(&nf, &one, p, 1)?.with(check, ReportKind::Evidence))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// `h = a_0 / b_0`, when it is p-integral.
    #[serde(with = "opt_rat")]
    pub h: Option<BigRational>,
    pub report: CongruenceReport,
}

mod opt_rat {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(|v| v.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::arith::parse_rat(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

/// Tests `𝒲' ≡ h 𝒲 (mod p^2)` with `h` fixed by the leading coefficients.
pub fn probe_w_congruence_mod_p2(k: i64, terms: i64) -> Result<ProbeReport, ModpError> {
    let p = level_prime(k)?;
    let res = f_form(Family::Affine { k }, terms)?;
    let w = res.normalized_w();
    let wp = res.normalized_w_prime();
    let check = format!("W' ≡ h W mod {p}^2, k={k}");
    if res.vanishes {
        let zero = QSeries::zero(1, &wp.order());
        let report = congruent_mod(&wp, &zero, p, 2)?.with(check, ReportKind::Evidence);
        return Ok(ProbeReport { h: Some(BigRational::zero()), report });
    }
    let (_, b0) = w.leading_term().map_err(WronskianError::from)?;
    let (_, a0) = wp.leading_term().map_err(WronskianError::from)?;
    let h = a0 / b0;
    let order = w.order().min(wp.order());
    let report = match congruent_mod(&wp, &w.scale(&h), p, 2) {
        Ok(r) => r.with(check, ReportKind::Evidence),
        Err(ModpError::NotPIntegral { exponent, coeff, .. }) => CongruenceReport {
            check,
            p,
            modulus_exp: 2,
            checked_order: order,
            holds: false,
            first_failure: Some((exponent, coeff, BigRational::zero())),
            min_valuation: Valuation::Finite(-1),
            kind: ReportKind::Evidence,
        },
        Err(e) => return Err(e),
    };
    Ok(ProbeReport {
        h: (p_valuation(&h, p)? >= Valuation::Finite(0)).then_some(h),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eisenstein;
    use crate::qseries::eta_power;

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&int(240), 5).unwrap(), Valuation::Finite(1));
        assert_eq!(p_valuation(&rat(1, 5), 5).unwrap(), Valuation::Finite(-1));
        assert_eq!(p_valuation(&int(0), 7).unwrap(), Valuation::Infinity);
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinity);
        assert_eq!(p_valuation(&int(3), 9), Err(ModpError::NotPrime(9)));
    }

    #[test]
    fn e4_is_one_mod_5() {
        let e4 = eisenstein(4, 50).unwrap();
        let one = QSeries::constant(int(1), &int(50));
        let r = congruent_mod(&e4, &one, 5, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked_order, int(50));
    }

    #[test]
    fn eta_cubed_differs_from_eta_mod_5() {
        let o = int(3);
        let a = eta_power(3, &o);
        let b = eta_power(1, &o);
        let r = congruent_mod(&a, &b, 5, 1).unwrap();
        assert!(!r.holds);
        let (e, _, _) = r.first_failure.unwrap();
        assert_eq!(e, rat(1, 24));
    }

    #[test]
    fn non_integral_aborts() {
        let a = QSeries::monomial(rat(1, 5), &int(1), &int(3));
        assert!(matches!(
            congruent_mod(&a, &a, 5, 1),
            Err(ModpError::NotPIntegral { .. })
        ));
        assert!(!is_p_integral(&a, 5).unwrap().holds);
    }

    #[test]
    fn theta_small_levels() {
        for k in [1, 2] {
            assert!(check_theta_congruence(k, 40).unwrap().iter().all(|r| r.holds));
        }
        assert_eq!(check_theta_congruence(3, 10), Err(ModpError::NotPrime(9)));
    }

    #[test]
    fn jacobi_moments() {
        for p in [5, 7, 13] {
            assert!(check_jacobi_moment_congruence(p, 50).unwrap().holds, "p={p}");
        }
    }

    #[test]
    fn integrality_level_one() {
        let reports = check_f_integrality(1, 30).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.holds), "{reports:?}");
        assert_eq!(check_f_integrality(6, 10), Err(ModpError::NotPrime(15)));
    }

    #[test]
    fn hasse_small_levels() {
        assert!(check_hasse_conjecture(1, 30).unwrap().holds);
        let r = check_hasse_conjecture(2, 30).unwrap();
        assert!(r.holds);
        assert_eq!(r.kind, ReportKind::Evidence);
    }

    #[test]
    fn probe_produces_report() {
        let r = probe_w_congruence_mod_p2(1, 20).unwrap();
        assert_eq!(r.report.modulus_exp, 2);
        assert_eq!(r.report.holds, r.report.first_failure.is_none());
    }

    #[test]
    fn report_json() {
        let e4 = eisenstein(4, 10).unwrap();
        let r = congruent_mod(&e4, &e4, 5, 1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["order"], "10");
        assert_eq!(v["kind"], "assertion");
        assert!(v["first_failure"].is_null());
        let back: CongruenceReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
