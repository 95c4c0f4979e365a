//! Wronskians of character bases with respect to `D = q d/dq`.
//!
//! `W` has rows `D^0 .. D^{m-1}` of the basis, `W'` has rows `D^1 .. D^m`,
//! and `F = W'/W` is a holomorphic modular form of weight `2m`. Determinants
//! are computed by fraction-free elimination over integer power series in a
//! single variable `t = q^{g/L}`, tracking how many coefficients stay exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fdiv, gcd_i64, int, lcm_i64, rat};
use crate::characters::{CharError, Family};
use crate::qseries::{eta_power, QSeries, QSeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WronskianError {
    #[error("empty basis or matrix")]
    Empty,
    #[error("matrix is not square")]
    NotSquare,
    #[error("insufficient order: needed {needed}, reached {reached}")]
    InsufficientOrder {
        needed: BigRational,
        reached: BigRational,
    },
    #[error("{family}: classifier says vanishes = {classifier}, expansion says {numeric}")]
    ClassifierMismatch {
        family: String,
        classifier: bool,
        numeric: bool,
    },
    #[error("closed form fails at exponent {exponent}: got {got}, expected {expected}")]
    IdentityFails {
        exponent: BigRational,
        got: BigRational,
        expected: BigRational,
    },
    #[error("normalized F has exponent {0} off the integer lattice or below 0")]
    NotHolomorphic(BigRational),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

/// Truncated integer power series in `t`; `c.len()` coefficients are exact.
#[derive(Clone, Debug)]
struct Ps {
    c: Vec<BigInt>,
}

impl Ps {
    fn prec(&self) -> usize {
        self.c.len()
    }

    fn val(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(self.c.len())
    }

    fn mul(&self, other: &Ps) -> Ps {
        let (va, vb) = (self.val(), other.val());
        let n = (self.prec() + vb).min(other.prec() + va);
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.c.iter().enumerate().skip(va) {
            if a.is_zero() {
                continue;
            }
            if i >= n {
                break;
            }
            for (j, b) in other.c.iter().enumerate().skip(vb) {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Ps { c }
    }

    fn sub(&self, other: &Ps) -> Ps {
        let n = self.prec().min(other.prec());
        Ps {
            c: (0..n).map(|i| &self.c[i] - &other.c[i]).collect(),
        }
    }

    /// Quotient by `d`, known to be exact over `Z[[t]]`.
    fn exact_div(&self, d: &Ps) -> Ps {
        let v = d.val();
        assert!(v < d.prec(), "division by a series that is zero to order");
        let n = self.prec().min(d.prec()).saturating_sub(v);
        let lead = &d.c[v];
        let mut q: Vec<BigInt> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = self.c[i + v].clone();
            for (j, qj) in q.iter().enumerate() {
                let dj = &d.c[v + i - j];
                if !qj.is_zero() && !dj.is_zero() {
                    acc -= qj * dj;
                }
            }
            let (quo, rem) = acc.div_rem(lead);
            assert!(rem.is_zero(), "inexact series division in elimination");
            q.push(quo);
        }
        Ps { c: q }
    }
}

/// Dense integer form of a square matrix of series: `q^{shift_j}` pulled out
/// of column `j`, row `i` multiplied by `row_scale[i]`.
struct DenseMatrix {
    entries: Vec<Vec<Ps>>,
    lattice: i64,
    step: i64,
    total_shift: i64,
    scale: BigInt,
}

fn densify(m: &[Vec<QSeries>]) -> Result<DenseMatrix, WronskianError> {
    let n = m.len();
    if n == 0 {
        return Err(WronskianError::Empty);
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(WronskianError::NotSquare);
    }
    let lattice = m
        .iter()
        .flatten()
        .fold(1, |acc, s| lcm_i64(acc, s.lattice_den()));
    let fine: Vec<Vec<QSeries>> = m
        .iter()
        .map(|row| row.iter().map(|s| s.rescale(lattice)).collect())
        .collect();
    let shifts: Vec<i64> = (0..n)
        .map(|j| {
            let leads = fine.iter().filter_map(|row| row[j].lead_num());
            leads
                .min()
                .unwrap_or_else(|| fine.iter().map(|row| row[j].order_num()).min().unwrap())
        })
        .collect();
    let mut step = lattice;
    for row in &fine {
        for (j, s) in row.iter().enumerate() {
            for &e in s.raw_terms().keys() {
                step = gcd_i64(step, e - shifts[j]);
            }
        }
    }
    let step = step.abs().max(1);
    let mut scale = BigInt::one();
    let mut entries = Vec::with_capacity(n);
    for row in &fine {
        let den = row
            .iter()
            .flat_map(|s| s.raw_terms().values())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        scale *= &den;
        let dense_row = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let prec = fdiv(s.order_num() - shifts[j], step).max(0) as usize;
                let mut c = vec![BigInt::zero(); prec];
                for (&e, v) in s.raw_terms() {
                    // Terms past the last full step are dropped with the precision.
                    let idx = ((e - shifts[j]) / step) as usize;
                    if idx >= prec {
                        continue;
                    }
                    c[idx] = (v * BigRational::from_integer(den.clone())).to_integer();
                }
                Ps { c }
            })
            .collect();
        entries.push(dense_row);
    }
    Ok(DenseMatrix {
        entries,
        lattice,
        step,
        total_shift: shifts.iter().sum(),
        scale,
    })
}

/// Determinant of a square matrix of series, exact to the tracked order.
///
/// Fraction-free elimination with the pivot of smallest valuation in each
/// column. Each division by the previous pivot of valuation `v` costs `v`
/// coefficients. If a whole column is zero to order, Sylvester's identity
/// bounds the valuation of the determinant and the result is a zero series
/// of that order.
pub fn determinant(m: &[Vec<QSeries>]) -> Result<QSeries, WronskianError> {
    let DenseMatrix {
        mut entries,
        lattice,
        step,
        total_shift,
        scale,
    } = densify(m)?;
    let n = entries.len();
    let mut negate = false;
    let mut prev: Option<Ps> = None;
    let mut result: Option<Ps> = None;
    let mut zero_order: Option<i64> = None;
    for k in 0..n {
        let best = (k..n)
            .filter(|&r| entries[r][k].val() < entries[r][k].prec())
            .min_by_key(|&r| entries[r][k].val());
        let Some(best) = best else {
            let n_cur = (k..n).map(|r| entries[r][k].prec()).min().unwrap() as i64;
            let v_prev = prev.as_ref().map_or(0, |p| p.val()) as i64;
            zero_order = Some(n_cur - (n - k - 1) as i64 * v_prev);
            break;
        };
        if best != k {
            entries.swap(best, k);
            negate = !negate;
        }
        if k == n - 1 {
            result = Some(entries[k][k].clone());
            break;
        }
        let pivot = entries[k][k].clone();
        for i in k + 1..n {
            let aik = entries[i][k].clone();
            for j in k + 1..n {
                let num = pivot.mul(&entries[i][j]).sub(&aik.mul(&entries[k][j]));
                entries[i][j] = match &prev {
                    Some(p) => num.exact_div(p),
                    None => num,
                };
            }
        }
        prev = Some(pivot);
    }
    let to_order = |prec: i64| total_shift + prec * step;
    let out = match (result, zero_order) {
        (Some(d), _) => {
            let denom = BigRational::from_integer(scale);
            let sign = if negate { -BigRational::one() } else { BigRational::one() };
            let prec = d.prec() as i64;
            QSeries::from_raw(
                lattice,
                d.c.into_iter().enumerate().map(|(i, c)| {
                    (total_shift + i as i64 * step, &sign * BigRational::from_integer(c) / &denom)
                }),
                to_order(prec),
            )
        }
        (None, Some(z)) => QSeries::from_raw(lattice, std::iter::empty(), to_order(z)),
        (None, None) => unreachable!("elimination ends with a pivot or a zero column"),
    };
    Ok(out.reduce_lattice())
}

/// Determinant by the permutation expansion; the cross-check for small sizes.
pub fn leibniz_determinant(m: &[Vec<QSeries>]) -> Result<QSeries, WronskianError> {
    let n = m.len();
    if n == 0 {
        return Err(WronskianError::Empty);
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(WronskianError::NotSquare);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: Option<QSeries> = None;
    permute(&mut perm, 0, true, &mut |p, even| {
        let mut prod = m[0][p[0]].clone();
        for (i, &j) in p.iter().enumerate().skip(1) {
            prod = &prod * &m[i][j];
        }
        if !even {
            prod = -&prod;
        }
        total = Some(match total.take() {
            Some(t) => &t + &prod,
            None => prod,
        });
    });
    Ok(total.expect("n >= 1").reduce_lattice())
}

fn permute(p: &mut Vec<usize>, k: usize, even: bool, f: &mut impl FnMut(&[usize], bool)) {
    if k == p.len() {
        f(p, even);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, if i == k { even } else { !even }, f);
        p.swap(k, i);
    }
}

/// Rows `D^r` of the basis for `r` in `rows`.
pub fn derivative_matrix(basis: &[QSeries], rows: std::ops::Range<u32>) -> Vec<Vec<QSeries>> {
    rows.map(|r| basis.iter().map(|f| f.derive(r)).collect())
        .collect()
}

/// `W = det(D^i f_j)`, `i = 0..m-1`.
pub fn wronskian(basis: &[QSeries]) -> Result<QSeries, WronskianError> {
    determinant(&derivative_matrix(basis, 0..basis.len() as u32))
}

/// `W' = det(D^i f_j)`, `i = 1..m`: the Wronskian of the derivatives.
pub fn wronskian_prime(basis: &[QSeries]) -> Result<QSeries, WronskianError> {
    determinant(&derivative_matrix(basis, 1..basis.len() as u32 + 1))
}

/// `W`, `W'` and `F = W'/W` for an arbitrary basis.
pub fn f_from_basis(basis: &[QSeries]) -> Result<(QSeries, QSeries, QSeries), WronskianError> {
    let w = wronskian(basis)?;
    let wp = wronskian_prime(basis)?;
    let f = (&wp * &w.invert()?).reduce_lattice();
    Ok((w, wp, f))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianResult {
    pub family: Family,
    pub w: QSeries,
    pub w_prime: QSeries,
    pub f: QSeries,
    pub f_weight: i64,
    pub vanishes: bool,
    pub normalized_f: Option<QSeries>,
}

impl WronskianResult {
    /// `W` scaled to leading coefficient 1.
    pub fn normalized_w(&self) -> QSeries {
        self.w.normalized().expect("W is nonzero")
    }

    /// `W'` scaled by the same constant as `W`.
    pub fn normalized_w_prime(&self) -> QSeries {
        let (_, c) = self.w.leading_term().expect("W is nonzero");
        self.w_prime.scale(&c.recip())
    }

    fn from_parts(family: Family, w: QSeries, w_prime: QSeries) -> Result<Self, WronskianError> {
        let f = (&w_prime * &w.invert()?).reduce_lattice();
        let vanishes = f.is_zero();
        let normalized_f = if vanishes {
            None
        } else {
            let nf = f.normalized()?;
            if let Some((e, _)) = nf.terms().find(|(e, _)| !e.is_integer() || e.is_negative()) {
                return Err(WronskianError::NotHolomorphic(e));
            }
            Some(nf)
        };
        Ok(WronskianResult {
            family,
            f_weight: 2 * family.basis_size() as i64,
            w,
            w_prime,
            f,
            vanishes,
            normalized_f,
        })
    }
}

fn family_wronskians(family: Family, char_order: &BigRational) -> Result<(QSeries, QSeries), WronskianError> {
    let basis = family.basis(char_order)?;
    Ok((wronskian(&basis)?, wronskian_prime(&basis)?))
}

fn max_leading_exponent(family: Family) -> BigRational {
    family
        .leading_exponents()
        .into_iter()
        .max()
        .unwrap_or_else(BigRational::zero)
}

const MAX_ATTEMPTS: usize = 4;

/// Assembles the character basis and computes `W`, `W'`, `F` and `ℱ`, with
/// `F` known below `q^terms`. Vanishing to order is cross-checked against the
/// exact classifier.
pub fn f_form(family: Family, terms: i64) -> Result<WronskianResult, WronskianError> {
    family.validate()?;
    let classified = family.classify()?.vanishes;
    let base = max_leading_exponent(family).ceil() + int(terms);
    let mut slack = 2i64;
    let mut reached = BigRational::zero();
    for _ in 0..MAX_ATTEMPTS {
        let (w, wp) = family_wronskians(family, &(&base + int(slack)))?;
        let res = WronskianResult::from_parts(family, w, wp)?;
        reached = res.f.order();
        if reached >= int(terms) {
            if res.vanishes != classified {
                return Err(WronskianError::ClassifierMismatch {
                    family: family.to_string(),
                    classifier: classified,
                    numeric: res.vanishes,
                });
            }
            let f = res.f.truncate(&int(terms));
            let normalized_f = res.normalized_f.as_ref().map(|nf| nf.truncate(&int(terms)));
            return Ok(WronskianResult { f, normalized_f, ..res });
        }
        let deficit = (int(terms) - &reached).ceil().to_integer();
        let deficit: i64 = deficit.try_into().unwrap_or(i64::MAX / 4);
        slack += deficit + 2;
    }
    Err(WronskianError::InsufficientOrder {
        needed: int(terms),
        reached,
    })
}

/// Exponent `e` of the closed form `𝒲 = η^e`.
pub fn eta_exponent(family: Family) -> i64 {
    match family {
        Family::Affine { k } => 2 * k * (k + 1),
        Family::Virasoro { p, pp } => (p - 1) * (pp - 1) * (p * pp - p - pp - 1) / 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaCheck {
    pub exponent: i64,
    /// Integral `q`-powers past the leading term that were compared.
    pub terms: i64,
}

/// Normalized `W` of the family, known to `terms` integral powers past its lead.
pub fn normalized_wronskian(family: Family, terms: i64) -> Result<QSeries, WronskianError> {
    family.validate()?;
    let base = max_leading_exponent(family).ceil() + int(terms);
    let basis = family.basis(&(base + int(2)))?;
    let w = wronskian(&basis)?.normalized()?;
    let (lead, _) = w.leading_term()?;
    let reached = w.order() - &lead;
    if reached < int(terms) {
        return Err(WronskianError::InsufficientOrder {
            needed: int(terms),
            reached,
        });
    }
    Ok(w.truncate(&(lead + int(terms))))
}

/// Compares `𝒲` with `η^e` coefficient by coefficient.
pub fn verify_eta_closed_form(family: Family, terms: i64) -> Result<EtaCheck, WronskianError> {
    let w = normalized_wronskian(family, terms)?;
    let e = eta_exponent(family);
    let eta = eta_power(e, &w.order());
    if let Some((exponent, got, expected)) = w.first_difference(&eta) {
        return Err(WronskianError::IdentityFails {
            exponent,
            got,
            expected,
        });
    }
    if eta.order() < w.order() {
        return Err(WronskianError::InsufficientOrder {
            needed: w.order(),
            reached: eta.order(),
        });
    }
    Ok(EtaCheck { exponent: e, terms })
}

/// The printed weight `(p-1)(p'-1)(pp'-p-p'-1)/4` for minimal models.
pub fn printed_virasoro_weight(p: i64, pp: i64) -> BigRational {
    rat((p - 1) * (pp - 1) * (p * pp - p - pp - 1), 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCheck {
    pub weight_2m: i64,
    pub decomposes_at_2m: bool,
    #[serde(with = "crate::arith::rat_str")]
    pub printed_weight: BigRational,
    pub decomposes_at_printed: bool,
}

/// Which of the two candidate weights admits a decomposition of `ℱ` with
/// zero remainder.
pub fn virasoro_weight_check(res: &WronskianResult) -> Option<WeightCheck> {
    let Family::Virasoro { p, pp } = res.family else {
        return None;
    };
    let nf = res.normalized_f.as_ref()?;
    let printed = printed_virasoro_weight(p, pp);
    let try_weight = |w: i64| crate::modforms::decompose(nf, w).is_ok();
    Some(WeightCheck {
        weight_2m: res.f_weight,
        decomposes_at_2m: try_weight(res.f_weight),
        decomposes_at_printed: printed.is_integer() && try_weight(printed.to_integer().try_into().unwrap_or(-1)),
        printed_weight: printed,
    })
}

impl fmt::Display for WronskianResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: weight {}, vanishes = {}", self.family, self.f_weight, self.vanishes)?;
        writeln!(f, "W  = {}", self.w)?;
        writeln!(f, "W' = {}", self.w_prime)?;
        match &self.normalized_f {
            Some(nf) => write!(f, "ℱ  = {nf}"),
            None => write!(f, "F  = {}", self.f),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ResultWire {
    family: String,
    spec: serde_json::Value,
    weight: i64,
    vanishes: bool,
    #[serde(rename = "W")]
    w: QSeries,
    #[serde(rename = "Wprime")]
    w_prime: QSeries,
    #[serde(rename = "F_normalized")]
    f_normalized: Option<QSeries>,
}

impl Serialize for WronskianResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (family, spec) = match self.family {
            Family::Affine { k } => ("affine", serde_json::json!({ "k": k })),
            Family::Virasoro { p, pp } => ("virasoro", serde_json::json!({ "p": p, "pp": pp })),
        };
        ResultWire {
            family: family.into(),
            spec,
            weight: self.f_weight,
            vanishes: self.vanishes,
            w: self.w.clone(),
            w_prime: self.w_prime.clone(),
            f_normalized: self.normalized_f.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WronskianResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = ResultWire::deserialize(d)?;
        let get = |key: &str| {
            wire.spec
                .get(key)
                .and_then(|v| v.as_i64())
                .ok_or_else(|| D::Error::custom(format!("spec is missing {key:?}")))
        };
        let family = match wire.family.as_str() {
            "affine" => Family::Affine { k: get("k")? },
            "virasoro" => Family::Virasoro {
                p: get("p")?,
                pp: get("pp")?,
            },
            other => return Err(D::Error::custom(format!("unknown family {other:?}"))),
        };
        let w_inv = wire.w.invert().map_err(D::Error::custom)?;
        let f = (&wire.w_prime * &w_inv).reduce_lattice();
        Ok(WronskianResult {
            family,
            f: match &wire.f_normalized {
                Some(nf) if nf.order() < f.order() => f.truncate(&nf.order()),
                _ => f,
            },
            w: wire.w,
            w_prime: wire.w_prime,
            f_weight: wire.weight,
            vanishes: wire.vanishes,
            normalized_f: wire.f_normalized,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eisenstein;

    fn mono(c: i64, e: BigRational, order: i64) -> QSeries {
        QSeries::monomial(int(c), &e, &int(order))
    }

    #[test]
    fn one_by_one_is_identity() {
        let f = eta_power(3, &int(10));
        let w = wronskian(std::slice::from_ref(&f)).unwrap();
        assert!(w.agrees_with(&f));
        assert!(w.order() > int(9));
    }

    #[test]
    fn repeated_column_is_zero() {
        let f = eta_power(1, &int(10));
        let w = wronskian(&[f.clone(), f]).unwrap();
        assert!(w.is_zero());
        assert!(w.order() > int(5));
    }

    #[test]
    fn monomial_oracle() {
        let (a, b) = (rat(1, 3), rat(5, 4));
        let basis = [mono(1, a.clone(), 10), mono(1, b.clone(), 10)];
        let wp = wronskian_prime(&basis).unwrap();
        let want = &a * &b * (&b - &a);
        assert_eq!(wp.leading_term().unwrap(), (&a + &b, want));
        assert_eq!(wp.num_terms(), 1);
    }

    #[test]
    fn constant_has_zero_prime() {
        let c = QSeries::constant(int(1), &int(10));
        assert!(wronskian_prime(&[c]).unwrap().is_zero());
    }

    #[test]
    fn elimination_matches_leibniz_on_dense_matrices() {
        let o = int(12);
        let e = |r| eta_power(r, &o);
        let m = vec![
            vec![e(1), e(3), e(-1)],
            vec![e(2).shift(&rat(1, 3)), e(5), e(0)],
            vec![e(4), e(-2).shift(&rat(1, 2)), e(1).shift(&int(1))],
        ];
        let a = determinant(&m).unwrap();
        let b = leibniz_determinant(&m).unwrap();
        assert!(a.agrees_with(&b));
        assert!(a.order() >= int(11));
    }

    #[test]
    fn non_unit_pivots() {
        // Column 0 vanishes at t^0 in every row except the last.
        let o = int(15);
        let g = |r: i64, s: i64| eta_power(r, &o).shift(&int(s));
        let m = vec![
            vec![g(1, 1), g(2, 0), g(3, 0)],
            vec![g(2, 2), g(1, 0), g(5, 1)],
            vec![g(3, 0), g(4, 1), g(1, 0)],
        ];
        let a = determinant(&m).unwrap();
        let b = leibniz_determinant(&m).unwrap();
        assert!(a.agrees_with(&b));
        assert!(a.order() >= int(10), "{}", a.order());
    }

    #[test]
    fn affine_level_one() {
        let res = f_form(Family::Affine { k: 1 }, 20).unwrap();
        let w = res.normalized_w();
        assert_eq!(w.leading_term().unwrap().0, rat(1, 6));
        assert_eq!(res.f_weight, 4);
        assert_eq!(res.normalized_f.unwrap(), eisenstein(4, 20).unwrap());
    }

    #[test]
    fn affine_level_two_gives_e6() {
        let res = f_form(Family::Affine { k: 2 }, 20).unwrap();
        assert_eq!(res.normalized_f.unwrap(), eisenstein(6, 20).unwrap());
    }

    #[test]
    fn affine_level_six_vanishes() {
        let res = f_form(Family::Affine { k: 6 }, 10).unwrap();
        assert!(res.vanishes);
        assert!(res.normalized_f.is_none());
        assert!(res.f.order() >= int(10));
    }

    #[test]
    fn eta_closed_forms() {
        assert_eq!(verify_eta_closed_form(Family::Affine { k: 3 }, 15).unwrap().exponent, 24);
        assert_eq!(verify_eta_closed_form(Family::Virasoro { p: 2, pp: 5 }, 15).unwrap().exponent, 4);
        assert_eq!(verify_eta_closed_form(Family::Virasoro { p: 3, pp: 4 }, 15).unwrap().exponent, 12);
    }

    #[test]
    fn json_bundle_shape() {
        let res = f_form(Family::Affine { k: 1 }, 5).unwrap();
        let v = serde_json::to_value(&res).unwrap();
        for key in ["family", "spec", "weight", "vanishes", "W", "Wprime", "F_normalized"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["family"], "affine");
        assert_eq!(v["spec"]["k"], 1);
        let back: WronskianResult = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(serde_json::to_value(&back).unwrap(), v);
    }
}
