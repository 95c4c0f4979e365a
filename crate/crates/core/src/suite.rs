//! End-to-end verification battery: one function per acceptance criterion,
//! each returning a pass/fail outcome with per-item details.
//!
//! The pentagonal and Jacobi-cube sums here are built term by term from their
//! closed index sets, independently of the product expansion in [`eta_power`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{int, parse_rat, rat};
use crate::characters::{
    classify_vanishing_affine, classify_vanishing_virasoro, verify_affine_identity,
    verify_jacobi_rearrangement, verify_virasoro_identity, Family, AFFINE_IDENTITY_READING,
    VIRASORO_SIGN_READING,
};
use crate::modforms::{decompose, e2m3, eisenstein, Decomposition, JPolynomial};
use crate::modp::{
    check_f_integrality, check_hasse_conjecture, check_jacobi_moment_congruence,
    check_theta_congruence,
};
use crate::qseries::{eta_power, QSeries};
use crate::roots::{check_zero_location, RootReport};
use crate::wronskian::{
    derivative_matrix, determinant, f_form, f_from_basis, leibniz_determinant,
    verify_eta_closed_form, virasoro_weight_check, WronskianResult,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    /// Conjecture evidence does not gate a release.
    pub gating: bool,
    pub details: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: u32, title: &str, gating: bool) -> Self {
        CriterionOutcome {
            id,
            title: title.into(),
            passed: true,
            gating,
            details: vec![],
        }
    }

    fn ok(&mut self, msg: String) {
        self.details.push(format!("ok   {msg}"));
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        self.details.push(format!("FAIL {msg}"));
    }

    fn check(&mut self, cond: bool, msg: String) {
        if cond {
            self.ok(msg)
        } else {
            self.fail(msg)
        }
    }

    /// `PASS|FAIL criterion N: title`.
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let tag = if self.gating { "" } else { " (evidence)" };
        format!("{status} criterion {}: {}{tag}", self.id, self.title)
    }
}

/// `Σ_{n∈Z} (-1)^n q^{n(3n-1)/2}` below `q^terms`.
pub fn pentagonal_sum(terms: i64) -> QSeries {
    let mut out = Vec::new();
    let mut n = 0i64;
    loop {
        let a = n * (3 * n - 1) / 2;
        let b = n * (3 * n + 1) / 2;
        if a >= terms && b >= terms {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        out.push((a, int(sign)));
        if n > 0 {
            out.push((b, int(sign)));
        }
        n += 1;
    }
    QSeries::from_raw(1, out, terms)
}

/// `Σ_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}` below `q^terms`.
pub fn jacobi_cube_sum(terms: i64) -> QSeries {
    let mut out = Vec::new();
    let mut n = 0i64;
    while n * (n + 1) / 2 < terms {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        out.push((n * (n + 1) / 2, int(sign * (2 * n + 1))));
        n += 1;
    }
    QSeries::from_raw(1, out, terms)
}

/// `η^r q^{-r/24}`, the pure product `Π (1 - q^n)^r`, on the integer lattice.
fn euler_product_power(r: i64, terms: i64) -> QSeries {
    eta_power(r, &(int(terms) + rat(r, 24)))
        .shift(&rat(-r, 24))
        .reduce_lattice()
}

pub const AFFINE_ETA_LEVELS: std::ops::RangeInclusive<i64> = 1..=10;
pub const VIRASORO_ETA_MODELS: [(i64, i64); 5] = [(2, 5), (3, 4), (2, 7), (3, 5), (8, 3)];
pub const VANISHING_VIRASORO: [(i64, i64); 3] = [(2, 3), (8, 3), (2, 27)];
pub const NONVANISHING_VIRASORO: [(i64, i64); 4] = [(2, 5), (3, 4), (2, 7), (3, 5)];

fn err_text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn criterion_1(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(1, "closed-form Wronskians equal eta powers", true);
    let families = AFFINE_ETA_LEVELS
        .map(|k| Family::Affine { k })
        .chain(VIRASORO_ETA_MODELS.iter().map(|&(p, pp)| Family::Virasoro { p, pp }));
    for family in families {
        match verify_eta_closed_form(family, terms) {
            Ok(c) => out.ok(format!("{family}: W = η^{} to {} terms", c.exponent, c.terms)),
            Err(e) => out.fail(format!("{family}: {}", err_text(e))),
        }
    }
    out
}

pub fn criterion_2(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(2, "affine F vanishes exactly for k = 6, 16 (k <= 22)", true);
    for k in 1..=22 {
        let expected = k == 6 || k == 16;
        let classified = classify_vanishing_affine(k).map(|c| c.vanishes);
        match (f_form(Family::Affine { k }, terms), classified) {
            (Ok(res), Ok(cls)) => out.check(
                res.vanishes == expected && cls == expected,
                format!("k={k}: vanishes={} classifier={cls} (to q^{})", res.vanishes, res.f.order()),
            ),
            (Err(e), _) => out.fail(format!("k={k}: {}", err_text(e))),
            (_, Err(e)) => out.fail(format!("k={k}: {}", err_text(e))),
        }
    }
    out
}

pub fn criterion_3(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(3, "Virasoro F vanishing agrees with the classifier", true);
    let cases = VANISHING_VIRASORO
        .iter()
        .map(|&s| (s, true))
        .chain(NONVANISHING_VIRASORO.iter().map(|&s| (s, false)));
    for ((p, pp), expected) in cases {
        let family = Family::Virasoro { p, pp };
        let classified = classify_vanishing_virasoro(p, pp).map(|c| c.vanishes);
        match (f_form(family, terms), classified) {
            (Ok(res), Ok(cls)) => {
                out.check(
                    res.vanishes == expected && cls == expected,
                    format!("{family}: vanishes={} classifier={cls}", res.vanishes),
                );
                if let Some(w) = virasoro_weight_check(&res) {
                    out.details.push(format!(
                        "note {family}: weight 2m = {} decomposes: {}; printed weight {} decomposes: {}",
                        w.weight_2m, w.decomposes_at_2m, w.printed_weight, w.decomposes_at_printed
                    ));
                }
            }
            (Err(e), _) => out.fail(format!("{family}: {}", err_text(e))),
            (_, Err(e)) => out.fail(format!("{family}: {}", err_text(e))),
        }
    }
    out
}

pub fn criterion_4(terms: i64, product_terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(4, "character identities and eta expansions", true);
    let order = int(terms);
    for i in [2, 3] {
        match verify_affine_identity(i, &order) {
            Ok(r) => out.check(
                r.constant == int(i) && r.verified_reading == AFFINE_IDENTITY_READING,
                format!("affine i={i}: Σ(-1)^j ch = {} ({:?})", r.constant, r.verified_reading),
            ),
            Err(e) => out.fail(format!("affine i={i}: {}", err_text(e))),
        }
    }
    for (pt, ppt) in [(1, 1), (2, 1), (1, 3)] {
        match verify_virasoro_identity(pt, ppt, &order) {
            Ok(r) => out.check(
                r.constant.is_one() && r.verified_reading == VIRASORO_SIGN_READING,
                format!("virasoro ({pt},{ppt}): constant {} ({:?})", r.constant, r.verified_reading),
            ),
            Err(e) => out.fail(format!("virasoro ({pt},{ppt}): {}", err_text(e))),
        }
    }
    for i in 2..=6 {
        match verify_jacobi_rearrangement(i, terms) {
            Ok(()) => out.ok(format!("Jacobi rearrangement i={i}")),
            Err(e) => out.fail(format!("Jacobi rearrangement i={i}: {}", err_text(e))),
        }
    }
    let pent = pentagonal_sum(product_terms);
    out.check(
        pent == euler_product_power(1, product_terms),
        format!("pentagonal sum = Π(1-q^n) to {product_terms} terms"),
    );
    let cube = jacobi_cube_sum(product_terms);
    out.check(
        cube == euler_product_power(3, product_terms),
        format!("Jacobi sum = Π(1-q^n)^3 to {product_terms} terms"),
    );
    out
}

/// One row of the published table for affine levels `1..=11`, with the
/// two exponent columns in printed order.
pub struct PrintedRow {
    pub k: i64,
    pub col_eps: u32,
    pub col_delta: u32,
    /// Ascending coefficients of `G`; empty for `G = 0`.
    pub g: &'static [&'static str],
    pub zeros: &'static [&'static str],
}

pub const PRINTED_TABLE: [PrintedRow; 11] = [
    PrintedRow { k: 1, col_eps: 1, col_delta: 0, g: &["1"], zeros: &[] },
    PrintedRow { k: 2, col_eps: 0, col_delta: 1, g: &["1"], zeros: &[] },
    PrintedRow { k: 3, col_eps: 2, col_delta: 0, g: &["1"], zeros: &[] },
    PrintedRow { k: 4, col_eps: 1, col_delta: 1, g: &["1"], zeros: &[] },
    PrintedRow { k: 5, col_eps: 0, col_delta: 0, g: &["-1302528/1075", "1"], zeros: &["1211.653954"] },
    PrintedRow { k: 6, col_eps: 2, col_delta: 1, g: &[], zeros: &[] },
    PrintedRow { k: 7, col_eps: 1, col_delta: 0, g: &["-787021824/587489", "1"], zeros: &["1339.636698"] },
    PrintedRow { k: 8, col_eps: 0, col_delta: 1, g: &["-8696400/20119", "1"], zeros: &["432.2481237"] },
    PrintedRow { k: 9, col_eps: 2, col_delta: 0, g: &["-1381580800/10776887", "1"], zeros: &["1281.987070"] },
    PrintedRow { k: 10, col_eps: 1, col_delta: 1, g: &["-956352/2021", "1"], zeros: &["473.2073231"] },
    PrintedRow {
        k: 11,
        col_eps: 0,
        col_delta: 0,
        g: &["1908473415598080/13928908741", "-20462710947840/13928908741", "1"],
        zeros: &["100.0843760", "1368.997756"],
    },
];

/// Printed coefficients that disagree with the printed zeros of the same row,
/// with the value that the zeros confirm.
pub const PRINTED_ERRATA: [(i64, &str, &str); 1] = [(9, "-1381580800/10776887", "-1381580800/1077687")];

impl PrintedRow {
    pub fn polynomial(&self) -> JPolynomial {
        JPolynomial::new(self.g.iter().map(|s| parse_rat(s).expect("table rational")).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub k: i64,
    pub weight: i64,
    pub vanishes: bool,
    /// `G = 0` when `F` vanishes.
    pub decomposition: Decomposition,
    /// Absent when `F` vanishes.
    pub zeros: Option<RootReport>,
}

/// Decomposes `ℱ_{L(kΛ0)}` for `k = 1..=kmax` and locates the zeros of `G`.
pub fn affine_table(kmax: i64, terms: i64) -> Result<Vec<TableEntry>, String> {
    (1..=kmax)
        .map(|k| {
            let res = f_form(Family::Affine { k }, terms).map_err(err_text)?;
            table_entry(&res)
        })
        .collect()
}

/// One table row from an already computed affine result.
pub fn table_entry(res: &WronskianResult) -> Result<TableEntry, String> {
    let Family::Affine { k } = res.family else {
        return Err(format!("{:?} is not an affine family", res.family));
    };
    let (decomposition, zeros) = match &res.normalized_f {
        None => (decompose(&res.f, res.f_weight).map_err(err_text)?, None),
        Some(nf) => {
            let d = decompose(nf, res.f_weight).map_err(err_text)?;
            let z = check_zero_location(&d.g).map_err(err_text)?;
            (d, Some(z))
        }
    };
    Ok(TableEntry {
        k,
        weight: res.f_weight,
        vanishes: res.vanishes,
        decomposition,
        zeros,
    })
}

/// Exact value of a plain decimal string.
fn decimal_value(s: &str) -> Option<BigRational> {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |r| (true, r));
    let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int_part}{frac}").parse().ok()?;
    let v = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -v } else { v })
}

/// One unit in the last printed place.
fn last_place(s: &str) -> BigRational {
    let frac = s.split_once('.').map_or(0, |(_, f)| f.len());
    BigRational::new(BigInt::one(), BigInt::from(10).pow(frac as u32))
}

/// Whether two decimals agree up to rounding of the final printed digit.
pub fn decimals_agree(computed: &str, printed: &str) -> bool {
    match (decimal_value(computed), decimal_value(printed)) {
        (Some(a), Some(b)) => (a - b).abs() <= last_place(printed),
        _ => false,
    }
}

pub fn criterion_5(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(5, "table of G(ℱ, j) and its zeros for k = 1..11", true);
    let table = match affine_table(11, terms) {
        Ok(t) => t,
        Err(e) => {
            out.fail(e);
            return out;
        }
    };
    let products = [
        (1, eisenstein(4, terms).unwrap()),
        (2, eisenstein(6, terms).unwrap()),
        (3, eisenstein(4, terms).unwrap().pow(2)),
        (4, &eisenstein(4, terms).unwrap() * &eisenstein(6, terms).unwrap()),
    ];
    for (entry, row) in table.iter().zip(PRINTED_TABLE.iter()) {
        let k = entry.k;
        let d = &entry.decomposition;
        if d.g.is_zero() {
            out.check(row.g.is_empty() && entry.vanishes, format!("k={k}: F = 0"));
            continue;
        }
        // The printed exponent columns are transposed relative to the weights.
        out.check(
            (d.delta, d.epsilon) == (row.col_eps, row.col_delta),
            format!("k={k}: weight {} = 12·{} + 4·{} + 6·{}", entry.weight, d.t, d.delta, d.epsilon),
        );
        let printed = row.polynomial();
        let zeros = entry.zeros.as_ref().expect("zeros accompany a decomposition");
        let approx = zeros.approximations();
        let zeros_match = approx.len() == row.zeros.len()
            && approx.iter().zip(row.zeros).all(|(a, b)| decimals_agree(a, b));
        if d.g == printed {
            out.ok(format!("k={k}: G = {}", d.g));
        } else if let Some((_, _, fixed)) = PRINTED_ERRATA.iter().find(|(ek, _, _)| *ek == k) {
            let mut coeffs: Vec<BigRational> = printed.coeffs().to_vec();
            coeffs[0] = parse_rat(fixed).unwrap();
            let corrected = JPolynomial::new(coeffs);
            out.check(
                d.g == corrected && zeros_match,
                format!(
                    "k={k}: G = {} (printed {printed}; the printed zero {} confirms the computed value)",
                    d.g,
                    row.zeros.join(", ")
                ),
            );
        } else {
            out.fail(format!("k={k}: G = {} but printed {printed}", d.g));
        }
        out.check(
            zeros_match,
            format!("k={k}: zeros {:?} vs printed {:?}", approx, row.zeros),
        );
        if let Some((_, f)) = products.iter().find(|(pk, _)| *pk == k) {
            let res = f_form(Family::Affine { k }, terms).ok();
            let nf = res.and_then(|r| r.normalized_f);
            out.check(nf.as_ref() == Some(f), format!("k={k}: ℱ is the pure Eisenstein product"));
        }
    }
    out
}

pub const CONGRUENCE_KMAX: i64 = 14;

pub fn criterion_6(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(6, "congruences at p = 2k + 3", true);
    for k in 1..=CONGRUENCE_KMAX {
        let p = 2 * k + 3;
        if !crate::arith::is_prime(p as u64) {
            continue;
        }
        match check_theta_congruence(k, terms) {
            Ok(rs) => out.check(rs.iter().all(|r| r.holds), format!("k={k}: theta congruence mod {p} for all i")),
            Err(e) => out.fail(format!("k={k}: {}", err_text(e))),
        }
        match check_jacobi_moment_congruence(p, terms) {
            Ok(r) => out.check(r.holds, format!("p={p}: Jacobi moment ≡ 2^(-3m)")),
            Err(e) => out.fail(format!("p={p}: {}", err_text(e))),
        }
        match check_f_integrality(k, terms) {
            Ok(rs) => {
                for r in rs {
                    out.check(r.holds, r.check.clone());
                }
            }
            Err(e) => out.fail(format!("k={k}: {}", err_text(e))),
        }
    }
    out
}

pub const HASSE_LEVELS: [i64; 7] = [1, 2, 4, 5, 7, 8, 10];

pub fn criterion_7(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(7, "normalized F ≡ 1 mod p and zeros of G in [0, 1728]", false);
    for k in HASSE_LEVELS {
        match check_hasse_conjecture(k, terms) {
            Ok(r) => out.check(r.holds, format!("k={k}: ℱ ≡ 1 mod {} to q^{}", r.p, r.checked_order)),
            Err(e) => out.fail(format!("k={k}: {}", err_text(e))),
        }
    }
    match affine_table(11, terms) {
        Ok(table) => {
            for entry in table.iter().filter(|e| !e.vanishes) {
                let z = entry.zeros.as_ref().unwrap();
                out.check(
                    z.is_squarefree && z.all_real && z.all_in_0_1728,
                    format!("k={}: zeros {:?} simple and in [0, 1728]", entry.k, z.approximations()),
                );
            }
        }
        Err(e) => out.fail(e),
    }
    out
}

pub fn criterion_8(terms: i64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(8, "quasimodular Jacobi moment series", true);
    let e2 = eisenstein(2, terms).unwrap();
    let e4 = eisenstein(4, terms).unwrap();
    let e6 = eisenstein(6, terms).unwrap();
    out.check(e2m3(1, terms) == e2, format!("E_(2,3) = E2 to {terms} terms"));
    let want = &e2.pow(2).scale(&rat(5, 3)) - &e4.scale(&rat(2, 3));
    out.check(e2m3(2, terms) == want, format!("E_(4,3) = (5/3)E2² - (2/3)E4 to {terms} terms"));
    let want = &(&e2.pow(3).scale(&rat(35, 9)) - &(&e2 * &e4).scale(&rat(14, 3))) + &e6.scale(&rat(16, 9));
    out.check(
        e2m3(3, terms) == want,
        format!("E_(6,3) = (35/9)E2³ - (14/3)E2E4 + (16/9)E6 to {terms} terms"),
    );
    out
}

/// Families of the battery whose Wronskians are at most 4×4.
pub fn small_families() -> Vec<Family> {
    let mut v: Vec<Family> = (1..=3).map(|k| Family::Affine { k }).collect();
    for (p, pp) in VIRASORO_ETA_MODELS.iter().chain(VANISHING_VIRASORO.iter()) {
        let f = Family::Virasoro { p: *p, pp: *pp };
        if (2..=4).contains(&f.basis_size()) && !v.contains(&f) {
            v.push(f);
        }
    }
    v
}

fn small_int_det(a: &[Vec<i64>]) -> BigRational {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[r][j] -= t;
            }
        }
    }
    det
}

/// A random integer matrix with entries in `-3..=3` and nonzero determinant.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> (Vec<Vec<i64>>, BigRational) {
    loop {
        let a: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let d = small_int_det(&a);
        if !d.is_zero() {
            return (a, d);
        }
    }
}

/// Rows of `a` applied to the basis: `g_i = Σ_j a_ij f_j`.
pub fn change_basis(basis: &[QSeries], a: &[Vec<i64>]) -> Vec<QSeries> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(basis)
                .map(|(&c, f)| f.scale(&int(c)))
                .reduce(|x, y| &x + &y)
                .expect("nonempty basis")
        })
        .collect()
}

pub const BASIS_CHANGES: usize = 10;

pub fn criterion_9(terms: i64, product_terms: i64, seed: u64) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(9, "oracle equivalence", true);
    let order = int(terms);
    for family in small_families() {
        let basis = match family.basis(&order) {
            Ok(b) => b,
            Err(e) => {
                out.fail(format!("{family}: {}", err_text(e)));
                continue;
            }
        };
        let m = basis.len() as u32;
        for (name, rows) in [("W", 0..m), ("W'", 1..m + 1)] {
            let mat = derivative_matrix(&basis, rows);
            match (determinant(&mat), leibniz_determinant(&mat)) {
                (Ok(a), Ok(b)) => out.check(
                    a.agrees_with(&b) && a.order() >= int(terms) - int(2),
                    format!("{family} {name}: elimination = Leibniz to q^{}", a.order().min(b.order())),
                ),
                (Err(e), _) | (_, Err(e)) => out.fail(format!("{family} {name}: {}", err_text(e))),
            }
        }
    }
    out.check(
        pentagonal_sum(product_terms) == euler_product_power(1, product_terms),
        format!("η product = pentagonal sum to {product_terms} terms"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families = small_families();
    families.push(Family::Affine { k: 4 });
    families.push(Family::Affine { k: 6 });
    for family in families {
        let mut run = || -> Result<(bool, usize), String> {
            let basis = family.basis(&(order.clone() + int(2))).map_err(err_text)?;
            let (w, _, f) = f_from_basis(&basis).map_err(err_text)?;
            let nf = (!f.is_zero()).then(|| f.normalized().unwrap());
            let mut ok = 0;
            for _ in 0..BASIS_CHANGES {
                let (a, det) = random_invertible(basis.len(), &mut rng);
                let changed = change_basis(&basis, &a);
                let (w2, _, f2) = f_from_basis(&changed).map_err(err_text)?;
                let w_scaled = w.scale(&det);
                let same_w = w2.agrees_with(&w_scaled);
                let same_f = match &nf {
                    Some(nf) => !f2.is_zero() && f2.normalized().unwrap().agrees_with(nf),
                    None => f2.is_zero(),
                };
                let deep = f2.order() >= int(terms / 2);
                if same_w && same_f && deep {
                    ok += 1;
                }
            }
            Ok((ok == BASIS_CHANGES, ok))
        };
        match run() {
            Ok((all, ok)) => out.check(
                all,
                format!("{family}: ℱ invariant, W scales by det, {ok}/{BASIS_CHANGES} basis changes"),
            ),
            Err(e) => out.fail(format!("{family}: {e}")),
        }
    }
    out
}

/// Working sizes for the battery.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub eta_terms: i64,
    pub vanishing_terms: i64,
    pub identity_terms: i64,
    pub product_terms: i64,
    pub table_terms: i64,
    pub congruence_terms: i64,
    pub quasimodular_terms: i64,
    pub oracle_terms: i64,
    pub oracle_product_terms: i64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            eta_terms: 50,
            vanishing_terms: 15,
            identity_terms: 40,
            product_terms: 200,
            table_terms: 40,
            congruence_terms: 40,
            quasimodular_terms: 50,
            oracle_terms: 20,
            oracle_product_terms: 500,
            seed: 0x5eed,
        }
    }
}

pub fn run_criterion(id: u32, cfg: &SuiteConfig) -> Option<CriterionOutcome> {
    Some(match id {
        1 => criterion_1(cfg.eta_terms),
        2 => criterion_2(cfg.vanishing_terms),
        3 => criterion_3(cfg.vanishing_terms),
        4 => criterion_4(cfg.identity_terms, cfg.product_terms),
        5 => criterion_5(cfg.table_terms),
        6 => criterion_6(cfg.congruence_terms),
        7 => criterion_7(cfg.congruence_terms),
        8 => criterion_8(cfg.quasimodular_terms),
        9 => criterion_9(cfg.oracle_terms, cfg.oracle_product_terms, cfg.seed),
        _ => return None,
    })
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    (1..=9).filter_map(|id| run_criterion(id, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_tolerance() {
        assert!(decimals_agree("1211.653953", "1211.653954"));
        assert!(decimals_agree("432.2481237", "432.2481237"));
        assert!(!decimals_agree("1211.653952", "1211.653954"));
    }

    #[test]
    fn oracle_sums_heads() {
        let p = pentagonal_sum(13);
        let want: Vec<(i64, i64)> = vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)];
        let got: Vec<(i64, BigRational)> = p.raw_terms().iter().map(|(&e, c)| (e, c.clone())).collect();
        assert_eq!(got, want.into_iter().map(|(e, c)| (e, int(c))).collect::<Vec<_>>());
        let j = jacobi_cube_sum(11);
        assert_eq!(j.coeff(&int(6)), int(-7));
    }

    #[test]
    fn small_family_sizes() {
        for f in small_families() {
            assert!((2..=4).contains(&f.basis_size()), "{f}");
        }
    }

    #[test]
    fn invertible_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..5 {
            let (a, d) = random_invertible(n, &mut rng);
            assert_eq!(a.len(), n);
            assert!(!d.is_zero());
        }
        assert_eq!(small_int_det(&[vec![1, 2], vec![3, 4]]), int(-2));
    }
}
