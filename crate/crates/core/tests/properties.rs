use gradedim::arith::{int, rat};
use gradedim::characters::{
    affine_char, affine_leading_exponent, virasoro_char, virasoro_leading_exponent, AffineCharSpec, Family,
};
use gradedim::modforms::{compose, decompose, delta_form, eisenstein, weight_exponents, Decomposition, JPolynomial};
use gradedim::modp::{congruent_mod, p_valuation, reduce_mod, Valuation};
use gradedim::qseries::{eta_power, QSeries};
use gradedim::roots::{check_zero_location, isolate_real_roots, refine_root};
use gradedim::suite::{change_basis, jacobi_cube_sum, pentagonal_sum, random_invertible};
use gradedim::wronskian::f_from_basis;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = BigRational> {
    small_rat().prop_filter("nonzero", |x| !x.is_zero())
}

/// A nonzero series on lattice `(1/den)Z` with a handful of terms.
fn series() -> impl Strategy<Value = QSeries> {
    (1i64..=3, -4i64..=4, nonzero_rat(), prop::collection::vec(small_rat(), 0..6), 1i64..=8).prop_map(
        |(den, lead, c0, rest, width)| {
            let mut terms = vec![(lead, c0)];
            terms.extend(rest.into_iter().enumerate().map(|(i, c)| (lead + 1 + i as i64, c)));
            QSeries::from_raw(den, terms, lead + width + 1)
        },
    )
}

fn p_integral_series(p: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((-30i64..=30, 1i64..=6), 1..8).prop_map(move |cs| {
        let cs: Vec<BigRational> = cs
            .into_iter()
            .map(|(n, d)| if d % p == 0 { int(n) } else { rat(n, d) })
            .collect();
        QSeries::from_dense(0, &cs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_is_associative(a in series(), b in series(), c in series()) {
        let l = &(&a * &b) * &c;
        let r = &a * &(&b * &c);
        prop_assert_eq!(l.order(), r.order());
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn mul_distributes_over_add(a in series(), b in series(), c in series()) {
        let l = &a * &(&b + &c);
        let r = &(&a * &b) + &(&a * &c);
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn add_and_mul_commute(a in series(), b in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn add_order_is_min(a in series(), b in series()) {
        prop_assert_eq!((&a + &b).order(), a.order().min(b.order()));
    }

    #[test]
    fn inverse_times_series_is_one(a in series()) {
        let inv = a.invert().unwrap();
        let one = &a * &inv;
        let expected = QSeries::constant(int(1), &one.order());
        prop_assert!(one.agrees_with(&expected));
        prop_assert!(one.order() >= a.order() - a.leading_term().unwrap().0);
    }

    #[test]
    fn derivative_obeys_leibniz(a in series(), b in series()) {
        let l = (&a * &b).derive(1);
        let r = &(&a.derive(1) * &b) + &(&a * &b.derive(1));
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn json_round_trip_is_identity(a in series()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: QSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn eta_power_is_multiplicative(r in -4i64..=4, s in -4i64..=4, terms in 5i64..30) {
        let order = int(terms);
        let lhs = eta_power(r + s, &order);
        let rhs = &eta_power(r, &order) * &eta_power(s, &order);
        prop_assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn eta_powers_match_repeated_products() {
    let order = int(60);
    let eta = eta_power(1, &order);
    for r in 2..=4 {
        let direct = eta_power(r, &order);
        let product = eta.pow(r as u32);
        assert!(direct.agrees_with(&product), "r = {r}");
        assert!(product.order() >= order);
    }
}

#[test]
fn eta_matches_pentagonal_and_cube_sums() {
    let terms = 120;
    let eta = eta_power(1, &(int(terms) + rat(1, 24)));
    assert!(eta.agrees_with(&pentagonal_sum(terms).shift(&rat(1, 24))));
    let eta3 = eta_power(3, &(int(terms) + rat(1, 8)));
    assert!(eta3.agrees_with(&jacobi_cube_sum(terms).shift(&rat(1, 8))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn valuation_is_additive_on_products(x in nonzero_rat(), y in nonzero_rat(), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let (Valuation::Finite(a), Valuation::Finite(b)) = (p_valuation(&x, p).unwrap(), p_valuation(&y, p).unwrap()) else {
            unreachable!()
        };
        prop_assert_eq!(p_valuation(&(&x * &y), p).unwrap(), Valuation::Finite(a + b));
        prop_assert!(p_valuation(&(&x + &y), p).unwrap() >= Valuation::Finite(a.min(b)));
    }

    #[test]
    fn zero_has_infinite_valuation(p in prop::sample::select(vec![2i64, 3, 5, 7, 11])) {
        prop_assert_eq!(p_valuation(&BigRational::zero(), p).unwrap(), Valuation::Infinity);
        prop_assert!(Valuation::Infinity > Valuation::Finite(i64::MAX));
    }

    #[test]
    fn reduction_is_a_ring_map(x in small_rat(), y in small_rat(), e in 1u32..=3) {
        let p = 5;
        let m = BigInt::from(p).pow(e);
        let rx = reduce_mod(&x, p, e).unwrap();
        let ry = reduce_mod(&y, p, e).unwrap();
        prop_assert_eq!(reduce_mod(&(&x * &y), p, e).unwrap(), (&rx * &ry) % &m);
        prop_assert_eq!(reduce_mod(&(&x + &y), p, e).unwrap(), (&rx + &ry) % &m);
    }

    #[test]
    fn congruence_is_an_equivalence(
        a in p_integral_series(5),
        b in p_integral_series(5),
        c in p_integral_series(5),
    ) {
        let p = 5;
        prop_assert!(congruent_mod(&a, &a, p, 1).unwrap().holds);
        let ab = congruent_mod(&a, &b, p, 1).unwrap();
        let ba = congruent_mod(&b, &a, p, 1).unwrap();
        prop_assert_eq!(ab.holds, ba.holds);
        let bc = congruent_mod(&b, &c, p, 1).unwrap();
        let ac = congruent_mod(&a, &c, p, 1).unwrap();
        let common = a.order().min(b.order()).min(c.order());
        if ab.holds && bc.holds && a.order() == common && b.order() == common && c.order() == common {
            prop_assert!(ac.holds);
        }
        for r in [&ab, &bc, &ac] {
            prop_assert_eq!(r.holds, r.first_failure.is_none());
        }
        prop_assert!(ab.checked_order <= a.order().min(b.order()));
    }

    #[test]
    fn shifting_by_p_multiple_keeps_congruence(a in p_integral_series(7), k in -5i64..=5) {
        let b = &a + &QSeries::constant(int(7 * k), &a.order());
        prop_assert!(congruent_mod(&a, &b, 7, 1).unwrap().holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_inverts_compose(
        weight in prop::sample::select(vec![4i64, 6, 8, 10, 12, 14, 16, 24, 26, 36]),
        coeffs in prop::collection::vec(small_rat(), 3),
        lead in nonzero_rat(),
    ) {
        let (t, delta, epsilon) = weight_exponents(weight).unwrap();
        let mut cs: Vec<BigRational> = coeffs.into_iter().take(t as usize).collect();
        cs.push(lead);
        let d = Decomposition { t, delta, epsilon, g: JPolynomial::new(cs) };
        prop_assert_eq!(d.weight(), weight);
        let f = compose(&d, 12);
        let back = decompose(&f, weight).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn jpolynomial_json_round_trip(cs in prop::collection::vec(small_rat(), 0..5)) {
        let g = JPolynomial::new(cs);
        let text = serde_json::to_string(&g).unwrap();
        let back: JPolynomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        if let Some(c) = g.leading_coeff() {
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn weight_exponents_are_in_range(w in 0i64..200) {
        match weight_exponents(w) {
            Some((t, d, e)) => {
                prop_assert!(d <= 2 && e <= 1);
                prop_assert_eq!(12 * t as i64 + 4 * d as i64 + 6 * e as i64, w);
            }
            None => prop_assert!(w % 2 == 1 || w == 2),
        }
    }
}

#[test]
fn discriminant_identity_holds() {
    let n = 40;
    let e4 = eisenstein(4, n).unwrap();
    let e6 = eisenstein(6, n).unwrap();
    let lhs = &e4.pow(3) - &e6.pow(2);
    assert!(lhs.agrees_with(&delta_form(n).scale(&int(1728))));
}

/// Number of distinct real roots of `a x^2 + b x + c` by the discriminant.
fn quadratic_real_roots(a: i64, b: i64, c: i64) -> usize {
    let disc = b * b - 4 * a * c;
    match disc.signum() {
        1 => 2,
        0 => 1,
        _ => 0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sturm_count_matches_discriminant(a in -6i64..=6, b in -20i64..=20, c in -20i64..=20) {
        prop_assume!(a != 0);
        let g = JPolynomial::from_ints(&[c, b, a]);
        let disc = b * b - 4 * a * c;
        if disc == 0 {
            prop_assert!(isolate_real_roots(&g).is_err());
        } else {
            let roots = isolate_real_roots(&g).unwrap();
            prop_assert_eq!(roots.len(), quadratic_real_roots(a, b, c));
            for w in roots.windows(2) {
                prop_assert!(w[0].1 <= w[1].0);
            }
        }
    }

    #[test]
    fn refined_roots_sit_in_their_intervals(r1 in -50i64..50, r2 in -50i64..50, d in 1i64..=7) {
        prop_assume!(r1 != r2);
        // (d x - r1)(d x - r2) has roots r1/d, r2/d
        let g = &JPolynomial::from_ints(&[-r1, d]) * &JPolynomial::from_ints(&[-r2, d]);
        let roots = isolate_real_roots(&g).unwrap();
        prop_assert_eq!(roots.len(), 2);
        let mut exact = [rat(r1, d), rat(r2, d)];
        exact.sort();
        for ((lo, hi), x) in roots.iter().zip(exact.iter()) {
            prop_assert!(lo < x && x <= hi);
            let s = refine_root(&g, &(lo.clone(), hi.clone()), 10).unwrap();
            let approx: f64 = s.parse().unwrap();
            let xf = x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap();
            prop_assert!((approx - xf).abs() <= 1e-8 * xf.abs().max(1.0));
        }
    }

    #[test]
    fn irrational_root_refinement_is_tight(n in 2i64..500) {
        prop_assume!(gradedim::arith::exact_sqrt(n).is_none());
        let g = JPolynomial::from_ints(&[-n, 0, 1]);
        let report = check_zero_location(&g).unwrap();
        prop_assert!(report.is_squarefree && report.all_real);
        prop_assert_eq!(report.roots.len(), 2);
        for e in &report.roots {
            let x: f64 = e.approx.parse().unwrap();
            prop_assert!((x * x - n as f64).abs() < 1e-6 * n as f64);
            prop_assert!(e.lo < e.hi);
        }
    }
}

#[test]
fn zero_location_flags_out_of_range() {
    let r = check_zero_location(&JPolynomial::from_ints(&[-2000, 1])).unwrap();
    assert!(r.all_real && !r.all_in_0_1728);
    let r = check_zero_location(&JPolynomial::one()).unwrap();
    assert!(r.roots.is_empty() && r.all_in_0_1728);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn affine_leading_exponents_are_exact(k in 1i64..=8, i_off in 0i64..=8) {
        let i = 1 + i_off % (k + 1);
        prop_assert!(AffineCharSpec::new(k, i).is_ok());
        let ch = affine_char(k, i, &int(6)).unwrap();
        let (e, c) = ch.leading_term().unwrap();
        prop_assert_eq!(e, affine_leading_exponent(k, i));
        prop_assert_eq!(c, int(i));
    }

    #[test]
    fn kac_symmetry_holds(pair in prop::sample::select(vec![(2i64, 5i64), (3, 4), (2, 7), (3, 5), (4, 5), (3, 8)]), a in 0i64..64, b in 0i64..64) {
        let (p, pp) = pair;
        let r = 1 + a % (p - 1);
        let s = 1 + b % (pp - 1);
        let order = int(12);
        let x = virasoro_char(p, pp, r, s, &order).unwrap();
        let y = virasoro_char(p, pp, p - r, pp - s, &order).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.leading_term().unwrap().0, virasoro_leading_exponent(p, pp, r, s));
    }

    #[test]
    fn normalized_f_is_basis_invariant(seed in any::<u64>(), which in 0usize..3) {
        let family = [Family::Affine { k: 1 }, Family::Affine { k: 2 }, Family::Virasoro { p: 2, pp: 5 }][which];
        let order = int(14);
        let basis = family.basis(&order).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, det) = random_invertible(basis.len(), &mut rng);
        prop_assert!(!det.is_zero());
        let moved = change_basis(&basis, &a);
        let (w0, _, f0) = f_from_basis(&basis).unwrap();
        let (w1, _, f1) = f_from_basis(&moved).unwrap();
        prop_assert!(f0.agrees_with(&f1));
        let ratio = &w1.leading_term().unwrap().1 / &w0.leading_term().unwrap().1;
        prop_assert_eq!(ratio.abs(), det.abs());
        prop_assert!(w1.agrees_with(&w0.scale(&ratio)));
    }
}
