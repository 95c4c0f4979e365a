use std::thread;

use gradedim::arith::{fmt_rat, int};
use gradedim::characters::{
    affine_char, central_charge_affine, central_charge_virasoro, conformal_weight_affine,
    conformal_weight_virasoro, verify_affine_identity, verify_jacobi_rearrangement, verify_virasoro_identity,
    AffineCharSpec, CharError, IdentityReport, VirasoroCharSpec, AFFINE_IDENTITY_READING, VIRASORO_SIGN_READING,
};
use gradedim::modforms::{decompose, ModFormError};
use gradedim::modp::{
    check_f_integrality, check_hasse_conjecture, check_jacobi_moment_congruence, check_theta_congruence,
    probe_w_congruence_mod_p2, ModpError, ProbeReport,
};
use gradedim::roots::{check_zero_location, RootError};
use gradedim::suite::{run_criterion, table_entry, CriterionOutcome, SuiteConfig, TableEntry};
use gradedim::wronskian::{f_form, verify_eta_closed_form, virasoro_weight_check, WronskianError};
use gradedim::{CongruenceReport, Family, QSeries, ReportKind, WronskianResult};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::render;

/// Why a command did not succeed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: outside the domain of the requested operation.
    Domain(String),
    /// A check that should hold did not, or the computation broke down.
    Assertion(String),
}

impl From<CharError> for Failure {
    fn from(e: CharError) -> Self {
        match e {
            CharError::InvalidSpec(_) | CharError::NonCoprimeSpec(..) | CharError::NotAVanishingCase(_) => {
                Failure::Domain(e.to_string())
            }
            _ => Failure::Assertion(e.to_string()),
        }
    }
}

impl From<WronskianError> for Failure {
    fn from(e: WronskianError) -> Self {
        match e {
            WronskianError::Char(c) => c.into(),
            WronskianError::Empty | WronskianError::NotSquare => Failure::Domain(e.to_string()),
            _ => Failure::Assertion(e.to_string()),
        }
    }
}

impl From<ModpError> for Failure {
    fn from(e: ModpError) -> Self {
        match e {
            ModpError::Char(c) => c.into(),
            ModpError::Wronskian(w) => w.into(),
            ModpError::NotPrime(_) | ModpError::BadModulus => Failure::Domain(e.to_string()),
            ModpError::NotPIntegral { .. } => Failure::Assertion(e.to_string()),
        }
    }
}

impl From<ModFormError> for Failure {
    fn from(e: ModFormError) -> Self {
        Failure::Assertion(e.to_string())
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        Failure::Assertion(e.to_string())
    }
}

/// A finished command: the same result in each output format, plus
/// whether every assertion in it held.
pub struct Output {
    pub json: Value,
    pub plain: String,
    pub markdown: String,
    pub ok: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable result")
}

fn family_key(f: Family) -> String {
    match f {
        Family::Affine { k } => format!("affine-k{k}"),
        Family::Virasoro { p, pp } => format!("virasoro-p{p}-pp{pp}"),
    }
}

/// `F` for a family, through the cache.
pub fn cached_f_form(cache: &Cache, family: Family, terms: i64) -> Result<WronskianResult, Failure> {
    family.validate()?;
    cache.get_or_compute("f_form", &family_key(family), terms, || f_form(family, terms).map_err(Failure::from))
}

fn char_output(
    family: &str,
    spec: Value,
    c: &num_rational::BigRational,
    h: &num_rational::BigRational,
    ch: QSeries,
) -> Output {
    let mut json = to_value(&ch);
    let obj = json.as_object_mut().expect("series object");
    obj.insert("family".into(), json!(family));
    obj.insert("spec".into(), spec.clone());
    obj.insert("c".into(), json!(fmt_rat(c)));
    obj.insert("h".into(), json!(fmt_rat(h)));
    let plain = format!("{family} {spec}\nc = {}\nh = {}\nch = {ch}\n", fmt_rat(c), fmt_rat(h));
    let markdown = format!(
        "### {family} character {spec}\n\n- c = `{}`\n- h = `{}`\n\n```\n{ch}\n```\n",
        fmt_rat(c),
        fmt_rat(h)
    );
    Output { json, plain, markdown, ok: true }
}

fn maybe_normalize(ch: QSeries, normalize: bool) -> Result<QSeries, Failure> {
    if normalize {
        ch.normalized().map_err(|e| Failure::Assertion(e.to_string()))
    } else {
        Ok(ch)
    }
}

pub fn char_affine(k: i64, i: i64, terms: i64, normalize: bool) -> Result<Output, Failure> {
    AffineCharSpec::new(k, i)?;
    let lead = gradedim::characters::affine_leading_exponent(k, i);
    let ch = affine_char(k, i, &(lead + int(terms)))?;
    let ch = maybe_normalize(ch, normalize)?;
    Ok(char_output(
        "affine",
        json!({"k": k, "i": i}),
        &central_charge_affine(k),
        &conformal_weight_affine(k, i),
        ch,
    ))
}

pub fn char_virasoro(p: i64, pp: i64, r: i64, s: i64, terms: i64, normalize: bool) -> Result<Output, Failure> {
    VirasoroCharSpec::new(p, pp, r, s)?;
    let lead = gradedim::characters::virasoro_leading_exponent(p, pp, r, s);
    let ch = gradedim::characters::virasoro_char(p, pp, r, s, &(lead + int(terms)))?;
    let ch = maybe_normalize(ch, normalize)?;
    Ok(char_output(
        "virasoro",
        json!({"p": p, "pp": pp, "r": r, "s": s}),
        &central_charge_virasoro(p, pp),
        &conformal_weight_virasoro(p, pp, r, s),
        ch,
    ))
}

pub fn wronskian(cache: &Cache, family: Family, terms: i64, verify_eta: bool) -> Result<Output, Failure> {
    let res = cached_f_form(cache, family, terms)?;
    let mut json = to_value(&res);
    let mut plain = format!("{res}\n");
    let mut ok = true;
    if verify_eta {
        let (entry, line) = match verify_eta_closed_form(family, terms) {
            Ok(c) => (
                json!({"exponent": c.exponent, "terms": c.terms, "holds": true}),
                format!("normalized W = η^{} to {} terms past the lead", c.exponent, c.terms),
            ),
            Err(e) => {
                ok = false;
                (json!({"holds": false, "error": e.to_string()}), format!("eta closed form FAILS: {e}"))
            }
        };
        json["eta_check"] = entry;
        plain.push_str(&line);
        plain.push('\n');
    }
    if let Some(wc) = virasoro_weight_check(&res) {
        plain.push_str(&format!(
            "weight 2m = {} decomposes: {}; weight {} decomposes: {}\n",
            wc.weight_2m,
            wc.decomposes_at_2m,
            fmt_rat(&wc.printed_weight),
            wc.decomposes_at_printed
        ));
        json["weight_check"] = to_value(&wc);
    }
    let markdown = format!("### Wronskian of {}\n\n```\n{plain}```\n", res.family);
    Ok(Output { json, plain, markdown, ok })
}

pub fn fv(cache: &Cache, family: Family, terms: i64, want_decomposition: bool, want_zeros: bool) -> Result<Output, Failure> {
    let res = cached_f_form(cache, family, terms)?;
    let mut json = to_value(&res);
    let obj = json.as_object_mut().expect("result object");
    obj.remove("W");
    obj.remove("Wprime");
    let mut plain = format!("{}: weight {} vanishes={}\n", res.family, res.f_weight, res.vanishes);
    if let Some(nf) = &res.normalized_f {
        plain.push_str(&format!("ℱ = {nf}\n"));
    }
    if want_decomposition || want_zeros {
        let target = res.normalized_f.as_ref().unwrap_or(&res.f);
        let d = decompose(target, res.f_weight)?;
        plain.push_str(&format!(
            "t = {}, δ = {}, ε = {}, G = {}\n",
            d.t,
            d.delta,
            d.epsilon,
            d.g
        ));
        if want_zeros {
            let zeros = if d.g.is_zero() {
                Value::Null
            } else {
                let report = check_zero_location(&d.g)?;
                plain.push_str(&format!(
                    "zeros: {} (squarefree: {}, all real: {}, all in [0,1728]: {})\n",
                    render::zero_list(&report.approximations()),
                    report.is_squarefree,
                    report.all_real,
                    report.all_in_0_1728
                ));
                to_value(&report)
            };
            obj.insert("zeros".into(), zeros);
        }
        if want_decomposition {
            obj.insert("decomposition".into(), to_value(&d));
        }
    }
    let markdown = format!("### ℱ for {}\n\n```\n{plain}```\n", res.family);
    Ok(Output { json, plain, markdown, ok: true })
}

fn identity_output<R: Serialize + Copy + PartialEq + std::fmt::Debug>(
    title: String,
    report: IdentityReport<R>,
    frozen: R,
) -> Output {
    let mut plain = format!(
        "{title}: constant {} to order {}\n",
        fmt_rat(&report.constant),
        fmt_rat(&report.order)
    );
    for o in &report.outcomes {
        let state = if !o.well_defined {
            "undefined".to_string()
        } else if o.holds {
            "holds".to_string()
        } else {
            let at = o
                .residual
                .as_ref()
                .and_then(|r| r.leading_term().ok())
                .map(|(e, c)| format!(" (residual {} q^{})", fmt_rat(&c), fmt_rat(&e)))
                .unwrap_or_default();
            format!("fails{at}")
        };
        plain.push_str(&format!("  {:?}: {state}\n", o.reading));
    }
    let ok = report.verified_reading == frozen;
    if !ok {
        plain.push_str(&format!("expected reading {frozen:?} did not hold\n"));
    }
    let markdown = format!("### {title}\n\n```\n{plain}```\n");
    Output { json: to_value(&report), plain, markdown, ok }
}

pub fn identity_affine(i: i64, terms: i64) -> Result<Output, Failure> {
    let report = verify_affine_identity(i, &int(terms))?;
    Ok(identity_output(format!("affine identity, i = {i}"), report, AFFINE_IDENTITY_READING))
}

pub fn identity_virasoro(pt: i64, ppt: i64, terms: i64) -> Result<Output, Failure> {
    let report = verify_virasoro_identity(pt, ppt, &int(terms))?;
    Ok(identity_output(
        format!("Virasoro identity, (p̃, p̃') = ({pt}, {ppt})"),
        report,
        VIRASORO_SIGN_READING,
    ))
}

pub fn identity_jacobi(i: i64, terms: i64) -> Result<Output, Failure> {
    let (ok, msg) = match verify_jacobi_rearrangement(i, terms) {
        Ok(()) => (true, "holds".to_string()),
        Err(CharError::IdentityFails { exponent, got, expected }) => (
            false,
            format!("fails at q^{}: {} vs {}", fmt_rat(&exponent), fmt_rat(&got), fmt_rat(&expected)),
        ),
        Err(e) => return Err(e.into()),
    };
    let plain = format!("Jacobi rearrangement mod {}: {msg} below q^{terms}\n", 2 * i);
    Ok(Output {
        json: json!({"i": i, "order": terms, "holds": ok}),
        markdown: format!("- {plain}"),
        plain,
        ok,
    })
}

/// Runs each job on its own thread and returns the results in order.
fn fan_out<T: Send>(jobs: Vec<Box<dyn FnOnce() -> T + Send + '_>>) -> Vec<T> {
    thread::scope(|s| {
        let handles: Vec<_> = jobs.into_iter().map(|job| s.spawn(job)).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn congruence(k: i64, terms: i64, hasse: bool, probe: bool) -> Result<Output, Failure> {
    type Job<'a> = Box<dyn FnOnce() -> Result<Vec<CongruenceReport>, ModpError> + Send + 'a>;
    let p = 2 * k + 3;
    let mut jobs: Vec<Job> = vec![
        Box::new(move || check_theta_congruence(k, terms)),
        Box::new(move || check_jacobi_moment_congruence(p, terms).map(|r| vec![r])),
        Box::new(move || check_f_integrality(k, terms)),
    ];
    if hasse {
        jobs.push(Box::new(move || check_hasse_conjecture(k, terms).map(|r| vec![r])));
    }
    let probe_job = probe.then(|| thread::spawn(move || probe_w_congruence_mod_p2(k, terms)));
    let mut reports = Vec::new();
    for r in fan_out(jobs) {
        reports.extend(r?);
    }
    let probe: Option<ProbeReport> = probe_job
        .map(|h| h.join().expect("worker panicked"))
        .transpose()?;
    let ok = reports
        .iter()
        .all(|r| r.holds || r.kind == ReportKind::Evidence);
    let mut json = json!({"level": k, "p": p, "reports": to_value(&reports)});
    if let Some(pr) = &probe {
        json["probe"] = to_value(pr);
    }
    let mut all: Vec<&CongruenceReport> = reports.iter().collect();
    if let Some(pr) = &probe {
        all.push(&pr.report);
    }
    let plain = render::congruence_plain(k, p, &all, probe.as_ref().and_then(|pr| pr.h.as_ref()));
    let markdown = render::congruence_markdown(k, p, &all);
    Ok(Output { json, plain, markdown, ok })
}

pub fn table(cache: &Cache, kmax: i64, terms: i64) -> Result<Output, Failure> {
    if kmax < 1 {
        return Err(Failure::Domain(format!("kmax {kmax} must be >= 1")));
    }
    let jobs: Vec<Box<dyn FnOnce() -> Result<TableEntry, Failure> + Send + '_>> = (1..=kmax)
        .map(|k| {
            Box::new(move || {
                let res = cached_f_form(cache, Family::Affine { k }, terms)?;
                table_entry(&res).map_err(Failure::Assertion)
            }) as Box<dyn FnOnce() -> Result<TableEntry, Failure> + Send + '_>
        })
        .collect();
    let rows = fan_out(jobs).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Output {
        json: to_value(&rows),
        plain: render::table_plain(&rows),
        markdown: render::table_markdown(&rows),
        ok: true,
    })
}

pub fn suite(criterion: Option<u32>) -> Result<Output, Failure> {
    let cfg = SuiteConfig::default();
    let ids: Vec<u32> = match criterion {
        Some(id @ 1..=9) => vec![id],
        Some(id) => return Err(Failure::Domain(format!("no criterion {id}; choose 1..=9"))),
        None => (1..=9).collect(),
    };
    let jobs: Vec<Box<dyn FnOnce() -> CriterionOutcome + Send>> = ids
        .into_iter()
        .map(|id| {
            Box::new(move || run_criterion(id, &cfg).expect("known criterion"))
                as Box<dyn FnOnce() -> CriterionOutcome + Send>
        })
        .collect();
    let outcomes = fan_out(jobs);
    let ok = outcomes.iter().all(|o| o.passed || !o.gating);
    let mut plain = String::new();
    let mut markdown = String::from("| criterion | result | title |\n|---|---|---|\n");
    for o in &outcomes {
        plain.push_str(&o.summary_line());
        plain.push('\n');
        for d in &o.details {
            plain.push_str(&format!("    {d}\n"));
        }
        let state = match (o.passed, o.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (evidence)",
        };
        markdown.push_str(&format!("| {} | {state} | {} |\n", o.id, o.title));
    }
    Ok(Output { json: to_value(&outcomes), plain, markdown, ok })
}
