//! Plain-text and Markdown layouts for the batch commands.

use gradedim::arith::fmt_rat;
use gradedim::modp::Valuation;
use gradedim::suite::TableEntry;
use gradedim::{CongruenceReport, ReportKind};
use num_rational::BigRational;

pub fn zero_list(zeros: &[&str]) -> String {
    if zeros.is_empty() {
        "none".into()
    } else {
        zeros.join(", ")
    }
}

struct Row {
    k: String,
    weight: String,
    t: String,
    delta: String,
    epsilon: String,
    g: String,
    zeros: String,
}

fn rows(entries: &[TableEntry]) -> Vec<Row> {
    entries
        .iter()
        .map(|e| {
            let d = &e.decomposition;
            let zeros = e
                .zeros
                .as_ref()
                .map_or_else(|| "-".into(), |z| zero_list(&z.approximations()));
            Row {
                k: e.k.to_string(),
                weight: e.weight.to_string(),
                t: d.t.to_string(),
                delta: d.delta.to_string(),
                epsilon: d.epsilon.to_string(),
                g: d.g.to_string(),
                zeros,
            }
        })
        .collect()
}

pub fn table_markdown(entries: &[TableEntry]) -> String {
    let mut out = String::from("| k | weight | t | δ | ε | G | zeros |\n|---:|---:|---:|---:|---:|---|---|\n");
    for r in rows(entries) {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | `{}` | {} |\n",
            r.k, r.weight, r.t, r.delta, r.epsilon, r.g, r.zeros
        ));
    }
    out
}

pub fn table_plain(entries: &[TableEntry]) -> String {
    let mut out = String::new();
    for r in rows(entries) {
        out.push_str(&format!(
            "k={:<3} weight={:<3} t={} δ={} ε={}  G = {}  zeros: {}\n",
            r.k, r.weight, r.t, r.delta, r.epsilon, r.g, r.zeros
        ));
    }
    out
}

fn valuation(v: &Valuation) -> String {
    match v {
        Valuation::Finite(n) => n.to_string(),
        Valuation::Infinity => "∞".into(),
    }
}

fn status(r: &CongruenceReport) -> &'static str {
    match (r.holds, r.kind) {
        (true, _) => "holds",
        (false, ReportKind::Assertion) => "FAILS",
        (false, ReportKind::Evidence) => "fails (evidence)",
    }
}

fn failure_note(r: &CongruenceReport) -> String {
    r.first_failure
        .as_ref()
        .map(|(e, a, b)| format!(" first failure at q^{}: {} vs {}", fmt_rat(e), fmt_rat(a), fmt_rat(b)))
        .unwrap_or_default()
}

pub fn congruence_plain(k: i64, p: i64, reports: &[&CongruenceReport], h: Option<&BigRational>) -> String {
    let mut out = format!("level {k}, p = {p}\n");
    for r in reports {
        out.push_str(&format!(
            "  [{:?}] {}: {} to order {}, min v_p = {}{}\n",
            r.kind,
            r.check,
            status(r),
            fmt_rat(&r.checked_order),
            valuation(&r.min_valuation),
            failure_note(r)
        ));
    }
    if let Some(h) = h {
        out.push_str(&format!("  probe constant h = {}\n", fmt_rat(h)));
    }
    out
}

pub fn congruence_markdown(k: i64, p: i64, reports: &[&CongruenceReport]) -> String {
    let mut out = format!("### Level {k}, p = {p}\n\n| check | kind | result | order | min v_p |\n|---|---|---|---:|---:|\n");
    for r in reports {
        out.push_str(&format!(
            "| {} | {:?} | {} | {} | {} |\n",
            r.check,
            r.kind,
            status(r),
            fmt_rat(&r.checked_order),
            valuation(&r.min_valuation)
        ));
    }
    out
}
