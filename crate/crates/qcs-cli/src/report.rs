//! Machine-readable check rows and their JSON/CSV serialization.
//!
//! Rows are sorted by check name and indices before emission and every
//! number is printed with 17 significant digits, so identical run
//! configurations produce byte-identical output files.

use std::fmt::Write as _;

/// One verification check: a value, its reference, the deviation, and the
/// pass verdict.
#[derive(Clone, Debug)]
pub struct CheckRow {
    pub check: String,
    pub q: f64,
    pub a1: f64,
    pub c: f64,
    pub m: Option<i64>,
    pub n: Option<i64>,
    pub value_re: f64,
    pub value_im: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
}

impl CheckRow {
    fn deviation(value_re: f64, value_im: f64, reference: f64) -> (f64, f64) {
        let abs = ((value_re - reference).powi(2) + value_im.powi(2)).sqrt();
        let rel = if reference != 0.0 {
            abs / reference.abs()
        } else {
            abs
        };
        (abs, rel)
    }

    /// A residual-style check: `value` is the residual itself, referenced
    /// against zero, passing when it stays at or below `threshold`.
    pub fn residual(
        check: &str,
        params: (f64, f64, f64),
        m: Option<i64>,
        n: Option<i64>,
        residual: f64,
        threshold: f64,
    ) -> Self {
        Self {
            check: check.to_string(),
            q: params.0,
            a1: params.1,
            c: params.2,
            m,
            n,
            value_re: residual,
            value_im: 0.0,
            reference: 0.0,
            abs_err: residual,
            rel_err: residual,
            pass: residual <= threshold,
        }
    }

    /// A comparison check passing on relative deviation.
    pub fn relative(
        check: &str,
        params: (f64, f64, f64),
        m: Option<i64>,
        n: Option<i64>,
        value: f64,
        reference: f64,
        threshold: f64,
    ) -> Self {
        let (abs_err, rel_err) = Self::deviation(value, 0.0, reference);
        Self {
            check: check.to_string(),
            q: params.0,
            a1: params.1,
            c: params.2,
            m,
            n,
            value_re: value,
            value_im: 0.0,
            reference,
            abs_err,
            rel_err,
            pass: rel_err <= threshold,
        }
    }

    /// A comparison check passing on absolute deviation (complex value).
    pub fn absolute(
        check: &str,
        params: (f64, f64, f64),
        m: Option<i64>,
        n: Option<i64>,
        value: (f64, f64),
        reference: f64,
        threshold: f64,
    ) -> Self {
        let (abs_err, rel_err) = Self::deviation(value.0, value.1, reference);
        Self {
            check: check.to_string(),
            q: params.0,
            a1: params.1,
            c: params.2,
            m,
            n,
            value_re: value.0,
            value_im: value.1,
            reference,
            abs_err,
            rel_err,
            pass: abs_err <= threshold,
        }
    }

    /// An informational row that never gates the exit code.
    pub fn informational(check: &str, params: (f64, f64, f64), value: f64, reference: f64) -> Self {
        let (abs_err, rel_err) = Self::deviation(value, 0.0, reference);
        Self {
            check: check.to_string(),
            q: params.0,
            a1: params.1,
            c: params.2,
            m: None,
            n: None,
            value_re: value,
            value_im: 0.0,
            reference,
            abs_err,
            rel_err,
            pass: true,
        }
    }
}

/// Stable output order: check name, then indices.
pub fn sort_rows(rows: &mut [CheckRow]) {
    rows.sort_by(|a, b| {
        (a.check.as_str(), a.m.unwrap_or(-1), a.n.unwrap_or(-1)).cmp(&(
            b.check.as_str(),
            b.m.unwrap_or(-1),
            b.n.unwrap_or(-1),
        ))
    });
}

/// 17 significant digits; round-trips any f64 and keeps files byte-stable.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn index(v: Option<i64>) -> String {
    match v {
        Some(i) => i.to_string(),
        None => "null".to_string(),
    }
}

pub fn emit_json(rows: &[CheckRow]) -> String {
    if rows.is_empty() {
        return "[]\n".to_string();
    }
    let mut out = String::from("[\n");
    for (i, r) in rows.iter().enumerate() {
        let sep = if i + 1 == rows.len() { "" } else { "," };
        let _ = writeln!(
            out,
            "  {{\"check\":\"{}\",\"params\":{{\"q\":{},\"a1\":{},\"c\":{}}},\"index_m\":{},\"index_n\":{},\"value_re\":{},\"value_im\":{},\"reference\":{},\"abs_err\":{},\"rel_err\":{},\"pass\":{}}}{}",
            r.check,
            num(r.q),
            num(r.a1),
            num(r.c),
            index(r.m),
            index(r.n),
            num(r.value_re),
            num(r.value_im),
            num(r.reference),
            num(r.abs_err),
            num(r.rel_err),
            r.pass,
            sep
        );
    }
    out.push_str("]\n");
    out
}

pub const CSV_HEADER: &str =
    "check,param_q,param_a1,param_c,index_m,index_n,value_re,value_im,reference,abs_err,rel_err,pass";

pub fn emit_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let blank_or = |v: Option<i64>| v.map(|i| i.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.check,
            num(r.q),
            num(r.a1),
            num(r.c),
            blank_or(r.m),
            blank_or(r.n),
            num(r.value_re),
            num(r.value_im),
            num(r.reference),
            num(r.abs_err),
            num(r.rel_err),
            r.pass
        );
    }
    out
}
