//! Deterministic text rendering for CLI output.

use std::fmt::Write as _;

use sincpow::{Certificate, IntegralEstimate};

pub const SCAN_HEADER: &str = "p,integral,error_bound,c_factor,improved_bound,unit_bound,ball_bound,ratio,verdict";

/// `x` with `digits` significant digits: fixed notation for decimal
/// exponents in `[-5, digits)`, scientific otherwise.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let sci = format!("{:.*e}", digits - 1, x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if x < 0.0 { "-" } else { "" };
    let all: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if (0..digits as i32).contains(&exp) {
        let (int, frac) = all.split_at(exp as usize + 1);
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else if (-5..0).contains(&exp) {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), all)
    } else {
        format!("{mantissa}e{exp}")
    };
    format!("{sign}{body}")
}

/// Fifteen significant digits.
pub fn num(x: f64) -> String {
    fmt_sig(x, 15)
}

/// One row of a certify or scan table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub p: f64,
    pub integral: f64,
    pub error_bound: f64,
    pub c_factor: f64,
    pub improved_bound: f64,
    pub unit_bound: f64,
    pub ball_bound: f64,
    pub ratio: f64,
    pub verdict: String,
}

impl From<&Certificate> for ScanRow {
    fn from(c: &Certificate) -> Self {
        ScanRow {
            p: c.p.get(),
            integral: c.integral.value,
            error_bound: c.integral.error_bound,
            c_factor: c.c_of_p,
            improved_bound: c.improved_bound,
            unit_bound: c.unit_bound,
            ball_bound: c.ball_bound,
            ratio: c.ratio,
            verdict: c.verdict.to_string(),
        }
    }
}

impl ScanRow {
    fn numbers(&self) -> [(&'static str, f64); 8] {
        [
            ("p", self.p),
            ("integral", self.integral),
            ("error_bound", self.error_bound),
            ("c_factor", self.c_factor),
            ("improved_bound", self.improved_bound),
            ("unit_bound", self.unit_bound),
            ("ball_bound", self.ball_bound),
            ("ratio", self.ratio),
        ]
    }
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for r in rows {
        for (_, v) in r.numbers() {
            out.push_str(&num(v));
            out.push(',');
        }
        out.push_str(&r.verdict);
        out.push('\n');
    }
    out
}

pub fn scan_json(rows: &[ScanRow]) -> String {
    let objects: Vec<String> = rows
        .iter()
        .map(|r| {
            let mut fields: Vec<(&str, String)> =
                r.numbers().iter().map(|(k, v)| (*k, json_num(*v))).collect();
            fields.push(("verdict", json_str(&r.verdict)));
            json_object(&fields)
        })
        .collect();
    if objects.is_empty() {
        return "[]\n".into();
    }
    format!("[\n  {}\n]\n", objects.join(",\n  "))
}

pub fn eval_csv(p: f64, est: &IntegralEstimate) -> String {
    format!(
        "p,value,error_bound,truncation_radius,panels_used\n{},{},{},{},{}\n",
        num(p),
        num(est.value),
        num(est.error_bound),
        num(est.truncation_radius),
        est.panels_used
    )
}

pub fn eval_json(p: f64, est: &IntegralEstimate) -> String {
    let fields = [
        ("p", json_num(p)),
        ("value", json_num(est.value)),
        ("error_bound", json_num(est.error_bound)),
        ("truncation_radius", json_num(est.truncation_radius)),
        ("panels_used", est.panels_used.to_string()),
    ];
    format!("{}\n", json_object(&fields))
}

/// A JSON number; non-finite values become `null`.
pub fn json_num(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        "null".into()
    }
}

pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// `{"k": v, ...}` from already-rendered values.
pub fn json_object(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("{}: {}", json_str(k), v))
        .collect();
    format!("{{{}}}", body.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(num(0.55), "0.550000000000000");
        assert_eq!(num(1.0), "1.00000000000000");
        assert_eq!(num(2.0 / 3.0), "0.666666666666667");
        assert_eq!(num(-1.5), "-1.50000000000000");
        assert_eq!(num(0.0), "0.00000000000000");
        assert_eq!(num(-0.0), "0.00000000000000");
        assert_eq!(num(123456.789), "123456.789000000");
        assert_eq!(num(1e-3), "0.00100000000000000");
        assert_eq!(num(2.5e-11), "2.50000000000000e-11");
        assert_eq!(num(1e20), "1.00000000000000e20");
        assert_eq!(num(999999999999999.9), "1.00000000000000e15");
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(fmt_sig(1.8414008851, 12), "1.84140088510");
    }

    #[test]
    fn rendered_numbers_round_trip_to_15_digits() {
        for &x in &[0.123456789012345678, 3.0e-7, 12345.678, -9.87654321e30] {
            let back: f64 = num(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-14, "{x}");
        }
    }

    #[test]
    fn json_helpers() {
        assert_eq!(json_str("a\"b"), "\"a\\\"b\"");
        assert_eq!(json_num(f64::NAN), "null");
        assert_eq!(
            json_object(&[("a", "1".into()), ("b", json_str("x"))]),
            "{\"a\": 1, \"b\": \"x\"}"
        );
    }

    #[test]
    fn scan_tables() {
        let row = ScanRow {
            p: 1.0,
            integral: 1.0,
            error_bound: 0.0,
            c_factor: 1.02,
            improved_bound: 1.0,
            unit_bound: 1.0,
            ball_bound: 2f64.sqrt(),
            ratio: 1.02,
            verdict: "pass".into(),
        };
        let csv = scan_csv(std::slice::from_ref(&row));
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(SCAN_HEADER));
        let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(cells.len(), 9);
        assert_eq!(cells[8], "pass");
        let json = scan_json(&[row]);
        assert!(json.starts_with("[\n  {\"p\": 1.00000000000000, \"integral\""));
        assert!(json.contains("\"verdict\": \"pass\"}"));
        assert_eq!(scan_json(&[]), "[]\n");
    }
}
