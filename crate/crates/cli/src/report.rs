//! CSV and JSON emitters.
//!
//! Every float is written with 9 significant digits in C `%.9g` style, with
//! `.` as the decimal point and `\n` line endings, so output bytes depend
//! only on the simulated values.

use std::fmt::Write as _;

use oligosim_core::{RunResult, SimConfig, SweepResult, PRNG_ID};
use serde::Serialize;
use serde_json::Value;

pub const SIG_DIGITS: usize = 9;

pub const SWEEP_HEADER: &str = "gamma_one,gamma_two,runs,mean,median,stddev,fraction_positive";

/// Formats `x` like C's `%.9g`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to the precision `fmt_num` prints.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_num(x).parse().expect("fmt_num output parses")
    } else {
        x
    }
}

pub fn run_csv_header(firms: usize) -> String {
    let mut cols = vec!["t".to_string(), "p1".into(), "p2".into()];
    for i in 1..=firms {
        for name in ["cost", "y", "sales", "excess", "buffer"] {
            cols.push(format!("{name}_{i}"));
        }
    }
    cols.extend(["total_supply", "total_excess", "unmet_demand"].map(String::from));
    cols.join(",")
}

/// One row per interval.
pub fn run_csv(result: &RunResult, firms: usize) -> String {
    let mut out = run_csv_header(firms);
    out.push('\n');
    for rec in &result.records {
        let mut row = vec![
            rec.t.to_string(),
            fmt_num(rec.prices.p1()),
            fmt_num(rec.prices.p2()),
        ];
        for f in &rec.firms {
            row.extend([f.cost, f.production, f.sales, f.excess, f.buffer].map(fmt_num));
        }
        row.extend([rec.total_supply, rec.total_excess, rec.unmet_demand].map(fmt_num));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Summary<'a> {
    prng: &'a str,
    seed: u64,
    config: &'a SimConfig,
    intervals: usize,
    global_excess: f64,
    cumulative_excess: &'a [f64],
    final_buffers: &'a [f64],
}

/// Pretty-printed JSON echoing the config next to the run's totals.
pub fn summary_json(config: &SimConfig, result: &RunResult) -> String {
    let summary = Summary {
        prng: PRNG_ID,
        seed: config.seed,
        config,
        intervals: result.records.len(),
        global_excess: result.global_excess,
        cumulative_excess: &result.cumulative_excess,
        final_buffers: &result.final_buffers,
    };
    let mut value = serde_json::to_value(summary).expect("summary serializes");
    round_floats(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("json value prints");
    text.push('\n');
    text
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *value = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for cell in &result.cells {
        let s = &cell.stats;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_num(cell.gamma_one),
            fmt_num(cell.gamma_two),
            s.runs,
            fmt_num(s.mean),
            fmt_num(s.median),
            fmt_num(s.stddev),
            fmt_num(s.fraction_positive)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (0.25, "0.25"),
            (0.1 + 0.2, "0.3"),
            (0.8246924442330, "0.824692444"),
            (-1.5, "-1.5"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (1e-12, "1e-12"),
            (9.999999999, "10"),
            (2.0 / 3.0, "0.666666667"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_num(x), want, "{x}");
        }
    }

    #[test]
    fn header_layout() {
        assert_eq!(
            run_csv_header(2),
            "t,p1,p2,cost_1,y_1,sales_1,excess_1,buffer_1,cost_2,y_2,sales_2,excess_2,buffer_2,total_supply,total_excess,unmet_demand"
        );
    }

    proptest! {
        #[test]
        fn nine_digits_round_trip(x in -1e6f64..1e6) {
            let printed = fmt_num(x);
            let back: f64 = printed.parse().unwrap();
            prop_assert!((back - x).abs() <= 5e-9 * x.abs().max(1e-300));
            let digits = printed.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect::<String>();
            prop_assert!(digits.trim_start_matches('0').len() <= SIG_DIGITS);
        }
    }
}
