use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{serialize_bigint, Rational};
use crate::cfe::{CfKind, ContinuedFraction};
use crate::error::{Error, Result};
use crate::sums::{
    hardy_s4_from_cfe, hardy_s_from_cfe, normalized_gamma02, normalized_theta,
    s4_from_gamma02_quotients,
};

use super::Check;

/// One line of the table of small values. A side is absent when the
/// corresponding expansion does not exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub d: i64,
    pub c: i64,
    pub theta_expansion: Option<ContinuedFraction>,
    pub s: Option<BigInt>,
    pub gamma02_expansion: Option<ContinuedFraction>,
    pub s4: Option<BigInt>,
}

#[derive(Serialize)]
struct RowJson<'a> {
    d: i64,
    c: i64,
    theta_expansion: Option<String>,
    #[serde(serialize_with = "opt_big")]
    s: &'a Option<BigInt>,
    gamma02_expansion: Option<String>,
    #[serde(serialize_with = "opt_big")]
    s4: &'a Option<BigInt>,
}

fn opt_big<S: serde::Serializer>(x: &&Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_bigint(v, s),
        None => s.serialize_none(),
    }
}

impl TableRow {
    pub fn compute(d: i64, c: i64) -> Result<Self> {
        let (bd, bc) = (BigInt::from(d), BigInt::from(c));
        let (theta_expansion, s) = if (d + c) % 2 == 1 {
            (normalized_theta(&bd, &bc)?, Some(hardy_s_from_cfe(d, c)?))
        } else {
            (None, None)
        };
        let (gamma02_expansion, s4) = if d % 2 != 0 {
            (normalized_gamma02(&bd, &bc)?, Some(hardy_s4_from_cfe(d, c)?))
        } else {
            (None, None)
        };
        Ok(TableRow { d, c, theta_expansion, s, gamma02_expansion, s4 })
    }

    fn cells(&self) -> [String; 5] {
        let cf = |x: &Option<ContinuedFraction>| match x {
            Some(cf) => cf.compressed().to_string(),
            None => "x".to_string(),
        };
        let int = |x: &Option<BigInt>| x.as_ref().map_or("x".to_string(), |v| v.to_string());
        [
            format!("({}, {})", self.d, self.c),
            cf(&self.theta_expansion),
            int(&self.s),
            cf(&self.gamma02_expansion),
            int(&self.s4),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cf = |x: &Option<ContinuedFraction>| x.as_ref().map(|cf| cf.to_string());
        serde_json::to_value(RowJson {
            d: self.d,
            c: self.c,
            theta_expansion: cf(&self.theta_expansion),
            s: &self.s,
            gamma02_expansion: cf(&self.gamma02_expansion),
            s4: &self.s4,
        })
        .expect("rows serialize")
    }
}

/// All coprime `1 ≤ d < c ≤ max_c`, ordered by `(c, d)`.
pub fn table_rows(max_c: i64) -> Result<Vec<TableRow>> {
    if max_c < 2 {
        return Err(Error::OutOfRange(format!("table needs max-c >= 2, got {max_c}")));
    }
    let mut rows = Vec::new();
    for c in 2..=max_c {
        for d in 1..c {
            if d.gcd(&c) == 1 {
                rows.push(TableRow::compute(d, c)?);
            }
        }
    }
    Ok(rows)
}

const HEADER: [&str; 5] = ["(d, c)", "theta expansion", "S(d, c)", "Gamma^0(2) expansion", "S4(d, c)"];

pub fn render_text(rows: &[TableRow]) -> String {
    let cells: Vec<[String; 5]> = rows.iter().map(TableRow::cells).collect();
    let mut widths = HEADER.map(str::len);
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join(" | ").trim_end());
    };
    line(&mut out, &HEADER.map(String::from));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let _ = writeln!(out, "{}", rule.join("-+-"));
    for row in &cells {
        line(&mut out, row);
    }
    out
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("d,c,theta_expansion,S,gamma02_expansion,S4\n");
    for r in rows {
        let cf = |x: &Option<ContinuedFraction>| x.as_ref().map_or("x".to_string(), |cf| format!("\"{cf}\""));
        let int = |x: &Option<BigInt>| x.as_ref().map_or("x".to_string(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.d,
            r.c,
            cf(&r.theta_expansion),
            int(&r.s),
            cf(&r.gamma02_expansion),
            int(&r.s4)
        );
    }
    out
}

/// Published values for `c ≤ 10` as `(d, c, theta, S, Γ⁰(2), S₄)`, with `x`
/// for a missing side. Theta expansions are written with zero head.
pub const REFERENCE_ROWS: [(i64, i64, &str, &str, &str, &str); 31] = [
    (1, 2, "[[-2]]", "1", "[2]", "1"),
    (1, 3, "x", "x", "[3]", "2"),
    (2, 3, "[[-2,-2]]", "2", "x", "x"),
    (1, 4, "[[-4]]", "1", "[4]", "3"),
    (3, 4, "[[-2,-2,-2]]", "3", "[2,-2,2]", "1"),
    (1, 5, "x", "x", "[5]", "4"),
    (2, 5, "[[-2,2]]", "0", "x", "x"),
    (3, 5, "x", "x", "[2,-2,-1]", "0"),
    (4, 5, "[[-2,-2,-2,-2]]", "4", "x", "x"),
    (1, 6, "[[-6]]", "1", "[6]", "5"),
    (5, 6, "[[-2,-2,-2,-2,-2]]", "5", "[2,-2,2,-2,2]", "1"),
    (1, 7, "x", "x", "[7]", "6"),
    (2, 7, "[[-4,-2]]", "2", "x", "x"),
    (3, 7, "x", "x", "[2,2,1]", "2"),
    (4, 7, "[[-2,-4]]", "2", "x", "x"),
    (5, 7, "x", "x", "[2,-2,3]", "2"),
    (6, 7, "[[-2,...(4),-2]]", "6", "x", "x"),
    (1, 8, "[[-8]]", "1", "[8]", "7"),
    (3, 8, "[[-2,2,2]]", "-1", "[3,-2,-1]", "1"),
    (5, 8, "[[-2,-2,2]]", "1", "[2,-2,-2]", "-1"),
    (7, 8, "[[-2,...(5),-2]]", "7", "[2,-2,2,-2,2,-2,2]", "1"),
    (1, 9, "x", "x", "[9]", "8"),
    (2, 9, "[[-4,2]]", "0", "x", "x"),
    (4, 9, "[[-2,4]]", "0", "x", "x"),
    (5, 9, "x", "x", "[2,-4,-1]", "0"),
    (7, 9, "x", "x", "[2,-2,2,-2,-1]", "0"),
    (8, 9, "[[-2,...(6),-2]]", "8", "x", "x"),
    (1, 10, "[[-10]]", "1", "[10]", "9"),
    (3, 10, "[[-4,-2,-2]]", "3", "[3,2,1]", "3"),
    (7, 10, "[[-2,-2,-4]]", "3", "[2,-2,4]", "3"),
    (9, 10, "[[-2,...(7),-2]]", "9", "[2,-2,2,-2,2,-2,2,-2,2]", "1"),
];

fn parse_int(s: &str) -> Option<BigInt> {
    (s != "x").then(|| s.parse().expect("reference integers parse"))
}

/// Problems with one computed row against its reference, empty if it agrees.
fn compare_row(row: &TableRow, reference: &(i64, i64, &str, &str, &str, &str)) -> Result<Vec<String>> {
    let &(d, c, theta, s, gamma, s4) = reference;
    let mut problems = Vec::new();
    let got_theta = row.theta_expansion.as_ref().map(|cf| cf.compressed().to_string());
    if got_theta.as_deref().unwrap_or("x") != theta {
        problems.push(format!("theta expansion {got_theta:?}, expected {theta}"));
    }
    if row.s != parse_int(s) {
        problems.push(format!("S = {:?}, expected {s}", row.s));
    }
    if row.s4 != parse_int(s4) {
        problems.push(format!("S4 = {:?}, expected {s4}", row.s4));
    }
    match (&row.gamma02_expansion, gamma) {
        (None, "x") => {}
        (None, _) => problems.push(format!("missing Gamma^0(2) expansion, expected {gamma}")),
        (Some(cf), "x") => problems.push(format!("unexpected Gamma^0(2) expansion {cf}")),
        (Some(cf), reference) => {
            // several expansions can exist, so compare what they evaluate to
            let target = Rational::new(d, c)?;
            let published = ContinuedFraction::parse_as(CfKind::Gamma02Pos, reference)?;
            if cf.value()? != target {
                problems.push(format!("expansion {cf} does not evaluate to {target}"));
            }
            if published.value()? != target {
                problems.push(format!("reference expansion {reference} does not evaluate to {target}"));
            }
            let from_published = s4_from_gamma02_quotients(published.quotients());
            if Some(&from_published) != row.s4.as_ref() {
                problems.push(format!("reference expansion {reference} gives S4 = {from_published}"));
            }
        }
    }
    Ok(problems)
}

/// Recomputes every reference row and compares them cell by cell.
pub fn verify_table() -> Result<Vec<Check>> {
    let rows = table_rows(10)?;
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    if rows.len() != REFERENCE_ROWS.len() {
        failures.push(format!("{} rows computed, {} expected", rows.len(), REFERENCE_ROWS.len()));
    }
    for (row, reference) in rows.iter().zip(REFERENCE_ROWS.iter()) {
        if (row.d, row.c) != (reference.0, reference.1) {
            failures.push(format!("row ({}, {}) out of order", row.d, row.c));
            continue;
        }
        for p in compare_row(row, reference)? {
            failures.push(format!("({}, {}): {p}", row.d, row.c));
        }
    }
    checks.push(Check::from_failures("table", REFERENCE_ROWS.len(), &failures));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_match_reference() {
        let checks = verify_table().unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn row_shapes() {
        let r = TableRow::compute(8, 9).unwrap();
        assert_eq!(r.cells()[1], "[[-2,...(6),-2]]");
        assert!(r.gamma02_expansion.is_none() && r.s4.is_none());
        let r = TableRow::compute(1, 7).unwrap();
        assert_eq!(r.cells(), ["(1, 7)", "x", "x", "[7]", "6"].map(String::from));
        assert!(table_rows(1).is_err());
        assert_eq!(table_rows(3).unwrap().len(), 3);
    }

    #[test]
    fn wrong_reference_is_caught() {
        let row = TableRow::compute(5, 8).unwrap();
        assert!(compare_row(&row, &(5, 8, "[[-2,-2,2]]", "1", "[2,-2,-2]", "-1")).unwrap().is_empty());
        assert_eq!(compare_row(&row, &(5, 8, "[[-2,-2,2]]", "2", "[2,-2,-2]", "-1")).unwrap().len(), 1);
        assert!(!compare_row(&row, &(5, 8, "[[-2,-2,2]]", "1", "[3,-2,-1]", "-1")).unwrap().is_empty());
    }
}
