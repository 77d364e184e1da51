//! Bracket notation: `[[q1,q2,...]]` for theta expansions, `[q1,q2,...]` for
//! Γ⁰(2) expansions and `[a0;a1,...]` for classical ones. A non-zero head is
//! written as an `h;` prefix inside the brackets.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CfKind, ContinuedFraction};
use crate::error::{Error, Result};

/// Runs at least this long are abbreviated by [`ContinuedFraction::compressed`].
const RUN_THRESHOLD: usize = 6;

fn delimiters(kind: CfKind) -> (&'static str, &'static str) {
    match kind {
        CfKind::ThetaNeg => ("[[", "]]"),
        CfKind::Gamma02Pos | CfKind::Classical => ("[", "]"),
    }
}

fn write_cf(f: &mut fmt::Formatter<'_>, cf: &ContinuedFraction, compress: bool) -> fmt::Result {
    let (open, close) = delimiters(cf.kind());
    f.write_str(open)?;
    let show_head = cf.kind() == CfKind::Classical || !cf.head().is_zero() || cf.is_empty();
    if show_head {
        write!(f, "{};", cf.head())?;
    }
    let qs = cf.quotients();
    let mut i = 0;
    let mut first = true;
    while i < qs.len() {
        let mut j = i;
        while j < qs.len() && qs[j] == qs[i] {
            j += 1;
        }
        let run = j - i;
        let sep = if first { "" } else { "," };
        first = false;
        if compress && run >= RUN_THRESHOLD {
            write!(f, "{sep}{},...({}),{}", qs[i], run - 2, qs[i])?;
        } else {
            for (k, q) in qs[i..j].iter().enumerate() {
                let s = if k == 0 { sep } else { "," };
                write!(f, "{s}{q}")?;
            }
        }
        i = j;
    }
    f.write_str(close)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cf(f, self, false)
    }
}

/// Display wrapper that abbreviates long runs of equal quotients as
/// `q,...(k),q`, with `k` the number of elided copies.
pub struct Compressed<'a>(&'a ContinuedFraction);

impl fmt::Display for Compressed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cf(f, self.0, true)
    }
}

impl ContinuedFraction {
    pub fn compressed(&self) -> Compressed<'_> {
        Compressed(self)
    }

    /// Parses `s` as an expansion of the given kind. Theta expansions need the
    /// double brackets, the others single ones.
    pub fn parse_as(kind: CfKind, s: &str) -> Result<Self> {
        let s = s.trim();
        let (open, close) = delimiters(kind);
        let inner = s
            .strip_prefix(open)
            .and_then(|r| r.strip_suffix(close))
            .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got {s:?}")))?;
        if kind != CfKind::ThetaNeg && inner.starts_with('[') {
            return Err(Error::Parse(format!("unexpected double bracket in {s:?}")));
        }
        let (head, body) = match inner.split_once(';') {
            Some((h, b)) => (parse_int(h)?, b),
            None if kind == CfKind::Classical => {
                return Err(Error::Parse(format!("classical expansion needs a head: {s:?}")))
            }
            None => (BigInt::zero(), inner),
        };
        let quotients = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(parse_int).collect::<Result<Vec<_>>>()?
        };
        ContinuedFraction::new(kind, head, quotients)
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim().replace('\u{2212}', "-");
    t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad partial quotient {:?}", s.trim())))
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// `[[..]]` reads as a theta expansion, `[..]` as a Γ⁰(2) expansion.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with("[[") {
            Self::parse_as(CfKind::ThetaNeg, s)
        } else {
            Self::parse_as(CfKind::Gamma02Pos, s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(kind: CfKind, head: i64, qs: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64(kind, head, qs).unwrap()
    }

    #[test]
    fn printing() {
        assert_eq!(cf(CfKind::ThetaNeg, 0, &[-2, 2, 2]).to_string(), "[[-2,2,2]]");
        assert_eq!(cf(CfKind::ThetaNeg, 2, &[-2]).to_string(), "[[2;-2]]");
        assert_eq!(cf(CfKind::ThetaNeg, 4, &[]).to_string(), "[[4;]]");
        assert_eq!(cf(CfKind::Gamma02Pos, 0, &[3, -2, -1]).to_string(), "[3,-2,-1]");
        assert_eq!(cf(CfKind::Classical, 0, &[2, 2, 1]).to_string(), "[0;2,2,1]");
    }

    #[test]
    fn compression() {
        let six = cf(CfKind::ThetaNeg, 0, &[-2; 6]);
        assert_eq!(six.compressed().to_string(), "[[-2,...(4),-2]]");
        let five = cf(CfKind::ThetaNeg, 0, &[-2; 5]);
        assert_eq!(five.compressed().to_string(), "[[-2,-2,-2,-2,-2]]");
        let mixed = cf(CfKind::ThetaNeg, 0, &[-4, -2, -2, -2, -2, -2, -2, -2, 2]);
        assert_eq!(mixed.compressed().to_string(), "[[-4,-2,...(5),-2,2]]");
    }

    #[test]
    fn parsing() {
        let t: ContinuedFraction = "[[-2, 2, 2]]".parse().unwrap();
        assert_eq!(t, cf(CfKind::ThetaNeg, 0, &[-2, 2, 2]));
        let t: ContinuedFraction = "[[2;\u{2212}2]]".parse().unwrap();
        assert_eq!(t, cf(CfKind::ThetaNeg, 2, &[-2]));
        let g: ContinuedFraction = "[3,-2,-1]".parse().unwrap();
        assert_eq!(g.kind(), CfKind::Gamma02Pos);
        let c = ContinuedFraction::parse_as(CfKind::Classical, "[0;2,2,1]").unwrap();
        assert_eq!(c.value().unwrap().to_string(), "3/7");
        assert!("[[3]]".parse::<ContinuedFraction>().is_err());
        assert!("[2,...(3),2]".parse::<ContinuedFraction>().is_err());
        assert!(ContinuedFraction::parse_as(CfKind::Classical, "[2,1]").is_err());
        assert!("2,1".parse::<ContinuedFraction>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for c in [
            cf(CfKind::ThetaNeg, -2, &[4, -2]),
            cf(CfKind::Gamma02Pos, 2, &[2, -2, -2]),
            cf(CfKind::ThetaNeg, 4, &[]),
        ] {
            let back = ContinuedFraction::parse_as(c.kind(), &c.to_string()).unwrap();
            assert_eq!(back, c);
        }
    }
}
