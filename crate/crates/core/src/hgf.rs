//! HGF, the plain-text interchange format for grid functions.
//!
//! ```text
//! # comment
//! n q
//! s1 s2 .. sn num/den      one line per nonzero entry, increasing index
//! ```
//!
//! The denominator is omitted when it equals 1.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::function::{GridFunction, Rational};
use crate::word::{decode_index, encode_index, vertex_count};

pub fn to_hgf(f: &GridFunction) -> String {
    let mut out = format!("{} {}\n", f.n(), f.q());
    let mut symbols = vec![0; f.n()];
    for idx in f.support() {
        decode_index(idx, f.q(), &mut symbols);
        for s in &symbols {
            write!(out, "{s} ").unwrap();
        }
        writeln!(out, "{}", format_rational(f.value_at(idx))).unwrap();
    }
    out
}

pub fn format_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_rational(token: &str) -> Option<Rational> {
    match token.split_once('/') {
        None => token.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((num, den)) => {
            let num: BigInt = num.parse().ok()?;
            let den: BigInt = den.parse().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(Rational::new(num, den))
            }
        }
    }
}

pub fn parse_hgf(text: &str) -> Result<GridFunction> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n q` header".into(),
    })?;
    let err = |line: usize, message: String| Error::Parse { line, message };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(header_line, format!("expected `n q`, got `{header}`")));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| err(header_line, format!("bad n `{}`", fields[0])))?;
    let q: u32 = fields[1]
        .parse()
        .map_err(|_| err(header_line, format!("bad q `{}`", fields[1])))?;
    if q < 2 {
        return Err(err(header_line, format!("alphabet size {q} < 2")));
    }
    let size = vertex_count(n, q).map_err(|e| err(header_line, e.to_string()))?;

    let mut values = vec![Rational::zero(); size];
    let mut last: Option<usize> = None;
    let mut symbols = Vec::with_capacity(n);
    for (line, body) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != n + 1 {
            return Err(err(
                line,
                format!(
                    "expected {} symbols and a value, got {} tokens",
                    n,
                    tokens.len()
                ),
            ));
        }
        symbols.clear();
        for tok in &tokens[..n] {
            let s: u32 = tok
                .parse()
                .map_err(|_| err(line, format!("bad symbol `{tok}`")))?;
            if s >= q {
                return Err(err(line, format!("symbol {s} out of range for q={q}")));
            }
            symbols.push(s);
        }
        let value = parse_rational(tokens[n])
            .ok_or_else(|| err(line, format!("bad value `{}`", tokens[n])))?;
        if value.is_zero() {
            return Err(err(line, "zero values must be omitted".into()));
        }
        let idx = encode_index(&symbols, q);
        match last {
            Some(prev) if prev == idx => return Err(err(line, "duplicate entry".into())),
            Some(prev) if prev > idx => {
                return Err(err(
                    line,
                    "entries must be in increasing index order".into(),
                ))
            }
            _ => {}
        }
        last = Some(idx);
        values[idx] = value;
    }
    GridFunction::from_values(n, q, values).map_err(|e| err(header_line, e.to_string()))
}
