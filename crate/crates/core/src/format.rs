//! Plain-text formats.
//!
//! All formats are line based; `#` starts a comment and blank lines are ignored.
//!
//! A metric space:
//!
//! ```text
//! points 3
//! labels a b c
//! row 0 1 2
//! row 1 0 1
//! row 2 1 0
//! ```
//!
//! A partial map is a list of `pair <src> <dst>` lines using space labels. A modulus
//! is an `mc` header, `bp <t> <value>` breakpoints and a closing `tail <slope>`. A net
//! file is a list of `net <eps> <label>...` lines. Numbers are exact rationals written
//! as `p` or `p/q`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::map::PartialMap;
use crate::modulus::{Modulus, PlMap};
use crate::rational::{parse_rational, Rational};
use crate::space::FiniteMetricSpace;

/// One non-empty, comment-stripped line split into words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// 1-based line number in the source text.
    pub line: usize,
    pub words: Vec<String>,
}

impl Record {
    pub fn keyword(&self) -> &str {
        &self.words[0]
    }

    pub fn args(&self) -> &[String] {
        &self.words[1..]
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, msg)
    }

    pub fn rational(&self, word: &str) -> Result<Rational> {
        parse_rational(word).map_err(|e| self.error(e))
    }

    fn expect_args(&self, n: usize) -> Result<()> {
        if self.args().len() == n {
            Ok(())
        } else {
            Err(self.error(format!(
                "`{}` takes {n} argument(s), got {}",
                self.keyword(),
                self.args().len()
            )))
        }
    }
}

pub fn records(text: &str) -> Vec<Record> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<String> = content.split_whitespace().map(str::to_string).collect();
            (!words.is_empty()).then_some(Record { line: i + 1, words })
        })
        .collect()
}

fn end_of_input(records: &[Record]) -> usize {
    records.last().map_or(1, |r| r.line + 1)
}

pub fn write_ums(space: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "points {}", space.len());
    let _ = writeln!(out, "labels {}", space.labels().join(" "));
    for i in 0..space.len() {
        let row: Vec<String> = space.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "row {}", row.join(" "));
    }
    out
}

pub fn parse_ums(text: &str) -> Result<FiniteMetricSpace> {
    let recs = records(text);
    let (space, used) = ums_from_records(&recs)?;
    if let Some(extra) = recs.get(used) {
        return Err(extra.error(format!("unexpected `{}` after the matrix", extra.keyword())));
    }
    Ok(space)
}

/// Reads a `points`/`labels`/`row` block from the front of `recs`; returns the space
/// and the number of records consumed.
pub fn ums_from_records(recs: &[Record]) -> Result<(FiniteMetricSpace, usize)> {
    let mut it = recs.iter();
    let eof = end_of_input(recs);
    let head = it
        .next()
        .ok_or_else(|| Error::parse(eof, "expected `points`"))?;
    if head.keyword() != "points" {
        return Err(head.error(format!("expected `points`, found `{}`", head.keyword())));
    }
    head.expect_args(1)?;
    let n: usize = head.args()[0]
        .parse()
        .map_err(|_| head.error("point count must be a non-negative integer"))?;
    let labels_rec = it
        .next()
        .ok_or_else(|| Error::parse(eof, "expected `labels`"))?;
    if labels_rec.keyword() != "labels" {
        return Err(labels_rec.error("expected `labels`"));
    }
    labels_rec.expect_args(n)?;
    let labels = labels_rec.args().to_vec();
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let rec = it
            .next()
            .ok_or_else(|| Error::parse(eof, "missing `row` line"))?;
        if rec.keyword() != "row" {
            return Err(rec.error(format!("expected `row`, found `{}`", rec.keyword())));
        }
        rec.expect_args(n)?;
        let row = rec
            .args()
            .iter()
            .map(|w| rec.rational(w))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let space = FiniteMetricSpace::new(labels, rows).map_err(|e| match e {
        Error::Structural(msg) => Error::parse(head.line, msg),
        other => other,
    })?;
    Ok((space, n + 2))
}

fn lookup(space: &FiniteMetricSpace, rec: &Record, label: &str) -> Result<usize> {
    space
        .index_of(label)
        .ok_or_else(|| rec.error(format!("unknown label `{label}`")))
}

pub fn write_map(f: &PartialMap, space: &FiniteMetricSpace) -> String {
    f.pairs()
        .map(|(p, q)| format!("pair {} {}\n", space.label(p), space.label(q)))
        .collect()
}

pub fn parse_map(text: &str, space: &FiniteMetricSpace) -> Result<PartialMap> {
    map_from_records(&records(text), space)
}

pub fn map_from_records(recs: &[Record], space: &FiniteMetricSpace) -> Result<PartialMap> {
    let mut f = PartialMap::from_pairs([])?;
    for rec in recs {
        if rec.keyword() != "pair" {
            return Err(rec.error(format!("expected `pair`, found `{}`", rec.keyword())));
        }
        rec.expect_args(2)?;
        let p = lookup(space, rec, &rec.args()[0])?;
        let q = lookup(space, rec, &rec.args()[1])?;
        f.insert(p, q).map_err(|e| rec.error(e.to_string()))?;
    }
    Ok(f)
}

pub fn write_modulus(m: &Modulus) -> String {
    let pl = m.as_pl();
    let mut out = String::from("mc\n");
    for (t, v) in pl.breakpoints() {
        let _ = writeln!(out, "bp {t} {v}");
    }
    let _ = writeln!(out, "tail {}", pl.tail_slope());
    out
}

/// Parses a modulus file. A missing `bp 0 0` is implied.
pub fn parse_modulus(text: &str) -> Result<Modulus> {
    let recs = records(text);
    let eof = end_of_input(&recs);
    let mut it = recs.iter();
    let head = it
        .next()
        .ok_or_else(|| Error::parse(eof, "expected `mc`"))?;
    if head.keyword() != "mc" {
        return Err(head.error(format!("expected `mc`, found `{}`", head.keyword())));
    }
    head.expect_args(0)?;
    let mut points: Vec<(Rational, Rational)> = Vec::new();
    let mut tail = None;
    for rec in it {
        if tail.is_some() {
            return Err(rec.error("nothing may follow `tail`"));
        }
        match rec.keyword() {
            "bp" => {
                rec.expect_args(2)?;
                points.push((rec.rational(&rec.args()[0])?, rec.rational(&rec.args()[1])?));
            }
            "tail" => {
                rec.expect_args(1)?;
                tail = Some((rec.line, rec.rational(&rec.args()[0])?));
            }
            other => return Err(rec.error(format!("unknown keyword `{other}`"))),
        }
    }
    let (line, tail) = tail.ok_or_else(|| Error::parse(eof, "missing `tail`"))?;
    let origin = (
        Rational::from_integer(0.into()),
        Rational::from_integer(0.into()),
    );
    if points.first().map(|p| &p.0) != Some(&origin.0) {
        points.insert(0, origin);
    }
    let pl = PlMap::new(points, tail).map_err(|e| Error::parse(line, e.to_string()))?;
    Modulus::new(pl).map_err(|e| Error::parse(line, e.to_string()))
}

/// One level of a net hierarchy: a radius and a set of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetLevel {
    pub eps: Rational,
    pub points: Vec<usize>,
}

pub fn parse_nets(text: &str, space: &FiniteMetricSpace) -> Result<Vec<NetLevel>> {
    records(text)
        .iter()
        .map(|rec| {
            if rec.keyword() != "net" {
                return Err(rec.error(format!("expected `net`, found `{}`", rec.keyword())));
            }
            let (eps, labels) = rec
                .args()
                .split_first()
                .ok_or_else(|| rec.error("`net` needs a radius"))?;
            let points = labels
                .iter()
                .map(|l| lookup(space, rec, l))
                .collect::<Result<Vec<_>>>()?;
            Ok(NetLevel {
                eps: rec.rational(eps)?,
                points,
            })
        })
        .collect()
}

pub fn write_nets(levels: &[NetLevel], space: &FiniteMetricSpace) -> String {
    levels
        .iter()
        .map(|l| {
            let labels: Vec<&str> = l.points.iter().map(|&p| space.label(p)).collect();
            format!("net {} {}\n", l.eps, labels.join(" "))
        })
        .collect()
}
