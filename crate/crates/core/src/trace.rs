//! Text form of an extension trace and an independent re-checker.
//!
//! A trace file is self-contained:
//!
//! ```text
//! kn 2 4
//! ball c 10
//! points 3
//! labels c x y0
//! row 0 1 5/4
//! row 1 0 35/16
//! row 5/4 35/16 0
//! pair c c
//! step 1 side=d interval=[1/2,2] e=5/4 s=35/16 point=y0 x=x
//! ```
//!
//! `point` is the realized partner of `x`; `interval` and `e` concern its distance
//! to the ball center and `s` is its distance to `x`.

use std::fmt::Write as _;

use num::Signed;

use crate::bilip::{is_compliant, kn_admissible, solve_distances, ExtensionTrace, KnParams, Side};
use crate::error::{Error, Result};
use crate::format::{map_from_records, records, ums_from_records, write_map, write_ums, Record};
use crate::map::PartialMap;
use crate::rational::{Choice, Interval, Rational};
use crate::space::{Ball, FiniteMetricSpace};

/// One `step` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub side: Side,
    pub interval: Interval,
    pub e: Rational,
    pub s: Rational,
    pub realized: usize,
    pub point: usize,
}

impl TraceLine {
    fn pair(&self) -> (usize, usize) {
        match self.side {
            Side::Domain => (self.point, self.realized),
            Side::Range => (self.realized, self.point),
        }
    }
}

/// A parsed trace file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceBundle {
    pub kn: KnParams,
    pub ball: Ball,
    pub space: FiniteMetricSpace,
    pub initial: PartialMap,
    pub steps: Vec<TraceLine>,
}

impl TraceBundle {
    pub fn from_trace(trace: &ExtensionTrace, space: &FiniteMetricSpace) -> Self {
        TraceBundle {
            kn: trace.kn.clone(),
            ball: trace.ball.clone(),
            space: space.clone(),
            initial: trace.initial.clone(),
            steps: trace
                .steps
                .iter()
                .map(|st| TraceLine {
                    side: st.side,
                    interval: st.center_interval().clone(),
                    e: st.e1().clone(),
                    s: st.s.clone(),
                    realized: st.realized,
                    point: st.point,
                })
                .collect(),
        }
    }
}

pub fn export_trace(trace: &ExtensionTrace, space: &FiniteMetricSpace) -> String {
    write_bundle(&TraceBundle::from_trace(trace, space))
}

pub fn write_bundle(b: &TraceBundle) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kn {} {}", b.kn.k, b.kn.n);
    let _ = writeln!(
        out,
        "ball {} {}",
        b.space.label(b.ball.center),
        b.ball.radius
    );
    out.push_str(&write_ums(&b.space));
    out.push_str(&write_map(&b.initial, &b.space));
    for (i, st) in b.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "step {} side={} interval={} e={} s={} point={} x={}",
            i + 1,
            st.side.code(),
            st.interval,
            st.e,
            st.s,
            b.space.label(st.realized),
            b.space.label(st.point)
        );
    }
    out
}

fn keyed<'a>(rec: &'a Record, word: &'a str, key: &str) -> Result<&'a str> {
    word.strip_prefix(key)
        .and_then(|w| w.strip_prefix('='))
        .ok_or_else(|| rec.error(format!("expected `{key}=...`, found `{word}`")))
}

fn parse_step(rec: &Record, space: &FiniteMetricSpace, index: usize) -> Result<TraceLine> {
    let a = rec.args();
    if a.len() != 7 {
        return Err(rec.error("`step` takes 7 fields"));
    }
    if a[0] != index.to_string() {
        return Err(rec.error(format!("expected step number {index}, found {}", a[0])));
    }
    let side = match keyed(rec, &a[1], "side")? {
        "d" => Side::Domain,
        "r" => Side::Range,
        other => return Err(rec.error(format!("unknown side `{other}`"))),
    };
    let iv = keyed(rec, &a[2], "interval")?;
    let inner = iv
        .strip_prefix('[')
        .and_then(|w| w.strip_suffix(']'))
        .ok_or_else(|| rec.error("interval must look like [lo,hi]"))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| rec.error("interval must look like [lo,hi]"))?;
    let label = |w: &str| {
        space
            .index_of(w)
            .ok_or_else(|| rec.error(format!("unknown label `{w}`")))
    };
    Ok(TraceLine {
        side,
        interval: Interval::new(rec.rational(lo)?, rec.rational(hi)?),
        e: rec.rational(keyed(rec, &a[3], "e")?)?,
        s: rec.rational(keyed(rec, &a[4], "s")?)?,
        realized: label(keyed(rec, &a[5], "point")?)?,
        point: label(keyed(rec, &a[6], "x")?)?,
    })
}

pub fn parse_trace(text: &str) -> Result<TraceBundle> {
    let recs = records(text);
    let eof = recs.last().map_or(1, |r| r.line + 1);
    let kn_rec = recs
        .first()
        .ok_or_else(|| Error::parse(eof, "expected `kn`"))?;
    if kn_rec.keyword() != "kn" || kn_rec.args().len() != 2 {
        return Err(kn_rec.error("expected `kn <K> <N>`"));
    }
    let kn = kn_admissible(
        &kn_rec.rational(&kn_rec.args()[0])?,
        &kn_rec.rational(&kn_rec.args()[1])?,
    );
    let ball_rec = recs
        .get(1)
        .ok_or_else(|| Error::parse(eof, "expected `ball`"))?;
    if ball_rec.keyword() != "ball" || ball_rec.args().len() != 2 {
        return Err(ball_rec.error("expected `ball <center> <radius>`"));
    }
    let (space, used) = ums_from_records(&recs[2..])?;
    let center = space
        .index_of(&ball_rec.args()[0])
        .ok_or_else(|| ball_rec.error("unknown ball center"))?;
    let radius = ball_rec.rational(&ball_rec.args()[1])?;
    let ball = Ball::new(center, radius).map_err(|e| ball_rec.error(e.to_string()))?;
    let rest = &recs[2 + used..];
    let split = rest
        .iter()
        .position(|r| r.keyword() == "step")
        .unwrap_or(rest.len());
    let initial = map_from_records(&rest[..split], &space)?;
    let steps = rest[split..]
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            if rec.keyword() != "step" {
                return Err(rec.error(format!("expected `step`, found `{}`", rec.keyword())));
            }
            parse_step(rec, &space, i + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceBundle {
        kn,
        ball,
        space,
        initial,
        steps,
    })
}

/// Outcome of [`verify_trace`]: the list of failed checks, empty when valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TraceVerdict {
    pub failures: Vec<String>,
}

impl TraceVerdict {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Replays a trace, checking every step against the workspace metric.
pub fn verify_trace(b: &TraceBundle) -> TraceVerdict {
    let mut failures = Vec::new();
    let space = &b.space;
    if !b.kn.admissible {
        failures.push(format!(
            "(K, N) = ({}, {}) is not admissible",
            b.kn.k, b.kn.n
        ));
        return TraceVerdict { failures };
    }
    let report = space.validate();
    if !report.is_valid() {
        failures.extend(
            report
                .describe(space)
                .into_iter()
                .map(|d| format!("workspace: {d}")),
        );
        return TraceVerdict { failures };
    }
    let center = b.ball.center;
    let r = &b.ball.radius;
    let n_param = &b.kn.n;
    let mut map = b.initial.clone();
    if map.apply(center) != Some(center) {
        failures.push("initial map does not fix the ball center".into());
        return TraceVerdict { failures };
    }
    let compliant =
        |m: &PartialMap| is_compliant(m, &b.ball, &b.kn, space).is_ok_and(|c| c.compliant);
    if !compliant(&map) {
        failures.push("initial map is not compliant".into());
        return TraceVerdict { failures };
    }
    for (i, st) in b.steps.iter().enumerate() {
        let step = i + 1;
        let label = |p: usize| space.label(p).to_string();
        if !b.ball.contains(space, st.point) || !b.ball.contains(space, st.realized) {
            failures.push(format!("step {step}: points must lie inside the ball"));
            break;
        }
        let oriented = match st.side {
            Side::Domain => map.clone(),
            Side::Range => map.inverse(),
        };
        if oriented.in_domain(st.point) || oriented.in_range(st.realized) {
            failures.push(format!(
                "step {step}: pair ({}, {}) is not fresh",
                label(st.point),
                label(st.realized)
            ));
            break;
        }
        if st.interval.is_empty() || !st.interval.contains(&st.e) {
            failures.push(format!(
                "step {step}: e = {} is outside {}",
                st.e, st.interval
            ));
        }
        if space.dist(st.realized, center) != &st.e {
            failures.push(format!(
                "step {step}: e = {} but d({}, {}) = {}",
                st.e,
                label(st.realized),
                label(center),
                space.dist(st.realized, center)
            ));
        }
        if space.dist(st.point, st.realized) != &st.s {
            failures.push(format!(
                "step {step}: s = {} but d({}, {}) = {}",
                st.s,
                label(st.point),
                label(st.realized),
                space.dist(st.point, st.realized)
            ));
        }
        let mut front = oriented.clone();
        front.move_to_front(center);
        match solve_distances(space, &front, &b.ball, &b.kn, st.point, Choice::Midpoint) {
            Ok(solves) if solves[0].interval == st.interval => {}
            Ok(solves) => failures.push(format!(
                "step {step}: recorded interval {} differs from {}",
                st.interval, solves[0].interval
            )),
            Err(e) => failures.push(format!("step {step}: {e}")),
        }
        let by_x = (r - space.dist(st.point, center)) / n_param;
        let by_y = (r - space.dist(st.realized, center)) / n_param;
        let bound = std::cmp::min(by_x, by_y);
        for y in oriented.images() {
            let gap = (space.dist(st.realized, *y) - space.dist(st.point, *y)).abs();
            if gap > bound {
                failures.push(format!(
                    "step {step}: goodness fails at {}: {gap} > {bound}",
                    label(*y)
                ));
            }
        }
        let (p, q) = st.pair();
        if map.insert(p, q).is_err() {
            failures.push(format!("step {step}: map stops being injective"));
            break;
        }
        if !compliant(&map) {
            failures.push(format!("step {step}: map is not compliant"));
        }
    }
    TraceVerdict { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilip::{default_kn, extend_dense};
    use crate::rational::{int, ratio};

    fn worked() -> TraceBundle {
        let space =
            FiniteMetricSpace::from_fn(vec!["c".into(), "x".into()], |_, _| int(1)).unwrap();
        let f = PartialMap::from_pairs([(0, 0)]).unwrap();
        let ball = Ball::new(0, int(10)).unwrap();
        let out = extend_dense(&space, &f, &ball, &default_kn(), &[1], Choice::Midpoint).unwrap();
        TraceBundle::from_trace(&out.trace, &out.space)
    }

    #[test]
    fn round_trip_and_verify() {
        let b = worked();
        let text = write_bundle(&b);
        assert!(
            text.contains("step 1 side=d interval=[1/2,2] e=5/4 s=35/16"),
            "{text}"
        );
        let parsed = parse_trace(&text).unwrap();
        assert_eq!(parsed, b);
        assert!(verify_trace(&parsed).ok(), "{:?}", verify_trace(&parsed));
    }

    #[test]
    fn perturbed_e_rejected() {
        let text = write_bundle(&worked()).replace("e=5/4", "e=3");
        let v = verify_trace(&parse_trace(&text).unwrap());
        assert!(!v.ok());
        assert!(v.failures[0].contains("outside"), "{v:?}");
    }

    #[test]
    fn perturbed_interval_rejected() {
        let text = write_bundle(&worked()).replace("interval=[1/2,2]", "interval=[1/2,3]");
        assert!(!verify_trace(&parse_trace(&text).unwrap()).ok());
    }

    #[test]
    fn perturbed_s_rejected() {
        let text = write_bundle(&worked()).replace("s=35/16", &format!("s={}", ratio(9, 4)));
        assert!(!verify_trace(&parse_trace(&text).unwrap()).ok());
    }

    #[test]
    fn malformed_step() {
        let text = write_bundle(&worked()).replace("side=d", "side=q");
        assert!(matches!(parse_trace(&text), Err(Error::Parse { .. })));
    }
}
