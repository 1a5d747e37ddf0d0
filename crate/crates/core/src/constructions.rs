//! Explicit constructions built on the bilipschitz extension.

use num::{BigUint, One, Signed, ToPrimitive};

use crate::amalgam::{katetov_extend, realize_point};
use crate::bilip::{default_kn, extend_dense, glue_identity_check, ExtensionTrace};
use crate::error::{Error, Result};
use crate::map::{lip_report, PartialMap};
use crate::rational::{ensure_positive, int, ratio, Choice, Rational};
use crate::space::{Ball, FiniteMetricSpace};

/// Result of [`move_point_in_ball`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub space: FiniteMetricSpace,
    /// The map sending `u` to `v`: an extension inside the auxiliary ball glued with
    /// the identity on every workspace point outside it.
    pub map: PartialMap,
    /// Its bilipschitz constant over all pairs; at most 2.
    pub lip: Rational,
    /// `None` when `u = v` and the identity was returned.
    pub auxiliary: Option<AuxiliaryData>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryData {
    /// The added point `y` at distance `3s` from `x`, with `s = r/15`.
    pub point: usize,
    /// `B(y, 12s)`.
    pub ball: Ball,
    pub s: Rational,
    /// `d(u, y)` and `d(v, y)`, both in `(2s, 4s)`.
    pub distances: (Rational, Rational),
    /// `d(u, v) / (12s - d(u, y))` and `d(u, v) / (12s - d(v, y))`, both below `1/4`.
    pub goodness_ratios: (Rational, Rational),
    pub trace: ExtensionTrace,
}

/// Builds a 2-bilipschitz map of the workspace sending `u` to `v` that is the
/// identity away from `x`. Requires `d(u, x), d(v, x) < r/15`.
pub fn move_point_in_ball(
    space: &FiniteMetricSpace,
    x: usize,
    r: &Rational,
    u: usize,
    v: usize,
) -> Result<MoveOutcome> {
    ensure_positive(r, "radius")?;
    let s = r / int(15);
    for (p, name) in [(u, "u"), (v, "v")] {
        if space.dist(p, x) >= &s {
            return Err(Error::pre(format!(
                "{name} = {} is not within r/15 = {s} of {}",
                space.label(p),
                space.label(x)
            )));
        }
    }
    if u == v {
        let all: Vec<usize> = (0..space.len()).collect();
        return Ok(MoveOutcome {
            space: space.clone(),
            map: PartialMap::identity(&all),
            lip: int(1),
            auxiliary: None,
        });
    }

    let shift = &s * int(3);
    let g = katetov_extend(space, &[(x, shift)])?;
    let label = space.fresh_label("aux");
    let (work, y) = realize_point(space, &g, &label)?;

    let radius = &s * int(12);
    let ball = Ball::new(y, radius.clone())?;
    let (du, dv) = (work.dist(u, y).clone(), work.dist(v, y).clone());
    let (two_s, four_s) = (&s * int(2), &s * int(4));
    for d in [&du, &dv] {
        if !(d > &two_s && d < &four_s) {
            return Err(Error::Invariant(format!("d(·, y) = {d} outside (2s, 4s)")));
        }
    }
    let duv = work.dist(u, v);
    let ratios = (duv / (&radius - &du), duv / (&radius - &dv));
    if ratios.0 >= ratio(1, 4) || ratios.1 >= ratio(1, 4) {
        return Err(Error::Invariant(format!(
            "goodness ratios {} and {} not below 1/4",
            ratios.0, ratios.1
        )));
    }

    let kn = default_kn();
    let seed = PartialMap::from_pairs([(y, y), (u, v)])?;
    let targets: Vec<usize> = (0..space.len())
        .filter(|&p| ball.contains(&work, p))
        .collect();
    let dense = extend_dense(&work, &seed, &ball, &kn, &targets, Choice::Midpoint)?;
    let glue = glue_identity_check(&dense.space, &dense.map, &ball, &kn)?;
    if !glue.holds {
        return Err(Error::Invariant(format!(
            "glued map has bilipschitz constant {} > 2",
            glue.lip
        )));
    }
    let mut map = dense.map.clone();
    for w in 0..dense.space.len() {
        if !ball.contains(&dense.space, w) {
            map.insert(w, w)?;
        }
    }
    let lip = lip_report(&map, &dense.space)?.constant;
    Ok(MoveOutcome {
        space: dense.space,
        map,
        lip,
        auxiliary: Some(AuxiliaryData {
            point: y,
            ball,
            s,
            distances: (du, dv),
            goodness_ratios: ratios,
            trace: dense.trace,
        }),
    })
}

/// Bound for moving a point along a segment of the given length by chaining
/// [`move_point_in_ball`] steps of size below `r/16`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportBound {
    /// Number of steps, `⌊16·length/r⌋ + 1`.
    pub steps: u64,
    /// `2^steps`.
    pub constant: BigUint,
}

pub fn segment_transport_bound(length: &Rational, r: &Rational) -> Result<TransportBound> {
    ensure_positive(r, "radius")?;
    if length.is_negative() {
        return Err(Error::pre(format!("segment length {length} is negative")));
    }
    let quotient = (length * int(16) / r).floor().to_integer();
    let steps = quotient
        .to_u64()
        .and_then(|q| q.checked_add(1))
        .filter(|&n| n <= u64::from(u32::MAX))
        .ok_or_else(|| Error::pre(format!("segment of length {length} needs too many steps")))?;
    Ok(TransportBound {
        steps,
        constant: BigUint::one() << steps,
    })
}

/// Constants of the affine rescaling argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineConstants {
    pub a: Rational,
    pub b: Rational,
    /// `(a - b) / (2b)`, which always equals `K²/(K-1)`.
    pub n: Rational,
}

pub fn affine_constants(r0: &Rational, s: &Rational, k: &Rational) -> Result<AffineConstants> {
    ensure_positive(r0, "r0")?;
    ensure_positive(s, "s")?;
    let one = Rational::one();
    if k <= &one {
        return Err(Error::pre(format!("K = {k} must exceed 1")));
    }
    let a = std::cmp::min(r0 / int(4), s / (k + &one));
    let b = (k - &one) * &a / ((k * int(2) - &one) * (k + &one));
    let n = (&a - &b) / (&b * int(2));
    if n != k * k / (k - &one) {
        return Err(Error::Invariant(format!("N = {n} differs from K²/(K-1)")));
    }
    Ok(AffineConstants { a, b, n })
}
