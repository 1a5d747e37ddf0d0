//! Piecewise-linear moduli of continuity and their algebra.
//!
//! A modulus here is a concave increasing bijection of `[0, ∞)` given by finitely
//! many rational breakpoints and a final slope for the unbounded last piece.
//! Inverses of moduli are convex, so the general carrier is [`PlMap`], an increasing
//! piecewise-linear bijection of `[0, ∞)` with no curvature requirement; [`Modulus`]
//! wraps a `PlMap` that has been checked to be concave.

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, pow2, Rational};

/// An increasing piecewise-linear bijection of `[0, ∞)`.
///
/// Canonical form: starts at `(0, 0)`, breakpoints strictly increasing in both
/// coordinates, no breakpoint where the slope does not change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlMap {
    points: Vec<(Rational, Rational)>,
    tail: Rational,
}

/// One reason a breakpoint list fails to describe a modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulusViolation {
    /// The first breakpoint is not `(0, 0)`.
    NotAnchored,
    /// Breakpoint `index` does not increase in `t` over its predecessor.
    NonIncreasingArgument {
        index: usize,
    },
    /// Breakpoint `index` does not increase in value over its predecessor.
    NonIncreasingValue {
        index: usize,
    },
    NonPositiveTail,
    /// The slope increases at breakpoint `index` (the triple `index-1, index, index+1`,
    /// where `index+1` may be the unbounded tail).
    NotConcave {
        index: usize,
        before: Rational,
        after: Rational,
    },
}

impl fmt::Display for ModulusViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusViolation::NotAnchored => write!(f, "first breakpoint must be (0,0)"),
            ModulusViolation::NonIncreasingArgument { index } => {
                write!(f, "breakpoint {index}: t does not increase")
            }
            ModulusViolation::NonIncreasingValue { index } => {
                write!(f, "breakpoint {index}: value does not increase")
            }
            ModulusViolation::NonPositiveTail => write!(f, "tail slope must be positive"),
            ModulusViolation::NotConcave {
                index,
                before,
                after,
            } => write!(
                f,
                "not concave at breakpoint {index}: slope {before} followed by larger slope {after}"
            ),
        }
    }
}

/// All violations found in a raw breakpoint list; empty iff it is a modulus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModulusReport {
    pub violations: Vec<ModulusViolation>,
}

impl ModulusReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a raw breakpoint list against every modulus invariant.
pub fn modulus_validate(points: &[(Rational, Rational)], tail: &Rational) -> ModulusReport {
    let mut violations = increasing_violations(points, tail);
    if violations.is_empty() {
        let slopes = raw_slopes(points, tail);
        for (k, w) in slopes.windows(2).enumerate() {
            if w[1] > w[0] {
                violations.push(ModulusViolation::NotConcave {
                    index: k + 1,
                    before: w[0].clone(),
                    after: w[1].clone(),
                });
            }
        }
    }
    ModulusReport { violations }
}

fn increasing_violations(
    points: &[(Rational, Rational)],
    tail: &Rational,
) -> Vec<ModulusViolation> {
    let mut out = Vec::new();
    match points.first() {
        Some((t, v)) if t.is_zero() && v.is_zero() => {}
        _ => out.push(ModulusViolation::NotAnchored),
    }
    for (k, w) in points.windows(2).enumerate() {
        if w[1].0 <= w[0].0 {
            out.push(ModulusViolation::NonIncreasingArgument { index: k + 1 });
        }
        if w[1].1 <= w[0].1 {
            out.push(ModulusViolation::NonIncreasingValue { index: k + 1 });
        }
    }
    if !tail.is_positive() {
        out.push(ModulusViolation::NonPositiveTail);
    }
    out
}

fn raw_slopes(points: &[(Rational, Rational)], tail: &Rational) -> Vec<Rational> {
    let mut slopes: Vec<Rational> = points
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect();
    slopes.push(tail.clone());
    slopes
}

impl PlMap {
    /// Builds an increasing PL bijection. Collinear breakpoints are dropped.
    pub fn new(points: Vec<(Rational, Rational)>, tail: Rational) -> Result<Self> {
        let violations = increasing_violations(&points, &tail);
        if let Some(v) = violations.first() {
            return Err(Error::pre(format!("not an increasing PL bijection: {v}")));
        }
        Ok(Self::canonical(points, tail))
    }

    fn canonical(points: Vec<(Rational, Rational)>, tail: Rational) -> Self {
        let slopes = raw_slopes(&points, &tail);
        let mut kept = vec![points[0].clone()];
        for k in 1..points.len() {
            if slopes[k - 1] != slopes[k] {
                kept.push(points[k].clone());
            }
        }
        PlMap { points: kept, tail }
    }

    /// `t ↦ slope · t`.
    pub fn linear(slope: Rational) -> Result<Self> {
        Self::new(vec![(Rational::zero(), Rational::zero())], slope)
    }

    pub fn identity() -> Self {
        Self::linear(Rational::one()).expect("slope 1 is positive")
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn tail_slope(&self) -> &Rational {
        &self.tail
    }

    /// Slopes of the pieces, left to right, ending with the tail slope.
    pub fn slopes(&self) -> Vec<Rational> {
        raw_slopes(&self.points, &self.tail)
    }

    /// Slope on the first piece, i.e. the behaviour at `0⁺`.
    pub fn initial_slope(&self) -> Rational {
        self.slopes().swap_remove(0)
    }

    pub fn is_concave(&self) -> bool {
        self.slopes().windows(2).all(|w| w[1] <= w[0])
    }

    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[1] >= w[0])
    }

    /// Evaluates the map at `t ≥ 0`.
    pub fn eval(&self, t: &Rational) -> Rational {
        let k = self.points.partition_point(|(pt, _)| pt <= t);
        // k ≥ 1 since points[0].0 = 0 ≤ t
        let (t0, v0) = &self.points[k - 1];
        let slope = match self.points.get(k) {
            Some((t1, v1)) => (v1 - v0) / (t1 - t0),
            None => self.tail.clone(),
        };
        v0 + slope * (t - t0)
    }

    pub fn inverse(&self) -> PlMap {
        let points = self
            .points
            .iter()
            .map(|(t, v)| (v.clone(), t.clone()))
            .collect();
        PlMap {
            points,
            tail: Rational::one() / &self.tail,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlMap) -> PlMap {
        let inner_inv = inner.inverse();
        let mut ts: Vec<Rational> = inner.points.iter().map(|(t, _)| t.clone()).collect();
        ts.extend(self.points.iter().map(|(t, _)| inner_inv.eval(t)));
        ts.sort();
        ts.dedup();
        let points = ts
            .into_iter()
            .map(|t| {
                let v = self.eval(&inner.eval(&t));
                (t, v)
            })
            .collect();
        Self::canonical(points, &self.tail * &inner.tail)
    }

    /// `c · self` for `c > 0`.
    pub fn scale(&self, c: &Rational) -> PlMap {
        PlMap {
            points: self
                .points
                .iter()
                .map(|(t, v)| (t.clone(), v * c))
                .collect(),
            tail: &self.tail * c,
        }
    }

    /// Largest breakpoint coordinate (argument or value).
    pub(crate) fn extent(&self) -> Rational {
        self.points
            .iter()
            .flat_map(|(t, v)| [t, v])
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pl[")?;
        for (k, (t, v)) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({t},{v})")?;
        }
        write!(f, "; tail {}]", self.tail)
    }
}

/// A concave increasing PL bijection of `[0, ∞)`: a modulus of continuity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus(PlMap);

impl Modulus {
    pub fn new(map: PlMap) -> Result<Self> {
        let report = modulus_validate(&map.points, &map.tail);
        match report.violations.first() {
            None => Ok(Modulus(map)),
            Some(v) => Err(Error::pre(format!("not a modulus of continuity: {v}"))),
        }
    }

    pub fn from_breakpoints(points: Vec<(Rational, Rational)>, tail: Rational) -> Result<Self> {
        Self::new(PlMap::new(points, tail)?)
    }

    /// `t ↦ slope · t`.
    pub fn linear(slope: Rational) -> Result<Self> {
        Ok(Modulus(PlMap::linear(slope)?))
    }

    /// The doubling map `t ↦ 2t`.
    pub fn doubling() -> Self {
        Modulus(PlMap::linear(int(2)).expect("positive slope"))
    }

    /// PL interpolant of `t ↦ t^(1/root)` through `t = 2^(-root·k)`, `k = 0..=depth`,
    /// continued past `t = 1` with slope `1/(2^root - 1)` (the chord to `(2^root, 2)`).
    pub fn holder_interpolant(root: u32, depth: u32) -> Result<Self> {
        if root == 0 {
            return Err(Error::pre("root must be at least 1"));
        }
        let mut points = vec![(Rational::zero(), Rational::zero())];
        for k in (0..=i64::from(depth)).rev() {
            points.push((pow2(-i64::from(root) * k), pow2(-k)));
        }
        let tail = Rational::one() / (pow2(i64::from(root)) - Rational::one());
        Self::from_breakpoints(points, tail)
    }

    pub fn as_pl(&self) -> &PlMap {
        &self.0
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.eval(t)
    }

    /// The convex PL inverse.
    pub fn inverse(&self) -> PlMap {
        self.0.inverse()
    }

    /// `self ∘ inner`; concavity of the result is re-checked, not assumed.
    pub fn compose(&self, inner: &Modulus) -> Result<Modulus> {
        let composed = self.0.compose(&inner.0);
        Modulus::new(composed).map_err(|e| Error::Invariant(format!("composition: {e}")))
    }

    pub fn scale(&self, c: &Rational) -> Result<Modulus> {
        if !c.is_positive() {
            return Err(Error::pre("scale factor must be positive"));
        }
        Ok(Modulus(self.0.scale(c)))
    }

    pub fn initial_slope(&self) -> Rational {
        self.0.initial_slope()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `α ⪯ β`: `α ≤ β` on some interval `[0, a]`, `a > 0`.
///
/// Both maps are linear on a neighbourhood of 0, so this is a comparison of the
/// initial slopes; equal initial slopes mean the maps agree near 0.
pub fn modulus_precedes(alpha: &Modulus, beta: &Modulus) -> bool {
    alpha.initial_slope() <= beta.initial_slope()
}

/// A finite set of generators standing in for a countably generated semigroup of
/// moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McSemigroup {
    generators: Vec<Modulus>,
}

impl McSemigroup {
    /// Requires some generator to dominate the doubling map near 0.
    pub fn new(generators: Vec<Modulus>) -> Result<Self> {
        let doubling = Modulus::doubling();
        if !generators.iter().any(|g| modulus_precedes(&doubling, g)) {
            return Err(Error::pre("generators must dominate t ↦ 2t near 0"));
        }
        Ok(McSemigroup { generators })
    }

    /// Generators `t ↦ i·t` for `i = 1..=n`, `n ≥ 2`.
    pub fn lipschitz(n: u32) -> Result<Self> {
        let gens = (1..=n)
            .map(|i| Modulus::linear(int(i64::from(i))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    /// The doubling map together with PL interpolants of `t^(1/n)`, `n = 2..=roots`.
    pub fn holder(roots: u32, depth: u32) -> Result<Self> {
        let mut gens = vec![Modulus::doubling()];
        for n in 2..=roots {
            gens.push(Modulus::holder_interpolant(n, depth)?);
        }
        Self::new(gens)
    }

    pub fn generators(&self) -> &[Modulus] {
        &self.generators
    }

    /// Whether `gamma ⪯ g` for some generator `g`.
    pub fn dominated_by_generator(&self, gamma: &Modulus) -> Option<usize> {
        self.generators
            .iter()
            .position(|g| modulus_precedes(gamma, g))
    }
}

/// Which of the two compatibility inequalities a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatSide {
    /// `α⁻¹(s) + β(t) ≥ α⁻¹(s+t)`.
    Forward,
    /// `β⁻¹(s) + α(t) ≥ β⁻¹(s+t)`.
    Backward,
}

/// A point `(s, t)` where a compatibility inequality fails: `lhs < rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatWitness {
    pub side: CompatSide,
    pub s: Rational,
    pub t: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Outcome of [`compatible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// Side length of the square that was checked vertex by vertex.
    pub checked_bound: Rational,
    pub box_ok: bool,
    /// `tail(β) · tail(α) ≥ 1`, which carries the box result to all of `[0, ∞)²`.
    pub tail_ok: bool,
    pub witness: Option<CompatWitness>,
}

impl CompatibilityReport {
    pub fn compatible(&self) -> bool {
        self.box_ok && self.tail_ok
    }
}

/// Decides the forward inequality `α⁻¹(s) + β(t) ≥ α⁻¹(s+t)` on `[0, bound]²`.
///
/// The difference of the two sides is linear on every cell of the arrangement cut
/// out by the lines `s = c`, `t = c` and `s + t = c` for all breakpoint coordinates
/// `c`, so checking the vertices of that arrangement is exact. The first failing
/// vertex in order of `(max(s,t), s+t, s, t)` is returned.
pub fn forward_condition_on_box(
    alpha: &Modulus,
    beta: &Modulus,
    bound: &Rational,
) -> Option<CompatWitness> {
    side_on_box(&alpha.inverse(), beta.as_pl(), bound, CompatSide::Forward)
}

fn side_on_box(
    convex: &PlMap,
    concave: &PlMap,
    bound: &Rational,
    side: CompatSide,
) -> Option<CompatWitness> {
    let mut cuts: Vec<Rational> = vec![Rational::zero(), bound.clone()];
    for m in [convex, concave] {
        for (t, v) in m.breakpoints() {
            cuts.push(t.clone());
            cuts.push(v.clone());
        }
    }
    cuts.retain(|c| !c.is_negative());
    cuts.sort();
    cuts.dedup();
    let inside = |x: &Rational| !x.is_negative() && x <= bound;
    let mut vertices: Vec<(Rational, Rational)> = Vec::new();
    for a in cuts.iter().filter(|c| inside(c)) {
        for b in cuts.iter().filter(|c| inside(c)) {
            vertices.push((a.clone(), b.clone()));
        }
        for c in &cuts {
            let other = c - a;
            if inside(&other) {
                vertices.push((a.clone(), other.clone()));
                vertices.push((other, a.clone()));
            }
        }
    }
    vertices.sort_by(|x, y| {
        let kx = (std::cmp::max(&x.0, &x.1).clone(), &x.0 + &x.1);
        let ky = (std::cmp::max(&y.0, &y.1).clone(), &y.0 + &y.1);
        kx.cmp(&ky).then_with(|| x.cmp(y))
    });
    vertices.dedup();
    vertices.into_iter().find_map(|(s, t)| {
        let lhs = convex.eval(&s) + concave.eval(&t);
        let rhs = convex.eval(&(&s + &t));
        (lhs < rhs).then_some(CompatWitness {
            side,
            s,
            t,
            lhs,
            rhs,
        })
    })
}

/// Checks compatibility of `(α, β)` on `[0, max(bound, extent)]²` plus the tail
/// condition; together these decide the inequalities on all of `[0, ∞)²`.
pub fn compatible(alpha: &Modulus, beta: &Modulus, bound: &Rational) -> CompatibilityReport {
    let extent = [alpha.as_pl().extent(), beta.as_pl().extent(), bound.clone()]
        .into_iter()
        .max()
        .expect("nonempty");
    let witness = side_on_box(&alpha.inverse(), beta.as_pl(), &extent, CompatSide::Forward)
        .or_else(|| {
            side_on_box(
                &beta.inverse(),
                alpha.as_pl(),
                &extent,
                CompatSide::Backward,
            )
        });
    let box_ok = witness.is_none();
    let tail_ok = alpha.as_pl().tail_slope() * beta.as_pl().tail_slope() >= Rational::one();
    let witness = witness.or_else(|| (!tail_ok).then(|| tail_witness(alpha, beta, &extent)));
    CompatibilityReport {
        checked_bound: extent,
        box_ok,
        tail_ok,
        witness,
    }
}

/// When `tail(β) < tail(α⁻¹)`, `β(t) - α⁻¹(t)` eventually turns negative; find such a
/// `t` explicitly and report it at `s = 0`.
fn tail_witness(alpha: &Modulus, beta: &Modulus, extent: &Rational) -> CompatWitness {
    let inv = alpha.inverse();
    let a = inv.tail_slope().clone();
    let b = beta.as_pl().tail_slope().clone();
    // for t ≥ extent: β(t) - α⁻¹(t) = (b - a)(t - extent) + c
    let c = beta.eval(extent) - inv.eval(extent);
    let mut t = extent + Rational::one();
    if c.is_positive() {
        t += &c / (&a - &b);
    }
    let lhs = beta.eval(&t);
    let rhs = inv.eval(&t);
    debug_assert!(lhs < rhs);
    CompatWitness {
        side: CompatSide::Forward,
        s: Rational::zero(),
        t,
        lhs,
        rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn kinked() -> Modulus {
        // t for t ≤ 1, then 1 + (t-1)/2
        Modulus::from_breakpoints(vec![(int(0), int(0)), (int(1), int(1))], ratio(1, 2)).unwrap()
    }

    #[test]
    fn compose_linear() {
        let a = Modulus::linear(int(2)).unwrap();
        let b = Modulus::linear(int(3)).unwrap();
        assert_eq!(a.compose(&b).unwrap(), Modulus::linear(int(6)).unwrap());
    }

    #[test]
    fn inverse_of_kinked() {
        let inv = kinked().inverse();
        let expected = PlMap::new(vec![(int(0), int(0)), (int(1), int(1))], int(2)).unwrap();
        assert_eq!(inv, expected);
        assert_eq!(inv.eval(&int(3)), int(5));
        assert!(inv.is_convex());
    }

    #[test]
    fn increasing_slopes_rejected() {
        let report = modulus_validate(&[(int(0), int(0)), (int(1), int(1))], &int(2));
        assert_eq!(
            report.violations,
            vec![ModulusViolation::NotConcave {
                index: 1,
                before: int(1),
                after: int(2)
            }]
        );
    }

    #[test]
    fn malformed_lists_reported() {
        let report = modulus_validate(&[(int(1), int(0)), (int(1), int(0))], &int(0));
        assert!(report.violations.contains(&ModulusViolation::NotAnchored));
        assert!(report
            .violations
            .contains(&ModulusViolation::NonIncreasingArgument { index: 1 }));
        assert!(report
            .violations
            .contains(&ModulusViolation::NonPositiveTail));
    }

    #[test]
    fn precedes_by_initial_slope() {
        let one = Modulus::linear(int(1)).unwrap();
        let two = Modulus::linear(int(2)).unwrap();
        assert!(modulus_precedes(&one, &one));
        assert!(modulus_precedes(&one, &two));
        assert!(!modulus_precedes(&two, &one));
        let gamma = Modulus::holder_interpolant(2, 6).unwrap();
        assert!(modulus_precedes(&two, &gamma));
        assert!(!modulus_precedes(&gamma, &two));
    }

    #[test]
    fn holder_interpolant_values() {
        let g = Modulus::holder_interpolant(2, 4).unwrap();
        assert_eq!(g.eval(&ratio(1, 16)), ratio(1, 4));
        assert_eq!(g.eval(&ratio(1, 4)), ratio(1, 2));
        assert_eq!(g.eval(&int(1)), int(1));
        // slope between 4^-2 and 4^-1 is 2^2/3
        assert_eq!(
            g.eval(&ratio(1, 8)),
            ratio(1, 4) + ratio(4, 3) * ratio(1, 16)
        );
    }

    #[test]
    fn identity_pair_compatible() {
        let id = Modulus::linear(int(1)).unwrap();
        assert!(compatible(&id, &id, &int(10)).compatible());
    }

    #[test]
    fn scaled_pair_compatible() {
        let a = Modulus::linear(int(2)).unwrap();
        let b = Modulus::linear(ratio(1, 2)).unwrap();
        assert!(compatible(&a, &b, &int(10)).compatible());
    }

    #[test]
    fn kinked_pair_fails_at_one_one() {
        let id = Modulus::linear(int(1)).unwrap();
        let report = compatible(&kinked(), &id, &int(4));
        assert!(!report.compatible());
        assert!(!report.tail_ok);
        let w = report.witness.unwrap();
        assert_eq!((w.s, w.t), (int(1), int(1)));
        assert_eq!((w.lhs, w.rhs), (int(2), int(3)));
    }

    #[test]
    fn tail_failure_alone_is_caught() {
        // identical on [0, 1] after rescaling; only the tails disagree beyond the box
        let alpha =
            Modulus::from_breakpoints(vec![(int(0), int(0)), (int(10), int(10))], ratio(1, 2))
                .unwrap();
        let beta =
            Modulus::from_breakpoints(vec![(int(0), int(0)), (int(10), int(20))], ratio(1, 3))
                .unwrap();
        let report = compatible(&alpha, &beta, &int(1));
        assert!(!report.tail_ok);
        let w = report.witness.unwrap();
        assert!(w.lhs < w.rhs);
    }
}
