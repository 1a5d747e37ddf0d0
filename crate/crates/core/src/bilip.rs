//! `(K, N)`-compliant maps inside a ball and their one-point extension.
//!
//! A finite map `f` whose domain and range sit inside an open ball `B(c, r)` is
//! `(K, N)`-compliant when it is `K`-bilipschitz and every point of the domain of
//! `f` and of `f⁻¹` moves by at most `(r - d(p, c)) / N`. For admissible `(K, N)`
//! such a map that fixes the center can always be extended by one more point while
//! staying compliant. [`extend_one_point`] computes the new point's distances by
//! solving, one unknown at a time, a system of interval constraints whose
//! nonemptiness is a theorem; [`extend_dense`] alternates domain and range
//! extensions over a list of targets.
//!
//! Notation used below, for `dom(f) = {x_1, …, x_n}` with `x_1 = c` and
//! `y_m = f(x_m)`: `d_m = d(x, x_m)`, `s_m = d(x, y_m)`, `e_{m,j} = d(y_m, y_j)`, and
//! the unknowns are `e_m = d(y, y_m)` for the point `y` being realized.

use std::fmt;

use num::{One, Signed};

use crate::amalgam::{katetov_extend, realize_point};
use crate::error::{Error, Result};
use crate::map::{goodness_check, lip_report, GoodnessReport, LipReport, PartialMap};
use crate::rational::{int, Choice, Interval, Rational};
use crate::space::{Ball, FiniteMetricSpace};

/// A pair `(K, N)` with its admissibility status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnParams {
    pub k: Rational,
    pub n: Rational,
    /// `K > 1` and `N ≥ K²/(K-1)`.
    pub admissible: bool,
    /// `1/N + 1/K ≤ 1`.
    pub reciprocal_ok: bool,
}

/// Classifies `(K, N)` without evaluating any square root.
///
/// `N ≥ K²/(K-1)` with `K > 1` is the same as `K` lying between the two roots of
/// `K² - N·K + N`, i.e. in the closed interval `[(N - √(N²-4N))/2, (N + √(N²-4N))/2]`
/// with `N ≥ 4`.
pub fn kn_admissible(k: &Rational, n: &Rational) -> KnParams {
    let one = Rational::one();
    let admissible = k > &one && n * (k - &one) >= k * k;
    let reciprocal_ok =
        k.is_positive() && n.is_positive() && (one.clone() / n + one.clone() / k) <= one;
    KnParams {
        k: k.clone(),
        n: n.clone(),
        admissible,
        reciprocal_ok,
    }
}

impl KnParams {
    pub fn new(k: Rational, n: Rational) -> Self {
        kn_admissible(&k, &n)
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.admissible {
            Ok(())
        } else {
            Err(Error::pre(format!(
                "(K, N) = ({}, {}) is not admissible: need K > 1 and N ≥ K²/(K-1)",
                self.k, self.n
            )))
        }
    }
}

/// Exact evidence for or against `(K, N)`-compliance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplianceCertificate {
    pub lip: LipReport,
    pub goodness: GoodnessReport,
    pub compliant: bool,
}

pub fn is_compliant(
    f: &PartialMap,
    ball: &Ball,
    kn: &KnParams,
    space: &FiniteMetricSpace,
) -> Result<ComplianceCertificate> {
    let goodness = goodness_check(f, ball, &kn.n, space)?;
    let lip = lip_report(f, space)?;
    let compliant = lip.constant <= kn.k && goodness.good;
    Ok(ComplianceCertificate {
        lip,
        goodness,
        compliant,
    })
}

/// Whether a point is added to the domain or to the range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Domain,
    Range,
}

impl Side {
    pub fn code(self) -> char {
        match self {
            Side::Domain => 'd',
            Side::Range => 'r',
        }
    }
}

/// The seven constraint families bounding an unknown distance `e_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    /// `e_{m,j} - K d_j ≤ e_m ≤ e_{m,j} + K d_j` for `j > m`.
    Ie1,
    /// `|e_{m,l} - e_l| ≤ e_m ≤ e_{m,l} + e_l` for `l < m`.
    Ie2,
    /// `d_m / K ≤ e_m ≤ K d_m`.
    Ie3,
    /// `|e_m - s_m| ≤ (r - d_1)/N`.
    Ie4,
    /// `|e_m - s_m| ≤ (r - e_1)/N`; for `m = 1` solved for `e_1`.
    Ie5,
    /// `e_1 ≤ N (s_i - d_i/K) + r` for `i > 1`.
    Ie6,
    /// `e_1 ≤ N (K d_i - s_i) + r` for `i > 1`.
    Ie7,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Ie1,
        Family::Ie2,
        Family::Ie3,
        Family::Ie4,
        Family::Ie5,
        Family::Ie6,
        Family::Ie7,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = Family::ALL.iter().position(|x| x == self).expect("listed") + 1;
        write!(f, "IE{k}")
    }
}

/// One constraint on `e_m`: either side may be absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub family: Family,
    /// 1-based index of the other point involved (`j`, `l` or `i`), if any.
    pub other: Option<usize>,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    fn source(&self) -> String {
        match self.other {
            Some(o) => format!("{}[{o}]", self.family),
            None => self.family.to_string(),
        }
    }
}

/// The solve for one unknown `e_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSolve {
    /// 1-based position in the (center-first) domain order.
    pub m: usize,
    /// `x_m`.
    pub source: usize,
    /// `y_m`; the unknown is the distance from the new point to it.
    pub target: usize,
    pub bounds: Vec<Bound>,
    /// Intersection of all bounds.
    pub interval: Interval,
    pub value: Rational,
}

impl DistanceSolve {
    /// Intersection of the bounds of one family (`None` endpoints are unbounded).
    pub fn family_interval(&self, family: Family) -> (Option<Rational>, Option<Rational>) {
        let of = || self.bounds.iter().filter(move |b| b.family == family);
        let lo = of().filter_map(|b| b.lower.clone()).max();
        let hi = of().filter_map(|b| b.upper.clone()).min();
        (lo, hi)
    }

    /// Every lower bound is at most every upper bound.
    pub fn pairwise_consistent(&self) -> bool {
        self.bounds
            .iter()
            .filter_map(|b| b.lower.as_ref())
            .all(|lo| {
                self.bounds
                    .iter()
                    .filter_map(|b| b.upper.as_ref())
                    .all(|hi| lo <= hi)
            })
    }
}

/// Audit record of one call to [`extend_one_point`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    pub side: Side,
    /// The point that entered the domain (or, for [`Side::Range`], the range).
    pub point: usize,
    /// The realized partner: `f(point)` for the domain side, `f⁻¹(point)` otherwise.
    pub realized: usize,
    /// One solve per unknown `e_1, …, e_n`, computed on `f` or on `f⁻¹`.
    pub solves: Vec<DistanceSolve>,
    /// Distance between `point` and `realized`.
    pub s: Rational,
    /// `min((r - d_1)/N, (r - e_1)/N)`, the bound in the goodness condition.
    pub goodness_bound: Rational,
}

impl ExtensionStep {
    /// Feasibility interval for the distance from the realized point to the center.
    pub fn center_interval(&self) -> &Interval {
        &self.solves[0].interval
    }

    pub fn e1(&self) -> &Rational {
        &self.solves[0].value
    }

    pub fn e_values(&self) -> Vec<Rational> {
        self.solves.iter().map(|s| s.value.clone()).collect()
    }

    /// The pair this step adds to the map, as `(domain point, image)`.
    pub fn pair(&self) -> (usize, usize) {
        match self.side {
            Side::Domain => (self.point, self.realized),
            Side::Range => (self.realized, self.point),
        }
    }
}

/// Result of [`extend_one_point`]. `step` is `None` when the point was already present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub space: FiniteMetricSpace,
    pub map: PartialMap,
    pub step: Option<ExtensionStep>,
}

fn check_center(f: &PartialMap, ball: &Ball, space: &FiniteMetricSpace) -> Result<()> {
    match f.apply(ball.center) {
        Some(c) if c == ball.center => Ok(()),
        _ => Err(Error::pre(format!(
            "the map must fix the ball center {}",
            space.label(ball.center)
        ))),
    }
}

/// Adds `x` to the domain (or range) of a compliant map, keeping it compliant.
///
/// The new partner `y` is realized as a fresh workspace point whose distances to
/// `y_1, …, y_n` are the solved `e_m` and whose distance to `x` is
/// `min(min_i(e_i + s_i), (r - d_1)/N, (r - e_1)/N)`; distances to the rest of the
/// workspace follow the shortest-path extension.
pub fn extend_one_point(
    space: &FiniteMetricSpace,
    f: &PartialMap,
    ball: &Ball,
    kn: &KnParams,
    x: usize,
    side: Side,
    choice: Choice,
) -> Result<Extension> {
    kn.require_admissible()?;
    check_center(f, ball, space)?;
    ball.require_inside(space, x, "new point")?;
    let already = match side {
        Side::Domain => f.in_domain(x),
        Side::Range => f.in_range(x),
    };
    if already {
        return Ok(Extension {
            space: space.clone(),
            map: f.clone(),
            step: None,
        });
    }
    let cert = is_compliant(f, ball, kn, space)?;
    if !cert.compliant {
        return Err(Error::pre(format!(
            "input map is not ({}, {})-compliant (lip {}, goodness slack {:?})",
            kn.k, kn.n, cert.lip.constant, cert.goodness.slack
        )));
    }

    let mut oriented = match side {
        Side::Domain => f.clone(),
        Side::Range => f.inverse(),
    };
    oriented.move_to_front(ball.center);
    let solves = solve_distances(space, &oriented, ball, kn, x, choice)?;

    let r = &ball.radius;
    let n_param = &kn.n;
    let d1 = space.dist(x, ball.center);
    let e1 = &solves[0].value;
    let by_x = (r - d1) / n_param;
    let by_y = (r - e1) / n_param;
    let goodness_bound = std::cmp::min(&by_x, &by_y).clone();
    let s = solves
        .iter()
        .map(|sv| &sv.value + space.dist(x, sv.target))
        .chain([by_x.clone(), by_y.clone()])
        .min()
        .expect("nonempty");

    let mut data: Vec<(usize, Rational)> = solves
        .iter()
        .map(|sv| (sv.target, sv.value.clone()))
        .collect();
    data.push((x, s.clone()));
    let g = katetov_extend(space, &data)
        .map_err(|e| Error::Invariant(format!("realizing the new point: {e}")))?;
    let label = space.fresh_label("y");
    let (space, y) = realize_point(space, &g, &label)?;

    for sv in &solves {
        let gap = (&sv.value - space.dist(x, sv.target)).abs();
        if gap > goodness_bound {
            return Err(Error::Invariant(format!(
                "goodness condition fails at m = {}: |e_m - s_m| = {gap} > {goodness_bound}",
                sv.m
            )));
        }
    }

    let mut map = f.clone();
    match side {
        Side::Domain => map.insert(x, y)?,
        Side::Range => map.insert(y, x)?,
    }
    let cert = is_compliant(&map, ball, kn, &space)?;
    if !cert.compliant {
        return Err(Error::Invariant(format!(
            "extended map lost compliance (lip {}, slack {:?})",
            cert.lip.constant, cert.goodness.slack
        )));
    }
    Ok(Extension {
        space,
        map,
        step: Some(ExtensionStep {
            side,
            point: x,
            realized: y,
            solves,
            s,
            goodness_bound,
        }),
    })
}

/// Solves for `e_1, …, e_n` in order, for a map whose first domain point is the
/// ball center. Each `e_m` is picked from the intersection of its bounds.
pub fn solve_distances(
    space: &FiniteMetricSpace,
    f: &PartialMap,
    ball: &Ball,
    kn: &KnParams,
    x: usize,
    choice: Choice,
) -> Result<Vec<DistanceSolve>> {
    let xs = f.domain();
    let ys = f.images();
    if xs.first() != Some(&ball.center) {
        return Err(Error::pre("the ball center must be the first domain point"));
    }
    let (k, n_param, r) = (&kn.k, &kn.n, &ball.radius);
    let one = Rational::one();
    let d: Vec<&Rational> = xs.iter().map(|&p| space.dist(x, p)).collect();
    let s: Vec<&Rational> = ys.iter().map(|&q| space.dist(x, q)).collect();
    let by_x = (r - d[0]) / n_param;

    let mut solves: Vec<DistanceSolve> = Vec::with_capacity(xs.len());
    for m in 0..xs.len() {
        let mut bounds = Vec::new();
        let both = |family, other: Option<usize>, lo: Rational, hi: Rational| Bound {
            family,
            other,
            lower: Some(lo),
            upper: Some(hi),
        };
        for j in (m + 1)..xs.len() {
            let e_mj = space.dist(ys[m], ys[j]);
            let slack = k * d[j];
            bounds.push(both(Family::Ie1, Some(j + 1), e_mj - &slack, e_mj + &slack));
        }
        for (l, prev) in solves.iter().enumerate() {
            let e_ml = space.dist(ys[m], ys[l]);
            bounds.push(both(
                Family::Ie2,
                Some(l + 1),
                (e_ml - &prev.value).abs(),
                e_ml + &prev.value,
            ));
        }
        bounds.push(both(Family::Ie3, None, d[m] / k, k * d[m]));
        bounds.push(both(Family::Ie4, None, s[m] - &by_x, s[m] + &by_x));
        if m == 0 {
            // s_1 - (r - e_1)/N ≤ e_1 ≤ s_1 + (r - e_1)/N, solved for e_1
            bounds.push(both(
                Family::Ie5,
                None,
                (n_param * s[0] - r) / (n_param - &one),
                (n_param * s[0] + r) / (n_param + &one),
            ));
            for i in 1..xs.len() {
                bounds.push(Bound {
                    family: Family::Ie6,
                    other: Some(i + 1),
                    lower: None,
                    upper: Some(n_param * (s[i] - d[i] / k) + r),
                });
                bounds.push(Bound {
                    family: Family::Ie7,
                    other: Some(i + 1),
                    lower: None,
                    upper: Some(n_param * (k * d[i] - s[i]) + r),
                });
            }
        } else {
            let by_y = (r - &solves[0].value) / n_param;
            bounds.push(both(Family::Ie5, None, s[m] - &by_y, s[m] + &by_y));
        }

        let lo = bounds
            .iter()
            .filter(|b| b.lower.is_some())
            .max_by(|a, b| a.lower.cmp(&b.lower))
            .expect("IE3 present");
        let hi = bounds
            .iter()
            .filter(|b| b.upper.is_some())
            .min_by(|a, b| a.upper.cmp(&b.upper))
            .expect("IE3 present");
        let interval = Interval::new(
            lo.lower.clone().expect("filtered"),
            hi.upper.clone().expect("filtered"),
        );
        if interval.is_empty() {
            return Err(Error::Infeasible {
                context: format!("distance e_{} to {}", m + 1, space.label(ys[m])),
                lower: Box::new(interval.lo),
                lower_source: lo.source(),
                upper: Box::new(interval.hi),
                upper_source: hi.source(),
            });
        }
        let value = choice.pick(&interval.lo, &interval.hi);
        solves.push(DistanceSolve {
            m: m + 1,
            source: xs[m],
            target: ys[m],
            bounds,
            interval,
            value,
        });
    }
    Ok(solves)
}

/// Full record of a back-and-forth run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionTrace {
    pub ball: Ball,
    pub kn: KnParams,
    pub initial: PartialMap,
    pub steps: Vec<ExtensionStep>,
    pub final_map: PartialMap,
}

impl ExtensionTrace {
    /// The map after each step, starting with the initial map.
    pub fn intermediate_maps(&self) -> Vec<PartialMap> {
        let mut maps = vec![self.initial.clone()];
        let mut current = self.initial.clone();
        for step in &self.steps {
            let (p, q) = step.pair();
            current.insert(p, q).expect("trace pairs are fresh");
            maps.push(current.clone());
        }
        maps
    }
}

/// Result of [`extend_dense`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseExtension {
    pub space: FiniteMetricSpace,
    pub map: PartialMap,
    pub trace: ExtensionTrace,
}

/// Back-and-forth: each target is added to the domain, then to the range.
pub fn extend_dense(
    space: &FiniteMetricSpace,
    f: &PartialMap,
    ball: &Ball,
    kn: &KnParams,
    targets: &[usize],
    choice: Choice,
) -> Result<DenseExtension> {
    kn.require_admissible()?;
    for &t in targets {
        ball.require_inside(space, t, "target")?;
    }
    let mut space = space.clone();
    let mut map = f.clone();
    let mut steps = Vec::new();
    for &t in targets {
        for side in [Side::Domain, Side::Range] {
            let ext = extend_one_point(&space, &map, ball, kn, t, side, choice)?;
            space = ext.space;
            map = ext.map;
            steps.extend(ext.step);
        }
    }
    Ok(DenseExtension {
        trace: ExtensionTrace {
            ball: ball.clone(),
            kn: kn.clone(),
            initial: f.clone(),
            steps,
            final_map: map.clone(),
        },
        space,
        map,
    })
}

/// Outcome of [`glue_identity_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueReport {
    pub holds: bool,
    /// Number of workspace points outside the ball (where the glued map is the identity).
    pub outside_points: usize,
    /// Bilipschitz constant of the glued map.
    pub lip: Rational,
    pub witness: Option<(usize, usize)>,
    /// Whether the input map itself was compliant.
    pub compliant: bool,
}

impl GlueReport {
    /// True when there were no outside points, so the check says nothing new.
    pub fn vacuous(&self) -> bool {
        self.outside_points == 0
    }
}

/// Checks that `f ∪ id` (identity on every workspace point outside the ball) is
/// `K`-bilipschitz, over all pairs.
pub fn glue_identity_check(
    space: &FiniteMetricSpace,
    f: &PartialMap,
    ball: &Ball,
    kn: &KnParams,
) -> Result<GlueReport> {
    let one = Rational::one();
    if &one + &one / &kn.n > kn.k {
        return Err(Error::pre(format!(
            "gluing needs 1 + 1/N ≤ K, got K = {}, N = {}",
            kn.k, kn.n
        )));
    }
    let compliant = is_compliant(f, ball, kn, space)?.compliant;
    let outside: Vec<usize> = (0..space.len())
        .filter(|&w| !ball.contains(space, w))
        .collect();
    let mut glued = f.clone();
    for &w in &outside {
        glued.insert(w, w)?;
    }
    let report = lip_report(&glued, space)?;
    Ok(GlueReport {
        holds: report.constant <= kn.k,
        outside_points: outside.len(),
        lip: report.constant,
        witness: report.witness,
        compliant,
    })
}

/// `(K, N) = (2, 4)`, the smallest admissible `N` for `K = 2`.
pub fn default_kn() -> KnParams {
    kn_admissible(&int(2), &int(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    /// Center `c` and a point `x` at distance 1, ball radius 10.
    fn worked() -> (FiniteMetricSpace, PartialMap, Ball) {
        let space =
            FiniteMetricSpace::from_fn(vec!["c".into(), "x".into()], |_, _| int(1)).unwrap();
        let f = PartialMap::from_pairs([(0, 0)]).unwrap();
        (space, f, Ball::new(0, int(10)).unwrap())
    }

    #[test]
    fn admissibility_examples() {
        assert!(kn_admissible(&int(2), &int(4)).admissible);
        assert!(!kn_admissible(&ratio(3, 2), &int(4)).admissible);
        assert!(!kn_admissible(&int(1), &int(100)).admissible);
        assert!(kn_admissible(&int(2), &int(4)).reciprocal_ok);
    }

    #[test]
    fn worked_instance() {
        let (space, f, ball) = worked();
        let ext = extend_one_point(
            &space,
            &f,
            &ball,
            &default_kn(),
            1,
            Side::Domain,
            Choice::Midpoint,
        )
        .unwrap();
        let step = ext.step.unwrap();
        let solve = &step.solves[0];
        assert_eq!(solve.interval, Interval::new(ratio(1, 2), int(2)));
        assert_eq!(
            solve.family_interval(Family::Ie3),
            (Some(ratio(1, 2)), Some(int(2)))
        );
        assert_eq!(
            solve.family_interval(Family::Ie4),
            (Some(ratio(-5, 4)), Some(ratio(13, 4)))
        );
        assert_eq!(
            solve.family_interval(Family::Ie5),
            (Some(int(-2)), Some(ratio(14, 5)))
        );
        assert_eq!(step.e1(), &ratio(5, 4));
        assert_eq!(step.s, ratio(35, 16));
        assert_eq!(ext.space.dist(1, step.realized), &ratio(35, 16));
        assert!(ext.space.is_metric());
    }

    #[test]
    fn existing_point_is_noop() {
        let (space, f, ball) = worked();
        let ext = extend_one_point(
            &space,
            &f,
            &ball,
            &default_kn(),
            0,
            Side::Domain,
            Choice::Midpoint,
        )
        .unwrap();
        assert!(ext.step.is_none());
        assert_eq!(ext.map, f);
    }

    #[test]
    fn non_good_input_rejected() {
        // c -> c, p -> x triples the distance from the center
        let space = FiniteMetricSpace::from_fn(
            vec!["c".into(), "p".into(), "q".into(), "x".into()],
            |i, j| {
                let pos = [int(0), int(1), int(2), int(3)];
                (&pos[i] - &pos[j]).abs()
            },
        )
        .unwrap();
        let ball = Ball::new(0, int(10)).unwrap();
        let kn = default_kn();
        let far = PartialMap::from_pairs([(0, 0), (1, 3)]).unwrap();
        let err = extend_one_point(&space, &far, &ball, &kn, 2, Side::Domain, Choice::Midpoint)
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn outside_point_rejected() {
        let (space, f, _) = worked();
        let ball = Ball::new(0, int(1)).unwrap();
        let err = extend_one_point(
            &space,
            &f,
            &ball,
            &default_kn(),
            1,
            Side::Domain,
            Choice::Midpoint,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn range_side_inverts() {
        let (space, f, ball) = worked();
        let ext = extend_one_point(
            &space,
            &f,
            &ball,
            &default_kn(),
            1,
            Side::Range,
            Choice::Midpoint,
        )
        .unwrap();
        let step = ext.step.unwrap();
        assert_eq!(ext.map.apply(step.realized), Some(1));
        assert_eq!(step.s, ratio(35, 16));
    }

    #[test]
    fn dense_back_and_forth() {
        let (space, f, ball) = worked();
        let out = extend_dense(&space, &f, &ball, &default_kn(), &[1], Choice::Midpoint).unwrap();
        assert_eq!(out.trace.steps.len(), 2);
        assert!(out.map.in_domain(1) && out.map.in_range(1));
        for m in out.trace.intermediate_maps() {
            assert!(
                is_compliant(&m, &ball, &default_kn(), &out.space)
                    .unwrap()
                    .compliant
            );
        }
        let empty = extend_dense(&space, &f, &ball, &default_kn(), &[], Choice::Midpoint).unwrap();
        assert_eq!(empty.map, f);
    }

    #[test]
    fn glue_with_identity_map() {
        let space =
            FiniteMetricSpace::from_fn(vec!["c".into(), "a".into(), "out".into()], |i, j| {
                let pos = [int(0), int(1), int(20)];
                (&pos[i] - &pos[j]).abs()
            })
            .unwrap();
        let f = PartialMap::identity(&[0, 1]);
        let ball = Ball::new(0, int(10)).unwrap();
        let report = glue_identity_check(&space, &f, &ball, &default_kn()).unwrap();
        assert!(report.holds);
        assert_eq!(report.outside_points, 1);
        assert_eq!(report.lip, int(1));
    }

    #[test]
    fn glue_detects_non_good_map() {
        // a at 9 is sent to b at -9 (through the center); the outside point at 11 is
        // much closer to a than to b.
        let pos = [int(0), int(9), int(-9), int(11)];
        let space = FiniteMetricSpace::from_fn(
            vec!["c".into(), "a".into(), "b".into(), "w".into()],
            |i, j| (&pos[i] - &pos[j]).abs(),
        )
        .unwrap();
        let f = PartialMap::from_pairs([(0, 0), (1, 2), (2, 1)]).unwrap();
        let ball = Ball::new(0, int(10)).unwrap();
        let report = glue_identity_check(&space, &f, &ball, &default_kn()).unwrap();
        assert!(!report.compliant);
        assert!(!report.holds);
        let (a, b) = report.witness.unwrap();
        assert!(a == 3 || b == 3, "mixed pair expected");
    }
}
