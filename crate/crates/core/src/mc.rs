//! Extension of maps controlled by moduli of continuity.
//!
//! A bijection `f` is `(β, α)`-bicontinuous when
//! `α⁻¹(d(x, x')) ≤ d(f(x), f(x')) ≤ β(d(x, x'))` for all `x, x'` in its domain.
//! All maps here live in one workspace; the domain and range are subsets of it.

use std::fmt;

use num::{One, Signed, Zero};

use crate::amalgam::{katetov_extend, realize_point};
use crate::error::{Error, Result};
use crate::format::NetLevel;
use crate::map::PartialMap;
use crate::modulus::{forward_condition_on_box, modulus_precedes, McSemigroup, Modulus};
use crate::rational::{ensure_positive, pow2, Rational};
use crate::space::FiniteMetricSpace;

/// Which inequality of bicontinuity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiSide {
    /// `d(f(a), f(b)) > β(d(a, b))`.
    Upper,
    /// `d(f(a), f(b)) < α⁻¹(d(a, b))`.
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiWitness {
    pub side: BiSide,
    pub a: usize,
    pub b: usize,
    pub distance: Rational,
    pub image_distance: Rational,
    /// `β(d)` or `α⁻¹(d)`.
    pub bound: Rational,
}

impl BiWitness {
    pub fn describe(&self, space: &FiniteMetricSpace) -> String {
        let (op, name) = match self.side {
            BiSide::Upper => (">", "β"),
            BiSide::Lower => ("<", "α⁻¹"),
        };
        format!(
            "pair ({}, {}): d(f a, f b) = {} {op} {name}({}) = {}",
            space.label(self.a),
            space.label(self.b),
            self.image_distance,
            self.distance,
            self.bound
        )
    }
}

/// Exhaustive check of `(β, α)`-bicontinuity over all pairs of the domain.
pub fn bicontinuity_check(
    f: &PartialMap,
    alpha: &Modulus,
    beta: &Modulus,
    space: &FiniteMetricSpace,
) -> Option<BiWitness> {
    let inv = alpha.inverse();
    let pairs: Vec<_> = f.pairs().collect();
    for (i, &(a, fa)) in pairs.iter().enumerate() {
        for &(b, fb) in &pairs[i + 1..] {
            let d = space.dist(a, b);
            let e = space.dist(fa, fb);
            let upper = beta.eval(d);
            if e > &upper {
                return Some(BiWitness {
                    side: BiSide::Upper,
                    a,
                    b,
                    distance: d.clone(),
                    image_distance: e.clone(),
                    bound: upper,
                });
            }
            let lower = inv.eval(d);
            if e < &lower {
                return Some(BiWitness {
                    side: BiSide::Lower,
                    a,
                    b,
                    distance: d.clone(),
                    image_distance: e.clone(),
                    bound: lower,
                });
            }
        }
    }
    None
}

fn require_bicontinuous(
    f: &PartialMap,
    alpha: &Modulus,
    beta: &Modulus,
    space: &FiniteMetricSpace,
) -> Result<()> {
    match bicontinuity_check(f, alpha, beta, space) {
        None => Ok(()),
        Some(w) => Err(Error::pre(format!(
            "map is not (β, α)-bicontinuous: {}",
            w.describe(space)
        ))),
    }
}

/// Checks `α⁻¹(s) + β(t) ≥ α⁻¹(s+t)` on `[0, 2·diam]²`.
fn require_forward_condition(
    alpha: &Modulus,
    beta: &Modulus,
    space: &FiniteMetricSpace,
) -> Result<()> {
    let bound = space.diameter() * Rational::from_integer(2.into());
    match forward_condition_on_box(alpha, beta, &bound) {
        None => Ok(()),
        Some(w) => Err(Error::pre(format!(
            "α⁻¹(s) + β(t) ≥ α⁻¹(s+t) fails at (s, t) = ({}, {}): {} < {}; \
             then no extension exists for a two-point map with d(x0, x1) = s and a new \
             point at distances t and s+t",
            w.s, w.t, w.lhs, w.rhs
        ))),
    }
}

/// Distances `min_z d(f(z), y) + β(d(z, p))` from a new point to each `y` in `targets`.
fn star_star_distances(
    f: &PartialMap,
    beta: &Modulus,
    p: usize,
    targets: &[usize],
    space: &FiniteMetricSpace,
) -> Vec<(usize, Rational)> {
    targets
        .iter()
        .map(|&y| {
            let v = f
                .pairs()
                .map(|(z, fz)| space.dist(fz, y) + beta.eval(space.dist(z, p)))
                .min()
                .expect("nonempty map");
            (y, v)
        })
        .collect()
}

/// Result of [`extend_one_point_mc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McExtension {
    pub space: FiniteMetricSpace,
    pub map: PartialMap,
    pub q: usize,
    /// `d(q, y)` for every `y` in the range of the input map.
    pub distances: Vec<(usize, Rational)>,
}

/// Adds `p` to the domain of a `(β, α)`-bicontinuous map.
///
/// The image `q` gets distance `min_z d(f(z), y) + β(d(z, p))` to every `y` in the
/// range; the rest of the workspace follows by the shortest-path extension.
pub fn extend_one_point_mc(
    space: &FiniteMetricSpace,
    f: &PartialMap,
    alpha: &Modulus,
    beta: &Modulus,
    p: usize,
) -> Result<McExtension> {
    if f.is_empty() {
        return Err(Error::pre("the map must be nonempty"));
    }
    if f.in_domain(p) {
        return Err(Error::pre(format!(
            "{} is already in the domain",
            space.label(p)
        )));
    }
    require_bicontinuous(f, alpha, beta, space)?;
    require_forward_condition(alpha, beta, space)?;
    let distances = star_star_distances(f, beta, p, f.images(), space);
    let g = katetov_extend(space, &distances)
        .map_err(|e| Error::Invariant(format!("realizing the new image: {e}")))?;
    let (space, q) = realize_point(space, &g, &space.fresh_label("q"))?;
    let mut map = f.clone();
    map.insert(p, q)?;
    if let Some(w) = bicontinuity_check(&map, alpha, beta, &space) {
        return Err(Error::Invariant(format!(
            "extension is not bicontinuous: {}",
            w.describe(&space)
        )));
    }
    Ok(McExtension {
        space,
        map,
        q,
        distances,
    })
}

/// The three-point obstruction showing that the forward condition is necessary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// `x0, x1, p` with `d(x0, x1) = s`, `d(p, x0) = t`, `d(p, x1) = s + t`.
    pub domain: FiniteMetricSpace,
    /// `y0, y1` with `d(y0, y1) = α⁻¹(s)`.
    pub range: FiniteMetricSpace,
    pub s: Rational,
    pub t: Rational,
    /// `α⁻¹(s + t)`: lower bound forced on `d(q, y1)`.
    pub lower: Rational,
    /// `β(t)`: upper bound forced on `d(q, y0)`.
    pub upper: Rational,
    /// `α⁻¹(s) = d(y0, y1)`.
    pub gap: Rational,
    /// Whether `x_i ↦ y_i` is itself `(β, α)`-bicontinuous, i.e. `α⁻¹(s) ≤ β(s)`.
    pub map_bicontinuous: bool,
}

impl Counterexample {
    /// `α⁻¹(s+t) ≤ β(t) + α⁻¹(s)`, which any extension would force; always false.
    pub fn certificate_holds(&self) -> bool {
        self.lower <= &self.upper + &self.gap
    }

    pub fn certificate(&self) -> String {
        format!(
            "{} ≤ {} + {} is {}",
            self.lower,
            self.upper,
            self.gap,
            self.certificate_holds()
        )
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s = {}, t = {}", self.s, self.t)?;
        writeln!(f, "d(q, y1) ≥ α⁻¹(s+t) = {}", self.lower)?;
        writeln!(f, "d(q, y0) ≤ β(t) = {}", self.upper)?;
        writeln!(f, "d(y0, y1) = α⁻¹(s) = {}", self.gap)?;
        writeln!(f, "map bicontinuous: {}", self.map_bicontinuous)?;
        write!(f, "certificate: {}", self.certificate())
    }
}

pub fn necessity_counterexample(
    alpha: &Modulus,
    beta: &Modulus,
    s: &Rational,
    t: &Rational,
) -> Result<Counterexample> {
    ensure_positive(s, "s")?;
    ensure_positive(t, "t")?;
    let inv = alpha.inverse();
    let gap = inv.eval(s);
    let upper = beta.eval(t);
    let lower = inv.eval(&(s + t));
    if lower <= &upper + &gap {
        return Err(Error::pre(format!(
            "α⁻¹(s) + β(t) ≥ α⁻¹(s+t) holds at ({s}, {t}): {} ≥ {lower}",
            &upper + &gap
        )));
    }
    let d = [
        [Rational::zero(), s.clone(), t.clone()],
        [s.clone(), Rational::zero(), s + t],
        [t.clone(), s + t, Rational::zero()],
    ];
    let domain = FiniteMetricSpace::from_fn(vec!["x0".into(), "x1".into(), "p".into()], |i, j| {
        d[i][j].clone()
    })?;
    let range = FiniteMetricSpace::from_fn(vec!["y0".into(), "y1".into()], |_, _| gap.clone())?;
    Ok(Counterexample {
        domain,
        range,
        s: s.clone(),
        t: t.clone(),
        map_bicontinuous: gap <= beta.eval(s),
        lower,
        upper,
        gap,
    })
}

/// Trace of [`extend_totally_bounded`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyBoundedTrace {
    pub space: FiniteMetricSpace,
    /// `q_0, q_1, …`, one per net level.
    pub points: Vec<usize>,
    /// `d(q_n, q_{n+1})`.
    pub gaps: Vec<Rational>,
    /// `f` restricted to the deepest net, plus `p ↦ q_last`.
    pub final_map: PartialMap,
}

impl TotallyBoundedTrace {
    pub fn last(&self) -> usize {
        *self.points.last().expect("at least one level")
    }
}

fn check_nets(
    f: &PartialMap,
    beta: &Modulus,
    nets: &[NetLevel],
    space: &FiniteMetricSpace,
) -> Result<()> {
    if nets.is_empty() {
        return Err(Error::pre("at least one net level is required"));
    }
    let mut prev: Option<&NetLevel> = None;
    for (n, level) in nets.iter().enumerate() {
        if !level.eps.is_positive() {
            return Err(Error::pre(format!(
                "net {n}: radius {} must be positive",
                level.eps
            )));
        }
        if level.points.is_empty() {
            return Err(Error::pre(format!("net {n} is empty")));
        }
        let cap = pow2(-(n as i64));
        if beta.eval(&level.eps) > cap {
            return Err(Error::pre(format!(
                "net {n}: β({}) = {} exceeds 2^-{n}",
                level.eps,
                beta.eval(&level.eps)
            )));
        }
        for &z in &level.points {
            if !f.in_domain(z) {
                return Err(Error::pre(format!(
                    "net {n}: {} is not in the domain",
                    space.label(z)
                )));
            }
        }
        if let Some(prev) = prev {
            if level.eps >= prev.eps {
                return Err(Error::pre(format!("net {n}: radii must strictly decrease")));
            }
            if let Some(&z) = prev.points.iter().find(|z| !level.points.contains(z)) {
                return Err(Error::pre(format!(
                    "net {n} does not contain {} from net {}",
                    space.label(z),
                    n - 1
                )));
            }
        }
        for &x in f.domain() {
            if !level.points.iter().any(|&z| space.dist(x, z) < &level.eps) {
                return Err(Error::pre(format!(
                    "net {n}: {} is not within {} of the net",
                    space.label(x),
                    level.eps
                )));
            }
        }
        prev = Some(level);
    }
    Ok(())
}

/// Adds `p` to the domain using only nested nets of the domain.
///
/// `q_0` comes from the one-point extension of `f` restricted to the first net.
/// Each later `q_{n+1}` is placed by the minimal amalgamation of the one-point
/// extension over the next net with `q_n`, and `d(q_n, q_{n+1}) < 2^{-n+1}` is
/// asserted.
pub fn extend_totally_bounded(
    space: &FiniteMetricSpace,
    f: &PartialMap,
    alpha: &Modulus,
    beta: &Modulus,
    p: usize,
    nets: &[NetLevel],
) -> Result<TotallyBoundedTrace> {
    if f.in_domain(p) {
        return Err(Error::pre(format!(
            "{} is already in the domain",
            space.label(p)
        )));
    }
    require_bicontinuous(f, alpha, beta, space)?;
    require_forward_condition(alpha, beta, space)?;
    check_nets(f, beta, nets, space)?;

    let first = f.restrict(&nets[0].points);
    let start = extend_one_point_mc(space, &first, alpha, beta, p)?;
    let mut space = start.space;
    let mut points = vec![start.q];
    let mut gaps = Vec::new();
    let mut restricted = first;

    for (n, level) in nets.iter().enumerate().skip(1) {
        let q_prev = *points.last().expect("nonempty");
        restricted = f.restrict(&level.points);
        let values = star_star_distances(&restricted, beta, p, restricted.images(), &space);
        let gap = values
            .iter()
            .map(|(y, v)| (v - space.dist(*y, q_prev)).abs())
            .max()
            .expect("nonempty net");
        let limit = pow2(-(n as i64 - 1) + 1);
        if gap >= limit {
            return Err(Error::Invariant(format!(
                "d(q_{}, q_{n}) = {gap} is not below 2^{}",
                n - 1,
                -(n as i64 - 1) + 1
            )));
        }
        let mut data = values;
        data.push((q_prev, gap.clone()));
        let g = katetov_extend(&space, &data)
            .map_err(|e| Error::Invariant(format!("amalgamating q_{n}: {e}")))?;
        let label = space.fresh_label("q");
        let (next_space, q) = realize_point(&space, &g, &label)?;
        space = next_space;
        let mut step_map = restricted.clone();
        step_map.insert(p, q)?;
        if let Some(w) = bicontinuity_check(&step_map, alpha, beta, &space) {
            return Err(Error::Invariant(format!(
                "level {n} map is not bicontinuous: {}",
                w.describe(&space)
            )));
        }
        points.push(q);
        gaps.push(gap);
    }
    let mut final_map = restricted;
    final_map.insert(p, *points.last().expect("nonempty"))?;
    Ok(TotallyBoundedTrace {
        space,
        points,
        gaps,
        final_map,
    })
}

/// Greedy nested nets: level `n` keeps all earlier points and adds, in order,
/// every domain point not yet within `eps[n]` of the level.
pub fn nested_nets(space: &FiniteMetricSpace, domain: &[usize], eps: &[Rational]) -> Vec<NetLevel> {
    let mut current: Vec<usize> = Vec::new();
    eps.iter()
        .map(|e| {
            for &x in domain {
                if !current.iter().any(|&z| space.dist(x, z) < e) {
                    current.push(x);
                }
            }
            NetLevel {
                eps: e.clone(),
                points: current.clone(),
            }
        })
        .collect()
}

/// Scales chosen for one generator `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorScales {
    pub generator: usize,
    /// Each `(t, γ(t), δ(t))` with `γ(t) > δ(t)`.
    pub scales: Vec<(Rational, Rational, Rational)>,
}

/// Output of [`separation_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    /// A star around `x`: `d(x_j, x) = t_j`, `d(y_j, x) = γ(t_j)`, all other
    /// distances add up through `x`.
    pub space: FiniteMetricSpace,
    pub center: usize,
    /// `x ↦ x` and `x_j ↦ y_j`.
    pub map: PartialMap,
    pub per_generator: Vec<GeneratorScales>,
    /// `None` when the map is `(2γ, 2γ)`-bicontinuous on all pairs.
    pub bicontinuity_failure: Option<BiWitness>,
}

impl SeparationWitness {
    /// Both parts of the certificate hold.
    pub fn holds(&self) -> bool {
        self.bicontinuity_failure.is_none()
            && self
                .per_generator
                .iter()
                .all(|g| g.scales.iter().all(|(_, gt, dt)| gt > dt))
    }
}

const MAX_HALVINGS: usize = 4096;

fn scales_for(gamma: &Modulus, delta: &Modulus, depth: usize) -> Result<Vec<Rational>> {
    let mut candidates: Vec<Rational> = gamma
        .as_pl()
        .breakpoints()
        .iter()
        .map(|(t, _)| t.clone())
        .filter(|t| t > &Rational::zero())
        .collect();
    candidates.reverse();
    let mut chosen = Vec::new();
    for t in &candidates {
        if chosen.len() == depth {
            return Ok(chosen);
        }
        if gamma.eval(t) > delta.eval(t) {
            chosen.push(t.clone());
        }
    }
    let mut t = candidates.last().cloned().unwrap_or_else(Rational::one);
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..MAX_HALVINGS {
        if chosen.len() == depth {
            return Ok(chosen);
        }
        t = &t * &half;
        if gamma.eval(&t) > delta.eval(&t) {
            chosen.push(t.clone());
        }
    }
    Err(Error::Invariant("no separating scale found".into()))
}

/// Builds a finite map that is `(2γ, 2γ)`-bicontinuous yet, for every generator
/// `δ_i`, fails `δ_i`-continuity at `x` at `depth` distinct scales.
pub fn separation_witness(
    gamma: &Modulus,
    delta: &McSemigroup,
    depth: usize,
) -> Result<SeparationWitness> {
    if let Some(i) = delta.dominated_by_generator(gamma) {
        return Err(Error::pre(format!(
            "γ is dominated near 0 by generator {i} ({})",
            delta.generators()[i]
        )));
    }
    let mut per_generator = Vec::new();
    let mut all: Vec<Rational> = Vec::new();
    for (i, d) in delta.generators().iter().enumerate() {
        let ts = scales_for(gamma, d, depth)?;
        all.extend(ts.iter().cloned());
        per_generator.push(GeneratorScales {
            generator: i,
            scales: ts
                .into_iter()
                .map(|t| {
                    let (g, v) = (gamma.eval(&t), d.eval(&t));
                    (t, g, v)
                })
                .collect(),
        });
    }
    all.sort_by(|a, b| b.cmp(a));
    all.dedup();

    // point 0 is x, then x_j at 2j+1 and y_j at 2j+2
    let radius: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(all.iter().flat_map(|t| [t.clone(), gamma.eval(t)]))
        .collect();
    let mut labels = vec!["x".to_string()];
    for j in 0..all.len() {
        labels.push(format!("x{j}"));
        labels.push(format!("y{j}"));
    }
    let space = FiniteMetricSpace::from_fn(labels, |a, b| &radius[a] + &radius[b])?;
    let map = PartialMap::from_pairs(
        std::iter::once((0, 0)).chain((0..all.len()).map(|j| (2 * j + 1, 2 * j + 2))),
    )?;
    let two_gamma = gamma.scale(&Rational::from_integer(2.into()))?;
    let bicontinuity_failure = bicontinuity_check(&map, &two_gamma, &two_gamma, &space);
    Ok(SeparationWitness {
        space,
        center: 0,
        map,
        per_generator,
        bicontinuity_failure,
    })
}

/// Whether `gamma` fails to be dominated near 0 by any generator.
pub fn not_dominated(gamma: &Modulus, delta: &McSemigroup) -> bool {
    delta
        .generators()
        .iter()
        .all(|d| !modulus_precedes(gamma, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn kinked() -> Modulus {
        Modulus::from_breakpoints(vec![(int(0), int(0)), (int(1), int(1))], ratio(1, 2)).unwrap()
    }

    fn id() -> Modulus {
        Modulus::linear(int(1)).unwrap()
    }

    /// `x0` and `p` in one copy, `y0` far away.
    fn single(dp: Rational) -> (FiniteMetricSpace, PartialMap) {
        let pos = [int(0), dp, int(100)];
        let s = FiniteMetricSpace::from_fn(vec!["x0".into(), "p".into(), "y0".into()], |i, j| {
            (&pos[i] - &pos[j]).abs()
        })
        .unwrap();
        (s, PartialMap::from_pairs([(0, 2)]).unwrap())
    }

    #[test]
    fn single_term_minimum() {
        let (s, f) = single(int(1));
        let two = Modulus::doubling();
        let ext = extend_one_point_mc(&s, &f, &two, &two, 1).unwrap();
        assert_eq!(ext.space.dist(ext.q, 2), &int(2));
        assert_eq!(ext.map.apply(1), Some(ext.q));
    }

    #[test]
    fn isometry_reduces_to_shortest_path() {
        // x0, x1 at distance 2; their copies y0, y1; p at 1 from x0, 3 from x1.
        let pos = [int(0), int(2), int(-1), int(50), int(52)];
        let s = FiniteMetricSpace::from_fn(
            ["x0", "x1", "p", "y0", "y1"]
                .iter()
                .map(|l| l.to_string())
                .collect(),
            |i, j| (&pos[i] - &pos[j]).abs(),
        )
        .unwrap();
        let f = PartialMap::from_pairs([(0, 3), (1, 4)]).unwrap();
        let ext = extend_one_point_mc(&s, &f, &id(), &id(), 2).unwrap();
        assert_eq!(ext.space.dist(ext.q, 3), &int(1));
        assert_eq!(ext.space.dist(ext.q, 4), &int(3));
        assert!(ext.space.is_metric());
    }

    #[test]
    fn incompatible_pair_rejected() {
        let (s, f) = single(int(1));
        let err = extend_one_point_mc(&s, &f, &kinked(), &id(), 1).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn counterexample_at_one_one() {
        let c = necessity_counterexample(&kinked(), &id(), &int(1), &int(1)).unwrap();
        assert_eq!(
            (c.lower.clone(), c.upper.clone(), c.gap.clone()),
            (int(3), int(1), int(1))
        );
        assert!(!c.certificate_holds());
        assert_eq!(c.certificate(), "3 ≤ 1 + 1 is false");
        assert!(c.map_bicontinuous);
        assert!(c.domain.is_metric());
    }

    #[test]
    fn counterexample_scaled() {
        let c = necessity_counterexample(&kinked(), &id(), &int(2), &int(2)).unwrap();
        assert_eq!(
            (c.lower.clone(), c.upper.clone(), c.gap.clone()),
            (int(7), int(2), int(3))
        );
        assert!(!c.certificate_holds());
        assert!(!c.map_bicontinuous);
    }

    #[test]
    fn counterexample_needs_failure() {
        assert!(necessity_counterexample(&id(), &id(), &int(1), &int(1)).is_err());
    }

    #[test]
    fn single_net_is_one_step() {
        let (s, f) = single(int(1));
        let two = Modulus::doubling();
        let nets = [NetLevel {
            eps: ratio(1, 2),
            points: vec![0],
        }];
        let tr = extend_totally_bounded(&s, &f, &two, &two, 1, &nets).unwrap();
        assert_eq!(tr.points.len(), 1);
        assert!(tr.gaps.is_empty());
        assert_eq!(tr.space.dist(tr.last(), 2), &int(2));
    }

    #[test]
    fn bad_net_names_point() {
        let pos = [int(0), int(1), int(5), int(100), int(101)];
        let s = FiniteMetricSpace::from_fn(
            ["x0", "x1", "p", "y0", "y1"]
                .iter()
                .map(|l| l.to_string())
                .collect(),
            |i, j| (&pos[i] - &pos[j]).abs(),
        )
        .unwrap();
        let f = PartialMap::from_pairs([(0, 3), (1, 4)]).unwrap();
        let nets = [NetLevel {
            eps: ratio(1, 4),
            points: vec![0],
        }];
        let two = Modulus::doubling();
        match extend_totally_bounded(&s, &f, &two, &two, 2, &nets) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("x1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn witness_scales() {
        let gamma = Modulus::holder_interpolant(2, 6).unwrap();
        let delta = McSemigroup::lipschitz(3).unwrap();
        let w = separation_witness(&gamma, &delta, 2).unwrap();
        let three = &w.per_generator[2];
        assert_eq!(three.scales[0], (ratio(1, 16), ratio(1, 4), ratio(3, 16)));
        assert!(w.holds());
        assert!(w.space.is_metric());
    }

    #[test]
    fn witness_edge_cases() {
        let gamma = Modulus::holder_interpolant(2, 6).unwrap();
        let delta = McSemigroup::lipschitz(3).unwrap();
        let empty = separation_witness(&gamma, &delta, 0).unwrap();
        assert_eq!(empty.map.len(), 1);
        assert!(empty.holds());
        let with_gamma = McSemigroup::new(vec![Modulus::doubling(), gamma.clone()]).unwrap();
        assert!(matches!(
            separation_witness(&gamma, &with_gamma, 1),
            Err(Error::Precondition(_))
        ));
    }
}
