//! Amalgamation of finite metric spaces and one-point realization of Katetov data.
//!
//! These are the operations that let a growing finite workspace stand in for the
//! universal space: any metrically consistent prescription of distances to a new
//! point can be realized by appending one row to the matrix.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Choice, Interval, Rational};
use crate::space::FiniteMetricSpace;

/// Feasible values `[ℓ, r]` for the distance between two points glued over a
/// common set `Z`: `ℓ = max_z |d₀(p₀,z) - d₁(z,p₁)|`, `r = min_z d₀(p₀,z) + d₁(z,p₁)`.
pub type AmalgamInterval = Interval;

/// Computes the one-point amalgamation interval from the two distance profiles to `Z`.
pub fn one_point_interval(d0: &[Rational], d1: &[Rational]) -> Result<AmalgamInterval> {
    if d0.is_empty() {
        return Err(Error::pre("amalgamation needs a nonempty common set"));
    }
    if d0.len() != d1.len() {
        return Err(Error::pre(format!(
            "distance profiles differ in length ({} vs {})",
            d0.len(),
            d1.len()
        )));
    }
    let lo = d0
        .iter()
        .zip(d1)
        .map(|(a, b)| (a - b).abs())
        .max()
        .expect("nonempty");
    let hi = d0
        .iter()
        .zip(d1)
        .map(|(a, b)| a + b)
        .min()
        .expect("nonempty");
    Ok(Interval::new(lo, hi))
}

/// How cross distances are chosen when amalgamating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmalgamPolicy {
    Choose(Choice),
    /// Prescribed values keyed by `(label in X0, label in X1)`.
    Explicit(BTreeMap<(String, String), Rational>),
}

impl AmalgamPolicy {
    pub fn minimal() -> Self {
        AmalgamPolicy::Choose(Choice::Minimal)
    }

    pub fn midpoint() -> Self {
        AmalgamPolicy::Choose(Choice::Midpoint)
    }
}

/// Result of [`amalgamate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgamation {
    pub space: FiniteMetricSpace,
    /// Index in `space` of every point of `X1`, in `X1` order.
    pub embedding: Vec<usize>,
}

/// Glues `x1` onto `x0` along their common labels.
///
/// The extra points of `x1` are added one at a time in label order. Each new point
/// is placed against the points of the growing space one at a time, each time
/// choosing a value in the one-point interval over the points already placed. A
/// choice of 0 identifies the new point with an existing one.
pub fn amalgamate(
    x0: &FiniteMetricSpace,
    x1: &FiniteMetricSpace,
    policy: &AmalgamPolicy,
) -> Result<Amalgamation> {
    let common: Vec<(usize, usize)> = x1
        .labels()
        .iter()
        .enumerate()
        .filter_map(|(j, l)| x0.index_of(l).map(|i| (i, j)))
        .collect();
    if common.is_empty() {
        return Err(Error::pre("spaces share no points"));
    }
    for &(i, j) in &common {
        for &(i2, j2) in &common {
            if x0.dist(i, i2) != x1.dist(j, j2) {
                return Err(Error::pre(format!(
                    "metrics disagree on ({}, {}): {} vs {}",
                    x0.label(i),
                    x0.label(i2),
                    x0.dist(i, i2),
                    x1.dist(j, j2)
                )));
            }
        }
    }

    let mut space = x0.clone();
    let mut embedding: Vec<Option<usize>> = vec![None; x1.len()];
    for &(i, j) in &common {
        embedding[j] = Some(i);
    }
    let mut extra: Vec<usize> = (0..x1.len()).filter(|&j| embedding[j].is_none()).collect();
    extra.sort_by(|&a, &b| x1.label(a).cmp(x1.label(b)));

    for p in extra {
        // distances from p to points of `space` that are already known
        let mut known: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, e) in embedding.iter().enumerate() {
            if let Some(i) = e {
                known.insert(*i, x1.dist(p, j).clone());
            }
        }
        let mut merged_into = None;
        for w in 0..space.len() {
            if known.contains_key(&w) {
                continue;
            }
            let (d0, d1): (Vec<_>, Vec<_>) = known
                .iter()
                .map(|(&z, dp)| (space.dist(w, z).clone(), dp.clone()))
                .unzip();
            let interval = one_point_interval(&d0, &d1)?;
            debug_assert!(!interval.is_empty());
            let value = match policy {
                AmalgamPolicy::Choose(choice) => choice.pick(&interval.lo, &interval.hi),
                AmalgamPolicy::Explicit(values) => {
                    let key = (space.label(w).to_string(), x1.label(p).to_string());
                    let v = values.get(&key).ok_or_else(|| {
                        Error::pre(format!("no explicit value for ({}, {})", key.0, key.1))
                    })?;
                    if !interval.contains(v) {
                        return Err(Error::Infeasible {
                            context: format!("explicit d({}, {}) = {v}", key.0, key.1),
                            lower: Box::new(interval.lo.clone()),
                            lower_source: "max |d0 - d1|".into(),
                            upper: Box::new(interval.hi.clone()),
                            upper_source: "min d0 + d1".into(),
                        });
                    }
                    v.clone()
                }
            };
            if value.is_zero() {
                merged_into = Some(w);
                break;
            }
            known.insert(w, value);
        }
        let index = match merged_into {
            Some(w) => w,
            None => {
                let dists = (0..space.len()).map(|w| known[&w].clone()).collect();
                let label = x1.label(p).to_string();
                space.push_point(label, dists);
                space.len() - 1
            }
        };
        embedding[p] = Some(index);
    }
    Ok(Amalgamation {
        space,
        embedding: embedding
            .into_iter()
            .map(|e| e.expect("every point placed"))
            .collect(),
    })
}

/// A function on all points of a workspace satisfying
/// `|g(a) - g(b)| ≤ d(a,b) ≤ g(a) + g(b)`: the distance profile of a realizable point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatetovFunction {
    values: Vec<Rational>,
}

impl KatetovFunction {
    /// Checks the Katetov inequalities over the whole space.
    pub fn new(space: &FiniteMetricSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Structural(format!(
                "Katetov function has {} values for {} points",
                values.len(),
                space.len()
            )));
        }
        let pairs: Vec<(usize, Rational)> = values.iter().cloned().enumerate().collect();
        check_katetov(space, &pairs)?;
        Ok(KatetovFunction { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, p: usize) -> &Rational {
        &self.values[p]
    }

    pub fn zero_at(&self) -> Option<usize> {
        self.values.iter().position(Zero::is_zero)
    }
}

fn check_katetov(space: &FiniteMetricSpace, data: &[(usize, Rational)]) -> Result<()> {
    for (k, (a, ga)) in data.iter().enumerate() {
        if ga.is_negative() {
            return Err(Error::pre(format!(
                "negative value {ga} at {}",
                space.label(*a)
            )));
        }
        for (b, gb) in &data[k + 1..] {
            let d = space.dist(*a, *b);
            if &(ga - gb).abs() > d || d > &(ga + gb) {
                return Err(Error::pre(format!(
                    "Katetov inequality fails at ({}, {}): g = ({ga}, {gb}), d = {d}",
                    space.label(*a),
                    space.label(*b)
                )));
            }
        }
    }
    Ok(())
}

/// Extends Katetov data on a subset to the whole space by the shortest-path formula
/// `ĝ(w) = min_a g(a) + d(a, w)`.
pub fn katetov_extend(
    space: &FiniteMetricSpace,
    data: &[(usize, Rational)],
) -> Result<KatetovFunction> {
    if data.is_empty() {
        return Err(Error::pre("Katetov data must be nonempty"));
    }
    let mut seen: BTreeMap<usize, &Rational> = BTreeMap::new();
    for (a, g) in data {
        if let Some(prev) = seen.insert(*a, g) {
            if prev != g {
                return Err(Error::pre(format!(
                    "conflicting values {prev} and {g} at {}",
                    space.label(*a)
                )));
            }
        }
    }
    let data: Vec<(usize, Rational)> = seen.into_iter().map(|(a, g)| (a, g.clone())).collect();
    check_katetov(space, &data)?;
    let values = (0..space.len())
        .map(|w| {
            data.iter()
                .map(|(a, g)| g + space.dist(*a, w))
                .min()
                .expect("nonempty")
        })
        .collect();
    Ok(KatetovFunction { values })
}

/// Realizes `g` as a point of the workspace.
///
/// If `g` vanishes at some `w₀`, that point already realizes it and the space is
/// returned unchanged. Otherwise a fresh point labeled `label` is appended.
pub fn realize_point(
    space: &FiniteMetricSpace,
    g: &KatetovFunction,
    label: &str,
) -> Result<(FiniteMetricSpace, usize)> {
    if g.values.len() != space.len() {
        return Err(Error::Structural(
            "Katetov function belongs to another space".into(),
        ));
    }
    if let Some(w0) = g.zero_at() {
        return Ok((space.clone(), w0));
    }
    if space.index_of(label).is_some() {
        return Err(Error::pre(format!("label {label:?} already in use")));
    }
    let mut out = space.clone();
    out.push_point(label.to_string(), g.values.clone());
    Ok((out, space.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn space(labels: &[&str], d: &[&[i64]]) -> FiniteMetricSpace {
        FiniteMetricSpace::from_fn(labels.iter().map(|s| s.to_string()).collect(), |i, j| {
            int(d[i][j])
        })
        .unwrap()
    }

    #[test]
    fn interval_single_point() {
        let i = one_point_interval(&[int(3)], &[int(1)]).unwrap();
        assert_eq!((i.lo, i.hi), (int(2), int(4)));
    }

    #[test]
    fn interval_two_points_degenerate() {
        let i = one_point_interval(&[int(1), int(5)], &[int(2), int(2)]).unwrap();
        assert_eq!((i.lo, i.hi), (int(3), int(3)));
    }

    #[test]
    fn interval_errors() {
        assert!(one_point_interval(&[], &[]).is_err());
        assert!(one_point_interval(&[int(1)], &[int(1), int(2)]).is_err());
    }

    #[test]
    fn subset_amalgamation_is_noop() {
        let x0 = space(&["a", "b", "c"], &[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        let x1 = x0.restrict(&[0, 2]);
        let out = amalgamate(&x0, &x1, &AmalgamPolicy::minimal()).unwrap();
        assert_eq!(out.space, x0);
        assert_eq!(out.embedding, vec![0, 2]);
    }

    #[test]
    fn midpoint_amalgamation() {
        let x0 = space(&["z", "p0"], &[&[0, 3], &[3, 0]]);
        let x1 = space(&["z", "p1"], &[&[0, 1], &[1, 0]]);
        let out = amalgamate(&x0, &x1, &AmalgamPolicy::midpoint()).unwrap();
        assert_eq!(out.space.len(), 3);
        assert_eq!(out.space.dist(1, 2), &int(3));
        assert!(out.space.is_metric());
    }

    #[test]
    fn minimal_amalgamation_identifies() {
        let x0 = space(&["z", "p0"], &[&[0, 1], &[1, 0]]);
        let x1 = space(&["z", "p1"], &[&[0, 1], &[1, 0]]);
        let out = amalgamate(&x0, &x1, &AmalgamPolicy::minimal()).unwrap();
        assert_eq!(out.space.len(), x0.len() + x1.len() - 1 - 1);
        assert_eq!(out.embedding, vec![0, 1]);
    }

    #[test]
    fn explicit_values_checked() {
        let x0 = space(&["z", "p0"], &[&[0, 3], &[3, 0]]);
        let x1 = space(&["z", "p1"], &[&[0, 1], &[1, 0]]);
        let mut values = BTreeMap::new();
        values.insert(("p0".to_string(), "p1".to_string()), int(5));
        let err = amalgamate(&x0, &x1, &AmalgamPolicy::Explicit(values.clone())).unwrap_err();
        assert!(matches!(err, Error::Infeasible { .. }));
        values.insert(("p0".to_string(), "p1".to_string()), ratio(5, 2));
        let out = amalgamate(&x0, &x1, &AmalgamPolicy::Explicit(values)).unwrap();
        assert_eq!(out.space.dist(1, 2), &ratio(5, 2));
    }

    #[test]
    fn disagreeing_metrics_rejected() {
        let x0 = space(&["a", "b"], &[&[0, 1], &[1, 0]]);
        let x1 = space(&["a", "b"], &[&[0, 2], &[2, 0]]);
        assert!(matches!(
            amalgamate(&x0, &x1, &AmalgamPolicy::minimal()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn katetov_extension_and_realization() {
        let w = space(&["a", "b"], &[&[0, 2], &[2, 0]]);
        let g = katetov_extend(&w, &[(0, int(1))]).unwrap();
        assert_eq!(g.values(), &[int(1), int(3)]);
        let (w2, q) = realize_point(&w, &g, "q").unwrap();
        assert_eq!(q, 2);
        assert_eq!(w2.dist(q, 0), &int(1));
        assert_eq!(w2.dist(q, 1), &int(3));
        assert!(w2.is_metric());
    }

    #[test]
    fn full_data_extends_to_itself() {
        let w = space(&["a", "b"], &[&[0, 2], &[2, 0]]);
        let g = katetov_extend(&w, &[(0, int(1)), (1, int(2))]).unwrap();
        assert_eq!(g.values(), &[int(1), int(2)]);
    }

    #[test]
    fn zero_value_returns_existing_point() {
        let w = space(&["a", "b", "c"], &[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        let g = KatetovFunction::new(&w, w.row(1).to_vec()).unwrap();
        let (w2, q) = realize_point(&w, &g, "q").unwrap();
        assert_eq!(q, 1);
        assert_eq!(w2, w);
    }

    #[test]
    fn two_zeros_are_invalid() {
        let w = space(&["a", "b"], &[&[0, 1], &[1, 0]]);
        assert!(KatetovFunction::new(&w, vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn violated_katetov_data_rejected() {
        let w = space(&["a", "b"], &[&[0, 5], &[5, 0]]);
        assert!(katetov_extend(&w, &[(0, int(1)), (1, int(1))]).is_err());
    }

    #[test]
    fn collinear_chain_stays_metric() {
        let mut w = FiniteMetricSpace::singleton("p0");
        let step = ratio(3, 2);
        for k in 1..8usize {
            let data = [(0, &step * int(k as i64)), (k - 1, step.clone())];
            let g = katetov_extend(&w, &data).unwrap();
            let label = format!("p{k}");
            let (next, _) = realize_point(&w, &g, &label).unwrap();
            w = next;
            assert!(w.is_metric());
            assert_eq!(w.dist(0, k), &(&step * int(k as i64)));
        }
        // collinear, not a star: the far ends sit at the sum of the steps
        assert_eq!(w.dist(1, 7), &(&step * int(6)));
    }
}
