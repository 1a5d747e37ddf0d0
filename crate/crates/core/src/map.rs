//! Finite injective partial maps inside a workspace, and the quantities measured on
//! them: the bilipschitz constant and the goodness margin inside a ball.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Ball, FiniteMetricSpace};

/// An injective map between points of one workspace, stored as parallel lists.
///
/// Both the source and the target points are indices into the same
/// [`FiniteMetricSpace`]; maps between two spaces are handled by first
/// amalgamating the spaces into one workspace.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialMap {
    domain: Vec<usize>,
    images: Vec<usize>,
    support_ball: Option<Ball>,
}

impl PartialMap {
    pub fn new(domain: Vec<usize>, images: Vec<usize>) -> Result<Self> {
        if domain.len() != images.len() {
            return Err(Error::Structural(format!(
                "domain has {} points but {} images",
                domain.len(),
                images.len()
            )));
        }
        for i in 0..domain.len() {
            if domain[..i].contains(&domain[i]) {
                return Err(Error::Structural(format!(
                    "point {} mapped twice",
                    domain[i]
                )));
            }
            if images[..i].contains(&images[i]) {
                return Err(Error::Structural(format!(
                    "map is not injective: image {} repeated",
                    images[i]
                )));
            }
        }
        Ok(PartialMap {
            domain,
            images,
            support_ball: None,
        })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let (domain, images) = pairs.into_iter().unzip();
        Self::new(domain, images)
    }

    pub fn identity(points: &[usize]) -> Self {
        PartialMap {
            domain: points.to_vec(),
            images: points.to_vec(),
            support_ball: None,
        }
    }

    /// Attaches a support ball; every domain and image point must lie strictly inside.
    pub fn with_support_ball(mut self, space: &FiniteMetricSpace, ball: Ball) -> Result<Self> {
        for &p in self.domain.iter().chain(&self.images) {
            ball.require_inside(space, p, "map point")?;
        }
        self.support_ball = Some(ball);
        Ok(self)
    }

    pub fn support_ball(&self) -> Option<&Ball> {
        self.support_ball.as_ref()
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain.iter().copied().zip(self.images.iter().copied())
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.domain
            .iter()
            .position(|&d| d == p)
            .map(|i| self.images[i])
    }

    pub fn preimage(&self, q: usize) -> Option<usize> {
        self.images
            .iter()
            .position(|&d| d == q)
            .map(|i| self.domain[i])
    }

    pub fn in_domain(&self, p: usize) -> bool {
        self.domain.contains(&p)
    }

    pub fn in_range(&self, q: usize) -> bool {
        self.images.contains(&q)
    }

    pub fn inverse(&self) -> PartialMap {
        PartialMap {
            domain: self.images.clone(),
            images: self.domain.clone(),
            support_ball: self.support_ball.clone(),
        }
    }

    /// Adds one pair. Fails if it would break functionality or injectivity.
    pub fn insert(&mut self, p: usize, q: usize) -> Result<()> {
        if self.in_domain(p) {
            return Err(Error::Structural(format!("point {p} already in domain")));
        }
        if self.in_range(q) {
            return Err(Error::Structural(format!("point {q} already in range")));
        }
        self.domain.push(p);
        self.images.push(q);
        Ok(())
    }

    /// The restriction to `points ∩ dom`, in the order of `points`.
    pub fn restrict(&self, points: &[usize]) -> PartialMap {
        let pairs = points.iter().filter_map(|&p| self.apply(p).map(|q| (p, q)));
        let (domain, images) = pairs.unzip();
        PartialMap {
            domain,
            images,
            support_ball: self.support_ball.clone(),
        }
    }

    /// Reorders the domain so that `first` comes first. No-op if `first` is absent.
    pub(crate) fn move_to_front(&mut self, first: usize) {
        if let Some(pos) = self.domain.iter().position(|&d| d == first) {
            let d = self.domain.remove(pos);
            let i = self.images.remove(pos);
            self.domain.insert(0, d);
            self.images.insert(0, i);
        }
    }
}

/// The least `K` for which a finite map is `K`-bilipschitz, with the pair that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipReport {
    pub constant: Rational,
    /// Domain points `(a, b)` realizing the constant; `None` for fewer than two points.
    pub witness: Option<(usize, usize)>,
}

/// `max over pairs of max(d(fa,fb)/d(a,b), d(a,b)/d(fa,fb))`, or 1 below two points.
pub fn lip_constant(f: &PartialMap, space: &FiniteMetricSpace) -> Result<Rational> {
    lip_report(f, space).map(|r| r.constant)
}

pub fn lip_report(f: &PartialMap, space: &FiniteMetricSpace) -> Result<LipReport> {
    let mut constant = Rational::one();
    let mut witness = None;
    let pairs: Vec<_> = f.pairs().collect();
    for (i, &(a, fa)) in pairs.iter().enumerate() {
        for &(b, fb) in &pairs[i + 1..] {
            let d = space.dist(a, b);
            let e = space.dist(fa, fb);
            if d.is_zero() || e.is_zero() {
                return Err(Error::Degenerate(format!(
                    "points {} and {} (or their images) are at distance 0",
                    space.label(a),
                    space.label(b)
                )));
            }
            let ratio = if e > d { e / d } else { d / e };
            if ratio > constant {
                constant = ratio;
                witness = Some((a, b));
            }
        }
    }
    Ok(LipReport { constant, witness })
}

/// Outcome of [`goodness_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    pub good: bool,
    /// `min (r - d(p, center))/N - d(p, f(p))` over the domain of `f` and of `f⁻¹`.
    /// `None` for the empty map.
    pub slack: Option<Rational>,
    /// Point (of the domain of `f` or of `f⁻¹`) attaining the slack.
    pub witness: Option<usize>,
}

/// Tests whether `f` is `N`-bigood in `ball`: every point `p` of the domain of `f`
/// and of `f⁻¹` moves by at most `(r - d(p, center)) / N`.
pub fn goodness_check(
    f: &PartialMap,
    ball: &Ball,
    n: &Rational,
    space: &FiniteMetricSpace,
) -> Result<GoodnessReport> {
    if !n.is_positive() {
        return Err(Error::pre(format!(
            "goodness parameter N must be positive, got {n}"
        )));
    }
    let mut slack: Option<Rational> = None;
    let mut witness = None;
    for (p, q) in f.pairs() {
        ball.require_inside(space, p, "domain point")?;
        ball.require_inside(space, q, "image point")?;
        let moved = space.dist(p, q);
        for source in [p, q] {
            let margin = ball.depth(space, source) / n - moved;
            if slack.as_ref().is_none_or(|s| &margin < s) {
                slack = Some(margin);
                witness = Some(source);
            }
        }
    }
    Ok(GoodnessReport {
        good: slack.as_ref().is_none_or(|s| !s.is_negative()),
        slack,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn line(points: &[Rational]) -> FiniteMetricSpace {
        let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
        FiniteMetricSpace::from_fn(labels, |i, j| (&points[i] - &points[j]).abs()).unwrap()
    }

    #[test]
    fn isometry_has_constant_one() {
        let s = line(&[int(0), int(1), int(3), int(4)]);
        // reflection 0<->4, 1<->3 is an isometry
        let f = PartialMap::from_pairs([(0, 3), (1, 2), (2, 1), (3, 0)]).unwrap();
        assert_eq!(lip_constant(&f, &s).unwrap(), int(1));
    }

    #[test]
    fn single_pair_ratio() {
        // p1 -> p2 stretches the distance to p0 from 1 to 3/2
        let s = line(&[int(0), int(1), ratio(3, 2)]);
        let f = PartialMap::from_pairs([(0, 0), (1, 2)]).unwrap();
        assert_eq!(lip_constant(&f, &s).unwrap(), ratio(3, 2));
        let g = PartialMap::from_pairs([(0, 0)]).unwrap();
        assert_eq!(lip_constant(&g, &s).unwrap(), int(1));
    }

    #[test]
    fn inverse_has_same_constant() {
        let s = line(&[int(0), int(1), ratio(7, 3), int(5)]);
        let f = PartialMap::from_pairs([(0, 1), (1, 3), (2, 0)]).unwrap();
        assert_eq!(
            lip_constant(&f, &s).unwrap(),
            lip_constant(&f.inverse(), &s).unwrap()
        );
    }

    #[test]
    fn injectivity_enforced() {
        assert!(PartialMap::from_pairs([(0, 1), (2, 1)]).is_err());
        assert!(PartialMap::from_pairs([(0, 1), (0, 2)]).is_err());
    }

    #[test]
    fn goodness_of_center_fixing_map() {
        let s = line(&[int(0), int(1)]);
        let ball = Ball::new(0, int(10)).unwrap();
        let f = PartialMap::from_pairs([(0, 0)]).unwrap();
        let report = goodness_check(&f, &ball, &int(4), &s).unwrap();
        assert!(report.good);
        assert_eq!(report.slack, Some(ratio(10, 4)));
    }

    #[test]
    fn goodness_failure_and_boundary() {
        // center 0, p1 at 1, p2 at 6: d(p1,p2) = 5; (10 - 1)/N with N = 9/4 gives 4
        let s = line(&[int(0), int(1), int(6)]);
        let ball = Ball::new(0, int(10)).unwrap();
        let f = PartialMap::from_pairs([(1, 2)]).unwrap();
        let report = goodness_check(&f, &ball, &ratio(9, 4), &s).unwrap();
        assert!(!report.good);
        assert_eq!(report.witness, Some(2));
        let small = Ball::new(0, int(6)).unwrap();
        assert!(matches!(
            goodness_check(&f, &small, &int(4), &s),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degenerate_domain_rejected() {
        let s = FiniteMetricSpace::from_fn(vec!["a".into(), "b".into()], |_, _| int(0)).unwrap();
        let f = PartialMap::from_pairs([(0, 0), (1, 1)]).unwrap();
        assert!(matches!(lip_constant(&f, &s), Err(Error::Degenerate(_))));
    }
}
