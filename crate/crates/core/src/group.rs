//! Distances between bilipschitz automorphisms of a finite space.

use std::cmp::Ordering;

use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::map::{lip_constant, PartialMap};
use crate::rational::{pow2, to_f64, Rational};
use crate::space::FiniteMetricSpace;

/// A permutation of the points of a space, with a basepoint for the ball sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutoMap {
    images: Vec<usize>,
    basepoint: usize,
}

impl AutoMap {
    pub fn new(images: Vec<usize>, basepoint: usize) -> Result<Self> {
        let n = images.len();
        if basepoint >= n {
            return Err(Error::Structural(format!(
                "basepoint {basepoint} out of range"
            )));
        }
        let mut seen = vec![false; n];
        for &q in &images {
            if q >= n || std::mem::replace(&mut seen[q], true) {
                return Err(Error::Structural(
                    "automorphism must be a permutation".into(),
                ));
            }
        }
        Ok(AutoMap { images, basepoint })
    }

    pub fn identity(n: usize, basepoint: usize) -> Result<Self> {
        Self::new((0..n).collect(), basepoint)
    }

    /// Reads a total bijective partial map on `space`.
    pub fn from_partial(
        f: &PartialMap,
        space: &FiniteMetricSpace,
        basepoint: usize,
    ) -> Result<Self> {
        let mut images = vec![usize::MAX; space.len()];
        for (p, q) in f.pairs() {
            images[p] = q;
        }
        if images.contains(&usize::MAX) {
            return Err(Error::Structural(
                "automorphism must be defined everywhere".into(),
            ));
        }
        Self::new(images, basepoint)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AutoMap) -> AutoMap {
        AutoMap {
            images: inner.images.iter().map(|&p| self.images[p]).collect(),
            basepoint: self.basepoint,
        }
    }

    pub fn inverse(&self) -> AutoMap {
        let mut images = vec![0; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[q] = p;
        }
        AutoMap {
            images,
            basepoint: self.basepoint,
        }
    }

    pub fn to_partial(&self) -> PartialMap {
        PartialMap::new((0..self.images.len()).collect(), self.images.clone())
            .expect("a permutation is injective")
    }

    /// Bilipschitz constant of the permutation.
    pub fn lip(&self, space: &FiniteMetricSpace) -> Result<Rational> {
        lip_constant(&self.to_partial(), space)
    }
}

fn check_pair(f: &AutoMap, g: &AutoMap, space: &FiniteMetricSpace) -> Result<()> {
    if f.len() != space.len() || g.len() != space.len() {
        return Err(Error::pre("automorphisms act on a different space"));
    }
    if f.basepoint != g.basepoint {
        return Err(Error::pre("automorphisms have different basepoints"));
    }
    Ok(())
}

/// `lip(f⁻¹ ∘ g)`; the distance itself is its logarithm.
pub fn dist_l(f: &AutoMap, g: &AutoMap, space: &FiniteMetricSpace) -> Result<Rational> {
    check_pair(f, g, space)?;
    f.inverse().compose(g).lip(space)
}

/// `max d(f(x), g(x))` over points with `d(x₀, x) < n`; 0 if there are none.
pub fn dist_n(f: &AutoMap, g: &AutoMap, n: u64, space: &FiniteMetricSpace) -> Result<Rational> {
    check_pair(f, g, space)?;
    if n == 0 {
        return Err(Error::pre("ball index n must be at least 1"));
    }
    let radius = Rational::from_integer(n.into());
    Ok((0..space.len())
        .filter(|&x| space.dist(f.basepoint, x) < &radius)
        .map(|x| space.dist(f.apply(x), g.apply(x)).clone())
        .max()
        .unwrap_or_else(Rational::zero))
}

/// `Σ_{n≥1} d_n(f, g) / 2ⁿ`, summed in closed form once every point is in the ball.
pub fn dist_s(f: &AutoMap, g: &AutoMap, space: &FiniteMetricSpace) -> Result<Rational> {
    check_pair(f, g, space)?;
    let reach = (0..space.len())
        .map(|x| space.dist(f.basepoint, x))
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let n0 = (reach.floor().to_integer() + 1u32)
        .to_u64()
        .ok_or_else(|| Error::pre("space too large for the ball sum"))?;
    let mut total = Rational::zero();
    for n in 1..n0 {
        total += dist_n(f, g, n, space)? * pow2(-(n as i64));
    }
    total += dist_n(f, g, n0, space)? * pow2(-(n0 as i64 - 1));
    Ok(total)
}

/// The pair `(lip(f⁻¹∘g), d_S(f, g))`; the distance is `max(ln lip, d_S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatDistance {
    pub lip: Rational,
    pub sum: Rational,
}

impl HatDistance {
    pub fn is_zero(&self) -> bool {
        self.lip.is_one() && self.sum.is_zero()
    }

    /// `max(ln lip, sum)` as a float, for display.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.lip).ln().max(to_f64(&self.sum))
    }

    /// Exact order: by `lip`, then by `sum`.
    pub fn cmp_exact(&self, other: &HatDistance) -> Ordering {
        self.lip
            .cmp(&other.lip)
            .then_with(|| self.sum.cmp(&other.sum))
    }

    /// Triangle inequality, checked on each component exactly
    /// (`lip` multiplicatively, `sum` additively).
    pub fn within_sum(&self, a: &HatDistance, b: &HatDistance) -> bool {
        self.lip <= &a.lip * &b.lip && self.sum <= &a.sum + &b.sum
    }
}

pub fn dist_hat(f: &AutoMap, g: &AutoMap, space: &FiniteMetricSpace) -> Result<HatDistance> {
    Ok(HatDistance {
        lip: dist_l(f, g, space)?,
        sum: dist_s(f, g, space)?,
    })
}

/// Uniformly random permutation with the given basepoint.
pub fn random_automap<R: rand::Rng>(n: usize, basepoint: usize, rng: &mut R) -> AutoMap {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    AutoMap::new(images, basepoint).expect("shuffle is a permutation")
}
