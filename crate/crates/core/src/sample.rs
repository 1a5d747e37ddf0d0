//! Seeded random instances for property runs and the fuzz command.
//!
//! Points live in the plane with the ℓ¹ metric and dyadic coordinates, so every
//! generated space is an exact metric space.

use num::{Signed, Zero};
use rand::Rng;

use crate::bilip::{is_compliant, kn_admissible, KnParams};
use crate::map::PartialMap;
use crate::mc::bicontinuity_check;
use crate::modulus::{compatible, Modulus};
use crate::rational::{int, ratio, Rational};
use crate::space::{Ball, FiniteMetricSpace};

/// A point of the plane.
pub type Point = (Rational, Rational);

pub fn l1(a: &Point, b: &Point) -> Rational {
    (&a.0 - &b.0).abs() + (&a.1 - &b.1).abs()
}

/// Builds the ℓ¹ space on distinct points, labeled by `prefix` and index.
pub fn plane_space(points: &[Point], labels: Vec<String>) -> FiniteMetricSpace {
    FiniteMetricSpace::from_fn(labels, |i, j| l1(&points[i], &points[j]))
        .expect("ℓ¹ distances between distinct points")
}

fn coord<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    ratio(rng.gen_range(lo * den..=hi * den), den)
}

fn point_in_ball<R: Rng>(rng: &mut R, r: &Rational) -> Point {
    loop {
        let p = (coord(rng, -8, 8, 8), coord(rng, -8, 8, 8));
        if &(p.0.abs() + p.1.abs()) < r {
            return p;
        }
    }
}

/// Random admissible `(K, N)` with `K` in `(1, 4]`.
pub fn random_kn<R: Rng>(rng: &mut R) -> KnParams {
    let k = int(1) + ratio(rng.gen_range(2..=24), 8);
    let n = &k * &k / (&k - int(1)) + ratio(rng.gen_range(0..=8), 4);
    kn_admissible(&k, &n)
}

/// A compliant map in a ball together with spare points.
#[derive(Debug, Clone)]
pub struct BilipInstance {
    pub space: FiniteMetricSpace,
    pub map: PartialMap,
    pub ball: Ball,
    pub kn: KnParams,
    /// Fresh points inside the ball, not touched by the map.
    pub targets: Vec<usize>,
    /// Points outside the ball.
    pub outside: Vec<usize>,
}

/// Shape of a random [`BilipInstance`].
#[derive(Debug, Clone, Copy)]
pub struct InstanceShape {
    /// Domain size including the center, at least 1.
    pub domain: usize,
    pub targets: usize,
    pub outside: usize,
}

/// Draws instances until one is compliant. The center is the origin, `r` is in
/// `[4, 8]` and images are small perturbations of the domain points.
pub fn compliant_instance<R: Rng>(rng: &mut R, shape: InstanceShape) -> BilipInstance {
    loop {
        if let Some(inst) = try_instance(rng, shape) {
            return inst;
        }
    }
}

fn try_instance<R: Rng>(rng: &mut R, shape: InstanceShape) -> Option<BilipInstance> {
    let kn = random_kn(rng);
    let r = int(4) + ratio(rng.gen_range(0..=16), 4);
    let origin: Point = (Rational::zero(), Rational::zero());
    let mut points: Vec<Point> = vec![origin.clone()];
    let index = |pts: &mut Vec<Point>, p: Point| -> usize {
        match pts.iter().position(|q| q == &p) {
            Some(i) => i,
            None => {
                pts.push(p);
                pts.len() - 1
            }
        }
    };
    let mut pairs = vec![(0usize, 0usize)];
    for _ in 1..shape.domain.max(1) {
        let p = point_in_ball(rng, &r);
        let room = (&r - l1(&p, &origin)) / &kn.n;
        let scale = ratio(rng.gen_range(0..=4), 4);
        let q = (
            &p.0 + &room * &scale * ratio(rng.gen_range(-8..=8), 16),
            &p.1 + &room * &scale * ratio(rng.gen_range(-8..=8), 16),
        );
        let a = index(&mut points, p);
        let b = index(&mut points, q);
        if a == 0 || b == 0 {
            return None;
        }
        pairs.push((a, b));
    }
    let used = points.len();
    let mut targets = Vec::new();
    while targets.len() < shape.targets {
        let t = index(&mut points, point_in_ball(rng, &r));
        if t >= used && !targets.contains(&t) {
            targets.push(t);
        }
    }
    let mut outside = Vec::new();
    while outside.len() < shape.outside {
        let p = (coord(rng, -16, 16, 4), coord(rng, -16, 16, 4));
        if l1(&p, &origin) >= r && !points.contains(&p) {
            points.push(p);
            outside.push(points.len() - 1);
        }
    }
    let labels = (0..points.len())
        .map(|i| {
            if i == 0 {
                "c".to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect();
    let space = plane_space(&points, labels);
    let map = PartialMap::from_pairs(pairs).ok()?;
    let ball = Ball::new(0, r).ok()?;
    let cert = is_compliant(&map, &ball, &kn, &space).ok()?;
    cert.compliant.then_some(BilipInstance {
        space,
        map,
        ball,
        kn,
        targets,
        outside,
    })
}

/// Random concave PL modulus with up to three breakpoints and slopes in `[1/4, 4]`.
pub fn random_modulus<R: Rng>(rng: &mut R) -> Modulus {
    let pieces = rng.gen_range(0..=3);
    let mut slope = ratio(rng.gen_range(4..=16), 4);
    let mut t = Rational::zero();
    let mut v = Rational::zero();
    let mut points = vec![(t.clone(), v.clone())];
    for _ in 0..pieces {
        let len = ratio(rng.gen_range(1..=8), 4);
        t += &len;
        v += &len * &slope;
        points.push((t.clone(), v.clone()));
        let next = &slope * ratio(rng.gen_range(2..=4), 4);
        slope = std::cmp::max(next, ratio(1, 4));
    }
    Modulus::from_breakpoints(points, slope).expect("slopes are positive and nonincreasing")
}

/// A `(β, α)`-bicontinuous map between two copies of a small planar set, with a
/// compatible pair of moduli and a new domain point `p`.
#[derive(Debug, Clone)]
pub struct McInstance {
    pub space: FiniteMetricSpace,
    pub map: PartialMap,
    pub alpha: Modulus,
    pub beta: Modulus,
    pub p: usize,
}

pub fn compatible_instance<R: Rng>(rng: &mut R, domain: usize) -> McInstance {
    loop {
        let alpha = random_modulus(rng);
        let beta = random_modulus(rng);
        let m = domain.max(1);
        let mut xs: Vec<Point> = Vec::new();
        while xs.len() < m + 1 {
            let p = (coord(rng, 0, 4, 4), coord(rng, 0, 4, 4));
            if !xs.contains(&p) {
                xs.push(p);
            }
        }
        let lambda = ratio(rng.gen_range(2..=8), 4);
        let offset = int(100);
        let ys: Vec<Point> = xs[..m]
            .iter()
            .map(|(a, b)| (&offset + a * &lambda, b * &lambda))
            .collect();
        let mut points = xs.clone();
        points.extend(ys);
        let mut labels: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
        labels.push("p".into());
        labels.extend((0..m).map(|i| format!("y{i}")));
        let space = plane_space(&points, labels);
        let map = PartialMap::new((0..m).collect(), (m + 1..2 * m + 1).collect())
            .expect("distinct images");
        let bound = space.diameter() * int(2);
        if !compatible(&alpha, &beta, &bound).compatible() {
            continue;
        }
        if bicontinuity_check(&map, &alpha, &beta, &space).is_some() {
            continue;
        }
        return McInstance {
            space,
            map,
            alpha,
            beta,
            p: m,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_are_compliant_and_deterministic() {
        let shape = InstanceShape {
            domain: 4,
            targets: 3,
            outside: 5,
        };
        let a = compliant_instance(&mut ChaCha8Rng::seed_from_u64(3), shape);
        let b = compliant_instance(&mut ChaCha8Rng::seed_from_u64(3), shape);
        assert_eq!(a.space, b.space);
        assert!(a.space.is_metric());
        assert!(a.kn.admissible);
        assert_eq!(a.outside.len(), 5);
        for &t in &a.targets {
            assert!(a.ball.contains(&a.space, t));
            assert!(!a.map.in_domain(t) && !a.map.in_range(t));
        }
    }

    #[test]
    fn mc_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let inst = compatible_instance(&mut rng, 3);
            assert!(inst.space.is_metric());
            assert!(!inst.map.in_domain(inst.p));
        }
    }
}
