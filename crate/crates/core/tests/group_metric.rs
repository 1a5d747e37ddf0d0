use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use urysohn::group::random_automap;
use urysohn::sample::plane_space;
use urysohn::{dist_hat, dist_l, dist_n, dist_s, ratio, AutoMap, FiniteMetricSpace, Rational};

fn space(seed: u64, n: usize) -> FiniteMetricSpace {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::new();
    while pts.len() < n {
        let p = (
            ratio(rng.gen_range(0..=40), 4),
            ratio(rng.gen_range(0..=40), 4),
        );
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    plane_space(&pts, (0..n).map(|i| format!("w{i}")).collect())
}

/// Partial sums far past the last ball, plus the exact geometric tail.
fn dist_s_by_series(f: &AutoMap, g: &AutoMap, s: &FiniteMetricSpace) -> Rational {
    let depth = 60u64;
    let mut total = Rational::from_integer(0.into());
    for n in 1..=depth {
        total += dist_n(f, g, n, s).unwrap() * urysohn::rational::pow2(-(n as i64));
    }
    total + dist_n(f, g, depth + 1, s).unwrap() * urysohn::rational::pow2(-(depth as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_series(seed in any::<u64>()) {
        let s = space(seed, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let f = random_automap(8, 0, &mut rng);
        let g = random_automap(8, 0, &mut rng);
        prop_assert_eq!(dist_s(&f, &g, &s).unwrap(), dist_s_by_series(&f, &g, &s));
    }

    #[test]
    fn axioms_hold(seed in any::<u64>()) {
        let s = space(seed, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let f = random_automap(9, 0, &mut rng);
        let g = random_automap(9, 0, &mut rng);
        let h = random_automap(9, 0, &mut rng);
        let fg = dist_hat(&f, &g, &s).unwrap();
        prop_assert_eq!(&fg, &dist_hat(&g, &f, &s).unwrap());
        prop_assert!(dist_hat(&f, &f, &s).unwrap().is_zero());
        prop_assert_eq!(fg.is_zero(), f == g);
        let fh = dist_hat(&f, &h, &s).unwrap();
        let gh = dist_hat(&g, &h, &s).unwrap();
        prop_assert!(fh.within_sum(&fg, &gh));
        prop_assert_eq!(dist_l(&h.compose(&f), &h.compose(&g), &s).unwrap(), fg.lip.clone());
    }

    /// Left translation stretches the ball sum by at most the constant of the translation.
    #[test]
    fn left_translation_of_sum(seed in any::<u64>()) {
        let s = space(seed, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let f = random_automap(8, 0, &mut rng);
        let g = random_automap(8, 0, &mut rng);
        let h = random_automap(8, 0, &mut rng);
        let lhs = dist_s(&h.compose(&f), &h.compose(&g), &s).unwrap();
        prop_assert!(lhs <= h.lip(&s).unwrap() * dist_s(&f, &g, &s).unwrap());
    }
}

#[test]
fn hat_distance_orders_lexicographically() {
    use std::cmp::Ordering;
    use urysohn::HatDistance;
    let a = HatDistance {
        lip: ratio(3, 2),
        sum: ratio(1, 4),
    };
    let b = HatDistance {
        lip: ratio(3, 2),
        sum: ratio(1, 2),
    };
    let c = HatDistance {
        lip: ratio(2, 1),
        sum: ratio(0, 1),
    };
    assert_eq!(a.cmp_exact(&b), Ordering::Less);
    assert_eq!(b.cmp_exact(&c), Ordering::Less);
    assert!((c.to_f64() - 2f64.ln()).abs() < 1e-12);
}
