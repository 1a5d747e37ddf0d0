//! Finite, exact-arithmetic models of the extension and amalgamation arguments
//! around the Urysohn universal metric space.
//!
//! Everything works inside one finite workspace: a [`FiniteMetricSpace`] with
//! rational distances that grows as new points are realized. Partial maps are
//! index pairs inside that workspace.
//!
//! ```
//! use urysohn::{extend_one_point, int, Ball, Choice, FiniteMetricSpace, KnParams, PartialMap, Side};
//!
//! let space = FiniteMetricSpace::from_fn(vec!["c".into(), "x".into()], |_, _| int(1)).unwrap();
//! let f = PartialMap::from_pairs([(0, 0)]).unwrap();
//! let ball = Ball::new(0, int(10)).unwrap();
//! let kn = KnParams::new(int(2), int(4));
//! let ext = extend_one_point(&space, &f, &ball, &kn, 1, Side::Domain, Choice::Midpoint).unwrap();
//! let step = ext.step.unwrap();
//! assert_eq!(step.e1().to_string(), "5/4");
//! assert_eq!(step.s.to_string(), "35/16");
//! ```

pub mod amalgam;
pub mod bilip;
pub mod constructions;
pub mod error;
pub mod format;
pub mod group;
pub mod map;
pub mod mc;
pub mod modulus;
pub mod rational;
pub mod sample;
pub mod space;
pub mod trace;

pub use amalgam::{
    amalgamate, katetov_extend, realize_point, AmalgamPolicy, Amalgamation, KatetovFunction,
};
pub use bilip::{
    extend_dense, extend_one_point, glue_identity_check, is_compliant, kn_admissible,
    ComplianceCertificate, DenseExtension, Extension, ExtensionStep, ExtensionTrace, Family,
    GlueReport, KnParams, Side,
};
pub use constructions::{affine_constants, move_point_in_ball, segment_transport_bound};
pub use error::{Error, Result};
pub use group::{dist_hat, dist_l, dist_n, dist_s, AutoMap, HatDistance};
pub use map::{goodness_check, lip_constant, PartialMap};
pub use mc::{
    extend_one_point_mc, extend_totally_bounded, necessity_counterexample, separation_witness,
};
pub use modulus::{compatible, modulus_precedes, McSemigroup, Modulus, PlMap};
pub use rational::{int, parse_rational, ratio, Choice, Interval, Rational};
pub use space::{Ball, FiniteMetricSpace};
pub use trace::{export_trace, parse_trace, verify_trace, TraceBundle};

// The guide's code blocks run as doc tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/bilipschitz.md")]
    mod bilipschitz {}
    #[doc = include_str!("../../../book/src/moduli.md")]
    mod moduli {}
    #[doc = include_str!("../../../book/src/group.md")]
    mod group {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
