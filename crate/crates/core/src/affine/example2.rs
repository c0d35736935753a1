//! Six points on a circle around the origin whose two embracing triangles
//! admit only one embracing symmetric exchange.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{check_general_position, is_zero_embracing, PointConfiguration, RationalPoint};
use crate::om::{BasisSet, ElementId};

/// Point on the unit circle at angle `2 atan(t)`. The map is increasing in
/// `t`, so decreasing parameters run clockwise.
fn circle_point(t: &BigRational) -> RationalPoint {
    let one = BigRational::one();
    let t2 = t * t;
    let den = &one + &t2;
    RationalPoint::new(vec![(&one - &t2) / &den, (t + t) / &den])
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Debug)]
pub struct Example2 {
    pub config: PointConfiguration,
    /// `{u, v, w}`.
    pub a: BasisSet,
    /// `{x, y, z}`.
    pub b: BasisSet,
    pub names: [&'static str; 7],
}

impl Example2 {
    pub const U: ElementId = ElementId(0);
    pub const X: ElementId = ElementId(1);
    pub const Y: ElementId = ElementId(2);
    pub const V: ElementId = ElementId(3);
    pub const W: ElementId = ElementId(4);
    pub const Z: ElementId = ElementId(5);
    pub const ORIGIN: ElementId = ElementId(6);

    pub fn name(&self, e: ElementId) -> &'static str {
        self.names[e.0]
    }
}

/// Circle parameters in clockwise order `u, x, y, v, w, z`. Angles are
/// roughly 90, 59.5, 18.9, -28.1, -110.0 and -150.1 degrees.
const PARAMS: [(i64, i64); 6] = [(1, 1), (4, 7), (1, 6), (-1, 4), (-10, 7), (-15, 4)];

/// Builds the configuration and checks every constraint it is meant to
/// satisfy: clockwise order, the antipode of `w` strictly between `u` and
/// `x`, both triangles embracing the origin, general position.
pub fn build_example2() -> Example2 {
    let params: Vec<BigRational> = PARAMS.iter().map(|&(n, d)| q(n, d)).collect();
    assert!(
        params.windows(2).all(|w| w[0] > w[1]),
        "points must run clockwise"
    );
    // The antipode of the point with parameter t has parameter -1/t.
    let (t_u, t_x, t_w) = (&params[0], &params[1], &params[4]);
    let antipode = -(BigRational::one() / t_w);
    assert!(t_w.is_negative() && *t_x < antipode && antipode < *t_u);

    let points: Vec<RationalPoint> = params.iter().map(circle_point).collect();
    let config = PointConfiguration::origin_anchored(2, points).expect("distinct points");
    let ex = Example2 {
        config,
        a: BasisSet::new([Example2::U, Example2::V, Example2::W]),
        b: BasisSet::new([Example2::X, Example2::Y, Example2::Z]),
        names: ["u", "x", "y", "v", "w", "z", "0"],
    };
    assert_eq!(ex.config.anchor(), Example2::ORIGIN);
    assert_eq!(is_zero_embracing(&ex.config, &ex.a), Ok(true));
    assert_eq!(is_zero_embracing(&ex.config, &ex.b), Ok(true));
    assert!(check_general_position(&ex.config).is_general());
    ex
}
