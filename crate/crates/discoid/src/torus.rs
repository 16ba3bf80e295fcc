//! Geometry of the torus, the map onto the discoid, the S3 Weyl action and
//! the cubic inversion.
//!
//! Points of `T^2` are named by exact rational angle pairs `(theta1, theta2)`
//! in `[0,1)^2`, standing for `(e^(2 pi i theta1), e^(2 pi i theta2))`. The
//! Weyl group S3 sits inside `GL(2, Z)`, generated by an order-2 and an
//! order-3 matrix, and acts on angles by integer-linear maps mod 1, so orbits
//! and the fundamental domain are exact. Everything involving `Phi` itself is
//! double-precision complex arithmetic.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

pub const TAU: f64 = std::f64::consts::TAU;
const PI2: f64 = std::f64::consts::PI * std::f64::consts::PI;

/// Radicand values down to this are clamped to zero; anything lower is
/// treated as genuinely outside the discoid.
pub const DISCOID_TOL: f64 = 1e-9;

/// Reduce a rational to `[0, 1)`.
pub fn mod1(r: Rational64) -> Rational64 {
    let f = r.floor();
    r - f
}

/// An exact point of the two-torus, named by its angle pair in full turns.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorusPoint {
    theta1: Rational64,
    theta2: Rational64,
}

impl TorusPoint {
    pub fn new(theta1: Rational64, theta2: Rational64) -> Self {
        TorusPoint { theta1: mod1(theta1), theta2: mod1(theta2) }
    }

    /// Convenience constructor from integer numerator/denominator pairs.
    pub fn from_ints(n1: i64, d1: i64, n2: i64, d2: i64) -> Self {
        Self::new(Rational64::new(n1, d1), Rational64::new(n2, d2))
    }

    pub fn theta1(&self) -> Rational64 {
        self.theta1
    }

    pub fn theta2(&self) -> Rational64 {
        self.theta2
    }

    /// `(e^(2 pi i theta1), e^(2 pi i theta2))` in double precision.
    pub fn to_complex_pair(&self) -> (Complex64, Complex64) {
        (unit(self.theta1), unit(self.theta2))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.theta1, self.theta2)
    }
}

fn unit(theta: Rational64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * theta.to_f64().unwrap())
}

/// A point of the discoid: the image of `T^2` under `Phi`.
///
/// Membership is the sign of the radicand `27 - 18 z zbar + 4 z^3 +
/// 4 zbar^3 - z^2 zbar^2`, which is also the squared Jacobian up to
/// `4 pi^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscoidPoint {
    z: Complex64,
}

impl DiscoidPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        let r = radicand(z);
        if r < -DISCOID_TOL {
            return Err(Error::OutsideDiscoid { z, radicand: r });
        }
        Ok(DiscoidPoint { z })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Clamped radicand, zero on the deltoid and positive inside.
    pub fn radicand(&self) -> f64 {
        radicand(self.z).max(0.0)
    }
}

/// `27 - 18 |z|^2 + 8 Re(z^3) - |z|^4`, the Jacobian-squared expression
/// divided by `4 pi^4`.
pub fn radicand(z: Complex64) -> f64 {
    let n2 = z.norm_sqr();
    27.0 - 18.0 * n2 + 8.0 * (z * z * z).re - n2 * n2
}

/// `Phi(w1, w2) = w1 + w2^-1 + w1^-1 w2`.
pub fn phi(p: &TorusPoint) -> DiscoidPoint {
    DiscoidPoint { z: phi_value(p) }
}

fn phi_value(p: &TorusPoint) -> Complex64 {
    unit(p.theta1) + unit(-p.theta2) + unit(p.theta2 - p.theta1)
}

/// One of the six Weyl elements, as an integer matrix acting on angle pairs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeylElement {
    pub matrix: [[i64; 2]; 2],
}

impl WeylElement {
    pub fn determinant(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Order-2 generator.
pub const T2: WeylElement = WeylElement { matrix: [[0, -1], [-1, 0]] };
/// Order-3 generator.
pub const T3: WeylElement = WeylElement { matrix: [[0, -1], [1, -1]] };

/// The six elements: identity, the two rotations, and the three reflections.
pub const WEYL_GROUP: [WeylElement; 6] = [
    WeylElement { matrix: [[1, 0], [0, 1]] },
    WeylElement { matrix: [[0, -1], [1, -1]] },   // T3
    WeylElement { matrix: [[-1, 1], [-1, 0]] },   // T3^2
    WeylElement { matrix: [[0, -1], [-1, 0]] },   // T2
    WeylElement { matrix: [[-1, 1], [0, 1]] },    // T2 T3
    WeylElement { matrix: [[1, 0], [1, -1]] },    // T2 T3^2
];

/// Integer-linear action on angles, reduced mod 1.
pub fn weyl_apply(g: &WeylElement, p: &TorusPoint) -> TorusPoint {
    let m = g.matrix;
    let t1 = Rational64::from_integer(m[0][0]) * p.theta1
        + Rational64::from_integer(m[0][1]) * p.theta2;
    let t2 = Rational64::from_integer(m[1][0]) * p.theta1
        + Rational64::from_integer(m[1][1]) * p.theta2;
    TorusPoint::new(t1, t2)
}

/// The distinct images of `p` under all six Weyl elements.
pub fn weyl_orbit(p: &TorusPoint) -> BTreeSet<TorusPoint> {
    WEYL_GROUP.iter().map(|g| weyl_apply(g, p)).collect()
}

/// Signed Jacobian in angle form:
/// `4 pi^2 (sin 2pi(t1+t2) - sin 2pi(2t1-t2) - sin 2pi(2t2-t1))`.
pub fn jacobian_theta(p: &TorusPoint) -> f64 {
    let s = |r: Rational64| (TAU * r.to_f64().unwrap()).sin();
    4.0 * PI2
        * (s(p.theta1 + p.theta2) - s(p.theta1 * 2 - p.theta2) - s(p.theta2 * 2 - p.theta1))
}

/// `|J|` from the discoid side: `2 pi^2 sqrt(27 - 18 z zbar + 4 z^3 +
/// 4 zbar^3 - z^2 zbar^2)`. Small negative radicands are clamped; larger
/// ones are an error.
pub fn jacobian_abs_z(z: Complex64) -> Result<f64> {
    let r = radicand(z);
    if r < -DISCOID_TOL {
        return Err(Error::OutsideDiscoid { z, radicand: r });
    }
    Ok(2.0 * PI2 * r.max(0.0).sqrt())
}

/// Membership in the closed fundamental domain
/// `C = { theta2/2 <= theta1 <= 2 theta2, theta1 + theta2 <= 1 }`,
/// whose boundary lines map onto the deltoid.
pub fn in_fundamental_domain(p: &TorusPoint) -> bool {
    let half = Rational64::new(1, 2);
    p.theta1 >= p.theta2 * half
        && p.theta1 <= p.theta2 * 2
        && p.theta1 + p.theta2 <= Rational64::from_integer(1)
}

/// The three roots of `w^3 - z w^2 + zbar w - 1 = 0`, which are the first
/// coordinates of the preimages of `z` under `Phi`.
///
/// The cube root `P` is taken with phase in `[0, 2 pi/3)` and the square
/// root inside it positive. Roots come back in branch order `k = 0, 1, 2`.
pub fn cubic_roots(z: Complex64) -> [Complex64; 3] {
    let zbar = z.conj();
    let disc = radicand(z).max(0.0);
    let p3 = Complex64::new(27.0, 0.0) - 9.0 * z * zbar
        + 2.0 * z * z * z
        + Complex64::new(3.0 * 3f64.sqrt() * disc.sqrt(), 0.0);
    if p3.norm() < 1e-12 {
        // Triple root at a cusp: z/3.
        let w = z / 3.0;
        return [w, w, w];
    }
    let mut p = p3.powf(1.0 / 3.0);
    let third = TAU / 3.0;
    // powf lands in (-pi/3, pi/3]; rotate until the phase is in [0, 2pi/3).
    for _ in 0..3 {
        let arg = p.arg();
        if (0.0..third - 1e-15).contains(&arg) {
            break;
        }
        p *= Complex64::from_polar(1.0, third);
    }
    let c = 2f64.powf(-1.0 / 3.0);
    let d = 2f64.powf(1.0 / 3.0) * (z * z - 3.0 * zbar);
    let mut roots = [Complex64::zero(); 3];
    for (k, root) in roots.iter_mut().enumerate() {
        let eps = Complex64::from_polar(1.0, third * k as f64);
        *root = (z + c * eps * p + d * eps.conj() / p) / 3.0;
    }
    roots
}

/// Angle pair (in turns, each reduced to `[0,1)`) of a complex torus pair.
fn to_angles(w1: Complex64, w2: Complex64) -> (f64, f64) {
    let wrap = |w: Complex64| {
        let t = w.arg() / TAU;
        t - t.floor()
    };
    (wrap(w1), wrap(w2))
}

/// The six inverse images `Phi^-1_{k,l}(z) = (w^(k), conj(w^(l)))` with
/// `k != l`, as floating-point angle pairs. They form a single S3 orbit and
/// each maps back onto `z` under `Phi`. Repeated roots on the deltoid give
/// coincident pairs, returned with multiplicity.
pub fn phi_inverse(z: Complex64) -> Result<Vec<(f64, f64)>> {
    if radicand(z) < -DISCOID_TOL {
        return Err(Error::OutsideDiscoid { z, radicand: radicand(z) });
    }
    let roots = cubic_roots(z);
    let mut pairs = Vec::with_capacity(6);
    for k in 0..3 {
        for l in 0..3 {
            if k != l {
                pairs.push(to_angles(roots[k], roots[l].conj()));
            }
        }
    }
    Ok(pairs)
}

/// Evaluate `Phi` at a floating-point angle pair.
pub fn phi_at_angles(t1: f64, t2: f64) -> Complex64 {
    let u = |t: f64| Complex64::from_polar(1.0, TAU * t);
    u(t1) + u(-t2) + u(t2 - t1)
}

/// Apply a Weyl element to a floating-point angle pair, mod 1.
pub fn weyl_apply_angles(g: &WeylElement, t1: f64, t2: f64) -> (f64, f64) {
    let m = g.matrix;
    let wrap = |t: f64| t - t.floor();
    (
        wrap(m[0][0] as f64 * t1 + m[0][1] as f64 * t2),
        wrap(m[1][0] as f64 * t1 + m[1][1] as f64 * t2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn tp(n1: i64, d1: i64, n2: i64, d2: i64) -> TorusPoint {
        TorusPoint::from_ints(n1, d1, n2, d2)
    }

    const PI4: f64 = PI2 * PI2;

    #[test]
    fn weyl_group_closure_and_determinants() {
        // Closure: products of the six land back in the six.
        let mul = |a: &WeylElement, b: &WeylElement| {
            let (x, y) = (a.matrix, b.matrix);
            let mut m = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            WeylElement { matrix: m }
        };
        for a in &WEYL_GROUP {
            assert!(a.determinant() == 1 || a.determinant() == -1);
            for b in &WEYL_GROUP {
                let c = mul(a, b);
                assert!(WEYL_GROUP.contains(&c), "product left the group: {c:?}");
            }
        }
        assert_eq!(mul(&T3, &mul(&T3, &T3)).matrix, WEYL_GROUP[0].matrix);
        assert_eq!(mul(&T2, &T2).matrix, WEYL_GROUP[0].matrix);
    }

    #[test]
    fn phi_examples() {
        let z = phi(&tp(0, 1, 0, 1)).z();
        assert!((z - Complex64::new(3.0, 0.0)).norm() < 1e-12);

        // (1/3, 2/3) -> 3 omega
        let omega = Complex64::from_polar(1.0, TAU / 3.0);
        let z = phi(&tp(1, 3, 2, 3)).z();
        assert!((z - 3.0 * omega).norm() < 1e-12);

        let z = phi(&tp(0, 1, 1, 4)).z();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn weyl_apply_examples() {
        // T2 fixes (1/3, 2/3).
        assert_eq!(weyl_apply(&T2, &tp(1, 3, 2, 3)), tp(1, 3, 2, 3));
        // T3 (1/3, 0) = (0, 1/3).
        assert_eq!(weyl_apply(&T3, &tp(1, 3, 0, 1)), tp(0, 1, 1, 3));
        let p = tp(3, 7, 1, 5);
        assert_eq!(weyl_apply(&WEYL_GROUP[0], &p), p);
    }

    #[test]
    fn weyl_orbit_examples() {
        assert_eq!(weyl_orbit(&tp(0, 1, 0, 1)).len(), 1);

        let zero_orbit = weyl_orbit(&tp(1, 3, 0, 1));
        let expect: BTreeSet<_> = [
            tp(1, 3, 0, 1),
            tp(0, 1, 1, 3),
            tp(0, 1, 2, 3),
            tp(2, 3, 0, 1),
            tp(1, 3, 1, 3),
            tp(2, 3, 2, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(zero_orbit, expect);

        assert_eq!(weyl_orbit(&tp(1, 4, 1, 4)).len(), 6);
    }

    #[test]
    fn phi_constant_on_orbit() {
        let p = tp(2, 11, 5, 13);
        let z = phi(&p).z();
        for q in weyl_orbit(&p) {
            assert!((phi(&q).z() - z).norm() < 1e-12);
        }
    }

    #[test]
    fn jacobian_spot_values() {
        assert!(jacobian_theta(&tp(1, 3, 2, 3)).abs() < 1e-9);

        let j = jacobian_theta(&tp(1, 4, 1, 4));
        assert!((j * j - 64.0 * PI4).abs() < 1e-9 * 64.0 * PI4);

        let j = jacobian_theta(&tp(1, 3, 1, 3));
        assert!((j * j - 108.0 * PI4).abs() < 1e-9 * 108.0 * PI4);
    }

    #[test]
    fn jacobian_z_form() {
        // Cusp.
        assert!(jacobian_abs_z(Complex64::new(3.0, 0.0)).unwrap() < 1e-6);
        // Centre: 2 pi^2 sqrt(27).
        let j = jacobian_abs_z(Complex64::zero()).unwrap();
        assert!((j - 2.0 * PI2 * 27f64.sqrt()).abs() < 1e-9);
        // z = 1 against the theta form on its preimage (0, 1/4).
        let j = jacobian_abs_z(Complex64::new(1.0, 0.0)).unwrap();
        assert!((j - jacobian_theta(&tp(0, 1, 1, 4)).abs()).abs() < 1e-9);
        // Far outside.
        assert!(jacobian_abs_z(Complex64::new(10.0, 0.0)).is_err());
    }

    #[test]
    fn jacobian_forms_agree_on_random_rationals() {
        // Compared as squares: taking the root amplifies the radicand's
        // cancellation error without bound right at the deltoid.
        let mut k = 1i64;
        for _ in 0..1000 {
            k = (k * 48271) % 2147483647;
            let a = k % 97;
            k = (k * 48271) % 2147483647;
            let b = k % 89;
            let p = tp(a, 97, b, 89);
            let jt2 = jacobian_theta(&p).powi(2);
            let jz2 = jacobian_abs_z(phi(&p).z()).unwrap().powi(2);
            assert!((jt2 - jz2).abs() < 1e-9 * (1.0 + jt2), "mismatch at {p}");
            let jt = jt2.sqrt();
            if phi(&p).radicand() > 1e-3 {
                assert!((jt - jz2.sqrt()).abs() < 1e-9 * (1.0 + jt), "mismatch at {p}");
            }
        }
    }

    #[test]
    fn fundamental_domain_examples() {
        assert!(in_fundamental_domain(&tp(0, 1, 0, 1)));
        assert!(in_fundamental_domain(&tp(1, 4, 1, 4)));
        assert!(!in_fundamental_domain(&tp(0, 1, 1, 2)));
    }

    #[test]
    fn fundamental_domain_selects_one_orbit_point() {
        // Strictly interior points with trivial stabiliser: exactly one
        // image in C. (Boundary points such as (1/9, 2/9) may have two.)
        for p in [tp(1, 5, 2, 7), tp(2, 11, 3, 13), tp(3, 13, 4, 13)] {
            let orbit = weyl_orbit(&p);
            assert_eq!(orbit.len(), 6);
            let hits = orbit.iter().filter(|q| in_fundamental_domain(q)).count();
            assert_eq!(hits, 1, "orbit of {p}");
        }
        // Coverage: every orbit has at least one image in C.
        let mut k = 7i64;
        for _ in 0..500 {
            k = (k * 48271) % 2147483647;
            let a = k % 61;
            k = (k * 48271) % 2147483647;
            let b = k % 67;
            let p = tp(a, 61, b, 67);
            assert!(weyl_orbit(&p).iter().any(in_fundamental_domain), "no image of {p} in C");
        }
    }

    #[test]
    fn orbit_sizes_divide_six() {
        let mut k = 3i64;
        for _ in 0..500 {
            k = (k * 48271) % 2147483647;
            let a = k % 24;
            k = (k * 48271) % 2147483647;
            let b = k % 24;
            let n = weyl_orbit(&tp(a, 24, b, 24)).len();
            assert!(matches!(n, 1 | 2 | 3 | 6), "orbit size {n}");
        }
    }

    #[test]
    fn jacobian_squared_is_weyl_invariant() {
        let p = tp(3, 17, 5, 19);
        let j2 = jacobian_theta(&p).powi(2);
        for g in &WEYL_GROUP {
            let q = weyl_apply(g, &p);
            assert!((jacobian_theta(&q).powi(2) - j2).abs() < 1e-6 * (1.0 + j2));
        }
    }

    #[test]
    fn jacobian_vanishes_on_deltoid_preimage() {
        // theta1 + theta2 = 0, 2 theta1 = theta2 and 2 theta2 = theta1 lines.
        for i in 1..34i64 {
            let t = r(i, 34);
            for p in [
                TorusPoint::new(t, -t),
                TorusPoint::new(t, t * 2),
                TorusPoint::new(t * 2, t),
            ] {
                assert!(jacobian_theta(&p).abs() < 1e-9, "J != 0 at {p}");
                assert!(phi(&p).radicand() < 1e-9);
            }
        }
    }

    #[test]
    fn cubic_roots_at_cusp_and_zero() {
        let roots = cubic_roots(Complex64::new(3.0, 0.0));
        for w in roots {
            assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
        // z = 0: roots are the cube roots of unity.
        let mut roots: Vec<_> = cubic_roots(Complex64::zero())
            .iter()
            .map(|w| {
                let t = w.arg() / TAU;
                ((t - t.floor()) * 3.0).round() as i64 % 3
            })
            .collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![0, 1, 2]);
    }

    #[test]
    fn phi_inverse_at_zero_hits_the_six_zero_points() {
        let pairs = phi_inverse(Complex64::zero()).unwrap();
        let expect = [
            (0.0, 1.0 / 3.0),
            (0.0, 2.0 / 3.0),
            (1.0 / 3.0, 0.0),
            (1.0 / 3.0, 1.0 / 3.0),
            (2.0 / 3.0, 0.0),
            (2.0 / 3.0, 2.0 / 3.0),
        ];
        for e in expect {
            assert!(
                pairs.iter().any(|p| angle_dist(p.0, e.0) + angle_dist(p.1, e.1) < 1e-9),
                "missing preimage {e:?}"
            );
        }
    }

    #[test]
    fn phi_inverse_at_one_contains_documented_pairs() {
        // Roots of w^3 - w^2 + w - 1 are 1, i, -i; pairs include (1, i) and (i, i).
        let pairs = phi_inverse(Complex64::new(1.0, 0.0)).unwrap();
        for e in [(0.0, 0.25), (0.25, 0.25)] {
            assert!(
                pairs.iter().any(|p| angle_dist(p.0, e.0) + angle_dist(p.1, e.1) < 1e-9),
                "missing pair {e:?}"
            );
        }
    }

    fn angle_dist(a: f64, b: f64) -> f64 {
        let d = (a - b).abs() % 1.0;
        d.min(1.0 - d)
    }

    #[test]
    fn phi_inverse_round_trip_and_diagonal_failure() {
        let mut k = 11i64;
        let mut interior = 0;
        while interior < 100 {
            k = (k * 48271) % 2147483647;
            let a = (k % 10_000) as f64 / 10_000.0;
            k = (k * 48271) % 2147483647;
            let b = (k % 10_000) as f64 / 10_000.0;
            let z = phi_at_angles(a, b);
            if radicand(z) < 1e-3 {
                continue;
            }
            interior += 1;
            for (t1, t2) in phi_inverse(z).unwrap() {
                assert!((phi_at_angles(t1, t2) - z).norm() < 1e-9);
            }
            // Diagonal pairs (k = l) generically miss z.
            let roots = cubic_roots(z);
            for w in roots {
                let (t1, t2) = to_angles(w, w.conj());
                assert!((phi_at_angles(t1, t2) - z).norm() > 1e-6);
            }
        }
    }
}
