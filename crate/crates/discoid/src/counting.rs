//! Exact integer Laurent polynomials in the two torus variables, and the
//! invariant-dimension counts they compute.
//!
//! Torus integrals of Laurent polynomials are constant-term extractions, so
//! everything in this module is exact integer arithmetic. Two independent
//! walk-counting oracles cross-check the constant-term route.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

use crate::torus::{TorusPoint, TAU};
use crate::{Error, Result};

/// Integer-coefficient Laurent polynomial in `w1, w2`; keys are exponent
/// pairs, zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([((0, 0), 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i32, i32), i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if c != 0 {
                let entry = map.entry(e).or_insert_with(BigInt::zero);
                *entry += c;
                if entry.is_zero() {
                    map.remove(&e);
                }
            }
        }
        LaurentPoly2 { terms: map }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, a: i32, b: i32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the trivial monomial; equals the normalized integral
    /// over the torus.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0, 0)
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let e = (a1 + a2, b1 + b2);
                let entry = map.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly2 { terms: map }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Numeric evaluation at a torus point.
    pub fn evaluate(&self, p: &TorusPoint) -> Complex64 {
        let t1 = p.theta1().to_f64().unwrap();
        let t2 = p.theta2().to_f64().unwrap();
        let mut acc = Complex64::zero();
        for ((a, b), c) in &self.terms {
            let phase = TAU * (*a as f64 * t1 + *b as f64 * t2);
            acc += c.to_f64().unwrap() * Complex64::from_polar(1.0, phase);
        }
        acc
    }
}

/// `w1 + w2^-1 + w1^-1 w2`, the character of the fundamental representation.
pub fn phi_poly() -> LaurentPoly2 {
    LaurentPoly2::from_terms([((1, 0), 1), ((0, -1), 1), ((-1, 1), 1)])
}

/// Its conjugate `w1^-1 + w2 + w1 w2^-1`.
pub fn phi_bar_poly() -> LaurentPoly2 {
    LaurentPoly2::from_terms([((-1, 0), 1), ((0, 1), 1), ((1, -1), 1)])
}

/// `R_{m,n} = (w1 + w2^-1 + w1^-1 w2)^m (w1^-1 + w2 + w1 w2^-1)^n`.
pub fn r_poly(m: u32, n: u32) -> LaurentPoly2 {
    phi_poly().pow(m).mul(&phi_bar_poly().pow(n))
}

/// `i J / 2 pi^2` as a six-term Laurent polynomial with unit coefficients.
pub fn q_poly() -> LaurentPoly2 {
    LaurentPoly2::from_terms([
        ((1, 1), 1),
        ((-1, -1), -1),
        ((2, -1), -1),
        ((-2, 1), 1),
        ((-1, 2), -1),
        ((1, -2), 1),
    ])
}

/// The sextic averaging factor of the tangle-counting coefficient; equal to
/// `-i J / 2 pi^2`.
fn kuperberg_sextic() -> LaurentPoly2 {
    LaurentPoly2::from_terms([
        ((-1, 2), 1),
        ((1, 1), -1),
        ((2, -1), 1),
        ((1, -2), -1),
        ((-1, -1), 1),
        ((-2, 1), -1),
    ])
}

/// `dim (tensor^k M_3)^{T^2}`: the constant term of `R_{k,k}`.
pub fn dim_torus_invariants(k: u32) -> BigInt {
    r_poly(k, k).constant_term()
}

/// `dim (tensor^k M_3)^{SU(3)}`: `-CT(R_{k,k} q^2) / 6`, an exact division.
pub fn dim_su3_invariants(k: u32) -> Result<BigInt> {
    let c = -r_poly(k, k).mul(&q_poly().pow(2)).constant_term();
    if (&c % 6u32).is_zero() {
        Ok(c / 6)
    } else {
        Err(Error::NonIntegralDivision(format!(
            "-CT(R_{{{k},{k}}} q^2) = {c} is not divisible by 6"
        )))
    }
}

/// Coefficient of `w1^-1 w2^2` in `R_{k,n}` times the sextic.
pub fn kuperberg_coeff(k: u32, n: u32) -> BigInt {
    r_poly(k, n).mul(&kuperberg_sextic()).coefficient(-1, 2)
}

/// Closed-walk oracle for the torus count: `k` steps from
/// `{(1,0),(0,-1),(-1,1)}` followed by `k` from the negated set, returning
/// to the origin. Independent of the polynomial engine.
pub fn torus_walk_oracle(k: u32) -> BigInt {
    let steps_a = [(1i32, 0i32), (0, -1), (-1, 1)];
    let steps_b = [(-1i32, 0i32), (0, 1), (1, -1)];
    let advance = |state: &HashMap<(i32, i32), BigInt>, steps: &[(i32, i32)]| {
        let mut next: HashMap<(i32, i32), BigInt> = HashMap::new();
        for ((x, y), c) in state {
            for (dx, dy) in steps {
                let entry = next.entry((x + dx, y + dy)).or_insert_with(BigInt::zero);
                *entry += c;
            }
        }
        next
    };
    let mut state: HashMap<(i32, i32), BigInt> = HashMap::new();
    state.insert((0, 0), BigInt::one());
    for _ in 0..k {
        state = advance(&state, &steps_a);
    }
    for _ in 0..k {
        state = advance(&state, &steps_b);
    }
    state.remove(&(0, 0)).unwrap_or_else(BigInt::zero)
}

/// Multiplicity of the trivial weight in `V^k (Vbar)^k` by iterated fusion
/// with the fundamental on dominant weights. Steps that leave the dominant
/// cone are dropped.
pub fn fusion_walk_oracle(k: u32) -> BigInt {
    let fuse = |state: &HashMap<(i32, i32), BigInt>, steps: &[(i32, i32)]| {
        let mut next: HashMap<(i32, i32), BigInt> = HashMap::new();
        for ((a, b), c) in state {
            for (da, db) in steps {
                let (a2, b2) = (a + da, b + db);
                if a2 >= 0 && b2 >= 0 {
                    let entry = next.entry((a2, b2)).or_insert_with(BigInt::zero);
                    *entry += c;
                }
            }
        }
        next
    };
    let rho = [(1i32, 0i32), (-1, 1), (0, -1)];
    let rho_bar = [(0i32, 1i32), (1, -1), (-1, 0)];
    let mut state: HashMap<(i32, i32), BigInt> = HashMap::new();
    state.insert((0, 0), BigInt::one());
    for _ in 0..k {
        state = fuse(&state, &rho);
    }
    for _ in 0..k {
        state = fuse(&state, &rho_bar);
    }
    state.remove(&(0, 0)).unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::jacobian_theta;
    use num_traits::Signed;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn r_poly_basics() {
        assert_eq!(r_poly(0, 0), LaurentPoly2::one());
        let r10 = r_poly(1, 0);
        assert_eq!(r10.num_terms(), 3);
        assert_eq!(r10.coefficient_sum(), big(3));
        assert_eq!(r_poly(1, 1).constant_term(), big(3));
    }

    #[test]
    fn q_poly_basics() {
        let q = q_poly();
        assert_eq!(q.num_terms(), 6);
        assert_eq!(q.coefficient_sum(), big(0));
        assert_eq!(q.pow(2).constant_term(), big(-6));
    }

    #[test]
    fn q_poly_matches_jacobian_numerically() {
        for p in [
            TorusPoint::from_ints(1, 4, 1, 4),
            TorusPoint::from_ints(1, 7, 2, 5),
            TorusPoint::from_ints(3, 11, 5, 13),
        ] {
            let lhs = q_poly().evaluate(&p);
            let rhs = Complex64::new(0.0, 1.0) * jacobian_theta(&p)
                / (2.0 * std::f64::consts::PI.powi(2));
            assert!((lhs - rhs).norm() < 1e-9, "mismatch at {p}");
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_torus_invariants(0), big(1));
        assert_eq!(dim_torus_invariants(1), big(3));
        assert_eq!(dim_su3_invariants(0).unwrap(), big(1));
        assert_eq!(dim_su3_invariants(1).unwrap(), big(1));
        assert_eq!(dim_su3_invariants(2).unwrap(), big(2));
    }

    #[test]
    fn oracles_agree_with_constant_terms() {
        for k in 0..=6 {
            assert_eq!(dim_torus_invariants(k), torus_walk_oracle(k), "torus k={k}");
            assert_eq!(
                dim_su3_invariants(k).unwrap(),
                fusion_walk_oracle(k),
                "su3 k={k}"
            );
        }
    }

    #[test]
    fn kuperberg_examples() {
        assert_eq!(kuperberg_coeff(0, 0), big(1));
        assert_eq!(kuperberg_coeff(1, 1), dim_su3_invariants(1).unwrap());
        for k in 0..=5 {
            assert_eq!(
                kuperberg_coeff(k, k),
                dim_su3_invariants(k).unwrap(),
                "k={k}"
            );
        }
    }

    #[test]
    fn su3_count_divisible_by_six() {
        for k in 0..=8 {
            let c = -r_poly(k, k).mul(&q_poly().pow(2)).constant_term();
            assert!((&c % 6u32).is_zero(), "k={k}: {c}");
            assert!(!c.is_negative());
        }
    }

    #[test]
    fn lattice_rule_reproduces_su3_count() {
        // (1/24 pi^4) sum over D_N of R_{k,k} J^2 with N = 3k+3 integrates
        // the trigonometric polynomial exactly.
        use crate::measures::d_measure;
        for k in 0..=4u32 {
            let n = 3 * k + 3;
            let mu = d_measure(n).unwrap().j2_reweight().scale(1.0 / 24.0);
            let got = mu.moment(k, k).re;
            let want = dim_su3_invariants(k).unwrap().to_f64().unwrap();
            assert!((got - want).abs() < 1e-6, "k={k}: {got} vs {want}");
            assert!(mu.moment(k, k).im.abs() < 1e-8);
        }
    }
}
