//! Signed atomic measures on the torus.
//!
//! Four closed-form families cover every spectral measure in this crate:
//! product measures on roots of unity, the uniform measure on the lattice
//! `D_n`, and the two orbit measures seeded from `tau = e^(2 pi i / n)`.
//! On top of those sit Dirac atoms, linear combinations, reweighting by the
//! squared Jacobian, S3 symmetrisation and moment evaluation.
//!
//! Unit convention: `j2_reweight` multiplies atom weights by `J^2 / pi^4`,
//! so a theorem coefficient written `c / pi^4` enters a combination as the
//! plain scalar `c`. Weights carrying `J^2` are therefore dimensionless and
//! exactly representable up to double precision.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::torus::{self, TorusPoint, WEYL_GROUP};
use crate::{Error, Result};

/// Atoms with |weight| at or below this are dropped during canonicalisation.
/// Squared Jacobians evaluated on deltoid points leave residues around
/// 1e-29, far below; genuine theorem weights sit above 1e-4.
const DROP_EPS: f64 = 1e-12;

/// Tolerance for [`AtomicMeasure::is_positive`].
const POSITIVITY_TOL: f64 = -1e-10;

/// One weighted Dirac point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub point: TorusPoint,
    pub weight: f64,
}

/// A finite signed atomic measure on `T^2`, canonicalized: atoms are sorted
/// lexicographically by exact angles, no two share a point, and negligible
/// weights are dropped.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn zero() -> Self {
        AtomicMeasure { atoms: Vec::new() }
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = (TorusPoint, f64)>) -> Self {
        let mut map: BTreeMap<TorusPoint, f64> = BTreeMap::new();
        for (p, w) in atoms {
            *map.entry(p).or_insert(0.0) += w;
        }
        AtomicMeasure {
            atoms: map
                .into_iter()
                .filter(|(_, w)| w.abs() > DROP_EPS)
                .map(|(point, weight)| Atom { point, weight })
                .collect(),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|a| a.weight > POSITIVITY_TOL)
    }

    pub fn weight_at(&self, p: &TorusPoint) -> f64 {
        self.atoms
            .binary_search_by(|a| a.point.cmp(p))
            .map(|i| self.atoms[i].weight)
            .unwrap_or(0.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_atoms(self.atoms.iter().map(|a| (a.point, c * a.weight)))
    }

    /// `(1/6) sum_g g . mu`; idempotent, mass preserving.
    pub fn symmetrize(&self) -> Self {
        Self::from_atoms(self.atoms.iter().flat_map(|a| {
            WEYL_GROUP
                .iter()
                .map(move |g| (torus::weyl_apply(g, &a.point), a.weight / 6.0))
        }))
    }

    /// Multiply each atom weight by `J^2(point) / pi^4`; deltoid atoms
    /// acquire weight zero and are dropped.
    pub fn j2_reweight(&self) -> Self {
        let pi4 = std::f64::consts::PI.powi(4);
        Self::from_atoms(self.atoms.iter().map(|a| {
            let j = torus::jacobian_theta(&a.point);
            (a.point, a.weight * j * j / pi4)
        }))
    }

    /// `sum_atoms w . Phi(p)^m . conj(Phi(p))^n`.
    pub fn moment(&self, m: u32, n: u32) -> Complex64 {
        let mut acc = Complex64::zero();
        for a in &self.atoms {
            let z = torus::phi(&a.point).z();
            acc += a.weight * z.powu(m) * z.conj().powu(n);
        }
        acc
    }

    /// Largest pointwise weight difference over the union of supports.
    pub fn max_pointwise_delta(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for a in &self.atoms {
            worst = worst.max((a.weight - other.weight_at(&a.point)).abs());
        }
        for b in &other.atoms {
            worst = worst.max((b.weight - self.weight_at(&b.point)).abs());
        }
        worst
    }
}

/// Canonicalized signed sum of scaled measures; linear in each argument.
pub fn combine(terms: &[(f64, &AtomicMeasure)]) -> AtomicMeasure {
    AtomicMeasure::from_atoms(
        terms
            .iter()
            .flat_map(|(c, mu)| mu.atoms().iter().map(move |a| (a.point, c * a.weight))),
    )
}

/// Unit mass at one point.
pub fn dirac(p: TorusPoint) -> AtomicMeasure {
    AtomicMeasure::from_atoms([(p, 1.0)])
}

/// Product of uniform measures on the `p`-th and `q`-th roots of unity:
/// `p q` atoms of mass `1/(p q)`. The subscript convention of the measure
/// families is half the root count, so `d_{3/2} x d_{3/2}` is `(3, 3)` here.
pub fn uniform_roots_product(p: u32, q: u32) -> Result<AtomicMeasure> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("root counts must be >= 1".into()));
    }
    let w = 1.0 / (p as f64 * q as f64);
    Ok(AtomicMeasure::from_atoms((0..p).flat_map(|a| {
        (0..q).map(move |b| {
            (
                TorusPoint::new(
                    Rational64::new(a as i64, p as i64),
                    Rational64::new(b as i64, q as i64),
                ),
                w,
            )
        })
    })))
}

/// Uniform measure on `D_n`: points `(q1/3n, q2/3n)` with
/// `q1 + q2 = 0 mod 3`, exactly `3 n^2` of them.
pub fn d_measure(n: u32) -> Result<AtomicMeasure> {
    if n == 0 {
        return Err(Error::InvalidParameter("d_measure requires n >= 1".into()));
    }
    let d = 3 * n as i64;
    let w = 1.0 / (3.0 * n as f64 * n as f64);
    Ok(AtomicMeasure::from_atoms(
        (0..d)
            .flat_map(|q1| (0..d).map(move |q2| (q1, q2)))
            .filter(|(q1, q2)| (q1 + q2) % 3 == 0)
            .map(|(q1, q2)| {
                (
                    TorusPoint::new(Rational64::new(q1, d), Rational64::new(q2, d)),
                    w,
                )
            }),
    ))
}

fn third() -> Rational64 {
    Rational64::new(1, 3)
}

/// Orbit union, uniform over the distinct support points.
fn uniform_on_orbits(seeds: impl IntoIterator<Item = TorusPoint>) -> AtomicMeasure {
    let mut support: Vec<TorusPoint> = Vec::new();
    for s in seeds {
        for p in torus::weyl_orbit(&s) {
            if !support.contains(&p) {
                support.push(p);
            }
        }
    }
    let w = 1.0 / support.len() as f64;
    AtomicMeasure::from_atoms(support.into_iter().map(|p| (p, w)))
}

/// Uniform measure on the S3 orbits of `(tau, tau)`, `(conj(omega tau), omega)`
/// and `(omega, conj(omega tau))` for `tau = e^(2 pi i/n)`, rational `n >= 2`.
/// Support has 18 points generically, 9 at `n = 2`, 6 at `n = 3`.
pub fn dd_measure(n: Rational64) -> Result<AtomicMeasure> {
    if n < Rational64::from_integer(2) {
        return Err(Error::InvalidParameter(format!("dd_measure requires n >= 2, got {n}")));
    }
    let t = n.recip();
    Ok(uniform_on_orbits([
        TorusPoint::new(t, t),
        TorusPoint::new(-third() - t, third()),
        TorusPoint::new(third(), -third() - t),
    ]))
}

/// Uniform measure on the six seed orbits of the two-parameter family, for
/// rational `n > 2` and `0 <= k <= 1/n`. Support has 36 points for
/// `0 < k < 1/n` and degenerates at the endpoints.
pub fn dnk_measure(n: Rational64, k: Rational64) -> Result<AtomicMeasure> {
    if n <= Rational64::from_integer(2) {
        return Err(Error::InvalidParameter(format!("dnk_measure requires n > 2, got {n}")));
    }
    if k < Rational64::zero() || k > n.recip() {
        return Err(Error::InvalidParameter(format!(
            "dnk_measure requires 0 <= k <= 1/n, got k={k}, 1/n={}",
            n.recip()
        )));
    }
    let t = n.recip();
    Ok(uniform_on_orbits([
        TorusPoint::new(t + k, t),
        TorusPoint::new(t, t + k),
        TorusPoint::new(-third() - t, third() + k),
        TorusPoint::new(third() + k, -third() - t),
        TorusPoint::new(-third() - t - k, third() - k),
        TorusPoint::new(third() - k, -third() - t - k),
    ]))
}

// ---------------------------------------------------------------------------
// Serialization: a flat JSON schema and a CSV of the same columns.
//
// Angles serialize as exact "p/q" strings; weights and Phi values as floats
// printed with 17 significant digits so identical invocations are
// byte-identical and reparsing recovers the exact f64.
// ---------------------------------------------------------------------------

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_rational(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational64> {
    let err = || Error::DataValidation(format!("bad rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        Ok(Rational64::new(n, d))
    } else {
        let n: i64 = s.trim().parse().map_err(|_| err())?;
        Ok(Rational64::from_integer(n))
    }
}

impl AtomicMeasure {
    /// JSON document: `{"atoms":[{"theta1":"p/q","theta2":"p/q",
    /// "weight":w,"z":[re,im]},...]}`.
    pub fn to_json_string(&self) -> String {
        let mut out = String::from("{\n  \"atoms\": [\n");
        for (i, a) in self.atoms.iter().enumerate() {
            let z = torus::phi(&a.point).z();
            out.push_str(&format!(
                "    {{\"theta1\": \"{}\", \"theta2\": \"{}\", \"weight\": {}, \"z\": [{}, {}]}}{}\n",
                fmt_rational(a.point.theta1()),
                fmt_rational(a.point.theta2()),
                fmt_f64(a.weight),
                fmt_f64(z.re),
                fmt_f64(z.im),
                if i + 1 < self.atoms.len() { "," } else { "" },
            ));
        }
        out.push_str("  ]\n}\n");
        out
    }

    /// CSV with header `theta1,theta2,weight,z_re,z_im`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("theta1,theta2,weight,z_re,z_im\n");
        for a in &self.atoms {
            let z = torus::phi(&a.point).z();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_rational(a.point.theta1()),
                fmt_rational(a.point.theta2()),
                fmt_f64(a.weight),
                fmt_f64(z.re),
                fmt_f64(z.im),
            ));
        }
        out
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::DataValidation(format!("bad measure JSON: {e}")))?;
        let atoms = v
            .get("atoms")
            .and_then(|a| a.as_array())
            .ok_or_else(|| Error::DataValidation("measure JSON lacks \"atoms\"".into()))?;
        let mut out = Vec::with_capacity(atoms.len());
        for a in atoms {
            let get_str = |k: &str| {
                a.get(k)
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| Error::DataValidation(format!("atom lacks string {k:?}")))
            };
            let t1 = parse_rational(get_str("theta1")?)?;
            let t2 = parse_rational(get_str("theta2")?)?;
            let w = a
                .get("weight")
                .and_then(|x| x.as_f64())
                .ok_or_else(|| Error::DataValidation("atom lacks weight".into()))?;
            out.push((TorusPoint::new(t1, t2), w));
        }
        Ok(Self::from_atoms(out))
    }
}
