//! Verification reports: moment-grid comparisons between two routes to the
//! same spectral measure, plus the drivers that fan verification out over
//! every registered subject.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::measures::{self, AtomicMeasure};
use crate::{nimrep, subgroups, Result};

/// Outcome of comparing one subject's theorem measure against its
/// eigenvalue/character reference on a grid of moments.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub max_moment: u32,
    pub tol: f64,
    /// Mass the theorem combination was divided by before comparing
    /// (1.0 when `normalize` was off).
    pub scale: f64,
    /// `deltas[m][n] = |moment_theorem(m,n) - moment_reference(m,n)|`.
    pub deltas: Vec<Vec<f64>>,
    pub max_delta: f64,
    pub pass: bool,
    /// Erratum flags and other observations, e.g. printed coefficients that
    /// fail a mass audit.
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Compare moments of `theorem` against `reference` for all
    /// `0 <= m, n <= max_moment`.
    pub fn compare(
        subject: &str,
        theorem: &AtomicMeasure,
        reference: &AtomicMeasure,
        max_moment: u32,
        tol: f64,
        normalize: bool,
        notes: Vec<String>,
    ) -> Self {
        let (theorem, scale) = if normalize {
            let mass = theorem.total_mass();
            (theorem.scale(1.0 / mass), mass)
        } else {
            (theorem.clone(), 1.0)
        };
        let mut deltas = Vec::with_capacity(max_moment as usize + 1);
        let mut max_delta = 0.0f64;
        for m in 0..=max_moment {
            let mut row = Vec::with_capacity(max_moment as usize + 1);
            for n in 0..=max_moment {
                let d = (theorem.moment(m, n) - reference.moment(m, n)).norm();
                max_delta = max_delta.max(d);
                row.push(d);
            }
            deltas.push(row);
        }
        VerificationReport {
            subject: subject.to_string(),
            max_moment,
            tol,
            scale,
            deltas,
            max_delta,
            pass: max_delta < tol,
            notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line summary in the form the verification drivers print.
    pub fn summary_line(&self) -> String {
        format!(
            "{:5} {:<12} max|delta|={:.3e} scale={:.6} tol={:.1e}{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.subject,
            self.max_delta,
            self.scale,
            self.tol,
            if self.notes.is_empty() { "" } else { " [notes]" },
        )
    }
}

/// Check the four closed-form identities between the measure families as
/// atom-level equalities. The report's `deltas` hold one row per relation
/// with the pointwise weight deltas.
pub fn verify_relations(tol: f64) -> Result<VerificationReport> {
    use num_rational::Rational64;
    let rat = |n: i64, d: i64| Rational64::new(n, d);

    let d1 = measures::d_measure(1)?;
    let d2 = measures::d_measure(2)?;
    let d3 = measures::d_measure(3)?;
    let d4 = measures::d_measure(4)?;

    // 3 J^2 d^(3) = J^2 d_{3/2} x d_{3/2}
    let r1 = d3
        .j2_reweight()
        .scale(3.0)
        .max_pointwise_delta(&measures::uniform_roots_product(3, 3)?.j2_reweight());
    // d^((4)) = (1/24 pi^4) J^2 d^(4)
    let r2 = measures::dd_measure(rat(4, 1))?
        .max_pointwise_delta(&d4.j2_reweight().scale(1.0 / 24.0));
    // d^(n,0) = d^((n)), across integer and fractional n
    let r3 = [rat(4, 1), rat(8, 1), rat(24, 5), rat(5, 1)]
        .iter()
        .map(|&n| {
            Ok(measures::dnk_measure(n, Rational64::from_integer(0))?
                .max_pointwise_delta(&measures::dd_measure(n)?))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    // d^(6,1/6) = d^((2)) = (1/3)(4 d^(2) - d^(1))
    let dd2 = measures::dd_measure(rat(2, 1))?;
    let r4a = measures::dnk_measure(rat(6, 1), rat(1, 6))?.max_pointwise_delta(&dd2);
    let r4b = dd2.max_pointwise_delta(&measures::combine(&[
        (4.0 / 3.0, &d2),
        (-1.0 / 3.0, &d1),
    ]));

    let rows = vec![vec![r1], vec![r2], vec![r3], vec![r4a, r4b]];
    let max_delta = rows.iter().flatten().copied().fold(0.0f64, f64::max);
    Ok(VerificationReport {
        subject: "relations".into(),
        max_moment: 0,
        tol,
        scale: 1.0,
        deltas: rows,
        max_delta,
        pass: max_delta < tol,
        notes: vec!["atom-level pointwise weight deltas, one row per relation".into()],
    })
}

/// Every registered subject: the measure relations, all graphs at desk
/// scale, and all subgroups at desk scale.
pub fn default_subjects() -> Vec<String> {
    let mut subjects = vec!["relations".to_string()];
    subjects.extend(nimrep::registered_graphs());
    subjects.extend(subgroups::registered_groups());
    subjects
}

/// Verify one subject by name. Graph names, group names and "relations" are
/// accepted.
pub fn verify_subject(
    subject: &str,
    max_moment: u32,
    tol: f64,
    normalize: bool,
) -> Result<VerificationReport> {
    if subject == "relations" {
        return verify_relations(1e-10);
    }
    if let Ok(id) = nimrep::GraphId::parse(subject) {
        return nimrep::verify_graph(&id, max_moment, tol, normalize);
    }
    let id = subgroups::GroupId::parse(subject)?;
    subgroups::verify_group(&id, max_moment, tol, normalize)
}

/// Fan out over all default subjects on a worker pool; report writing is the
/// caller's job and stays serialized.
pub fn verify_all(max_moment: u32, tol: f64, normalize: bool) -> Result<Vec<VerificationReport>> {
    default_subjects()
        .par_iter()
        .map(|s| verify_subject(s, max_moment, tol, normalize))
        .collect()
}
