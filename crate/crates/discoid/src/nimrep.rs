//! Exponent and vacuum-weight data for the SU(3) ADE graphs, the eigen-data
//! moment route, the closed-form theorem measures, and an adjacency-matrix
//! oracle for the A-series.
//!
//! The exceptional graphs ship as an embedded data table; the D-star series
//! is generated from its exponent automorphism. The two routes to each
//! spectral measure are compared by [`verify_graph`].

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Deserialize;

use crate::measures::{self, AtomicMeasure};
use crate::report::VerificationReport;
use crate::torus::TorusPoint;
use crate::{Error, Result};

const GRAPH_DATA: &str = include_str!("../data/graphs.json");

/// One exponent of a nimrep graph with its squared vacuum eigenvector entry.
#[derive(Clone, Copy, Debug)]
pub struct Exponent {
    pub lambda1: u32,
    pub lambda2: u32,
    pub weight: f64,
}

/// A named graph's level parameter and exponent list. `weights_sum` records
/// the raw mass of the table before normalization (3 for the D-star series,
/// 1 for the exceptional graphs).
#[derive(Clone, Debug)]
pub struct GraphSpectrum {
    pub name: String,
    pub n: u32,
    pub exponents: Vec<Exponent>,
    pub weights_sum: f64,
}

/// The exact angle pair of a Dynkin label:
/// `((l1 + 2 l2 + 3)/3n, (2 l1 + l2 + 3)/3n)` mod 1.
pub fn theta_of_exponent(lambda: (u32, u32), n: u32) -> TorusPoint {
    let (l1, l2) = (lambda.0 as i64, lambda.1 as i64);
    let d = 3 * n as i64;
    TorusPoint::new(
        Rational64::new(l1 + 2 * l2 + 3, d),
        Rational64::new(2 * l1 + l2 + 3, d),
    )
}

#[derive(Deserialize)]
struct GraphFile {
    schema_version: u32,
    graphs: Vec<GraphEntry>,
}

#[derive(Deserialize)]
struct GraphEntry {
    name: String,
    n: u32,
    exponents: Vec<ExponentEntry>,
}

#[derive(Deserialize)]
struct ExponentEntry {
    lambda: (u32, u32),
    weight: f64,
}

fn load_graph_table() -> Result<Vec<GraphSpectrum>> {
    let file: GraphFile = serde_json::from_str(GRAPH_DATA)
        .map_err(|e| Error::DataValidation(format!("graphs.json: {e}")))?;
    if file.schema_version != 1 {
        return Err(Error::DataValidation(format!(
            "unsupported graph schema version {}",
            file.schema_version
        )));
    }
    file.graphs
        .into_iter()
        .map(|g| {
            let mut sum = 0.0;
            let mut exponents = Vec::new();
            for e in &g.exponents {
                if e.weight < 0.0 {
                    return Err(Error::DataValidation(format!(
                        "{}: negative weight at {:?}",
                        g.name, e.lambda
                    )));
                }
                if e.lambda.0 + e.lambda.1 + 3 > g.n {
                    return Err(Error::DataValidation(format!(
                        "{}: exponent {:?} outside level {}",
                        g.name, e.lambda, g.n
                    )));
                }
                sum += e.weight;
                if e.weight > 0.0 {
                    exponents.push(Exponent {
                        lambda1: e.lambda.0,
                        lambda2: e.lambda.1,
                        weight: e.weight,
                    });
                }
            }
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::DataValidation(format!(
                    "{}: weights sum to {sum}, expected 1",
                    g.name
                )));
            }
            Ok(GraphSpectrum { name: g.name, n: g.n, exponents, weights_sum: sum })
        })
        .collect()
}

/// Exponents of the D-star graph at level parameter `n`: the order-3
/// automorphism `A(m1, m2) = (n - 3 - m1 - m2, m1)` applied to the diagonal
/// labels, kept with multiplicity, each row carrying
/// `(4/n) sin^2(2 pi (l1 + 1)/n)`. The rows sum to 3 and are rescaled on
/// use; `weights_sum` records the factor.
pub fn dstar_spectrum(n: u32) -> Result<GraphSpectrum> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!("Dstar requires n >= 5, got {n}")));
    }
    let mut exponents = Vec::new();
    let mut sum = 0.0;
    for l1 in 0..=(n - 3) / 2 {
        let w = 4.0 / n as f64
            * (std::f64::consts::TAU * (l1 + 1) as f64 / n as f64).sin().powi(2);
        let mut mu = (l1 as i64, l1 as i64);
        for _ in 0..3 {
            exponents.push(Exponent {
                lambda1: mu.0 as u32,
                lambda2: mu.1 as u32,
                weight: w,
            });
            sum += w;
            mu = (n as i64 - 3 - mu.0 - mu.1, mu.0);
        }
    }
    Ok(GraphSpectrum {
        name: format!("Dstar({n})"),
        n,
        exponents,
        weights_sum: sum,
    })
}

/// Identifier of a graph with a shipped or generated spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphId {
    E8,
    E1_12,
    E2_12,
    E4_12,
    E5_12,
    E24,
    DStar(u32),
}

impl GraphId {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "E8" => return Ok(GraphId::E8),
            "E1_12" => return Ok(GraphId::E1_12),
            "E2_12" => return Ok(GraphId::E2_12),
            "E4_12" => return Ok(GraphId::E4_12),
            "E5_12" => return Ok(GraphId::E5_12),
            "E24" => return Ok(GraphId::E24),
            _ => {}
        }
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("dstar") {
            let inner = rest.trim_matches(|c| c == '(' || c == ')');
            if let Ok(n) = inner.parse::<u32>() {
                return Ok(GraphId::DStar(n));
            }
        }
        Err(Error::UnknownSubject(s.to_string()))
    }

    pub fn name(&self) -> String {
        match self {
            GraphId::E8 => "E8".into(),
            GraphId::E1_12 => "E1_12".into(),
            GraphId::E2_12 => "E2_12".into(),
            GraphId::E4_12 => "E4_12".into(),
            GraphId::E5_12 => "E5_12".into(),
            GraphId::E24 => "E24".into(),
            GraphId::DStar(n) => format!("Dstar({n})"),
        }
    }
}

/// Graph names covered by `verify all` and the acceptance run.
pub fn registered_graphs() -> Vec<String> {
    let mut v: Vec<String> = ["E8", "E1_12", "E2_12", "E4_12", "E5_12", "E24"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    v.extend((5..=10).map(|n| format!("Dstar({n})")));
    v
}

/// Load the spectrum for a graph identifier.
pub fn graph_spectrum(id: &GraphId) -> Result<GraphSpectrum> {
    match id {
        GraphId::DStar(n) => dstar_spectrum(*n),
        _ => {
            let name = id.name();
            load_graph_table()?
                .into_iter()
                .find(|g| g.name == name)
                .ok_or_else(|| Error::UnknownSubject(name))
        }
    }
}

/// The spectral measure from eigen-data: the symmetrized sum of Dirac atoms
/// at the exponent angles, with table weights rescaled to unit mass.
pub fn eigen_measure(spec: &GraphSpectrum) -> AtomicMeasure {
    AtomicMeasure::from_atoms(spec.exponents.iter().map(|e| {
        (
            theta_of_exponent((e.lambda1, e.lambda2), spec.n),
            e.weight / spec.weights_sum,
        )
    }))
    .symmetrize()
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// The closed-form measure stated for each graph, as a combination of the
/// lattice families. For the twelve-level conjugate Moore-Seiberg graph the
/// squared-Jacobian coefficients printed with the theorem fail a mass audit;
/// the combination built here uses the mass-consistent values from its own
/// derivation, and [`verify_graph`] reports the discrepancy.
pub fn theorem_measure(id: &GraphId) -> Result<AtomicMeasure> {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let m = match id {
        GraphId::E8 => measures::combine(&[
            ((2.0 - s2) / 8.0, &measures::dd_measure(rat(8, 1))?),
            ((2.0 + s2) / 8.0, &measures::dd_measure(rat(8, 3))?),
            (0.5, &measures::dnk_measure(rat(24, 5), rat(1, 12))?),
        ]),
        GraphId::E1_12 => measures::combine(&[
            ((2.0 - s3) / 12.0, &measures::dd_measure(rat(12, 1))?),
            ((2.0 + s3) / 12.0, &measures::dd_measure(rat(12, 5))?),
            (1.0 / 36.0, &measures::d_measure(4)?.j2_reweight()),
        ]),
        GraphId::E2_12 => measures::combine(&[
            ((2.0 + s3) / 12.0, &measures::dd_measure(rat(12, 1))?),
            ((2.0 - s3) / 12.0, &measures::dd_measure(rat(12, 5))?),
            (1.0 / 36.0, &measures::d_measure(4)?.j2_reweight()),
        ]),
        GraphId::E4_12 => measures::combine(&[
            (1.0 / 12.0, &measures::dd_measure(rat(12, 1))?),
            (1.0 / 12.0, &measures::dd_measure(rat(12, 5))?),
            (1.0 / 72.0, &measures::d_measure(4)?.j2_reweight()),
            (1.0 / 48.0, &measures::d_measure(3)?.j2_reweight()),
        ]),
        GraphId::E5_12 => measures::combine(&[
            (1.0 / 3.0, &measures::dd_measure(rat(12, 1))?),
            (1.0 / 3.0, &measures::dd_measure(rat(12, 5))?),
            (1.0 / 72.0, &measures::d_measure(4)?.j2_reweight()),
        ]),
        GraphId::E24 => {
            let s6 = 6f64.sqrt();
            measures::combine(&[
                ((6.0 - 2.0 * s3 - s6) / 48.0, &measures::dd_measure(rat(24, 1))?),
                ((6.0 + 2.0 * s3 - s6) / 48.0, &measures::dd_measure(rat(24, 5))?),
                ((6.0 + 2.0 * s3 + s6) / 48.0, &measures::dd_measure(rat(24, 7))?),
                ((6.0 - 2.0 * s3 + s6) / 48.0, &measures::dd_measure(rat(24, 11))?),
                ((2.0 - s2) / 8.0, &measures::dnk_measure(rat(8, 1), rat(1, 12))?),
                ((2.0 + s2) / 8.0, &measures::dnk_measure(rat(4, 1), rat(1, 24))?),
            ])
        }
        GraphId::DStar(n) => {
            if *n < 5 {
                return Err(Error::InvalidParameter(format!(
                    "Dstar requires n >= 5, got {n}"
                )));
            }
            let nf = *n as f64;
            let mut parts = Vec::new();
            for j in 1..=(n - 1) / 2 {
                let c = 12.0 / nf
                    * (std::f64::consts::TAU * j as f64 / nf).sin().powi(2);
                parts.push((c, measures::dd_measure(rat(*n as i64, j as i64))?));
            }
            let refs: Vec<(f64, &AtomicMeasure)> =
                parts.iter().map(|(c, m)| (*c, m)).collect();
            measures::combine(&refs)
        }
    };
    Ok(m)
}

/// Adjacency matrix of the A-series graph at level parameter `n`, over the
/// Dynkin labels `l1 + l2 <= n - 3`, together with the index of the apex
/// vertex `(0, 0)`. Edges follow fusion with the fundamental:
/// `(l1, l2) -> (l1+1, l2), (l1-1, l2+1), (l1, l2-1)` within the triangle.
pub fn a_graph_adjacency(n: u32) -> Result<(Vec<Vec<i64>>, usize)> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("A-graph requires n >= 4, got {n}")));
    }
    let level = (n - 3) as i64;
    let mut vertices = Vec::new();
    for l1 in 0..=level {
        for l2 in 0..=(level - l1) {
            vertices.push((l1, l2));
        }
    }
    let index = |v: (i64, i64)| vertices.iter().position(|&u| u == v);
    let mut adj = vec![vec![0i64; vertices.len()]; vertices.len()];
    for (i, &(l1, l2)) in vertices.iter().enumerate() {
        for step in [(1, 0), (-1, 1), (0, -1)] {
            let w = (l1 + step.0, l2 + step.1);
            if w.0 >= 0 && w.1 >= 0 && w.0 + w.1 <= level {
                adj[i][index(w).unwrap()] += 1;
            }
        }
    }
    let star = index((0, 0)).unwrap();
    Ok((adj, star))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut t = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            t[j][i] = a[i][j];
        }
    }
    t
}

/// `(star, star)` entry of `adj^m (adj^T)^n`; errors unless the matrix is
/// normal, since only then does it define a spectral measure.
pub fn matrix_moments(adj: &[Vec<i64>], star: usize, m: u32, n: u32) -> Result<Complex64> {
    let t = transpose(adj);
    if mat_mul(adj, &t) != mat_mul(&t, adj) {
        return Err(Error::NotNormal);
    }
    let dim = adj.len();
    let mut acc: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..m {
        acc = mat_mul(&acc, adj);
    }
    for _ in 0..n {
        acc = mat_mul(&acc, &t);
    }
    Ok(Complex64::new(acc[star][star] as f64, 0.0))
}

/// The erratum flag attached to verification of the conjugate Moore-Seiberg
/// graph: the printed squared-Jacobian coefficients against the
/// mass-consistent ones actually used.
fn e4_12_note() -> String {
    "printed J^2 coefficients 1/(12 pi^4) on d^(4) and 1/(8 pi^4) on d^(3) carry masses 2 \
     and 3; the derivation's 1/(72 pi^4) and 1/(48 pi^4) (masses 1/3 and 1/2) are used instead"
        .to_string()
}

/// Compare theorem-measure moments against eigen-data moments on the grid
/// `0 <= m, n <= max_moment`.
pub fn verify_graph(
    id: &GraphId,
    max_moment: u32,
    tol: f64,
    normalize: bool,
) -> Result<VerificationReport> {
    let spec = graph_spectrum(id)?;
    let reference = eigen_measure(&spec);
    let theorem = theorem_measure(id)?;
    let mut notes = Vec::new();
    if let GraphId::E4_12 = id {
        notes.push(e4_12_note());
    }
    if let GraphId::DStar(_) = id {
        notes.push(format!(
            "exponent table shares one |psi|^2 across each A-orbit triple; raw rows sum to {:.6} \
             and are rescaled to unit mass",
            spec.weights_sum
        ));
    }
    Ok(VerificationReport::compare(
        &id.name(),
        &theorem,
        &reference,
        max_moment,
        tol,
        normalize,
        notes,
    ))
}
