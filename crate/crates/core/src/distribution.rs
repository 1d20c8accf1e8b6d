//! Sampleable binary data distributions on [0,1]^n.
//!
//! Two kinds are supported: finite-support distributions (weighted labeled
//! points) and the concentric shell family, where label +1 is uniform on an
//! inner ball and label -1 is uniform on an outer annulus. Shell radii and
//! densities are tracked in log space so dimensions in the thousands do not
//! underflow.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::dataset::{dist_sq, DataError, LabeledDataset};
use crate::scalar::{ln_unit_ball_volume, parse_rat, rat_to_f64, Rat};

#[derive(Debug, Error)]
pub enum DistError {
    #[error("invalid distribution: {0}")]
    Invalid(String),
    #[error("operation requires a finite-support distribution")]
    NotFiniteSupport,
    #[error("single-class distribution: opposite-class distance undefined")]
    SingleClass,
    #[error("dataset error: {0}")]
    Data(#[from] DataError),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Divisor of the ball radii in nearby sets. Any constant > 3 keeps the
/// cell-memorizer guarantees; it is pinned for reproducibility.
pub const NEARBY_RADIUS_DIVISOR: f64 = 3.1;

#[derive(Debug, Clone)]
pub struct FiniteSupport {
    pub points: Vec<Vec<f64>>,
    pub labels: Vec<i8>,
    pub probs: Vec<Rat>,
    pub exact: Option<Vec<Vec<Rat>>>,
}

#[derive(Debug, Clone)]
pub struct Shell {
    pub n: usize,
    pub center: Vec<f64>,
    pub ln_r1: f64,
    pub ln_r2: f64,
    pub ln_r3: f64,
}

impl Shell {
    pub fn r1(&self) -> f64 {
        self.ln_r1.exp()
    }
    pub fn r2(&self) -> f64 {
        self.ln_r2.exp()
    }
    pub fn r3(&self) -> f64 {
        self.ln_r3.exp()
    }

    /// ln of the uniform density value lambda = 1/(V(B(r1)) + V(B(r3)) - V(B(r2))).
    pub fn ln_density(&self) -> f64 {
        let ln_cn = ln_unit_ball_volume(self.n);
        let n = self.n as f64;
        // ln(V1 + V3 - V2) with V_i = C_n r_i^n, factored on V3.
        let a = (n * (self.ln_r1 - self.ln_r3)).exp();
        let b = (n * (self.ln_r2 - self.ln_r3)).exp();
        -(ln_cn + n * self.ln_r3 + (a + 1.0 - b).ln())
    }

    /// Relative residual of the mass identity r3^n - r2^n = r1^n,
    /// computed in log space.
    pub fn mass_identity_residual(&self) -> f64 {
        let n = self.n as f64;
        let a = (n * (self.ln_r1 - self.ln_r3)).exp();
        let b = (n * (self.ln_r2 - self.ln_r3)).exp();
        (a + b - 1.0).abs() / a
    }
}

#[derive(Debug, Clone)]
pub enum DataDistribution {
    Finite(FiniteSupport),
    Shell(Shell),
}

impl DataDistribution {
    /// Finite-support distribution; probabilities must sum to exactly 1.
    pub fn finite(
        points: Vec<Vec<f64>>,
        labels: Vec<i8>,
        probs: Vec<Rat>,
    ) -> Result<Self, DistError> {
        Self::finite_inner(points, labels, probs, None)
    }

    pub fn finite_exact(
        points: Vec<Vec<Rat>>,
        labels: Vec<i8>,
        probs: Vec<Rat>,
    ) -> Result<Self, DistError> {
        let mirror: Vec<Vec<f64>> = points
            .iter()
            .map(|p| p.iter().map(rat_to_f64).collect())
            .collect();
        Self::finite_inner(mirror, labels, probs, Some(points))
    }

    /// Uniform weights over the given support.
    pub fn finite_uniform(points: Vec<Vec<f64>>, labels: Vec<i8>) -> Result<Self, DistError> {
        let k = points.len();
        if k == 0 {
            return Err(DistError::Invalid("empty support".into()));
        }
        let w = Rat::new(BigInt::one(), BigInt::from(k as i64));
        Self::finite(points, labels, vec![w; k])
    }

    fn finite_inner(
        points: Vec<Vec<f64>>,
        labels: Vec<i8>,
        probs: Vec<Rat>,
        exact: Option<Vec<Vec<Rat>>>,
    ) -> Result<Self, DistError> {
        if points.is_empty() {
            return Err(DistError::Invalid("empty support".into()));
        }
        if points.len() != labels.len() || points.len() != probs.len() {
            return Err(DistError::Invalid(
                "points/labels/probs length mismatch".into(),
            ));
        }
        let total: Rat = probs.iter().fold(Rat::zero(), |a, b| a + b);
        if total != Rat::one() {
            return Err(DistError::Invalid("probabilities must sum to 1".into()));
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(DistError::Invalid("negative probability".into()));
        }
        // The label function must be well-defined on the support.
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] && labels[i] != labels[j] {
                    return Err(DistError::Invalid(format!(
                        "support points {j} and {i} coincide with opposite labels"
                    )));
                }
            }
        }
        Ok(DataDistribution::Finite(FiniteSupport {
            points,
            labels,
            probs,
            exact,
        }))
    }

    /// Shell distribution: +1 uniform in B(center, r1), -1 uniform in
    /// B(center, r3) \ B(center, r2). Requires B(center, r3) inside [0,1]^n.
    pub fn shell(
        n: usize,
        center: Vec<f64>,
        r1: f64,
        r2: f64,
        r3: f64,
    ) -> Result<Self, DistError> {
        if !(0.0 < r1 && r1 < r2 && r2 < r3) {
            return Err(DistError::Invalid(
                "radii must satisfy 0 < r1 < r2 < r3".into(),
            ));
        }
        if center.len() != n {
            return Err(DistError::Invalid("center dimension mismatch".into()));
        }
        for c in &center {
            if *c - r3 < 0.0 || *c + r3 > 1.0 {
                return Err(DistError::Invalid(
                    "outer ball must fit inside [0,1]^n".into(),
                ));
            }
        }
        Ok(DataDistribution::Shell(Shell {
            n,
            center,
            ln_r1: r1.ln(),
            ln_r2: r2.ln(),
            ln_r3: r3.ln(),
        }))
    }

    pub fn dim(&self) -> usize {
        match self {
            DataDistribution::Finite(f) => f.points[0].len(),
            DataDistribution::Shell(s) => s.n,
        }
    }

    /// Declared separation: minimum cross-class distance for finite support,
    /// r2 - r1 for the shell. `None` for a single-class finite support.
    pub fn separation(&self) -> Option<f64> {
        match self {
            DataDistribution::Finite(f) => {
                let mut best = f64::INFINITY;
                for i in 0..f.points.len() {
                    for j in 0..i {
                        if f.labels[i] != f.labels[j] {
                            best = best.min(dist_sq(&f.points[i], &f.points[j]).sqrt());
                        }
                    }
                }
                if best.is_finite() {
                    Some(best)
                } else {
                    None
                }
            }
            DataDistribution::Shell(s) => Some(s.r2() - s.r1()),
        }
    }

    /// ln of a density bound, when one exists (finite support has atoms).
    pub fn ln_density(&self) -> Option<f64> {
        match self {
            DataDistribution::Finite(_) => None,
            DataDistribution::Shell(s) => Some(s.ln_density()),
        }
    }

    /// N i.i.d. draws, deterministic under the seed.
    pub fn sample(&self, count: usize, seed: u64) -> Result<LabeledDataset, DistError> {
        if count == 0 {
            return Err(DistError::Invalid("cannot build an empty dataset".into()));
        }
        match self {
            DataDistribution::Finite(f) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let cum = cumulative(&f.probs);
                let mut idx = Vec::with_capacity(count);
                for _ in 0..count {
                    let u: f64 = rng.gen();
                    idx.push(cum.partition_point(|&c| c < u).min(f.points.len() - 1));
                }
                let labels: Vec<i8> = idx.iter().map(|&k| f.labels[k]).collect();
                match &f.exact {
                    Some(e) => Ok(LabeledDataset::from_exact(
                        idx.iter().map(|&k| e[k].clone()).collect(),
                        labels,
                    )?),
                    None => Ok(LabeledDataset::from_f64(
                        idx.iter().map(|&k| f.points[k].clone()).collect(),
                        labels,
                    )?),
                }
            }
            DataDistribution::Shell(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut pts = Vec::with_capacity(count);
                let mut labels = Vec::with_capacity(count);
                for _ in 0..count {
                    let (x, y) = sample_shell_point(s, &mut rng);
                    pts.push(x);
                    labels.push(y);
                }
                Ok(LabeledDataset::from_f64(pts, labels)?)
            }
        }
    }

    /// Streaming variant for large test batches: calls `f` with each draw.
    pub fn sample_stream<F: FnMut(&[f64], i8)>(&self, count: usize, seed: u64, mut f: F) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            DataDistribution::Finite(fs) => {
                let cum = cumulative(&fs.probs);
                for _ in 0..count {
                    let u: f64 = rng.gen();
                    let k = cum.partition_point(|&c| c < u).min(fs.points.len() - 1);
                    f(&fs.points[k], fs.labels[k]);
                }
            }
            DataDistribution::Shell(s) => {
                for _ in 0..count {
                    let (x, y) = sample_shell_point(s, &mut rng);
                    f(&x, y);
                }
            }
        }
    }
}

fn cumulative(probs: &[Rat]) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .iter()
        .map(|p| {
            acc += rat_to_f64(p);
            acc
        })
        .collect()
}

/// Direction uniform on the sphere (normalized Gaussian), radius by inverse
/// CDF of the volume element, computed in log space.
fn sample_shell_point(s: &Shell, rng: &mut ChaCha8Rng) -> (Vec<f64>, i8) {
    let n = s.n;
    let label: i8 = if rng.gen::<f64>() < 0.5 { 1 } else { -1 };
    let mut dir: Vec<f64> = (0..n)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut dir {
        *v /= norm;
    }
    let u: f64 = loop {
        let u = rng.gen::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let ln_radius = if label == 1 {
        // rho = r1 * u^(1/n)
        s.ln_r1 + u.ln() / n as f64
    } else {
        // rho = (u*(r3^n - r2^n) + r2^n)^(1/n), factored on r3^n
        let t = ((n as f64) * (s.ln_r2 - s.ln_r3)).exp();
        s.ln_r3 + (u * (1.0 - t) + t).ln() / n as f64
    };
    let rho = ln_radius.exp();
    let x: Vec<f64> = s
        .center
        .iter()
        .zip(dir.iter())
        .map(|(c, d)| c + rho * d)
        .collect();
    (x, label)
}

/// Shell instance tuned so that every width-w projection loses the classes:
/// the smallest n with 3^(w/n) < 1.001, radii in ratio 1 : 2^(1/n) : 3^(1/n),
/// rescaled by 1/(2*3^(1/n)) and centered at (0.5,...,0.5).
pub fn make_shell(w: usize) -> DataDistribution {
    assert!(w >= 1);
    let mut n = ((w as f64) * 3f64.ln() / 1.001f64.ln()).floor() as usize + 1;
    while 3f64.powf(w as f64 / n as f64) >= 1.001 {
        n += 1;
    }
    let nf = n as f64;
    let ln2 = 2f64.ln();
    let ln3 = 3f64.ln();
    let shell = Shell {
        n,
        center: vec![0.5; n],
        ln_r1: -ln2 - ln3 / nf,
        ln_r2: -ln2 + (ln2 - ln3) / nf,
        ln_r3: -ln2,
    };
    DataDistribution::Shell(shell)
}

// ---------------------------------------------------------------------------
// Nearby sets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct NearbyMember {
    pub point: Vec<f64>,
    pub label: i8,
    pub radius: f64,
}

/// A greedy cover of the support by balls of radius L/3.1 where L is the
/// distance to the nearest opposite-class support point. Its size is a
/// certified upper bound on the minimal nearby-set size (minimality is
/// NP-hard in general; everywhere this size appears it is an upper bound).
#[derive(Debug, Clone)]
pub struct NearbySet {
    pub members: Vec<NearbyMember>,
}

impl NearbySet {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn covers(&self, x: &[f64]) -> bool {
        self.members
            .iter()
            .any(|m| dist_sq(&m.point, x).sqrt() <= m.radius + 1e-12)
    }
}

/// Greedy nearby-set construction over a finite support: process points by
/// descending L, keep a point as a member iff no existing member ball covers
/// it.
pub fn nearby_set(dist: &DataDistribution) -> Result<NearbySet, DistError> {
    let f = match dist {
        DataDistribution::Finite(f) => f,
        DataDistribution::Shell(_) => return Err(DistError::NotFiniteSupport),
    };
    let k = f.points.len();
    let mut ls = vec![f64::INFINITY; k];
    for i in 0..k {
        for j in 0..k {
            if f.labels[i] != f.labels[j] {
                ls[i] = ls[i].min(dist_sq(&f.points[i], &f.points[j]).sqrt());
            }
        }
    }
    if ls.iter().any(|l| !l.is_finite()) {
        return Err(DistError::SingleClass);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| ls[b].partial_cmp(&ls[a]).unwrap().then(a.cmp(&b)));
    let mut members: Vec<NearbyMember> = Vec::new();
    for &i in &order {
        let covered = members
            .iter()
            .any(|m| dist_sq(&m.point, &f.points[i]).sqrt() <= m.radius);
        if !covered {
            members.push(NearbyMember {
                point: f.points[i].clone(),
                label: f.labels[i],
                radius: ls[i] / NEARBY_RADIUS_DIVISOR,
            });
        }
    }
    Ok(NearbySet { members })
}

/// Exact integer ([6.2 n / c] + 1)^n, an upper bound on the nearby-set size
/// over [0,1]^n supports with separation c.
pub fn sd_upper_bound(n: usize, c: f64) -> Result<BigInt, DistError> {
    if !c.is_finite() {
        return Err(DistError::Invalid("c not finite".into()));
    }
    // Re-read c through its shortest round-trip decimal so an input typed as
    // `6.2` means exactly 31/5 at the floor boundary.
    let c_rat = parse_rat(&format!("{c}")).map_err(DistError::Invalid)?;
    sd_upper_bound_exact(n, &c_rat)
}

/// Same bound with the separation given exactly.
pub fn sd_upper_bound_exact(n: usize, c: &Rat) -> Result<BigInt, DistError> {
    if n == 0 || !c.is_positive() {
        return Err(DistError::Invalid("need n >= 1 and c > 0".into()));
    }
    // 6.2 n / c with 6.2 = 31/5, floored exactly.
    let ratio = Rat::new(BigInt::from(31 * n as i64), BigInt::from(5)) / c;
    let base = ratio.floor().to_integer() + BigInt::one();
    let mut acc = BigInt::one();
    for _ in 0..n {
        acc *= &base;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Finite-support file format
// ---------------------------------------------------------------------------

/// Parses the line-oriented finite-support format:
/// header `FINDIST v1 n=<n> k=<points>`, rows `<p> <y> <x_1> ... <x_n>`.
pub fn parse_findist(text: &str) -> Result<DataDistribution, DistError> {
    let mut lines = text.lines().enumerate();
    let (hline, header) = lines.next().ok_or(DistError::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let perr = |line: usize, msg: String| DistError::Parse {
        line: line + 1,
        msg,
    };
    let mut parts = header.split_whitespace();
    if parts.next() != Some("FINDIST") || parts.next() != Some("v1") {
        return Err(perr(hline, "expected `FINDIST v1` header".into()));
    }
    let mut n = None;
    let mut k = None;
    for p in parts {
        if let Some(v) = p.strip_prefix("n=") {
            n = v.parse::<usize>().ok();
        } else if let Some(v) = p.strip_prefix("k=") {
            k = v.parse::<usize>().ok();
        } else {
            return Err(perr(hline, format!("unknown header field {p:?}")));
        }
    }
    let n = n.ok_or_else(|| perr(hline, "missing or bad n=".into()))?;
    let k = k.ok_or_else(|| perr(hline, "missing or bad k=".into()))?;
    let mut points = Vec::with_capacity(k);
    let mut labels = Vec::with_capacity(k);
    let mut probs = Vec::with_capacity(k);
    let mut rows = 0usize;
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != n + 2 {
            return Err(perr(
                ln,
                format!("expected {} fields, got {}", n + 2, vals.len()),
            ));
        }
        let p = parse_rat(vals[0]).map_err(|e| perr(ln, e))?;
        let y: i8 = match vals[1] {
            "1" | "+1" => 1,
            "-1" => -1,
            other => return Err(perr(ln, format!("label must be +-1, got {other:?}"))),
        };
        let mut x = Vec::with_capacity(n);
        for v in &vals[2..] {
            x.push(parse_rat(v).map_err(|e| perr(ln, e))?);
        }
        probs.push(p);
        labels.push(y);
        points.push(x);
        rows += 1;
    }
    if rows != k {
        return Err(DistError::Parse {
            line: rows + 2,
            msg: format!("header promised k={k} rows, found {rows}"),
        });
    }
    DataDistribution::finite_exact(points, labels, probs)
}

pub fn read_findist(path: &std::path::Path) -> Result<DataDistribution, DistError> {
    parse_findist(&std::fs::read_to_string(path)?)
}

/// Writes the finite-support format; inverse of [`parse_findist`].
pub fn format_findist(dist: &DataDistribution) -> Result<String, DistError> {
    let f = match dist {
        DataDistribution::Finite(f) => f,
        _ => return Err(DistError::NotFiniteSupport),
    };
    let n = f.points[0].len();
    let mut out = format!("FINDIST v1 n={} k={}\n", n, f.points.len());
    for i in 0..f.points.len() {
        let mut row = format!("{} {}", crate::scalar::format_rat(&f.probs[i]), f.labels[i]);
        match &f.exact {
            Some(e) => {
                for v in &e[i] {
                    row.push(' ');
                    row.push_str(&crate::scalar::format_rat(v));
                }
            }
            None => {
                for v in &f.points[i] {
                    row.push(' ');
                    row.push_str(&format!("{v}"));
                }
            }
        }
        row.push('\n');
        out.push_str(&row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_ratio;

    fn two_point_dist() -> DataDistribution {
        DataDistribution::finite(
            vec![vec![0.0], vec![1.0]],
            vec![1, -1],
            vec![rat_ratio(1, 2), rat_ratio(1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn finite_sampling_draws_from_support() {
        let d = two_point_dist();
        let ds = d.sample(4, 123).unwrap();
        assert_eq!(ds.len(), 4);
        for i in 0..ds.len() {
            let x = ds.point(i)[0];
            let y = ds.label(i);
            assert!((x == 0.0 && y == 1) || (x == 1.0 && y == -1));
        }
    }

    #[test]
    fn finite_sampling_deterministic() {
        let d = two_point_dist();
        let a = d.sample(64, 9).unwrap();
        let b = d.sample(64, 9).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn probs_must_sum_to_one() {
        let err = DataDistribution::finite(
            vec![vec![0.0], vec![1.0]],
            vec![1, -1],
            vec![rat_ratio(1, 2), rat_ratio(1, 3)],
        );
        assert!(err.is_err());
    }

    #[test]
    fn make_shell_picks_smallest_dimension() {
        let d = make_shell(2);
        assert_eq!(d.dim(), 2199);
        if let DataDistribution::Shell(s) = &d {
            // 3 - 2 = 1 before scaling; the identity survives scaling.
            assert!(s.mass_identity_residual() < 1e-9);
            // Outside the projected coordinates the annulus keeps nearly all
            // of the inner ball's thickness.
            let nw = (s.n - 2) as f64;
            let lhs = (nw * (s.ln_r3 - s.ln_r1)).exp() - (nw * (s.ln_r2 - s.ln_r1)).exp();
            assert!(lhs >= 0.99);
        } else {
            panic!("expected shell");
        }
    }

    #[test]
    fn shell_labels_match_regions() {
        let d = DataDistribution::shell(3, vec![0.5; 3], 0.1, 0.2, 0.3).unwrap();
        let ds = d.sample(2000, 5).unwrap();
        for i in 0..ds.len() {
            let rho = dist_sq(ds.point(i), &[0.5, 0.5, 0.5]).sqrt();
            if ds.label(i) == 1 {
                assert!(rho <= 0.1 + 1e-12);
            } else {
                assert!(rho >= 0.2 - 1e-12 && rho <= 0.3 + 1e-12);
            }
        }
    }

    #[test]
    fn shell_avoids_forbidden_annulus() {
        let d = DataDistribution::shell(4, vec![0.5; 4], 0.15, 0.25, 0.35).unwrap();
        let mut violations = 0usize;
        d.sample_stream(100_000, 77, |x, _| {
            let rho = dist_sq(x, &[0.5, 0.5, 0.5, 0.5]).sqrt();
            if rho > 0.15 + 1e-12 && rho < 0.25 - 1e-12 {
                violations += 1;
            }
        });
        assert_eq!(violations, 0);
    }

    #[test]
    fn nearby_set_two_separated_points() {
        let d = two_point_dist();
        let s = nearby_set(&d).unwrap();
        assert_eq!(s.size(), 2);
        for m in &s.members {
            assert!((m.radius - 1.0 / NEARBY_RADIUS_DIVISOR).abs() < 1e-15);
        }
    }

    #[test]
    fn nearby_set_cluster_collapses() {
        // Five +1 points within 0.01 of each other, one -1 point at distance ~1.
        let mut pts = vec![vec![0.0, 0.0]];
        for k in 1..5 {
            pts.push(vec![0.002 * k as f64, 0.0]);
        }
        pts.push(vec![1.0, 0.0]);
        let labels = vec![1, 1, 1, 1, 1, -1];
        let d = DataDistribution::finite_uniform(pts, labels).unwrap();
        let s = nearby_set(&d).unwrap();
        assert!(s.size() <= 2, "greedy cover should collapse the cluster");
        match &d {
            DataDistribution::Finite(f) => {
                for p in &f.points {
                    assert!(s.covers(p));
                }
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn sd_upper_bound_values() {
        assert_eq!(sd_upper_bound(1, 1.0).unwrap(), BigInt::from(7));
        assert_eq!(sd_upper_bound(2, 1.0).unwrap(), BigInt::from(169));
        assert_eq!(sd_upper_bound(1, 6.2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn findist_roundtrip() {
        let text = "FINDIST v1 n=2 k=2\n1/2 +1 0.25 0.75\n1/2 -1 1 0\n";
        let d = parse_findist(text).unwrap();
        let out = format_findist(&d).unwrap();
        let d2 = parse_findist(&out).unwrap();
        match (&d, &d2) {
            (DataDistribution::Finite(a), DataDistribution::Finite(b)) => {
                assert_eq!(a.exact, b.exact);
                assert_eq!(a.labels, b.labels);
                assert_eq!(a.probs, b.probs);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn findist_rejects_bad_rows() {
        assert!(parse_findist("FINDIST v1 n=2 k=1\n1/2 +1 0.25\n").is_err());
        assert!(parse_findist("FINDIST v1 n=1 k=2\n1 +1 0.5\n").is_err());
    }
}
