//! Labeled finite datasets in [0,1]^n x {-1,+1}.
//!
//! Points always carry an `f64` view for fast geometry. Sources whose exact
//! coordinates are not dyadic (MNIST pixels v/255, decimal text files, the
//! CNF gadget thirds) additionally carry an exact rational overlay; the
//! exact-arithmetic builders read coordinates through [`LabeledDataset::point_exact`],
//! which falls back to the exact lift of the float view.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

use byteorder::{BigEndian, ReadBytesExt};
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::{rat_from_f64, rat_ratio, rat_to_f64, Rat};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("coordinate {coord} of point {index} is outside [0,1]")]
    OutOfRange { index: usize, coord: usize },
    #[error("points {i} and {j} coincide but carry opposite labels")]
    ConflictingDuplicate { i: usize, j: usize },
    #[error("dataset is empty")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("label must be +1 or -1, got {0}")]
    BadLabel(i8),
    #[error("both labels must be present")]
    SingleClass,
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("idx format error: {0}")]
    Idx(String),
}

#[derive(Debug, Clone)]
pub struct LabeledDataset {
    dim: usize,
    points: Vec<Vec<f64>>,
    labels: Vec<i8>,
    exact: Option<Vec<Vec<Rat>>>,
}

impl LabeledDataset {
    /// Builds from float points (floats are exact dyadic rationals, so no
    /// overlay is needed).
    pub fn from_f64(points: Vec<Vec<f64>>, labels: Vec<i8>) -> Result<Self, DataError> {
        Self::build(points, labels, None)
    }

    /// Builds from exact rational points; the float view is the rounded
    /// mirror used by fast geometry.
    pub fn from_exact(points: Vec<Vec<Rat>>, labels: Vec<i8>) -> Result<Self, DataError> {
        let mirror = points
            .iter()
            .map(|p| p.iter().map(rat_to_f64).collect())
            .collect();
        Self::build(mirror, labels, Some(points))
    }

    fn build(
        points: Vec<Vec<f64>>,
        labels: Vec<i8>,
        exact: Option<Vec<Vec<Rat>>>,
    ) -> Result<Self, DataError> {
        if points.is_empty() {
            return Err(DataError::Empty);
        }
        if points.len() != labels.len() {
            return Err(DataError::DimMismatch {
                expected: points.len(),
                got: labels.len(),
            });
        }
        let dim = points[0].len();
        for p in points.iter() {
            if p.len() != dim {
                return Err(DataError::DimMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        for &l in labels.iter() {
            if l != 1 && l != -1 {
                return Err(DataError::BadLabel(l));
            }
        }
        let ds = LabeledDataset {
            dim,
            points,
            labels,
            exact,
        };
        if let Some((i, c)) = ds.first_range_violation() {
            return Err(DataError::OutOfRange { index: i, coord: c });
        }
        if let Some((i, j)) = ds.first_conflicting_duplicate() {
            return Err(DataError::ConflictingDuplicate { i, j });
        }
        Ok(ds)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, i: usize) -> i8 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn has_exact_overlay(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact coordinates of point `i`.
    pub fn point_exact(&self, i: usize) -> Vec<Rat> {
        match &self.exact {
            Some(e) => e[i].clone(),
            None => self.points[i]
                .iter()
                .map(|v| rat_from_f64(*v).expect("dataset coordinates are finite"))
                .collect(),
        }
    }

    pub fn both_labels_present(&self) -> bool {
        self.labels.iter().any(|&l| l == 1) && self.labels.iter().any(|&l| l == -1)
    }

    pub fn class_indices(&self, label: i8) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == label).collect()
    }

    fn first_range_violation(&self) -> Option<(usize, usize)> {
        // The exact overlay is authoritative when present: a coordinate like
        // 1/3 rounds into range even if a hypothetical overlay were out.
        if let Some(e) = &self.exact {
            let one = Rat::from_integer(1.into());
            for (i, p) in e.iter().enumerate() {
                for (c, v) in p.iter().enumerate() {
                    if v.is_negative() || *v > one {
                        return Some((i, c));
                    }
                }
            }
            None
        } else {
            for (i, p) in self.points.iter().enumerate() {
                for (c, v) in p.iter().enumerate() {
                    if !(*v >= 0.0 && *v <= 1.0) {
                        return Some((i, c));
                    }
                }
            }
            None
        }
    }

    fn first_conflicting_duplicate(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        for i in 0..self.len() {
            let key: Vec<u64> = self.points[i].iter().map(|v| v.to_bits()).collect();
            if let Some(&j) = seen.get(&key) {
                if self.labels[i] != self.labels[j] {
                    // Confirm on exact coordinates when an overlay exists.
                    let really_equal = match &self.exact {
                        Some(e) => e[i] == e[j],
                        None => true,
                    };
                    if really_equal {
                        return Some((j, i));
                    }
                }
            } else {
                seen.insert(key, i);
            }
        }
        None
    }

    /// Squared distance between points i and j on the float view.
    pub fn dist_sq(&self, i: usize, j: usize) -> f64 {
        dist_sq(&self.points[i], &self.points[j])
    }

    /// Exact squared distance on the exact coordinates.
    pub fn dist_sq_exact(&self, i: usize, j: usize) -> Rat {
        let a = self.point_exact(i);
        let b = self.point_exact(j);
        let mut acc = Rat::from_integer(0.into());
        for (x, z) in a.iter().zip(b.iter()) {
            let d = x - z;
            acc += &d * &d;
        }
        acc
    }

    /// Minimum cross-class distance (float view). `None` for a single-class
    /// dataset, which callers treat as an infinite separation sentinel.
    pub fn separation_bound(&self) -> Option<f64> {
        self.separation_argmin().map(|(_, _, d2)| d2.sqrt())
    }

    /// Indices and squared distance of the closest cross-class pair.
    pub fn separation_argmin(&self) -> Option<(usize, usize, f64)> {
        let pos = self.class_indices(1);
        let neg = self.class_indices(-1);
        if pos.is_empty() || neg.is_empty() {
            return None;
        }
        pos.par_iter()
            .map(|&i| {
                let mut best = (i, neg[0], f64::INFINITY);
                for &j in &neg {
                    let d2 = self.dist_sq(i, j);
                    if d2 < best.2 {
                        best = (i, j, d2);
                    }
                }
                best
            })
            .min_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
    }

    /// Exact minimum cross-class squared distance. The float scan prefilters
    /// candidate pairs; only near-minimal pairs are re-checked exactly.
    pub fn separation_sq_exact(&self) -> Option<Rat> {
        let (_, _, d2) = self.separation_argmin()?;
        let pos = self.class_indices(1);
        let neg = self.class_indices(-1);
        let cutoff = d2 * (1.0 + 1e-9) + f64::MIN_POSITIVE;
        let mut candidates = Vec::new();
        for &i in &pos {
            for &j in &neg {
                if self.dist_sq(i, j) <= cutoff {
                    candidates.push((i, j));
                }
            }
        }
        candidates
            .into_iter()
            .map(|(i, j)| self.dist_sq_exact(i, j))
            .min()
    }

    /// Restriction to the first `k` coordinates (drops the exact overlay).
    /// Cross-class duplicates created by the projection are dropped,
    /// keeping the earlier point; the count of dropped points is returned.
    pub fn project_coords(&self, k: usize) -> Result<(LabeledDataset, usize), DataError> {
        if k == 0 || k > self.dim {
            return Err(DataError::BadArgument(format!(
                "projection width {k} out of range for dim {}",
                self.dim
            )));
        }
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(self.len());
        let mut labels = Vec::with_capacity(self.len());
        let mut seen: HashMap<Vec<u64>, i8> = HashMap::new();
        let mut dropped = 0usize;
        for i in 0..self.len() {
            let p: Vec<f64> = self.points[i][..k].to_vec();
            let key: Vec<u64> = p.iter().map(|v| v.to_bits()).collect();
            match seen.get(&key) {
                Some(&l) if l != self.labels[i] => {
                    dropped += 1;
                    continue;
                }
                _ => {
                    seen.insert(key, self.labels[i]);
                }
            }
            pts.push(p);
            labels.push(self.labels[i]);
        }
        Ok((LabeledDataset::from_f64(pts, labels)?, dropped))
    }
}

pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, z)| (x - z) * (x - z)).sum()
}

/// Findings of [`validate`]; an empty report means a clean dataset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub range_violations: Vec<(usize, usize)>,
    pub conflicting_duplicates: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.range_violations.is_empty() && self.conflicting_duplicates.is_empty()
    }
}

/// Checks the dataset invariants on raw (unvalidated) data and lists every
/// offending index instead of failing fast.
pub fn validate(points: &[Vec<f64>], labels: &[i8]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, p) in points.iter().enumerate() {
        for (c, v) in p.iter().enumerate() {
            if !(*v >= 0.0 && *v <= 1.0) {
                report.range_violations.push((i, c));
            }
        }
    }
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        let key: Vec<u64> = p.iter().map(|v| v.to_bits()).collect();
        match seen.get(&key) {
            Some(&j) if labels[i] != labels[j] => {
                report.conflicting_duplicates.push((j, i));
            }
            Some(_) => {}
            None => {
                seen.insert(key, i);
            }
        }
    }
    report
}

/// Block-constant grid points: 2^floor(n/ceil(c^2)) points in [0,1]^n with
/// pairwise L2 distance >= c.
pub fn grid_points(n: usize, c: f64) -> Result<Vec<Vec<f64>>, DataError> {
    if !(c > 0.0) {
        return Err(DataError::BadArgument("c must be positive".into()));
    }
    let c_rat = rat_from_f64(c).ok_or_else(|| DataError::BadArgument("c not finite".into()))?;
    let c2 = (&c_rat * &c_rat).ceil().to_integer();
    let block: usize = c2
        .try_into()
        .map_err(|_| DataError::BadArgument("c^2 too large".into()))?;
    if block == 0 || n < block {
        return Err(DataError::BadArgument(format!(
            "need n >= ceil(c^2) = {block}, got n = {n}"
        )));
    }
    let t = n / block;
    if t >= usize::BITS as usize {
        return Err(DataError::BadArgument("too many grid points".into()));
    }
    let mut out = Vec::with_capacity(1usize << t);
    for mask in 0..(1usize << t) {
        let mut p = vec![0.0; n];
        for j in 0..t {
            if (mask >> j) & 1 == 1 {
                for coord in p.iter_mut().skip(j * block).take(block) {
                    *coord = 1.0;
                }
            }
        }
        out.push(p);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// MNIST IDX ingestion
// ---------------------------------------------------------------------------

const IDX_IMAGES_MAGIC: u32 = 0x0000_0803;
const IDX_LABELS_MAGIC: u32 = 0x0000_0801;

pub struct IdxImages {
    pub count: usize,
    pub rows: usize,
    pub cols: usize,
    pub pixels: Vec<u8>,
}

pub fn read_idx_images(path: &Path) -> Result<IdxImages, DataError> {
    let mut r = BufReader::new(File::open(path)?);
    let magic = r.read_u32::<BigEndian>()?;
    if magic != IDX_IMAGES_MAGIC {
        return Err(DataError::Idx(format!(
            "bad image magic 0x{magic:08x} in {}",
            path.display()
        )));
    }
    let count = r.read_u32::<BigEndian>()? as usize;
    let rows = r.read_u32::<BigEndian>()? as usize;
    let cols = r.read_u32::<BigEndian>()? as usize;
    let mut pixels = vec![0u8; count * rows * cols];
    r.read_exact(&mut pixels)
        .map_err(|_| DataError::Idx(format!("short image file {}", path.display())))?;
    Ok(IdxImages {
        count,
        rows,
        cols,
        pixels,
    })
}

pub fn read_idx_labels(path: &Path) -> Result<Vec<u8>, DataError> {
    let mut r = BufReader::new(File::open(path)?);
    let magic = r.read_u32::<BigEndian>()?;
    if magic != IDX_LABELS_MAGIC {
        return Err(DataError::Idx(format!(
            "bad label magic 0x{magic:08x} in {}",
            path.display()
        )));
    }
    let count = r.read_u32::<BigEndian>()? as usize;
    let mut labels = vec![0u8; count];
    r.read_exact(&mut labels)
        .map_err(|_| DataError::Idx(format!("short label file {}", path.display())))?;
    Ok(labels)
}

/// Seeded balanced subsample of an MNIST digit pair. Pixels map to v/255
/// exactly (rational overlay); `label_a` becomes +1, `label_b` becomes -1.
/// Cross-class duplicate pixel vectors are dropped (the later sample loses);
/// the second return value counts the drops.
pub fn load_mnist_pair(
    images_path: &Path,
    labels_path: &Path,
    label_a: u8,
    label_b: u8,
    per_class: usize,
    seed: u64,
) -> Result<(LabeledDataset, usize), DataError> {
    if label_a == label_b {
        return Err(DataError::BadArgument("labels must be distinct".into()));
    }
    if per_class == 0 {
        return Err(DataError::BadArgument(
            "per_class must be >= 1 (empty dataset)".into(),
        ));
    }
    let images = read_idx_images(images_path)?;
    let labels = read_idx_labels(labels_path)?;
    if labels.len() != images.count {
        return Err(DataError::Idx("image/label count mismatch".into()));
    }
    let mut idx_a: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label_a).collect();
    let mut idx_b: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label_b).collect();
    if idx_a.len() < per_class || idx_b.len() < per_class {
        return Err(DataError::BadArgument(format!(
            "need {per_class} samples per class, have {} and {}",
            idx_a.len(),
            idx_b.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    idx_a.shuffle(&mut rng);
    idx_b.shuffle(&mut rng);
    idx_a.truncate(per_class);
    idx_b.truncate(per_class);
    build_pixel_dataset(&images, &[(idx_a, 1i8), (idx_b, -1i8)])
}

/// Every sample of the two digits, in file order; used for test-split
/// evaluation.
pub fn load_mnist_pair_all(
    images_path: &Path,
    labels_path: &Path,
    label_a: u8,
    label_b: u8,
) -> Result<(LabeledDataset, usize), DataError> {
    if label_a == label_b {
        return Err(DataError::BadArgument("labels must be distinct".into()));
    }
    let images = read_idx_images(images_path)?;
    let labels = read_idx_labels(labels_path)?;
    if labels.len() != images.count {
        return Err(DataError::Idx("image/label count mismatch".into()));
    }
    let idx_a: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label_a).collect();
    let idx_b: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label_b).collect();
    if idx_a.is_empty() || idx_b.is_empty() {
        return Err(DataError::SingleClass);
    }
    build_pixel_dataset(&images, &[(idx_a, 1i8), (idx_b, -1i8)])
}

fn build_pixel_dataset(
    images: &IdxImages,
    groups: &[(Vec<usize>, i8)],
) -> Result<(LabeledDataset, usize), DataError> {
    let n = images.rows * images.cols;
    let mut seen: HashMap<&[u8], i8> = HashMap::new();
    let mut points_exact = Vec::new();
    let mut mirror = Vec::new();
    let mut labels = Vec::new();
    let mut dropped = 0usize;
    for (idxs, label) in groups {
        for &i in idxs {
            let raw = &images.pixels[i * n..(i + 1) * n];
            match seen.get(raw) {
                Some(&l) if l != *label => {
                    dropped += 1;
                    continue;
                }
                Some(_) => {}
                None => {
                    seen.insert(raw, *label);
                }
            }
            let exact: Vec<Rat> = raw.iter().map(|&v| rat_ratio(v as i64, 255)).collect();
            let f: Vec<f64> = raw.iter().map(|&v| v as f64 / 255.0).collect();
            points_exact.push(exact);
            mirror.push(f);
            labels.push(*label);
        }
    }
    let ds = LabeledDataset::build(mirror, labels, Some(points_exact))?;
    Ok((ds, dropped))
}

/// Resolves the MNIST directory: `MEMNET_MNIST_DIR`, then `./data/mnist`.
pub fn mnist_dir() -> Option<std::path::PathBuf> {
    if let Ok(d) = std::env::var("MEMNET_MNIST_DIR") {
        let p = std::path::PathBuf::from(d);
        if p.join("train-images-idx3-ubyte").exists() {
            return Some(p);
        }
    }
    let p = std::path::PathBuf::from("data/mnist");
    if p.join("train-images-idx3-ubyte").exists() {
        return Some(p);
    }
    None
}

pub fn mnist_train_files(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    (
        dir.join("train-images-idx3-ubyte"),
        dir.join("train-labels-idx1-ubyte"),
    )
}

pub fn mnist_test_files(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    (
        dir.join("t10k-images-idx3-ubyte"),
        dir.join("t10k-labels-idx1-ubyte"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_points() -> LabeledDataset {
        LabeledDataset::from_f64(vec![vec![0.0], vec![1.0]], vec![1, -1]).unwrap()
    }

    #[test]
    fn separation_two_point() {
        assert_eq!(two_points().separation_bound(), Some(1.0));
    }

    #[test]
    fn separation_ignores_same_class_pairs() {
        let d =
            LabeledDataset::from_f64(vec![vec![0.0], vec![0.3], vec![1.0]], vec![1, 1, -1]).unwrap();
        assert!((d.separation_bound().unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn single_class_separation_is_none() {
        let d = LabeledDataset::from_f64(vec![vec![0.2], vec![0.4]], vec![1, 1]).unwrap();
        assert_eq!(d.separation_bound(), None);
    }

    #[test]
    fn conflicting_duplicate_rejected() {
        let err = LabeledDataset::from_f64(vec![vec![0.5], vec![0.5]], vec![1, -1]).unwrap_err();
        assert!(matches!(err, DataError::ConflictingDuplicate { .. }));
    }

    #[test]
    fn validate_reports_findings() {
        let clean = validate(&[vec![0.1], vec![0.9]], &[1, -1]);
        assert!(clean.is_clean());
        let bad = validate(&[vec![1.2], vec![0.5], vec![0.5]], &[1, 1, -1]);
        assert_eq!(bad.range_violations, vec![(0, 0)]);
        assert_eq!(bad.conflicting_duplicates, vec![(1, 2)]);
    }

    #[test]
    fn grid_points_cardinality_and_distance() {
        let pts = grid_points(4, 1.0).unwrap();
        assert_eq!(pts.len(), 16);
        for i in 0..pts.len() {
            for j in 0..i {
                assert!(dist_sq(&pts[i], &pts[j]) >= 1.0);
            }
        }
        assert_eq!(grid_points(1, 1.0).unwrap(), vec![vec![0.0], vec![1.0]]);
    }

    #[test]
    fn grid_points_fractional_c() {
        // ceil(1.5^2) = 3, so 2^(6/3) = 4 points at pairwise distance sqrt(3).
        let pts = grid_points(6, 1.5).unwrap();
        assert_eq!(pts.len(), 4);
        for i in 0..pts.len() {
            for j in 0..i {
                assert!(dist_sq(&pts[i], &pts[j]).sqrt() >= 1.5);
            }
        }
    }

    #[test]
    fn grid_points_bad_args() {
        assert!(grid_points(2, 0.0).is_err());
        assert!(grid_points(2, 2.0).is_err()); // needs n >= 4
    }

    #[test]
    fn separation_exact_matches_float_on_dyadics() {
        let d = two_points();
        let exact = d.separation_sq_exact().unwrap();
        assert_eq!(rat_to_f64(&exact), 1.0);
    }
}
