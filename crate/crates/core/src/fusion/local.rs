//! Local accuracy: how well a classifier did on the validation samples
//! nearest to a query.

use super::predictions::PredictionSet;
use crate::error::{Error, Result};
use crate::scalar::{from_f64, Real};

/// Distance between two standardized feature vectors.
pub trait Metric<F>: Sync {
    fn distance(&self, a: &[F], b: &[F]) -> F;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Euclidean;

impl<F: Real> Metric<F> for Euclidean {
    fn distance(&self, a: &[F], b: &[F]) -> F {
        a.iter().zip(b).map(|(x, y)| (*x - *y) * (*x - *y)).sum::<F>().sqrt()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Manhattan;

impl<F: Real> Metric<F> for Manhattan {
    fn distance(&self, a: &[F], b: &[F]) -> F {
        a.iter().zip(b).map(|(x, y)| (*x - *y).abs()).sum()
    }
}

/// Validation feature vectors with per-classifier correctness, standardized
/// per dimension. Constant dimensions carry no distance information and are
/// dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationIndex<F> {
    dims: usize,
    kept: Vec<usize>,
    mean: Vec<F>,
    spread: Vec<F>,
    points: Vec<Vec<F>>,
    correct: Vec<Vec<bool>>,
}

impl<F: Real> ValidationIndex<F> {
    /// `correct[s][j]`: whether classifier `j` got validation sample `s` right.
    pub fn new(features: Vec<Vec<F>>, correct: Vec<Vec<bool>>) -> Result<Self> {
        let Some(dims) = features.first().map(Vec::len) else {
            return Err(Error::Evidence("validation index is empty".into()));
        };
        if correct.len() != features.len() {
            return Err(Error::dimension(features.len(), correct.len()));
        }
        if let Some(f) = features.iter().find(|f| f.len() != dims) {
            return Err(Error::dimension(dims, f.len()));
        }
        let classifiers = correct[0].len();
        if let Some(c) = correct.iter().find(|c| c.len() != classifiers) {
            return Err(Error::dimension(classifiers, c.len()));
        }
        let n = from_f64::<F>(features.len() as f64);
        let mut kept = Vec::new();
        let mut mean = Vec::new();
        let mut spread = Vec::new();
        for d in 0..dims {
            let mu = features.iter().map(|f| f[d]).sum::<F>() / n;
            let var = features.iter().map(|f| (f[d] - mu) * (f[d] - mu)).sum::<F>() / n;
            if var > F::zero() {
                kept.push(d);
                mean.push(mu);
                spread.push(var.sqrt());
            }
        }
        let mut index = ValidationIndex { dims, kept, mean, spread, points: Vec::new(), correct };
        index.points = features.iter().map(|f| index.standardize(f)).collect();
        Ok(index)
    }

    /// Build from labelled predictions with features; correctness compares
    /// each classifier's hard label to the truth.
    pub fn from_predictions(ps: &PredictionSet<F>) -> Result<Self> {
        let mut features = Vec::with_capacity(ps.samples().len());
        let mut correct = Vec::with_capacity(ps.samples().len());
        for s in ps.samples() {
            let f = s.features.clone().ok_or_else(|| Error::Evidence(format!("sample {} has no features", s.id)))?;
            let t = s.truth.ok_or_else(|| Error::Evidence(format!("sample {} has no true label", s.id)))?;
            features.push(f);
            correct.push(s.outputs.iter().map(|o| o.hard_label() == t).collect());
        }
        Self::new(features, correct)
    }

    fn standardize(&self, f: &[F]) -> Vec<F> {
        self.kept.iter().zip(self.mean.iter().zip(&self.spread)).map(|(&d, (&mu, &s))| (f[d] - mu) / s).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn classifiers(&self) -> usize {
        self.correct[0].len()
    }

    /// Validation samples classifier `j` got right.
    pub fn correct_count(&self, classifier: usize) -> usize {
        self.correct.iter().filter(|c| c[classifier]).count()
    }

    /// Indices of the `k` nearest samples; equal distances keep index order.
    pub fn nearest(&self, query: &[F], k: usize, metric: &dyn Metric<F>) -> Result<Vec<usize>> {
        if query.len() != self.dims {
            return Err(Error::Query(format!("query has {} features, index has {}", query.len(), self.dims)));
        }
        let q = self.standardize(query);
        let mut order: Vec<(F, usize)> = self.points.iter().enumerate().map(|(i, p)| (metric.distance(&q, p), i)).collect();
        order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.cmp(&b.1)));
        Ok(order.into_iter().take(k).map(|(_, i)| i).collect())
    }
}

/// Laplace-smoothed accuracy `(correct + 1) / (k + 2)` of `classifier` over
/// the `k` nearest validation samples (standardized Euclidean distance).
/// `k` beyond the index size uses the whole index.
pub fn local_skill<F: Real>(query: &[F], idx: &ValidationIndex<F>, classifier: usize, k: usize) -> Result<F> {
    local_skill_with(query, idx, classifier, k, &Euclidean)
}

pub fn local_skill_with<F: Real>(
    query: &[F],
    idx: &ValidationIndex<F>,
    classifier: usize,
    k: usize,
    metric: &dyn Metric<F>,
) -> Result<F> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if classifier >= idx.classifiers() {
        return Err(Error::dimension(idx.classifiers(), classifier + 1));
    }
    let near = idx.nearest(query, k, metric)?;
    let hits = near.iter().filter(|&&i| idx.correct[i][classifier]).count();
    Ok(from_f64::<F>((hits + 1) as f64) / from_f64((near.len() + 2) as f64))
}
