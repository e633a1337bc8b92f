//! Fixed combination rules over per-class score vectors.

use super::predictions::argmax;
use crate::error::{Error, Result};
use crate::scalar::{from_f64, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedRule<F> {
    /// Weighted mean of the scores.
    Sum,
    Product,
    Min,
    Max,
    Median,
    /// Weighted share of classifiers whose top class is each class.
    Majority,
    /// Mean after dropping `floor(alpha K)` lowest and highest scores per class.
    TrimmedMean(F),
}

impl<F> FixedRule<F> {
    fn uses_weights(&self) -> bool {
        matches!(self, FixedRule::Sum | FixedRule::Majority)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FusionWarning {
    /// Per-classifier weights were supplied to an order-statistic or product rule.
    WeightsIgnored,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fused<F> {
    pub scores: Vec<F>,
    /// Highest fused score; ties go to the lower class index.
    pub winner: usize,
    pub warnings: Vec<FusionWarning>,
}

/// Combine `K` score vectors over `M` classes.
pub fn fuse_fixed<F: Real>(vectors: &[Vec<F>], rule: FixedRule<F>, weights: Option<&[F]>) -> Result<Fused<F>> {
    let k = vectors.len();
    let Some(m) = vectors.first().map(Vec::len) else {
        return Err(Error::Config("at least one classifier output is needed".into()));
    };
    if m == 0 {
        return Err(Error::Config("score vectors are empty".into()));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != m) {
        return Err(Error::dimension(m, v.len()));
    }
    let mut warnings = Vec::new();
    let weights: Vec<F> = match weights {
        Some(w) => {
            if w.len() != k {
                return Err(Error::dimension(k, w.len()));
            }
            if w.iter().any(|x| x.is_nan() || *x < F::zero()) || w.iter().copied().sum::<F>() <= F::zero() {
                return Err(Error::Config("classifier weights must be non-negative with a positive sum".into()));
            }
            if !rule.uses_weights() {
                warnings.push(FusionWarning::WeightsIgnored);
            }
            w.to_vec()
        }
        None => vec![F::one(); k],
    };
    let weight_sum: F = weights.iter().copied().sum();
    let column = |c: usize| -> Vec<F> { vectors.iter().map(|v| v[c]).collect() };

    let scores: Vec<F> = match rule {
        FixedRule::Sum => (0..m)
            .map(|c| vectors.iter().zip(&weights).map(|(v, &w)| w * v[c]).sum::<F>() / weight_sum)
            .collect(),
        FixedRule::Product => (0..m).map(|c| vectors.iter().fold(F::one(), |acc, v| acc * v[c])).collect(),
        FixedRule::Min => (0..m).map(|c| column(c).into_iter().fold(F::infinity(), F::min)).collect(),
        FixedRule::Max => (0..m).map(|c| column(c).into_iter().fold(F::neg_infinity(), F::max)).collect(),
        FixedRule::Median => (0..m).map(|c| trimmed_mean_sorted(sorted(column(c)), (k - 1) / 2)).collect(),
        FixedRule::Majority => {
            let mut votes = vec![F::zero(); m];
            for (v, &w) in vectors.iter().zip(&weights) {
                votes[argmax(v)] += w;
            }
            votes.into_iter().map(|x| x / weight_sum).collect()
        }
        FixedRule::TrimmedMean(alpha) => {
            if !(alpha >= F::zero() && alpha < from_f64(0.5)) {
                return Err(Error::Config(format!("trim fraction {alpha:?} must lie in [0, 0.5)")));
            }
            let drop = (alpha * from_f64::<F>(k as f64)).floor().to_usize().unwrap_or(0);
            (0..m).map(|c| trimmed_mean_sorted(sorted(column(c)), drop)).collect()
        }
    };
    let winner = argmax(&scores);
    Ok(Fused { scores, winner, warnings })
}

fn sorted<F: Real>(mut xs: Vec<F>) -> Vec<F> {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    xs
}

/// Mean of `xs[drop..len - drop]`; the median is the case that keeps one or two.
fn trimmed_mean_sorted<F: Real>(xs: Vec<F>, drop: usize) -> F {
    let kept = &xs[drop..xs.len() - drop];
    kept.iter().copied().sum::<F>() / from_f64(kept.len() as f64)
}
