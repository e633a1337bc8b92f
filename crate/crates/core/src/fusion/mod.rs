//! Combining the outputs of several classifiers.
//!
//! - [`evidence`]: confusion and cost matrices, confidence transforms, risk.
//! - [`fixed`]: sum, product and order-statistic rules over score vectors.
//! - [`weighted`]: log-odds weighted majority fusion of dichotomous votes.
//! - [`local`]: per-query skill estimates from the nearest validation samples.

pub mod evidence;
pub mod fixed;
pub mod local;
mod predictions;
pub mod weighted;

use rayon::prelude::*;

pub use evidence::{confidence_transform, confusion_from_predictions, expected_risk, ConfusionMatrix, CostMatrix, Direction, TransformKind};
pub use fixed::{fuse_fixed, FixedRule, Fused, FusionWarning};
pub use local::{local_skill, local_skill_with, Euclidean, Manhattan, Metric, ValidationIndex};
pub use predictions::{ClassifierOutput, PredictionSet, Sample};
pub use weighted::{fuse_adaptive_wmr, fuse_wmr, fuse_wmr_one_vs_rest, smoothed_accuracies};

use crate::error::{Error, Result};
use crate::model::SkillProfile;
use crate::scalar::Real;

/// A fused decision: a class index, or no decision when a weighted vote
/// lands exactly on its bias.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Class(usize),
    NoDecision,
}

impl Decision {
    pub fn class(self) -> Option<usize> {
        match self {
            Decision::Class(c) => Some(c),
            Decision::NoDecision => None,
        }
    }
}

/// How [`fuse_all`] combines each sample.
#[derive(Clone, Debug)]
pub enum FusionMethod<F> {
    Fixed { rule: FixedRule<F>, weights: Option<Vec<F>> },
    /// Global accuracies; more than two classes go one-vs-rest.
    Wmr { accuracies: SkillProfile<F>, bias: F, clip: F },
    /// Accuracies re-estimated around every sample from its features.
    AdaptiveWmr { index: ValidationIndex<F>, k: usize, bias: F, clip: F },
}

/// Fuse every sample of `ps`. Samples are independent and run in parallel;
/// the output keeps sample order.
pub fn fuse_all<F: Real>(ps: &PredictionSet<F>, method: &FusionMethod<F>) -> Result<Vec<Decision>> {
    let m = ps.labels().len();
    ps.samples()
        .par_iter()
        .map(|s| match method {
            FusionMethod::Fixed { rule, weights } => {
                let vectors: Vec<Vec<F>> = s.outputs.iter().map(|o| o.score_vector(m)).collect();
                Ok(Decision::Class(fuse_fixed(&vectors, *rule, weights.as_deref())?.winner))
            }
            FusionMethod::Wmr { accuracies, bias, clip } => {
                let votes: Vec<usize> = s.outputs.iter().map(|o| o.hard_label()).collect();
                if m == 2 {
                    fuse_wmr(&votes, m, accuracies, *bias, *clip)
                } else {
                    fuse_wmr_one_vs_rest(&votes, m, accuracies, *bias, *clip)
                }
            }
            FusionMethod::AdaptiveWmr { index, k, bias, clip } => {
                let query = s
                    .features
                    .as_deref()
                    .ok_or_else(|| Error::Query(format!("sample {} has no features", s.id)))?;
                let votes: Vec<usize> = s.outputs.iter().map(|o| o.hard_label()).collect();
                fuse_adaptive_wmr(query, &votes, m, index, *k, *bias, *clip)
            }
        })
        .collect()
}

/// Share of labelled samples whose decision equals the true class; no
/// decision counts as wrong. None when no sample carries a label.
pub fn decision_accuracy<F: Real>(ps: &PredictionSet<F>, decisions: &[Decision]) -> Option<f64> {
    let labelled: Vec<(usize, &Decision)> =
        ps.samples().iter().zip(decisions).filter_map(|(s, d)| s.truth.map(|t| (t, d))).collect();
    if labelled.is_empty() {
        return None;
    }
    let hits = labelled.iter().filter(|(t, d)| d.class() == Some(*t)).count();
    Some(hits as f64 / labelled.len() as f64)
}

/// Confusion matrix of the fused decisions over labelled samples that got a
/// class (no-decision samples are left out).
pub fn decision_confusion<F: Real>(ps: &PredictionSet<F>, decisions: &[Decision]) -> Result<ConfusionMatrix> {
    let m = ps.labels().len();
    let mut counts = vec![vec![0u64; m]; m];
    for (s, d) in ps.samples().iter().zip(decisions) {
        if let (Some(t), Some(p)) = (s.truth, d.class()) {
            counts[t][p] += 1;
        }
    }
    ConfusionMatrix::new(counts)
}
