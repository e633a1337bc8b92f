//! Log-odds weighted majority fusion of hard votes.

use super::local::{local_skill, ValidationIndex};
use super::Decision;
use crate::error::{Error, Result};
use crate::jury::optimal_weights;
use crate::model::SkillProfile;
use crate::scalar::{from_f64, Real};

fn check_votes<F: Real>(votes: &[usize], classes: usize, accuracies: &SkillProfile<F>) -> Result<()> {
    if votes.len() != accuracies.len() {
        return Err(Error::dimension(accuracies.len(), votes.len()));
    }
    if let Some(v) = votes.iter().find(|&&v| v >= classes) {
        return Err(Error::Config(format!("vote for class {v} but only {classes} classes")));
    }
    Ok(())
}

/// Two-class fusion: class 0 counts +1, class 1 counts -1, each weighted by
/// the log-odds of the classifier's accuracy. Class 0 wins when the weighted
/// sum exceeds `bias`, class 1 when it falls below, no decision on equality.
pub fn fuse_wmr<F: Real>(
    votes: &[usize],
    classes: usize,
    accuracies: &SkillProfile<F>,
    bias: F,
    clip: F,
) -> Result<Decision> {
    if classes != 2 {
        return Err(Error::Config(format!(
            "weighted majority fusion is dichotomous but {classes} classes were given; use fuse_wmr_one_vs_rest"
        )));
    }
    check_votes(votes, classes, accuracies)?;
    let weights = optimal_weights(accuracies, clip)?;
    let s: F = votes.iter().zip(&weights).map(|(&v, &w)| if v == 0 { w } else { -w }).sum();
    Ok(if s > bias {
        Decision::Class(0)
    } else if s < bias {
        Decision::Class(1)
    } else {
        Decision::NoDecision
    })
}

/// One dichotomous rule per class (that class against the rest). The class
/// with the largest margin `sum(W_i v_i) - bias` wins; a shared top margin is
/// no decision.
pub fn fuse_wmr_one_vs_rest<F: Real>(
    votes: &[usize],
    classes: usize,
    accuracies: &SkillProfile<F>,
    bias: F,
    clip: F,
) -> Result<Decision> {
    check_votes(votes, classes, accuracies)?;
    let weights = optimal_weights(accuracies, clip)?;
    let margins: Vec<F> = (0..classes)
        .map(|c| votes.iter().zip(&weights).map(|(&v, &w)| if v == c { w } else { -w }).sum::<F>() - bias)
        .collect();
    let best = margins.iter().copied().fold(F::neg_infinity(), F::max);
    let top: Vec<usize> = (0..classes).filter(|&c| margins[c] == best).collect();
    Ok(match top.as_slice() {
        [c] => Decision::Class(*c),
        _ => Decision::NoDecision,
    })
}

/// [`fuse_wmr`] (or one-vs-rest beyond two classes) with each classifier's
/// accuracy replaced by its local skill around `query`.
pub fn fuse_adaptive_wmr<F: Real>(
    query: &[F],
    votes: &[usize],
    classes: usize,
    idx: &ValidationIndex<F>,
    k: usize,
    bias: F,
    clip: F,
) -> Result<Decision> {
    if votes.len() != idx.classifiers() {
        return Err(Error::dimension(idx.classifiers(), votes.len()));
    }
    let skills = (0..votes.len()).map(|j| local_skill(query, idx, j, k)).collect::<Result<Vec<F>>>()?;
    let skills = SkillProfile::new(skills)?;
    if classes == 2 {
        fuse_wmr(votes, classes, &skills, bias, clip)
    } else {
        fuse_wmr_one_vs_rest(votes, classes, &skills, bias, clip)
    }
}

/// Global accuracies with the same `(correct + 1) / (n + 2)` smoothing as
/// local skills.
pub fn smoothed_accuracies<F: Real>(idx: &ValidationIndex<F>) -> Result<SkillProfile<F>> {
    let n = idx.len();
    SkillProfile::new(
        (0..idx.classifiers())
            .map(|j| from_f64::<F>((idx.correct_count(j) + 1) as f64) / from_f64((n + 2) as f64))
            .collect(),
    )
}
