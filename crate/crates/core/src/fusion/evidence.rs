//! Validation evidence about classifiers and what it costs to be wrong.

use super::predictions::PredictionSet;
use crate::error::{Error, Result};
use crate::scalar::{from_f64, Real};

/// `counts[t][p]`: validation samples of true class `t` predicted as `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfusionMatrix {
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn new(counts: Vec<Vec<u64>>) -> Result<Self> {
        let m = counts.len();
        if m == 0 {
            return Err(Error::Evidence("confusion matrix is empty".into()));
        }
        if let Some(row) = counts.iter().find(|r| r.len() != m) {
            return Err(Error::dimension(m, row.len()));
        }
        if counts.iter().all(|r| r.iter().all(|&c| c == 0)) {
            return Err(Error::Evidence("confusion matrix holds no samples".into()));
        }
        Ok(ConfusionMatrix { counts })
    }

    pub fn classes(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..self.classes()).map(|k| self.counts[k][k]).sum()
    }

    pub fn row_total(&self, t: usize) -> u64 {
        self.counts[t].iter().sum()
    }

    pub fn column_total(&self, p: usize) -> u64 {
        self.counts.iter().map(|r| r[p]).sum()
    }

    pub fn accuracy(&self) -> f64 {
        self.correct() as f64 / self.total() as f64
    }
}

/// Tabulate one classifier's hard decisions against the true labels.
pub fn confusion_from_predictions<F: Real>(ps: &PredictionSet<F>, classifier: usize) -> Result<ConfusionMatrix> {
    if classifier >= ps.classifiers() {
        return Err(Error::dimension(ps.classifiers(), classifier + 1));
    }
    let m = ps.labels().len();
    let mut counts = vec![vec![0u64; m]; m];
    for s in ps.samples() {
        let t = s.truth.ok_or_else(|| Error::Evidence(format!("sample {} has no true label", s.id)))?;
        counts[t][s.outputs[classifier].hard_label()] += 1;
    }
    ConfusionMatrix::new(counts)
}

/// `gains[t][p]`: payoff (positive) or loss (negative) of predicting `p` for true `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix<F> {
    gains: Vec<Vec<F>>,
}

impl<F: Real> CostMatrix<F> {
    pub fn new(gains: Vec<Vec<F>>) -> Result<Self> {
        let m = gains.len();
        if m == 0 {
            return Err(Error::Evidence("cost matrix is empty".into()));
        }
        if let Some(row) = gains.iter().find(|r| r.len() != m) {
            return Err(Error::dimension(m, row.len()));
        }
        if gains.iter().flatten().any(|g| !g.is_finite()) {
            return Err(Error::Evidence("cost matrix entries must be finite".into()));
        }
        Ok(CostMatrix { gains })
    }

    /// One for every correct prediction, zero otherwise.
    pub fn identity(m: usize) -> Self {
        let gains = (0..m).map(|t| (0..m).map(|p| if t == p { F::one() } else { F::zero() }).collect()).collect();
        CostMatrix { gains }
    }

    pub fn gains(&self) -> &[Vec<F>] {
        &self.gains
    }

    pub fn classes(&self) -> usize {
        self.gains.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    /// `q` itself.
    Likelihood,
    /// `ln q`.
    LogLikelihood,
    /// Logistic of `ln q - ln(1/M)`: `q = 1/M` maps to 0.5.
    Sigmoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Normalize rows: P(predicted | true).
    GivenTrue,
    /// Normalize columns: P(true | predicted).
    GivenPredicted,
}

/// Turn counts into per-cell confidences.
///
/// Base probabilities are Laplace smoothed, `(count + alpha) / (marginal +
/// alpha M)`; a marginal that is still zero yields the uniform `1/M`.
pub fn confidence_transform<F: Real>(
    cm: &ConfusionMatrix,
    kind: TransformKind,
    direction: Direction,
    alpha: F,
) -> Result<Vec<Vec<F>>> {
    if alpha.is_nan() || alpha < F::zero() {
        return Err(Error::Config("smoothing must be non-negative".into()));
    }
    let m = cm.classes();
    let mf = from_f64::<F>(m as f64);
    let count = |t: usize, p: usize| from_f64::<F>(cm.counts[t][p] as f64);
    let cell = |t: usize, p: usize| {
        let marginal = match direction {
            Direction::GivenTrue => cm.row_total(t),
            Direction::GivenPredicted => cm.column_total(p),
        };
        let denom = from_f64::<F>(marginal as f64) + alpha * mf;
        let q = if denom > F::zero() { (count(t, p) + alpha) / denom } else { F::one() / mf };
        match kind {
            TransformKind::Likelihood => q,
            TransformKind::LogLikelihood => q.ln(),
            // 1 / (1 + exp(-(ln q + ln M))) = qM / (qM + 1)
            TransformKind::Sigmoid => q * mf / (q * mf + F::one()),
        }
    };
    Ok((0..m).map(|t| (0..m).map(|p| cell(t, p)).collect()).collect())
}

/// Average gain `sum P(t) P(p|t) gains[t][p]`, with `P(p|t)` from the
/// row-normalized counts and `P(t)` from `priors` or the row marginals.
pub fn expected_risk<F: Real>(cm: &ConfusionMatrix, gains: &CostMatrix<F>, priors: Option<&[F]>) -> Result<F> {
    let m = cm.classes();
    if gains.classes() != m {
        return Err(Error::dimension(m, gains.classes()));
    }
    let total = from_f64::<F>(cm.total() as f64);
    let priors: Vec<F> = match priors {
        Some(p) => {
            if p.len() != m {
                return Err(Error::dimension(m, p.len()));
            }
            let sum: F = p.iter().copied().sum();
            if p.iter().any(|x| x.is_nan() || *x < F::zero()) || (sum - F::one()).abs() > from_f64(1e-9) {
                return Err(Error::Probability("class priors must be a probability vector".into()));
            }
            p.to_vec()
        }
        None => (0..m).map(|t| from_f64::<F>(cm.row_total(t) as f64) / total).collect(),
    };
    let mut risk = F::zero();
    for (t, (&prior, (counts, gains))) in priors.iter().zip(cm.counts.iter().zip(&gains.gains)).enumerate() {
        let row = cm.row_total(t);
        if row == 0 {
            if prior > F::zero() {
                return Err(Error::Evidence(format!("class {t} has a prior but no validation samples")));
            }
            continue;
        }
        let row = from_f64::<F>(row as f64);
        for (&c, &g) in counts.iter().zip(gains) {
            risk += prior * from_f64::<F>(c as f64) / row * g;
        }
    }
    Ok(risk)
}
