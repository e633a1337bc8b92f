use crate::error::{Error, Result};
use crate::scalar::{from_f64, Real};

/// One classifier's output for one sample.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassifierOutput<F> {
    /// Hard label (Type-I).
    Label(usize),
    /// Full ranking, best first (Type-II).
    Ranking(Vec<usize>),
    /// Class probabilities (Type-III).
    Probabilities(Vec<F>),
}

impl<F: Real> ClassifierOutput<F> {
    /// Top class; probability ties go to the lower class index.
    pub fn hard_label(&self) -> usize {
        match self {
            ClassifierOutput::Label(c) => *c,
            ClassifierOutput::Ranking(r) => r[0],
            ClassifierOutput::Probabilities(p) => argmax(p),
        }
    }

    /// Per-class support: one-hot for labels, linearly decreasing rank
    /// points normalized to sum to one for rankings, probabilities as given.
    pub fn score_vector(&self, m: usize) -> Vec<F> {
        match self {
            ClassifierOutput::Label(c) => (0..m).map(|k| if k == *c { F::one() } else { F::zero() }).collect(),
            ClassifierOutput::Ranking(r) => {
                if m == 1 {
                    return vec![F::one()];
                }
                let total = from_f64::<F>((m * (m - 1) / 2) as f64);
                let mut v = vec![F::zero(); m];
                for (pos, &c) in r.iter().enumerate() {
                    v[c] = from_f64::<F>((m - 1 - pos) as f64) / total;
                }
                v
            }
            ClassifierOutput::Probabilities(p) => p.clone(),
        }
    }

    fn validate(&self, m: usize) -> Result<()> {
        match self {
            ClassifierOutput::Label(c) if *c >= m => Err(Error::Evidence(format!("label index {c} out of range"))),
            ClassifierOutput::Label(_) => Ok(()),
            ClassifierOutput::Ranking(r) => {
                let mut seen = vec![false; m];
                if r.len() != m || r.iter().any(|&c| c >= m || std::mem::replace(&mut seen[c], true)) {
                    return Err(Error::Evidence(format!("ranking {r:?} is not a permutation of the {m} labels")));
                }
                Ok(())
            }
            ClassifierOutput::Probabilities(p) => {
                if p.len() != m {
                    return Err(Error::dimension(m, p.len()));
                }
                if p.iter().any(|x| x.is_nan() || *x < F::zero()) {
                    return Err(Error::Evidence("probabilities must be non-negative".into()));
                }
                let sum: F = p.iter().copied().sum();
                if (sum - F::one()).abs() > from_f64(1e-9) {
                    return Err(Error::Evidence(format!("probabilities sum to {sum:?}, not 1")));
                }
                Ok(())
            }
        }
    }
}

pub(crate) fn argmax<F: Real>(v: &[F]) -> usize {
    let mut best = 0;
    for (k, x) in v.iter().enumerate().skip(1) {
        if *x > v[best] {
            best = k;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample<F> {
    pub id: String,
    pub truth: Option<usize>,
    pub features: Option<Vec<F>>,
    pub outputs: Vec<ClassifierOutput<F>>,
}

/// Raw per-sample classifier outputs over an ordered label set.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictionSet<F> {
    labels: Vec<String>,
    classifiers: usize,
    samples: Vec<Sample<F>>,
}

impl<F: Real> PredictionSet<F> {
    pub fn new(labels: Vec<String>, classifiers: usize, samples: Vec<Sample<F>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Evidence("no class labels".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Evidence("duplicate class labels".into()));
        }
        let m = labels.len();
        let dims = samples.iter().find_map(|s| s.features.as_ref().map(Vec::len));
        for s in &samples {
            if s.outputs.len() != classifiers {
                return Err(Error::dimension(classifiers, s.outputs.len()));
            }
            if s.truth.is_some_and(|t| t >= m) {
                return Err(Error::Evidence(format!("sample {}: true label out of range", s.id)));
            }
            if s.features.as_ref().map(Vec::len) != dims {
                return Err(Error::Evidence(format!("sample {}: inconsistent feature dimension", s.id)));
            }
            for o in &s.outputs {
                o.validate(m).map_err(|e| Error::Evidence(format!("sample {}: {e}", s.id)))?;
            }
        }
        Ok(PredictionSet { labels, classifiers, samples })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn classifiers(&self) -> usize {
        self.classifiers
    }

    pub fn samples(&self) -> &[Sample<F>] {
        &self.samples
    }

    pub fn feature_dims(&self) -> Option<usize> {
        self.samples.iter().find_map(|s| s.features.as_ref().map(Vec::len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_labels_and_vectors() {
        let p = ClassifierOutput::Probabilities(vec![0.4, 0.4, 0.2]);
        assert_eq!(p.hard_label(), 0);
        let r = ClassifierOutput::<f64>::Ranking(vec![2, 0, 1]);
        assert_eq!(r.hard_label(), 2);
        assert_eq!(r.score_vector(3), vec![1.0 / 3.0, 0.0, 2.0 / 3.0]);
        assert_eq!(ClassifierOutput::<f64>::Label(1).score_vector(2), vec![0.0, 1.0]);
    }

    #[test]
    fn invalid_outputs_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let bad = |o: ClassifierOutput<f64>| {
            PredictionSet::new(labels.clone(), 1, vec![Sample { id: "s".into(), truth: None, features: None, outputs: vec![o] }])
        };
        assert!(bad(ClassifierOutput::Probabilities(vec![0.7, 0.4])).is_err());
        assert!(bad(ClassifierOutput::Probabilities(vec![1.5, -0.5])).is_err());
        assert!(bad(ClassifierOutput::Ranking(vec![0, 0])).is_err());
        assert!(bad(ClassifierOutput::Label(2)).is_err());
        assert!(bad(ClassifierOutput::Probabilities(vec![0.25, 0.75])).is_ok());
    }
}
