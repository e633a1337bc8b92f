use std::collections::BTreeSet;

use super::{csv_records, parse_f64};
use crate::error::{Error, Result};
use crate::fusion::{ClassifierOutput, CostMatrix, PredictionSet, Sample};

enum Column {
    Id,
    Truth,
    Feature(usize),
    Hard(usize),
    Probability(usize, String),
}

fn classify(name: &str) -> Option<Column> {
    match name {
        "sample_id" => return Some(Column::Id),
        "true_label" => return Some(Column::Truth),
        _ => {}
    }
    if let Some(d) = name.strip_prefix("feat_") {
        return d.parse().ok().map(Column::Feature);
    }
    let rest = name.strip_prefix("clf_")?;
    match rest.split_once(':') {
        Some((j, label)) if !label.is_empty() => j.parse().ok().map(|j| Column::Probability(j, label.to_string())),
        Some(_) => None,
        None => rest.parse().ok().map(Column::Hard),
    }
}

fn contiguous(indices: &BTreeSet<usize>) -> bool {
    indices.iter().copied().eq(0..indices.len())
}

/// Read a predictions CSV.
///
/// Header: `sample_id`, optional `true_label`, `feat_0..feat_D`, then per
/// classifier either `clf_j` (a hard label, or a `>`-joined ranking such as
/// `A>B>C`) or a group `clf_j:<label>` of class probabilities. The label set
/// is every label mentioned, in lexicographic order; a probability group may
/// leave out labels, which then get probability zero.
pub fn parse_predictions(text: &str, file: &str) -> Result<PredictionSet<f64>> {
    let rows = csv_records(text, file)?;
    let Some((header_line, header)) = rows.first() else {
        return Err(Error::parse(file, 1, 1, "missing header row"));
    };
    let mut columns = Vec::with_capacity(header.len());
    for (k, name) in header.iter().enumerate() {
        let col = classify(name).ok_or_else(|| Error::parse(file, *header_line, k + 1, format!("unknown column {name:?}")))?;
        columns.push(col);
    }
    if !columns.iter().any(|c| matches!(c, Column::Id)) {
        return Err(Error::parse(file, *header_line, 1, "no sample_id column"));
    }
    let features: BTreeSet<usize> = columns.iter().filter_map(|c| if let Column::Feature(d) = c { Some(*d) } else { None }).collect();
    let classifiers: BTreeSet<usize> = columns
        .iter()
        .filter_map(|c| match c {
            Column::Hard(j) | Column::Probability(j, _) => Some(*j),
            _ => None,
        })
        .collect();
    if !contiguous(&features) || !contiguous(&classifiers) || classifiers.is_empty() {
        return Err(Error::parse(file, *header_line, 1, "feat_ and clf_ columns must be numbered from 0 without gaps"));
    }
    let k = classifiers.len();
    let mut hard = vec![false; k];
    let mut prob = vec![false; k];
    for c in &columns {
        match c {
            Column::Hard(j) => hard[*j] = true,
            Column::Probability(j, _) => prob[*j] = true,
            _ => {}
        }
    }
    if let Some(j) = (0..k).find(|&j| hard[j] && prob[j]) {
        return Err(Error::parse(file, *header_line, 1, format!("classifier {j} has both a label column and probability columns")));
    }

    let body = &rows[1..];
    let mut labels = BTreeSet::new();
    for (c, col) in columns.iter().enumerate() {
        match col {
            Column::Probability(_, label) => {
                labels.insert(label.clone());
            }
            Column::Truth | Column::Hard(_) => {
                for (_, row) in body {
                    if let Some(cell) = row.get(c).filter(|s| !s.is_empty()) {
                        labels.extend(cell.split('>').map(|s| s.trim().to_string()));
                    }
                }
            }
            _ => {}
        }
    }
    let labels: Vec<String> = labels.into_iter().collect();
    let m = labels.len();
    let index = |label: &str, line: usize, col: usize| {
        labels.binary_search_by(|l| l.as_str().cmp(label)).map_err(|_| Error::parse(file, line, col, format!("unknown label {label:?}")))
    };

    let mut samples = Vec::with_capacity(body.len());
    for (line, row) in body {
        let line = *line;
        if row.len() != columns.len() {
            return Err(Error::parse(file, line, row.len().min(columns.len()) + 1, format!(
                "expected {} fields, found {}",
                columns.len(),
                row.len()
            )));
        }
        let mut id = String::new();
        let mut truth = None;
        let mut feats = vec![0.0; features.len()];
        let mut outputs: Vec<Option<ClassifierOutput<f64>>> = vec![None; k];
        let mut probs: Vec<Vec<f64>> = vec![vec![0.0; m]; k];
        for (c, (col, cell)) in columns.iter().zip(row).enumerate() {
            let column = c + 1;
            match col {
                Column::Id => id = cell.clone(),
                Column::Truth if cell.is_empty() => {}
                Column::Truth => truth = Some(index(cell, line, column)?),
                Column::Feature(d) => feats[*d] = parse_f64(cell, file, line, column)?,
                Column::Hard(j) if cell.contains('>') => {
                    let ranking = cell.split('>').map(|s| index(s.trim(), line, column)).collect::<Result<Vec<_>>>()?;
                    outputs[*j] = Some(ClassifierOutput::Ranking(ranking));
                }
                Column::Hard(j) => {
                    if cell.is_empty() {
                        return Err(Error::parse(file, line, column, "missing classifier output"));
                    }
                    outputs[*j] = Some(ClassifierOutput::Label(index(cell, line, column)?));
                }
                Column::Probability(j, label) => {
                    probs[*j][index(label, line, column)?] = parse_f64(cell, file, line, column)?;
                }
            }
        }
        let outputs = outputs
            .into_iter()
            .zip(probs)
            .map(|(o, p)| o.unwrap_or(ClassifierOutput::Probabilities(p)))
            .collect();
        let features = (!features.is_empty()).then_some(feats);
        let sample = Sample { id, truth, features, outputs };
        PredictionSet::new(labels.clone(), k, vec![sample.clone()]).map_err(|e| Error::parse(file, line, 1, e.to_string()))?;
        samples.push(sample);
    }
    PredictionSet::new(labels, k, samples)
}

/// Write a predictions CSV that [`parse_predictions`] reads back unchanged.
/// A classifier's column layout follows its output type on the first sample.
pub fn write_predictions(ps: &PredictionSet<f64>) -> Result<String> {
    let labels = ps.labels();
    let dims = ps.feature_dims().unwrap_or(0);
    let is_prob: Vec<bool> = (0..ps.classifiers())
        .map(|j| ps.samples().first().is_some_and(|s| matches!(s.outputs[j], ClassifierOutput::Probabilities(_))))
        .collect();
    let mut header = vec!["sample_id".to_string(), "true_label".to_string()];
    header.extend((0..dims).map(|d| format!("feat_{d}")));
    for (j, &p) in is_prob.iter().enumerate() {
        if p {
            header.extend(labels.iter().map(|l| format!("clf_{j}:{l}")));
        } else {
            header.push(format!("clf_{j}"));
        }
    }
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for s in ps.samples() {
        let mut row = vec![s.id.clone(), s.truth.map_or(String::new(), |t| labels[t].clone())];
        if let Some(f) = &s.features {
            row.extend(f.iter().map(|x| x.to_string()));
        }
        for (j, o) in s.outputs.iter().enumerate() {
            match (o, is_prob[j]) {
                (ClassifierOutput::Probabilities(p), true) => row.extend(p.iter().map(|x| x.to_string())),
                (ClassifierOutput::Label(c), false) => row.push(labels[*c].clone()),
                (ClassifierOutput::Ranking(r), false) => {
                    row.push(r.iter().map(|&c| labels[c].as_str()).collect::<Vec<_>>().join(">"))
                }
                _ => return Err(Error::Evidence(format!("classifier {j} mixes probability and label outputs"))),
            }
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
}

/// Read a cost matrix CSV with labelled rows (true class) and columns
/// (predicted class), reordered to `labels`.
///
/// ```text
/// true\pred,A,B
/// A,1,-1
/// B,-5,2
/// ```
pub fn parse_costs(text: &str, file: &str, labels: &[String]) -> Result<CostMatrix<f64>> {
    let rows = csv_records(text, file)?;
    let Some((header_line, header)) = rows.first() else {
        return Err(Error::parse(file, 1, 1, "missing header row"));
    };
    let m = labels.len();
    let find = |label: &str, line: usize, col: usize| {
        labels.iter().position(|l| l == label).ok_or_else(|| Error::parse(file, line, col, format!("unknown label {label:?}")))
    };
    let cols = header[1..].iter().enumerate().map(|(k, l)| find(l, *header_line, k + 2)).collect::<Result<Vec<_>>>()?;
    if cols.len() != m || cols.iter().collect::<BTreeSet<_>>().len() != m {
        return Err(Error::parse(file, *header_line, 1, format!("header must name each of the {m} labels once")));
    }
    let mut gains = vec![vec![f64::NAN; m]; m];
    let mut seen = vec![false; m];
    for (line, row) in &rows[1..] {
        if row.len() != m + 1 {
            return Err(Error::parse(file, *line, 1, format!("expected {} fields, found {}", m + 1, row.len())));
        }
        let t = find(&row[0], *line, 1)?;
        if std::mem::replace(&mut seen[t], true) {
            return Err(Error::parse(file, *line, 1, format!("row for {:?} repeated", row[0])));
        }
        for (k, cell) in row[1..].iter().enumerate() {
            gains[t][cols[k]] = parse_f64(cell, file, *line, k + 2)?;
        }
    }
    if let Some(t) = seen.iter().position(|s| !s) {
        return Err(Error::parse(file, *header_line, 1, format!("no row for label {:?}", labels[t])));
    }
    CostMatrix::new(gains)
}

pub fn write_costs(costs: &CostMatrix<f64>, labels: &[String]) -> String {
    let mut out = format!("true\\pred,{}\n", labels.join(","));
    for (t, row) in costs.gains().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|g| g.to_string()).collect();
        out.push_str(&format!("{},{}\n", labels[t], cells.join(",")));
    }
    out
}
