use std::collections::BTreeSet;

use super::csv_records;
use crate::error::{Error, Result};
use crate::scoring::RankedBallot;

/// Ballots over labels in lexicographic order (class `k` is `labels[k]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallotSet {
    pub labels: Vec<String>,
    pub ballots: Vec<RankedBallot>,
}

/// One row per voter; the row lists every label, most preferred first.
pub fn parse_ballots(text: &str, file: &str) -> Result<BallotSet> {
    let rows = csv_records(text, file)?;
    let Some((first_line, first)) = rows.first() else {
        return Err(Error::parse(file, 1, 1, "no ballots"));
    };
    let labels: Vec<String> = first.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if labels.len() != first.len() {
        return Err(Error::parse(file, *first_line, 1, "a ballot lists a label twice"));
    }
    let mut ballots = Vec::with_capacity(rows.len());
    for (line, row) in &rows {
        if row.len() != labels.len() {
            return Err(Error::parse(file, *line, row.len().min(labels.len()) + 1, format!(
                "ballot ranks {} labels, expected {}",
                row.len(),
                labels.len()
            )));
        }
        let mut ranking = Vec::with_capacity(row.len());
        for (k, cell) in row.iter().enumerate() {
            let Ok(c) = labels.binary_search(cell) else {
                return Err(Error::parse(file, *line, k + 1, format!("label {cell:?} does not appear on the first ballot")));
            };
            ranking.push(c);
        }
        let ballot = RankedBallot::new(ranking).map_err(|e| Error::parse(file, *line, 1, e.to_string()))?;
        ballots.push(ballot);
    }
    Ok(BallotSet { labels, ballots })
}

pub fn write_ballots(set: &BallotSet) -> String {
    let mut out = String::new();
    for b in &set.ballots {
        let row: Vec<&str> = b.ranking().iter().map(|&c| set.labels[c].as_str()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
