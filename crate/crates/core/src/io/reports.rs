use super::{csv_records, parse_f64, Records};
use crate::error::{Error, Result};
use crate::power::{IndexKind, Method, PowerReport};
use crate::wmr::{CanonicalWmr, DecisionRule};

/// Marker written for a no-decision outcome.
pub const NO_DECISION: &str = "ND";

/// Fixed-point with 12 decimals, trailing zeros removed: `0.648`, `1`, `-0.25`.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// `# key=value` comment lines at the top of a report.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Header {
    pub entries: Vec<(String, String)>,
}

impl Header {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, value);
        self
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn parse(text: &str) -> Self {
        let mut header = Header::new();
        for line in text.lines().map(str::trim).take_while(|l| l.is_empty() || l.starts_with('#')) {
            if let Some((k, v)) = line.trim_start_matches('#').trim().split_once('=') {
                header.set(k.trim(), v.trim());
            }
        }
        header
    }
}

/// A header block, a column row and data rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Header,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: Header, columns: &[&str]) -> Self {
        Self { header, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header.entries {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        // Writing to a Vec cannot fail.
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 input"));
        out
    }

    /// Parse a table, checking the column names and that each row has
    /// one field per column. Data rows keep their line numbers.
    pub fn parse(text: &str, file: &str, expected: &[&str]) -> Result<(Header, Records)> {
        let header = Header::parse(text);
        let mut records = csv_records(text, file)?.into_iter();
        let (line, columns) = records.next().ok_or_else(|| Error::parse(file, 1, 1, "missing column row"))?;
        if columns != expected {
            return Err(Error::parse(file, line, 1, format!("expected columns {}", expected.join(","))));
        }
        let rows: Vec<_> = records.collect();
        if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != expected.len()) {
            return Err(Error::parse(file, *line, 1, format!("expected {} fields, found {}", expected.len(), row.len())));
        }
        Ok((header, rows))
    }
}

const POWER_COLUMNS: [&str; 4] = ["player", "raw", "normalized", "stderr"];

pub fn write_power_report(report: &PowerReport, header: Header) -> String {
    let header = header
        .with("index", match report.kind {
            IndexKind::Banzhaf => "banzhaf",
            IndexKind::Shapley => "shapley",
        })
        .with("method", match report.method {
            Method::Exact => "exact",
            Method::MonteCarlo => "mc",
        });
    let header = match report.trials {
        Some(t) => header.with("trials", t),
        None => header,
    };
    let mut table = CsvTable::new(header, &POWER_COLUMNS);
    for (i, (raw, norm)) in report.raw.iter().zip(&report.normalized).enumerate() {
        let se = report.stderr.as_ref().map_or(String::new(), |s| fmt_real(s[i]));
        table.push(vec![i.to_string(), raw.to_string(), fmt_real(*norm), se]);
    }
    table.render()
}

pub fn read_power_report(text: &str, file: &str) -> Result<PowerReport> {
    let (header, rows) = CsvTable::parse(text, file, &POWER_COLUMNS)?;
    let kind = match header.get("index") {
        Some("banzhaf") => IndexKind::Banzhaf,
        Some("shapley") => IndexKind::Shapley,
        _ => return Err(Error::parse(file, 1, 1, "missing or unknown `# index=` line")),
    };
    let method = match header.get("method") {
        Some("exact") => Method::Exact,
        Some("mc") => Method::MonteCarlo,
        _ => return Err(Error::parse(file, 1, 1, "missing or unknown `# method=` line")),
    };
    let trials = match header.get("trials") {
        Some(t) => Some(t.parse().map_err(|_| Error::parse(file, 1, 1, format!("bad trial count {t:?}")))?),
        None => None,
    };
    let mut raw = Vec::new();
    let mut normalized = Vec::new();
    let mut stderr = Vec::new();
    for (i, (line, row)) in rows.iter().enumerate() {
        if row[0] != i.to_string() {
            return Err(Error::parse(file, *line, 1, format!("expected player {i}")));
        }
        raw.push(row[1].parse().map_err(|_| Error::parse(file, *line, 2, format!("expected a count, found {:?}", row[1])))?);
        normalized.push(parse_f64(&row[2], file, *line, 3)?);
        if !row[3].is_empty() {
            stderr.push(parse_f64(&row[3], file, *line, 4)?);
        }
    }
    let stderr = match stderr.len() {
        0 => None,
        k if k == raw.len() => Some(stderr),
        _ => return Err(Error::parse(file, 1, 1, "stderr column must be filled on every row or none")),
    };
    Ok(PowerReport { kind, method, raw, normalized, stderr, trials })
}

const WMR_COLUMNS: [&str; 3] = ["id", "weights", "table"];

/// One row per rule: space-separated weights and the outcome bitstring
/// indexed by decision profile.
pub fn write_wmr_rules(rules: &[CanonicalWmr], header: Header) -> String {
    let mut table = CsvTable::new(header, &WMR_COLUMNS);
    for (id, r) in rules.iter().enumerate() {
        let weights: Vec<String> = r.weights.iter().map(u32::to_string).collect();
        table.push(vec![id.to_string(), weights.join(" "), r.rule.bitstring()]);
    }
    table.render()
}

pub fn read_wmr_rules(text: &str, file: &str) -> Result<Vec<CanonicalWmr>> {
    let (_, rows) = CsvTable::parse(text, file, &WMR_COLUMNS)?;
    rows.iter()
        .map(|(line, row)| {
            let weights = row[1]
                .split_whitespace()
                .map(|w| w.parse::<u32>().map_err(|_| Error::parse(file, *line, 2, format!("expected a weight, found {w:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let rule = DecisionRule::from_bitstring(weights.len(), &row[2])
                .map_err(|e| Error::parse(file, *line, 3, e.to_string()))?;
            Ok(CanonicalWmr { weights, rule })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionRow {
    pub sample_id: String,
    pub true_label: Option<String>,
    /// `None` is a no-decision outcome.
    pub decision: Option<String>,
}

const DECISION_COLUMNS: [&str; 3] = ["sample_id", "true_label", "decision"];

pub fn write_decisions(rows: &[DecisionRow], header: Header) -> String {
    let mut table = CsvTable::new(header, &DECISION_COLUMNS);
    for r in rows {
        table.push(vec![
            r.sample_id.clone(),
            r.true_label.clone().unwrap_or_default(),
            r.decision.clone().unwrap_or_else(|| NO_DECISION.to_string()),
        ]);
    }
    table.render()
}

pub fn read_decisions(text: &str, file: &str) -> Result<(Header, Vec<DecisionRow>)> {
    let (header, rows) = CsvTable::parse(text, file, &DECISION_COLUMNS)?;
    let rows = rows
        .into_iter()
        .map(|(_, mut row)| {
            let decision = row.pop().filter(|d| d != NO_DECISION);
            let true_label = row.pop().filter(|t| !t.is_empty());
            DecisionRow { sample_id: row.pop().unwrap_or_default(), true_label, decision }
        })
        .collect();
    Ok((header, rows))
}
