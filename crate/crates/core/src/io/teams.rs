use serde::Deserialize;

use super::{csv_records, line_col, parse_f64};
use crate::error::{Error, Result};
use crate::jury::{MajorityRule, Team, TeamStructure};
use crate::{SkillProfile, Skills};

/// Skills as comma- and/or newline-separated probabilities.
pub fn parse_skills(text: &str, file: &str) -> Result<Skills> {
    let mut p = Vec::new();
    for (line, row) in csv_records(text, file)? {
        for (k, cell) in row.iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let x = parse_f64(cell, file, line, k + 1)?;
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::parse(file, line, k + 1, format!("skill {x} is not in [0, 1]")));
            }
            p.push(x);
        }
    }
    SkillProfile::new(p).map_err(|e| Error::parse(file, 1, 1, e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    weights: Option<Vec<f64>>,
    #[serde(default)]
    bias: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TeamDoc {
    members: Vec<usize>,
    weights: Option<Vec<f64>>,
    #[serde(default)]
    bias: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TeamsDoc {
    team: Vec<TeamDoc>,
    top: Option<RuleDoc>,
}

/// Read a team structure:
///
/// ```toml
/// [[team]]
/// members = [0, 1, 2]
/// weights = [1.0, 1.0, 1.0]   # optional, default all 1
/// bias = 0.0                  # optional
///
/// [top]                       # optional, default simple majority
/// weights = [1.0]
/// ```
pub fn parse_teams(text: &str, file: &str) -> Result<TeamStructure<f64>> {
    let doc: TeamsDoc = toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        Error::parse(file, line, col, e.message().to_string())
    })?;
    let k = doc.team.len();
    let teams = doc
        .team
        .into_iter()
        .map(|t| Team {
            rule: MajorityRule { weights: t.weights.unwrap_or_else(|| vec![1.0; t.members.len()]), bias: t.bias },
            members: t.members,
        })
        .collect();
    let top = match doc.top {
        Some(r) => MajorityRule { weights: r.weights.unwrap_or_else(|| vec![1.0; k]), bias: r.bias },
        None => MajorityRule::simple(k),
    };
    TeamStructure::new(teams, top).map_err(|e| Error::parse(file, 1, 1, e.to_string()))
}
