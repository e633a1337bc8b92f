use serde::Deserialize;
use toml::Spanned;

use super::line_col;
use crate::error::{Error, Result};
use crate::{Game, Rational, VotingGame};

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc {
    weights: Vec<Spanned<Number>>,
    quota: Option<Spanned<Number>>,
}

/// Parse `"p/q"`, an integer, or a finite decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let (num, den) = (num.trim().parse::<i64>().ok()?, den.trim().parse::<i64>().ok()?);
        return (den != 0).then(|| Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
            return None;
        }
        let negative = int.starts_with('-');
        let int = if int.is_empty() || int == "-" { 0 } else { int.parse::<i64>().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let frac = frac.parse::<i64>().ok()?;
        let magnitude = int.checked_abs()?.checked_mul(den)?.checked_add(frac)?;
        return Some(Rational::new(if negative { -magnitude } else { magnitude }, den));
    }
    s.parse::<i64>().ok().map(Rational::from_integer)
}

fn to_rational(v: &Spanned<Number>, text: &str, file: &str) -> Result<Rational> {
    let parsed = match v.get_ref() {
        Number::Int(i) => Some(Rational::from_integer(*i)),
        Number::Text(s) => parse_rational(s),
    };
    parsed.ok_or_else(|| {
        let (line, col) = line_col(text, v.span().start);
        Error::parse(file, line, col, "expected an integer or a rational \"p/q\"")
    })
}

/// Read a game file:
///
/// ```toml
/// weights = ["2", "1", "1/2"]
/// quota = "majority"   # or a rational; default majority
/// ```
pub fn parse_game(text: &str, file: &str) -> Result<Game> {
    let doc: GameDoc = toml::from_str(text).map_err(|e| {
        let (line, col) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        Error::parse(file, line, col, e.message().to_string())
    })?;
    let weights = doc.weights.iter().map(|w| to_rational(w, text, file)).collect::<Result<Vec<_>>>()?;
    let game = match &doc.quota {
        None => VotingGame::majority(weights),
        Some(q) if matches!(q.get_ref(), Number::Text(s) if s.trim() == "majority") => VotingGame::majority(weights),
        Some(q) => VotingGame::new(weights, to_rational(q, text, file)?),
    };
    game.map_err(|e| Error::parse(file, 1, 1, e.to_string()))
}

pub fn write_game(game: &Game) -> String {
    let weights: Vec<String> = game.weights().iter().map(|w| format!("\"{w}\"")).collect();
    format!("weights = [{}]\nquota = \"{}\"\n", weights.join(", "), game.quota())
}
