//! `wmrkit`: batch front end for the wmrkit library.
//!
//! Every subcommand writes one CSV table to standard output (or `--output`),
//! preceded by `# key=value` metadata lines. Exit codes: 2 usage, 3 data,
//! 4 capacity.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use wmrkit::fusion::{
    confusion_from_predictions, decision_accuracy, decision_confusion, expected_risk, fuse_all, smoothed_accuracies,
    Decision, FixedRule, FusionMethod, PredictionSet, ValidationIndex,
};
use wmrkit::io::{
    fmt_real, parse_ballots, parse_costs, parse_game, parse_predictions, parse_skills, parse_teams, write_decisions,
    write_power_report, write_wmr_rules, CsvTable, DecisionRow, Header,
};
use wmrkit::jury::{
    competence_monte_carlo, decisiveness_probability, group_competence, indirect_competence, optimal_weights,
    optimal_weights_nonnegative, Stalemate,
};
use wmrkit::power::{banzhaf_exact, power_monte_carlo, shapley_exact, IndexKind};
use wmrkit::scoring::{condorcet_efficiency, condorcet_winner, score_profile, EfficiencyMode, ScoringVector, TiePolicy};
use wmrkit::wmr::{enumerate_unique_wmr, wmr_network};
use wmrkit::{Error, FloatGame, Result, Skills};

#[derive(Parser)]
#[command(name = "wmrkit", version, about = "Voting power, weighted majority rules, jury competence and classifier fusion")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Add a `# timestamp=` line (off by default so reruns are byte-identical).
    #[arg(long, global = true)]
    timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Banzhaf or Shapley-Shubik power of a weighted voting game.
    Power(PowerArgs),
    /// Unique weighted majority rules.
    #[command(subcommand)]
    Wmr(WmrCommand),
    /// Group competence, decisiveness and optimal weights of a jury.
    Jury(JuryArgs),
    /// Condorcet efficiency of a scoring rule, or a scored ballot file.
    Efficiency(EfficiencyArgs),
    /// Fuse classifier outputs sample by sample.
    Fuse(FuseArgs),
    /// Long-form summary of whichever inputs are given.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Index {
    Banzhaf,
    Shapley,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Mc,
}

#[derive(Args)]
struct PowerArgs {
    /// Game file (TOML with `weights` and optional `quota`).
    #[arg(long)]
    game: PathBuf,
    #[arg(long, value_enum, default_value = "banzhaf")]
    index: Index,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum WmrCommand {
    /// One row per canonical decisive rule.
    Enum(WmrArgs),
    /// Pairwise disagreement counts between the canonical rules.
    Network(WmrArgs),
}

#[derive(Args)]
struct WmrArgs {
    #[arg(long)]
    n: usize,
    /// Largest weight searched (defaults to the built-in bound for n).
    #[arg(long)]
    max_weight: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Nd {
    Incorrect,
    CoinFlip,
}

#[derive(Args)]
struct JuryArgs {
    /// Comma-separated skill probabilities.
    #[arg(long, value_delimiter = ',', conflicts_with = "skills_file", required_unless_present = "skills_file")]
    skills: Option<Vec<f64>>,
    /// Skill probabilities as CSV.
    #[arg(long)]
    skills_file: Option<PathBuf>,
    /// Comma-separated voter weights (default: all 1).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "optimal")]
    weights: Option<Vec<f64>>,
    /// Use log-odds weights.
    #[arg(long)]
    optimal: bool,
    /// Clamp skills to be non-negative log-odds (with --optimal).
    #[arg(long, requires = "optimal")]
    nonnegative: bool,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bias: f64,
    #[arg(long, value_enum, default_value = "incorrect")]
    nd: Nd,
    /// Team structure file (TOML) for indirect voting.
    #[arg(long)]
    teams: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    clip: f64,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ties {
    Fail,
    Split,
}

#[derive(Args)]
struct EfficiencyArgs {
    /// Number of candidates.
    #[arg(long, required_unless_present = "ballots")]
    m: Option<usize>,
    /// Number of voters.
    #[arg(long, required_unless_present = "ballots")]
    voters: Option<usize>,
    /// `borda`, `plurality`, or comma-separated rank scores.
    #[arg(long, default_value = "borda")]
    scores: String,
    /// Score this ballot file instead of computing an efficiency.
    #[arg(long, conflicts_with_all = ["m", "voters"])]
    ballots: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Method,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "fail")]
    ties: Ties,
}

#[derive(Args)]
struct FuseArgs {
    /// Predictions to fuse (CSV).
    #[arg(long)]
    predictions: PathBuf,
    /// Labelled validation predictions, for `wmr` and `adaptive`.
    #[arg(long)]
    validation: Option<PathBuf>,
    /// sum, product, min, max, median, majority, trimmed:ALPHA, wmr or adaptive.
    #[arg(long, default_value = "majority")]
    rule: String,
    /// Comma-separated classifier weights for sum and majority.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Neighbours for adaptive fusion.
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bias: f64,
    #[arg(long, default_value_t = 1e-6)]
    clip: f64,
    /// Gain matrix (CSV) for the expected-risk summary.
    #[arg(long)]
    costs: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    game: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    skills: Option<Vec<f64>>,
    #[arg(long)]
    predictions: Option<PathBuf>,
    #[arg(long)]
    validation: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    clip: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 2,
        Error::Capacity { .. } => 4,
        _ => 3,
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn header(cli: &Cli, subcommand: &str, seed: u64) -> Header {
    let mut h = Header::new().with("subcommand", subcommand).with("version", env!("CARGO_PKG_VERSION"));
    if cli.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        h.set("timestamp", secs);
    }
    h.with("seed", seed)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Power(a) => power(cli, a),
        Command::Wmr(WmrCommand::Enum(a)) => wmr_enum(cli, a),
        Command::Wmr(WmrCommand::Network(a)) => wmr_net(cli, a),
        Command::Jury(a) => jury(cli, a),
        Command::Efficiency(a) => efficiency(cli, a),
        Command::Fuse(a) => fuse(cli, a),
        Command::Report(a) => report(cli, a),
    }
}

fn load_game(path: &Path) -> Result<FloatGame> {
    let game = parse_game(&read(path)?, &name(path))?;
    let weights = game.weights().iter().map(|w| *w.numer() as f64 / *w.denom() as f64).collect();
    let quota = *game.quota().numer() as f64 / *game.quota().denom() as f64;
    FloatGame::new(weights, quota)
}

fn power(cli: &Cli, a: &PowerArgs) -> Result<String> {
    let path = &a.game;
    let game = parse_game(&read(path)?, &name(path))?;
    let kind = match a.index {
        Index::Banzhaf => IndexKind::Banzhaf,
        Index::Shapley => IndexKind::Shapley,
    };
    let report = match (a.method, kind) {
        (Method::Exact, IndexKind::Banzhaf) => banzhaf_exact(&game)?,
        (Method::Exact, IndexKind::Shapley) => shapley_exact(&game)?,
        (Method::Mc, kind) => power_monte_carlo(&game, kind, a.trials, a.seed)?,
    };
    Ok(write_power_report(&report, header(cli, "power", a.seed)))
}

fn wmr_enum(cli: &Cli, a: &WmrArgs) -> Result<String> {
    let e = enumerate_unique_wmr(a.n, a.max_weight)?;
    let h = header(cli, "wmr enum", 0)
        .with("n", e.n)
        .with("max_weight", e.max_weight)
        .with("stable_at_next_bound", e.stable_at_next_bound);
    Ok(write_wmr_rules(&e.rules, h))
}

fn wmr_net(cli: &Cli, a: &WmrArgs) -> Result<String> {
    let e = enumerate_unique_wmr(a.n, a.max_weight)?;
    let graph = wmr_network(&e.rules)?;
    let h = header(cli, "wmr network", 0).with("n", e.n).with("max_weight", e.max_weight);
    let mut table = CsvTable::new(h, &["a", "b", "distance"]);
    for i in 0..graph.len() {
        for j in i + 1..graph.len() {
            table.push(vec![i.to_string(), j.to_string(), graph.distance(i, j).to_string()]);
        }
    }
    Ok(table.render())
}

fn quantity(table: &mut CsvTable, what: &str, player: Option<usize>, value: f64) {
    table.push(vec![what.to_string(), player.map_or(String::new(), |i| i.to_string()), fmt_real(value)]);
}

fn jury(cli: &Cli, a: &JuryArgs) -> Result<String> {
    let skills = match (&a.skills, &a.skills_file) {
        (Some(p), _) => Skills::new(p.clone())?,
        (None, Some(path)) => parse_skills(&read(path)?, &name(path))?,
        (None, None) => return Err(Error::Config("give --skills or --skills-file".into())),
    };
    let n = skills.len();
    let stalemate = match a.nd {
        Nd::Incorrect => Stalemate::Incorrect,
        Nd::CoinFlip => Stalemate::CoinFlip,
    };
    let weights = match (&a.weights, a.optimal, a.nonnegative) {
        (Some(w), _, _) => w.clone(),
        (None, true, false) => optimal_weights(&skills, a.clip)?,
        (None, true, true) => optimal_weights_nonnegative(&skills, a.clip)?,
        (None, false, _) => vec![1.0; n],
    };
    if weights.len() != n {
        return Err(Error::Dimension { expected: n, got: weights.len() });
    }
    let nd = match a.nd {
        Nd::Incorrect => "incorrect",
        Nd::CoinFlip => "coin-flip",
    };
    let h = header(cli, "jury", a.seed).with("nd", nd).with("bias", fmt_real(a.bias));
    let mut table = CsvTable::new(h, &["quantity", "player", "value"]);
    for (i, (p, w)) in skills.as_slice().iter().zip(&weights).enumerate() {
        quantity(&mut table, "skill", Some(i), *p);
        quantity(&mut table, "weight", Some(i), *w);
    }
    match a.method {
        Method::Exact => {
            quantity(&mut table, "competence", None, group_competence(&weights, a.bias, &skills, stalemate)?);
            for i in 0..n {
                let d = decisiveness_probability(&weights, a.bias, &skills, i, stalemate)?;
                quantity(&mut table, "decisiveness", Some(i), d);
            }
        }
        Method::Mc => {
            let est = competence_monte_carlo(&weights, a.bias, &skills, stalemate, a.trials, a.seed)?;
            quantity(&mut table, "competence", None, est.value);
            quantity(&mut table, "competence_stderr", None, est.stderr);
            table.push(vec!["trials".into(), String::new(), est.trials.to_string()]);
        }
    }
    if let Some(path) = &a.teams {
        let structure = parse_teams(&read(path)?, &name(path))?;
        quantity(&mut table, "indirect_competence", None, indirect_competence(&structure, &skills, stalemate)?);
    }
    Ok(table.render())
}

fn scoring_vector(spec: &str, m: usize) -> Result<ScoringVector<f64>> {
    match spec {
        "borda" => ScoringVector::borda(m),
        "plurality" => ScoringVector::plurality(m),
        list => {
            let scores = list
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad score {s:?} in --scores"))))
                .collect::<Result<Vec<_>>>()?;
            if scores.len() != m {
                return Err(Error::Config(format!("--scores has {} entries for {m} candidates", scores.len())));
            }
            ScoringVector::new(scores)
        }
    }
}

fn efficiency(cli: &Cli, a: &EfficiencyArgs) -> Result<String> {
    if let Some(path) = &a.ballots {
        let set = parse_ballots(&read(path)?, &name(path))?;
        let sv = scoring_vector(&a.scores, set.labels.len())?;
        let outcome = score_profile(&set.ballots, &sv, None)?;
        let cw = condorcet_winner::<f64>(&set.ballots, None)?;
        let h = header(cli, "efficiency", a.seed)
            .with("scores", &a.scores)
            .with("condorcet_winner", cw.map_or("none", |c| set.labels[c].as_str()));
        let mut table = CsvTable::new(h, &["label", "score", "rank"]);
        for (rank, &c) in outcome.ranking.iter().enumerate() {
            table.push(vec![set.labels[c].clone(), fmt_real(outcome.totals[c]), (rank + 1).to_string()]);
        }
        return Ok(table.render());
    }
    let (m, voters) = (a.m.unwrap_or_default(), a.voters.unwrap_or_default());
    let sv = scoring_vector(&a.scores, m)?;
    let mode = match a.mode {
        Method::Exact => EfficiencyMode::Exact,
        Method::Mc => EfficiencyMode::MonteCarlo { trials: a.trials, seed: a.seed },
    };
    let ties = match a.ties {
        Ties::Fail => TiePolicy::Fail,
        Ties::Split => TiePolicy::SplitCredit,
    };
    let e = condorcet_efficiency(&sv, voters, mode, ties)?;
    let h = header(cli, "efficiency", a.seed)
        .with("m", m)
        .with("voters", voters)
        .with("scores", &a.scores)
        .with("exact", e.exact);
    let mut table = CsvTable::new(h, &["quantity", "value"]);
    for (what, value) in [
        ("efficiency", fmt_real(e.value)),
        ("stderr", fmt_real(e.stderr)),
        ("ci_low", fmt_real(e.ci.0)),
        ("ci_high", fmt_real(e.ci.1)),
        ("profiles", e.profiles.to_string()),
        ("with_winner", e.with_winner.to_string()),
        ("credit", fmt_real(e.credit)),
    ] {
        table.push(vec![what.into(), value]);
    }
    Ok(table.render())
}

fn load_predictions(path: &Path) -> Result<PredictionSet<f64>> {
    parse_predictions(&read(path)?, &name(path))
}

fn validation_for(ps: &PredictionSet<f64>, path: Option<&PathBuf>) -> Result<PredictionSet<f64>> {
    let path = path.ok_or_else(|| Error::Config("this rule needs --validation".into()))?;
    let v = load_predictions(path)?;
    if v.labels() != ps.labels() || v.classifiers() != ps.classifiers() {
        return Err(Error::Evidence(format!(
            "{} does not have the same labels and classifiers as the predictions",
            path.display()
        )));
    }
    Ok(v)
}

fn fusion_method(ps: &PredictionSet<f64>, a: &FuseArgs) -> Result<FusionMethod<f64>> {
    let fixed = |rule| Ok(FusionMethod::Fixed { rule, weights: a.weights.clone() });
    match a.rule.as_str() {
        "sum" => fixed(FixedRule::Sum),
        "product" => fixed(FixedRule::Product),
        "min" => fixed(FixedRule::Min),
        "max" => fixed(FixedRule::Max),
        "median" => fixed(FixedRule::Median),
        "majority" => fixed(FixedRule::Majority),
        "wmr" => {
            let v = validation_for(ps, a.validation.as_ref())?;
            let accuracies = smoothed_accuracies(&ValidationIndex::from_predictions(&v)?)?;
            Ok(FusionMethod::Wmr { accuracies, bias: a.bias, clip: a.clip })
        }
        "adaptive" => {
            let v = validation_for(ps, a.validation.as_ref())?;
            Ok(FusionMethod::AdaptiveWmr {
                index: ValidationIndex::from_predictions(&v)?,
                k: a.k,
                bias: a.bias,
                clip: a.clip,
            })
        }
        other => match other.strip_prefix("trimmed:").map(str::parse::<f64>) {
            Some(Ok(alpha)) => fixed(FixedRule::TrimmedMean(alpha)),
            _ => Err(Error::Config(format!("unknown rule {other:?}"))),
        },
    }
}

fn fuse(cli: &Cli, a: &FuseArgs) -> Result<String> {
    let ps = load_predictions(&a.predictions)?;
    let method = fusion_method(&ps, a)?;
    let decisions = fuse_all(&ps, &method)?;
    let labels = ps.labels();
    let mut h = header(cli, "fuse", 0).with("rule", &a.rule);
    h.set("no_decisions", decisions.iter().filter(|d| **d == Decision::NoDecision).count());
    if let Some(acc) = decision_accuracy(&ps, &decisions) {
        h.set("accuracy", fmt_real(acc));
    }
    if let Some(path) = &a.costs {
        let costs = parse_costs(&read(path)?, &name(path), labels)?;
        let cm = decision_confusion(&ps, &decisions)?;
        h.set("expected_gain", fmt_real(expected_risk(&cm, &costs, None)?));
    }
    let rows: Vec<DecisionRow> = ps
        .samples()
        .iter()
        .zip(&decisions)
        .map(|(s, d)| DecisionRow {
            sample_id: s.id.clone(),
            true_label: s.truth.map(|t| labels[t].clone()),
            decision: d.class().map(|c| labels[c].clone()),
        })
        .collect();
    Ok(write_decisions(&rows, h))
}

fn report(cli: &Cli, a: &ReportArgs) -> Result<String> {
    if a.game.is_none() && a.skills.is_none() && a.predictions.is_none() {
        return Err(Error::Config("give at least one of --game, --skills, --predictions".into()));
    }
    let mut table = CsvTable::new(header(cli, "report", a.seed), &["section", "item", "value"]);
    let mut push = |section: &str, item: String, value: String| table.push(vec![section.to_string(), item, value]);
    if let Some(path) = &a.game {
        let game = parse_game(&read(path)?, &name(path))?;
        for (section, r) in [("banzhaf", banzhaf_exact(&game)?), ("shapley", shapley_exact(&game)?)] {
            for (i, x) in r.normalized.iter().enumerate() {
                push(section, i.to_string(), fmt_real(*x));
            }
        }
        let float = load_game(path)?;
        let n = float.n();
        let bias = 2.0 * float.quota() - float.total_weight();
        let half = Skills::uniform(n, 0.5)?;
        let c = group_competence(float.weights(), bias, &half, Stalemate::Incorrect)?;
        push("game", "competence_at_half".into(), fmt_real(c));
    }
    if let Some(p) = &a.skills {
        let skills = Skills::new(p.clone())?;
        let n = skills.len();
        let opt = optimal_weights(&skills, a.clip)?;
        let equal = group_competence(&vec![1.0; n], 0.0, &skills, Stalemate::Incorrect)?;
        let best = group_competence(&opt, 0.0, &skills, Stalemate::Incorrect)?;
        push("jury", "competence_equal".into(), fmt_real(equal));
        push("jury", "competence_optimal".into(), fmt_real(best));
        for (i, w) in opt.iter().enumerate() {
            push("optimal_weight", i.to_string(), fmt_real(*w));
        }
    }
    if let Some(path) = &a.predictions {
        let ps = load_predictions(path)?;
        for j in 0..ps.classifiers() {
            if ps.samples().iter().any(|s| s.truth.is_some()) {
                push("classifier_accuracy", j.to_string(), fmt_real(confusion_from_predictions(&ps, j)?.accuracy()));
            }
        }
        let mut rules = vec![
            ("majority".to_string(), FusionMethod::Fixed { rule: FixedRule::Majority, weights: None }),
            ("sum".to_string(), FusionMethod::Fixed { rule: FixedRule::Sum, weights: None }),
        ];
        if a.validation.is_some() {
            let v = validation_for(&ps, a.validation.as_ref())?;
            let accuracies = smoothed_accuracies(&ValidationIndex::from_predictions(&v)?)?;
            rules.push(("wmr".to_string(), FusionMethod::Wmr { accuracies, bias: 0.0, clip: a.clip }));
        }
        for (rule, method) in rules {
            let decisions = fuse_all(&ps, &method)?;
            if let Some(acc) = decision_accuracy(&ps, &decisions) {
                push("fusion_accuracy", rule, fmt_real(acc));
            }
        }
    }
    Ok(table.render())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::Ballot("x".into())), 3);
        assert_eq!(exit_code(&Error::Capacity { what: "x".into(), cap: 1, alternative: "y".into() }), 4);
    }

    #[test]
    fn custom_scores() {
        assert_eq!(scoring_vector("3,1,0", 3).unwrap().scores(), &[3.0, 1.0, 0.0]);
        assert!(scoring_vector("3,1", 3).is_err());
        assert!(scoring_vector("borda", 4).is_ok());
    }
}
