//! Positional scoring rules and pairwise (Condorcet) analysis.
//!
//! Classes are identified by index `0..M`. Ballots rank every class. Ties in
//! score totals are broken by class index, which the file readers assign in
//! lexicographic label order.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::sampling::run_chunked;
use crate::scalar::Scalar;

/// Largest number of profiles the exact efficiency mode will enumerate.
pub const EXACT_MAX_PROFILES: u64 = 10_000_000;

/// A strict ranking of all classes, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankedBallot {
    ranking: Vec<usize>,
}

impl RankedBallot {
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; ranking.len()];
        for &c in &ranking {
            if c >= ranking.len() || seen[c] {
                return Err(Error::Ballot(format!("{ranking:?} is not a permutation of 0..{}", ranking.len())));
            }
            seen[c] = true;
        }
        Ok(RankedBallot { ranking })
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// Rank position of every class.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.ranking.len()];
        for (k, &c) in self.ranking.iter().enumerate() {
            pos[c] = k;
        }
        pos
    }
}

/// Points awarded per rank position. Any sign is allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoringVector<T> {
    scores: Vec<T>,
}

impl<T: Scalar> ScoringVector<T> {
    pub fn new(scores: Vec<T>) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::Config("scoring vector is empty".into()));
        }
        Ok(ScoringVector { scores })
    }

    /// `M-1, M-2, ..., 0`.
    pub fn borda(m: usize) -> Result<Self> {
        let points = (0..m).rev().map(|k| (0..k).fold(T::zero(), |acc, _| acc + T::one()));
        Self::new(points.collect())
    }

    /// `1, 0, ..., 0`.
    pub fn plurality(m: usize) -> Result<Self> {
        Self::new((0..m).map(|k| if k == 0 { T::one() } else { T::zero() }).collect())
    }

    pub fn scores(&self) -> &[T] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScoreOutcome<T> {
    pub totals: Vec<T>,
    /// Classes by descending total; equal totals in class order.
    pub ranking: Vec<usize>,
    /// `tied[c]` is set when another class has the same total as `c`.
    pub tied: Vec<bool>,
}

impl<T: Scalar> ScoreOutcome<T> {
    /// The top class, if no other class shares its total.
    pub fn winner(&self) -> Option<usize> {
        let top = self.ranking[0];
        (!self.tied[top]).then_some(top)
    }

    /// Every class sharing the top total.
    pub fn top_group(&self) -> Vec<usize> {
        let best = &self.totals[self.ranking[0]];
        self.ranking.iter().copied().take_while(|&c| self.totals[c] == *best).collect()
    }
}

fn check_profile<T: Scalar>(ballots: &[RankedBallot], m: usize, voter_weights: Option<&[T]>) -> Result<()> {
    if let Some(b) = ballots.iter().find(|b| b.len() != m) {
        return Err(Error::Ballot(format!("ballot ranks {} classes, expected {m}", b.len())));
    }
    if let Some(w) = voter_weights {
        if w.len() != ballots.len() {
            return Err(Error::dimension(ballots.len(), w.len()));
        }
    }
    Ok(())
}

fn voter_weight<T: Scalar>(voter_weights: Option<&[T]>, v: usize) -> T {
    voter_weights.map_or_else(T::one, |w| w[v].clone())
}

fn rank_totals<T: Scalar>(totals: Vec<T>) -> ScoreOutcome<T> {
    let mut ranking: Vec<usize> = (0..totals.len()).collect();
    // stable sort keeps class order within equal totals
    ranking.sort_by(|&a, &b| totals[b].partial_cmp(&totals[a]).unwrap_or(std::cmp::Ordering::Equal));
    let tied = (0..totals.len())
        .map(|c| (0..totals.len()).any(|d| d != c && totals[d] == totals[c]))
        .collect();
    ScoreOutcome { totals, ranking, tied }
}

/// Weighted positional totals of every class.
pub fn score_profile<T: Scalar>(
    ballots: &[RankedBallot],
    sv: &ScoringVector<T>,
    voter_weights: Option<&[T]>,
) -> Result<ScoreOutcome<T>> {
    let m = sv.len();
    check_profile(ballots, m, voter_weights)?;
    let mut totals = vec![T::zero(); m];
    for (v, b) in ballots.iter().enumerate() {
        let w = voter_weight(voter_weights, v);
        for (pos, &c) in b.ranking().iter().enumerate() {
            totals[c] = totals[c].clone() + w.clone() * sv.scores[pos].clone();
        }
    }
    Ok(rank_totals(totals))
}

/// Entry `[a][b]` is the total weight of voters ranking `a` above `b`.
pub fn pairwise_matrix<T: Scalar>(ballots: &[RankedBallot], voter_weights: Option<&[T]>) -> Result<Vec<Vec<T>>> {
    let m = ballots.first().map_or(0, |b| b.len());
    check_profile(ballots, m, voter_weights)?;
    let mut matrix = vec![vec![T::zero(); m]; m];
    for (v, b) in ballots.iter().enumerate() {
        let w = voter_weight(voter_weights, v);
        for (i, &a) in b.ranking().iter().enumerate() {
            for &c in &b.ranking()[i + 1..] {
                matrix[a][c] = matrix[a][c].clone() + w.clone();
            }
        }
    }
    Ok(matrix)
}

/// The class beating every other class in strict pairwise majority.
pub fn condorcet_winner<T: Scalar>(ballots: &[RankedBallot], voter_weights: Option<&[T]>) -> Result<Option<usize>> {
    let matrix = pairwise_matrix(ballots, voter_weights)?;
    Ok(winner_of(&matrix))
}

fn winner_of<T: PartialOrd>(matrix: &[Vec<T>]) -> Option<usize> {
    let m = matrix.len();
    (0..m).find(|&a| (0..m).all(|b| a == b || matrix[a][b] > matrix[b][a]))
}

/// How a scoring tie at the top is credited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TiePolicy {
    /// A shared top score is a failure.
    #[default]
    Fail,
    /// `1/k` credit when the Condorcet winner is among `k` tied classes.
    SplitCredit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EfficiencyMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Efficiency {
    pub value: f64,
    /// Zero in exact mode.
    pub stderr: f64,
    /// 95% normal interval, clipped to [0, 1]; degenerate in exact mode.
    pub ci: (f64, f64),
    /// Profiles examined (all `(M!)^n` in exact mode).
    pub profiles: u64,
    /// Profiles that have a Condorcet winner: the denominator.
    pub with_winner: u64,
    /// Credit earned by the scoring rule: the numerator.
    pub credit: f64,
    pub exact: bool,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    profiles: u64,
    with_winner: u64,
    credit: f64,
    credit_sq: f64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            profiles: self.profiles + o.profiles,
            with_winner: self.with_winner + o.with_winner,
            credit: self.credit + o.credit,
            credit_sq: self.credit_sq + o.credit_sq,
        }
    }
}

/// Credit of one profile given as rank positions per voter, or None if it
/// has no Condorcet winner.
fn profile_credit<T: Scalar>(positions: &[&[usize]], sv: &ScoringVector<T>, ties: TiePolicy) -> Option<f64> {
    let m = sv.len();
    let mut totals = vec![T::zero(); m];
    let mut beats = vec![vec![0u32; m]; m];
    for pos in positions {
        for a in 0..m {
            totals[a] = totals[a].clone() + sv.scores[pos[a]].clone();
            for b in 0..m {
                if pos[a] < pos[b] {
                    beats[a][b] += 1;
                }
            }
        }
    }
    let winner = winner_of(&beats)?;
    let best = totals.iter().skip(1).fold(&totals[0], |acc, t| if t > acc { t } else { acc });
    let top: Vec<usize> = (0..m).filter(|&c| totals[c] == *best).collect();
    let credit = match (top.contains(&winner), ties) {
        (false, _) => 0.0,
        (true, _) if top.len() == 1 => 1.0,
        (true, TiePolicy::Fail) => 0.0,
        (true, TiePolicy::SplitCredit) => 1.0 / top.len() as f64,
    };
    Some(credit)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c);
                rec(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Probability that the scoring rule elects the Condorcet winner, given that
/// one exists, under impartial culture (ballots independent and uniform over
/// all `M!` rankings).
pub fn condorcet_efficiency<T: Scalar>(
    sv: &ScoringVector<T>,
    voters: usize,
    mode: EfficiencyMode,
    ties: TiePolicy,
) -> Result<Efficiency> {
    let m = sv.len();
    if voters == 0 {
        return Err(Error::Config("at least one voter is needed".into()));
    }
    let tally = match mode {
        EfficiencyMode::Exact => {
            let orders = (1..=m as u64).try_fold(1u64, |acc, k| acc.checked_mul(k));
            let profiles = orders.and_then(|o| (0..voters).try_fold(1u64, |acc, _| acc.checked_mul(o)));
            match profiles {
                Some(p) if p <= EXACT_MAX_PROFILES => {}
                _ => {
                    return Err(Error::capacity(
                        "exact Condorcet efficiency (profiles)",
                        EXACT_MAX_PROFILES,
                        "use Monte Carlo mode",
                    ))
                }
            }
            exact_tally(sv, voters, ties)
        }
        EfficiencyMode::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(Error::Config("Monte Carlo needs at least one trial".into()));
            }
            run_chunked(
                trials,
                seed,
                |rng, count| {
                    let mut tally = Tally::default();
                    let mut ballots: Vec<Vec<usize>> = vec![(0..m).collect(); voters];
                    let mut positions = vec![vec![0usize; m]; voters];
                    for _ in 0..count {
                        for (b, pos) in ballots.iter_mut().zip(positions.iter_mut()) {
                            b.shuffle(rng);
                            for (k, &c) in b.iter().enumerate() {
                                pos[c] = k;
                            }
                        }
                        let refs: Vec<&[usize]> = positions.iter().map(|p| p.as_slice()).collect();
                        tally.profiles += 1;
                        if let Some(c) = profile_credit(&refs, sv, ties) {
                            tally.with_winner += 1;
                            tally.credit += c;
                            tally.credit_sq += c * c;
                        }
                    }
                    tally
                },
                Tally::merge,
            )
            .expect("at least one chunk")
        }
    };
    if tally.with_winner == 0 {
        return Err(Error::Evidence("no profile had a Condorcet winner".into()));
    }
    let k = tally.with_winner as f64;
    let value = tally.credit / k;
    let exact = mode == EfficiencyMode::Exact;
    let stderr = if exact { 0.0 } else { ((tally.credit_sq / k - value * value).max(0.0) / k).sqrt() };
    let ci = ((value - 1.96 * stderr).max(0.0), (value + 1.96 * stderr).min(1.0));
    Ok(Efficiency {
        value,
        stderr,
        ci,
        profiles: tally.profiles,
        with_winner: tally.with_winner,
        credit: tally.credit,
        exact,
    })
}

fn exact_tally<T: Scalar>(sv: &ScoringVector<T>, voters: usize, ties: TiePolicy) -> Tally {
    let perms: Vec<Vec<usize>> = permutations(sv.len())
        .into_iter()
        .map(|p| RankedBallot { ranking: p }.positions())
        .collect();
    let mut odometer = vec![0usize; voters];
    let mut tally = Tally::default();
    loop {
        let refs: Vec<&[usize]> = odometer.iter().map(|&k| perms[k].as_slice()).collect();
        tally.profiles += 1;
        if let Some(c) = profile_credit(&refs, sv, ties) {
            tally.with_winner += 1;
            tally.credit += c;
            tally.credit_sq += c * c;
        }
        let mut k = 0;
        loop {
            if k == voters {
                return tally;
            }
            odometer[k] += 1;
            if odometer[k] < perms.len() {
                break;
            }
            odometer[k] = 0;
            k += 1;
        }
    }
}
