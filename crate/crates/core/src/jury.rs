//! Collective competence of independent voters.
//!
//! Voter `i` is correct with probability `p_i`, independently. A weighted
//! vote `sum(w_i v_i)` (v = +1 when correct) is compared against a bias: the
//! group is correct above it, wrong below it, and stalemated on it. Exact
//! routines enumerate all correctness patterns and work on any [`Field`], so
//! rational skills give exact answers.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{subset_sums, SkillProfile};
use crate::sampling::run_chunked;
use crate::scalar::{two, Accumulator, Field, Real};

pub const EXACT_MAX_PLAYERS: usize = 24;
pub const INDIRECT_MAX_PLAYERS: usize = 20;

/// How a stalemate (weighted sum equal to the bias) is scored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Stalemate {
    /// No decision is a wrong decision.
    #[default]
    Incorrect,
    /// No decision is resolved by a fair coin.
    CoinFlip,
}

impl Stalemate {
    fn credit<T: Field>(self) -> T {
        match self {
            Stalemate::Incorrect => T::zero(),
            Stalemate::CoinFlip => T::one() / two(),
        }
    }
}

fn check_lengths<T: Field>(weights: &[T], skills: &SkillProfile<T>) -> Result<()> {
    if weights.len() != skills.len() {
        return Err(Error::dimension(skills.len(), weights.len()));
    }
    Ok(())
}

fn check_exact_cap(n: usize) -> Result<()> {
    if n > EXACT_MAX_PLAYERS {
        return Err(Error::capacity(
            "exact competence enumeration",
            EXACT_MAX_PLAYERS as u64,
            "use competence_monte_carlo for larger electorates",
        ));
    }
    Ok(())
}

/// Probability of every correctness pattern; bit `i` set means voter `i` is correct.
fn pattern_probabilities<T: Field>(p: &[T]) -> Vec<T> {
    let mut probs = Vec::with_capacity(1 << p.len());
    probs.push(T::one());
    for pi in p {
        let q = T::one() - pi.clone();
        let len = probs.len();
        for k in 0..len {
            let base = probs[k].clone();
            probs.push(base.clone() * pi.clone());
            probs[k] = base * q.clone();
        }
    }
    probs
}

/// `sum(w_i v_i)` for every correctness pattern of `weights`.
fn signed_sums<T: Field>(weights: &[T]) -> Vec<T> {
    let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    subset_sums(weights).into_iter().map(|s| two::<T>() * s - total.clone()).collect()
}

/// Exact probability that the weighted vote lands on the correct side of `bias`.
pub fn group_competence<T: Field>(
    weights: &[T],
    bias: T,
    skills: &SkillProfile<T>,
    stalemate: Stalemate,
) -> Result<T> {
    check_lengths(weights, skills)?;
    let n = weights.len();
    check_exact_cap(n)?;
    let split = n / 2;
    let p = skills.as_slice();
    let (low_sums, high_sums) = (signed_sums(&weights[..split]), signed_sums(&weights[split..]));
    let (low_probs, high_probs) = (pattern_probabilities(&p[..split]), pattern_probabilities(&p[split..]));
    let tie_credit: T = stalemate.credit();

    let rows: Vec<T> = high_sums
        .par_iter()
        .zip(high_probs.par_iter())
        .map(|(hs, hp)| {
            let mut row = Accumulator::new();
            for (ls, lp) in low_sums.iter().zip(&low_probs) {
                let s = hs.clone() + ls.clone();
                if s > bias {
                    row.add(lp.clone());
                } else if s == bias && !tie_credit.is_zero() {
                    row.add(lp.clone() * tie_credit.clone());
                }
            }
            hp.clone() * row.value()
        })
        .collect();
    let mut total = Accumulator::new();
    for r in rows {
        total.add(r);
    }
    Ok(total.value())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<F> {
    pub value: F,
    pub stderr: F,
    pub trials: u64,
}

/// Seeded Monte Carlo estimate of [`group_competence`].
pub fn competence_monte_carlo<F: Real>(
    weights: &[F],
    bias: F,
    skills: &SkillProfile<F>,
    stalemate: Stalemate,
    trials: u64,
    seed: u64,
) -> Result<Estimate<F>> {
    check_lengths(weights, skills)?;
    if trials == 0 {
        return Err(Error::Config("Monte Carlo needs at least one trial".into()));
    }
    let p: Vec<f64> = skills.as_slice().iter().map(|x| x.to_f64().unwrap()).collect();
    let credit: F = stalemate.credit();
    let (sum, sum_sq) = run_chunked(
        trials,
        seed,
        |rng, count| {
            let (mut sum, mut sum_sq) = (F::zero(), F::zero());
            for _ in 0..count {
                let mut s = F::zero();
                for (w, &pi) in weights.iter().zip(&p) {
                    // random() is in [0, 1), so p = 1 is always correct
                    if rng.random::<f64>() < pi {
                        s += *w;
                    } else {
                        s -= *w;
                    }
                }
                let x = if s > bias {
                    F::one()
                } else if s == bias {
                    credit
                } else {
                    F::zero()
                };
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )
    .expect("at least one chunk");
    let t = F::from_u64(trials).unwrap();
    let mean = sum / t;
    let var = (sum_sq / t - mean * mean).max(F::zero());
    Ok(Estimate { value: mean, stderr: (var / t).sqrt(), trials })
}

/// Derivative of group competence with respect to `p_i`: the probability
/// that voter `i` is decisive for a correct outcome.
///
/// Competence is multilinear in the skills, so this is
/// `G(p_i = 1) - G(p_i = 0)`.
pub fn decisiveness_probability<T: Field>(
    weights: &[T],
    bias: T,
    skills: &SkillProfile<T>,
    player: usize,
    stalemate: Stalemate,
) -> Result<T> {
    check_lengths(weights, skills)?;
    if player >= skills.len() {
        return Err(Error::dimension(skills.len(), player + 1));
    }
    let sure = skills.with_skill(player, T::one())?;
    let never = skills.with_skill(player, T::zero())?;
    Ok(group_competence(weights, bias.clone(), &sure, stalemate)?
        - group_competence(weights, bias, &never, stalemate)?)
}

/// Log-odds weights `ln(p / (1 - p))`, with `p` clamped into `[clip, 1 - clip]`.
///
/// Voters below 0.5 get negative weights.
pub fn optimal_weights<F: Real>(skills: &SkillProfile<F>, clip: F) -> Result<Vec<F>> {
    let half = F::one() / two::<F>();
    if !(clip > F::zero() && clip < half) {
        return Err(Error::Config(format!("clip {clip:?} must lie in (0, 0.5)")));
    }
    Ok(skills
        .as_slice()
        .iter()
        .map(|&p| {
            let p = p.max(clip).min(F::one() - clip);
            (p / (F::one() - p)).ln()
        })
        .collect())
}

/// [`optimal_weights`] with skills below 0.5 raised to 0.5 (weight zero).
pub fn optimal_weights_nonnegative<F: Real>(skills: &SkillProfile<F>, clip: F) -> Result<Vec<F>> {
    Ok(optimal_weights(skills, clip)?.into_iter().map(|w| w.max(F::zero())).collect())
}

/// Weighted majority parameters: weights over voters and a bias.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorityRule<T> {
    pub weights: Vec<T>,
    pub bias: T,
}

impl<T: Field> MajorityRule<T> {
    pub fn simple(n: usize) -> Self {
        MajorityRule { weights: vec![T::one(); n], bias: T::zero() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Team<T> {
    pub members: Vec<usize>,
    pub rule: MajorityRule<T>,
}

/// Two-stage indirect vote: each team decides by its own weighted majority,
/// then a top rule votes over the team outcomes. A player may sit on several
/// teams and then casts the same (correct or wrong) vote in each.
#[derive(Clone, Debug, PartialEq)]
pub struct TeamStructure<T> {
    teams: Vec<Team<T>>,
    top: MajorityRule<T>,
}

impl<T: Field> TeamStructure<T> {
    pub fn new(teams: Vec<Team<T>>, top: MajorityRule<T>) -> Result<Self> {
        if teams.is_empty() {
            return Err(Error::Config("a team structure needs at least one team".into()));
        }
        for (k, t) in teams.iter().enumerate() {
            if t.members.is_empty() {
                return Err(Error::Config(format!("team {k} is empty")));
            }
            if t.rule.weights.len() != t.members.len() {
                return Err(Error::dimension(t.members.len(), t.rule.weights.len()));
            }
            let mut sorted = t.members.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != t.members.len() {
                return Err(Error::Config(format!("team {k} lists a player twice")));
            }
        }
        if top.weights.len() != teams.len() {
            return Err(Error::dimension(teams.len(), top.weights.len()));
        }
        Ok(TeamStructure { teams, top })
    }

    /// Unit-weight, zero-bias majorities at both levels.
    pub fn simple(teams: Vec<Vec<usize>>) -> Result<Self> {
        let k = teams.len();
        let teams = teams
            .into_iter()
            .map(|members| Team { rule: MajorityRule::simple(members.len()), members })
            .collect();
        Self::new(teams, MajorityRule::simple(k))
    }

    /// `k` disjoint teams of `size` consecutive players.
    pub fn disjoint(k: usize, size: usize) -> Result<Self> {
        Self::simple((0..k).map(|t| (t * size..(t + 1) * size).collect()).collect())
    }

    pub fn teams(&self) -> &[Team<T>] {
        &self.teams
    }

    pub fn top(&self) -> &MajorityRule<T> {
        &self.top
    }
}

#[derive(Clone, Copy, PartialEq)]
enum TeamVote {
    Correct,
    Wrong,
    Tied,
}

/// Exact probability that the top-level vote over team outcomes is correct.
///
/// The stalemate policy applies at both levels: a tied team either votes
/// wrong or flips a fair coin.
pub fn indirect_competence<T: Field>(
    structure: &TeamStructure<T>,
    skills: &SkillProfile<T>,
    stalemate: Stalemate,
) -> Result<T> {
    let mut players: Vec<usize> = structure.teams.iter().flat_map(|t| t.members.iter().copied()).collect();
    players.sort_unstable();
    players.dedup();
    if let Some(&bad) = players.iter().find(|&&i| i >= skills.len()) {
        return Err(Error::dimension(skills.len(), bad + 1));
    }
    if players.len() > INDIRECT_MAX_PLAYERS {
        return Err(Error::capacity(
            "exact indirect competence",
            INDIRECT_MAX_PLAYERS as u64,
            "reduce the number of distinct players",
        ));
    }
    let slot = |i: usize| players.binary_search(&i).expect("member is listed");
    let teams: Vec<(Vec<usize>, &MajorityRule<T>)> =
        structure.teams.iter().map(|t| (t.members.iter().map(|&i| slot(i)).collect(), &t.rule)).collect();
    let p: Vec<T> = players.iter().map(|&i| skills.get(i).clone()).collect();
    let probs = pattern_probabilities(&p);
    let half = T::one() / two::<T>();

    let terms: Vec<T> = probs
        .par_iter()
        .enumerate()
        .map(|(pattern, prob)| {
            let votes: Vec<TeamVote> = teams
                .iter()
                .map(|(members, rule)| {
                    let s = members.iter().zip(&rule.weights).fold(T::zero(), |acc, (&m, w)| {
                        if pattern >> m & 1 == 1 {
                            acc + w.clone()
                        } else {
                            acc - w.clone()
                        }
                    });
                    if s > rule.bias {
                        TeamVote::Correct
                    } else if s < rule.bias || stalemate == Stalemate::Incorrect {
                        TeamVote::Wrong
                    } else {
                        TeamVote::Tied
                    }
                })
                .collect();
            let tied: Vec<usize> = (0..votes.len()).filter(|&k| votes[k] == TeamVote::Tied).collect();
            // tied teams resolve by independent fair coins
            let mut value = Accumulator::new();
            for coins in 0u64..1 << tied.len() {
                let weight = (0..tied.len()).fold(T::one(), |acc, _| acc * half.clone());
                let s = votes.iter().enumerate().fold(T::zero(), |acc, (k, v)| {
                    let correct = match v {
                        TeamVote::Correct => true,
                        TeamVote::Wrong => false,
                        TeamVote::Tied => coins >> tied.iter().position(|&t| t == k).unwrap() & 1 == 1,
                    };
                    let w = structure.top.weights[k].clone();
                    if correct {
                        acc + w
                    } else {
                        acc - w
                    }
                });
                if s > structure.top.bias {
                    value.add(weight);
                } else if s == structure.top.bias {
                    value.add(weight * stalemate.credit());
                }
            }
            prob.clone() * value.value()
        })
        .collect();
    let mut total = Accumulator::new();
    for t in terms {
        total.add(t);
    }
    Ok(total.value())
}
