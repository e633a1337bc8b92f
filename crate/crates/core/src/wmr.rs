//! Weighted majority rules as explicit decision functions.
//!
//! A [`DecisionRule`] tabulates the outcome of every dichotomous vote
//! profile. Profile index bit `i` is set when player `i` votes +1 (class A).

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::jury::{group_competence, Stalemate};
use crate::model::{subset_sums, Coalition, DecisionProfile, SimpleGame, SkillProfile, VotingGame, WinningSet};
use crate::scalar::{two, Real, Scalar};

/// Largest player count for which decision tables are built.
pub const RULE_MAX_PLAYERS: usize = 20;
pub const ENUMERATION_MAX_PLAYERS: usize = 7;
pub const TRADE_MAX_PLAYERS: usize = 12;
pub const DEFAULT_TRADE_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    A,
    B,
    NoDecision,
}

impl Outcome {
    pub fn symbol(self) -> char {
        match self {
            Outcome::A => '1',
            Outcome::B => '0',
            Outcome::NoDecision => 'N',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '1' => Some(Outcome::A),
            '0' => Some(Outcome::B),
            'N' => Some(Outcome::NoDecision),
            _ => None,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Outcome::B => 0,
            Outcome::NoDecision => 1,
            Outcome::A => 2,
        }
    }

    fn swapped(self) -> Self {
        match self {
            Outcome::A => Outcome::B,
            Outcome::B => Outcome::A,
            Outcome::NoDecision => Outcome::NoDecision,
        }
    }
}

/// Outcome of every one of the `2^n` vote profiles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecisionRule {
    n: usize,
    table: Vec<Outcome>,
}

impl fmt::Debug for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecisionRule(n={}, {})", self.n, self.bitstring())
    }
}

impl DecisionRule {
    pub fn from_table(n: usize, table: Vec<Outcome>) -> Result<Self> {
        if n > RULE_MAX_PLAYERS {
            return Err(Error::capacity("decision tables", RULE_MAX_PLAYERS as u64, "use group_competence directly"));
        }
        if table.len() != 1 << n {
            return Err(Error::dimension(1 << n, table.len()));
        }
        Ok(DecisionRule { n, table })
    }

    /// Outcome A for winning supporter sets, B otherwise.
    pub fn from_simple_game<G: SimpleGame + ?Sized>(game: &G) -> Result<Self> {
        let n = game.players();
        if n > RULE_MAX_PLAYERS {
            return Err(Error::capacity("decision tables", RULE_MAX_PLAYERS as u64, "use group_competence directly"));
        }
        let set = game.winning_set();
        let table = (0..1u64 << n).map(|m| if set.contains(m) { Outcome::A } else { Outcome::B }).collect();
        Ok(DecisionRule { n, table })
    }

    /// Parse the `1`/`0`/`N` outcome string produced by [`bitstring`](Self::bitstring).
    pub fn from_bitstring(n: usize, s: &str) -> Result<Self> {
        let table = s
            .chars()
            .map(|c| Outcome::from_symbol(c).ok_or_else(|| Error::Config(format!("bad outcome symbol {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(n, table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[Outcome] {
        &self.table
    }

    pub fn outcome(&self, profile: &DecisionProfile) -> Result<Outcome> {
        if profile.n() != self.n {
            return Err(Error::dimension(self.n, profile.n()));
        }
        Ok(self.table[profile.index() as usize])
    }

    pub fn bitstring(&self) -> String {
        self.table.iter().map(|o| o.symbol()).collect()
    }

    pub fn is_decisive(&self) -> bool {
        !self.table.contains(&Outcome::NoDecision)
    }

    /// Switching any single vote from -1 to +1 never moves the outcome away from A.
    pub fn is_monotone(&self) -> bool {
        (0..self.table.len()).all(|m| {
            (0..self.n)
                .filter(|i| m >> i & 1 == 0)
                .all(|i| self.table[m | 1 << i].rank() >= self.table[m].rank())
        })
    }

    /// Negating every vote swaps A and B and keeps no-decision.
    pub fn is_neutral(&self) -> bool {
        let all = self.table.len() - 1;
        (0..self.table.len()).all(|m| self.table[all ^ m] == self.table[m].swapped())
    }

    /// Number of profiles on which the two rules differ.
    pub fn disagreement(&self, other: &DecisionRule) -> Result<u64> {
        if self.n != other.n {
            return Err(Error::dimension(self.n, other.n));
        }
        Ok(self.table.iter().zip(&other.table).filter(|(a, b)| a != b).count() as u64)
    }
}

/// Decision rule of `sum(w_i v_i)` against `bias`: A above, B below,
/// no-decision on equality. Zero bias is the simple weighted majority.
pub fn rule_from_weights<W: Scalar>(weights: &[W], bias: W) -> Result<DecisionRule> {
    let n = weights.len();
    if n > RULE_MAX_PLAYERS {
        return Err(Error::capacity("decision tables", RULE_MAX_PLAYERS as u64, "use group_competence directly"));
    }
    let total = weights.iter().fold(W::zero(), |acc, w| acc + w.clone());
    // sum(w_i v_i) = 2 * weight(supporters) - total
    let table = subset_sums(weights)
        .into_iter()
        .map(|plus| {
            let s = two::<W>() * plus - total.clone();
            if s > bias {
                Outcome::A
            } else if s < bias {
                Outcome::B
            } else {
                Outcome::NoDecision
            }
        })
        .collect();
    Ok(DecisionRule { n, table })
}

/// [`rule_from_weights`] on a game's weights; requires `|bias| <= W`.
pub fn rule_from_game<W: Scalar>(game: &VotingGame<W>, bias: W) -> Result<DecisionRule> {
    let total = game.total_weight();
    if bias > total || bias < W::zero() - total.clone() {
        return Err(Error::Config(format!("bias {bias:?} exceeds the total weight {total:?}")));
    }
    rule_from_weights(game.weights(), bias)
}

pub fn rules_equivalent(a: &DecisionRule, b: &DecisionRule) -> Result<bool> {
    Ok(a.disagreement(b)? == 0)
}

/// A unique weighted majority rule with its canonical integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalWmr {
    pub weights: Vec<u32>,
    pub rule: DecisionRule,
}

#[derive(Clone, Debug)]
pub struct WmrEnumeration {
    pub n: usize,
    pub max_weight: u32,
    /// Sorted by weight vector, ascending.
    pub rules: Vec<CanonicalWmr>,
    /// Whether searching with `max_weight + 1` finds the same number of rules.
    pub stable_at_next_bound: bool,
}

/// Search bound under which the known counts 1, 1, 2, 3, 7, 21, 135 are reached.
pub fn default_max_weight(n: usize) -> Option<u32> {
    [1, 1, 2, 2, 3, 5, 9].get(n.checked_sub(1)?).copied()
}

/// All distinct decisive zero-bias weighted majority rules on `n` players
/// with integer weights up to `max_weight`.
///
/// Candidate weight vectors are non-increasing and visited in ascending
/// lexicographic order, odd totals before even ones; the first vector to
/// realize a new decision table becomes that rule's canonical weights.
pub fn enumerate_unique_wmr(n: usize, max_weight: Option<u32>) -> Result<WmrEnumeration> {
    if n == 0 || n > ENUMERATION_MAX_PLAYERS {
        return Err(Error::capacity(
            "unique WMR enumeration",
            ENUMERATION_MAX_PLAYERS as u64,
            "n must be between 1 and 7",
        ));
    }
    let max_weight = max_weight.or_else(|| default_max_weight(n)).unwrap_or(1);
    if max_weight == 0 {
        return Err(Error::Config("max weight must be at least 1".into()));
    }
    let rules = search_unique(n, max_weight);
    let stable_at_next_bound = search_unique(n, max_weight + 1).len() == rules.len();
    Ok(WmrEnumeration { n, max_weight, rules, stable_at_next_bound })
}

fn search_unique(n: usize, max_weight: u32) -> Vec<CanonicalWmr> {
    let mut candidates = Vec::new();
    non_increasing(n, max_weight, &mut Vec::with_capacity(n), &mut candidates);
    let (odd, even): (Vec<_>, Vec<_>) = candidates.into_iter().partition(|w| w.iter().sum::<u32>() % 2 == 1);

    let mut seen = HashSet::new();
    let mut rules = Vec::new();
    for weights in odd.into_iter().chain(even) {
        if weights.iter().all(|&w| w == 0) {
            continue;
        }
        let Some(key) = decisive_table(&weights) else { continue };
        if seen.insert(key) {
            let rule = rule_from_weights(&weights.iter().map(|&w| w as i64).collect::<Vec<_>>(), 0)
                .expect("n is within table limits");
            rules.push(CanonicalWmr { weights, rule });
        }
    }
    rules.sort_by(|a, b| a.weights.cmp(&b.weights));
    rules
}

/// Non-increasing vectors in ascending lexicographic order.
fn non_increasing(n: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for w in 0..=cap {
        prefix.push(w);
        non_increasing(n, w, prefix, out);
        prefix.pop();
    }
}

/// A-outcome bitmap of a zero-bias rule, or None if any profile ties.
fn decisive_table(weights: &[u32]) -> Option<u128> {
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    let mut bits = 0u128;
    for m in 0..1usize << weights.len() {
        let plus: i64 = (0..weights.len()).filter(|i| m >> i & 1 == 1).map(|i| weights[i] as i64).sum();
        match (2 * plus - total).signum() {
            1 => bits |= 1 << m,
            0 => return None,
            _ => {}
        }
    }
    Some(bits)
}

/// Player `player` leaves coalition `from` and joins coalition `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trade {
    pub player: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeWitness {
    /// Winning coalitions before trading.
    pub before: Vec<Coalition>,
    /// The same players redistributed; every coalition loses.
    pub after: Vec<Coalition>,
    pub trades: Vec<Trade>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeRobustness {
    pub robust: bool,
    /// Largest number of coalitions considered trading together.
    pub cap: usize,
    pub witness: Option<TradeWitness>,
}

/// Search for winning coalitions whose members can be traded so that all of
/// them lose.
///
/// Tuples of `2..=cap` minimal winning coalitions are considered (shrinking a
/// winning coalition to a minimal one only makes a losing redistribution
/// easier). A redistribution keeps every player's multiplicity: a player in
/// `m` of the coalitions is in `m` distinct coalitions afterwards. Weighted
/// games are always robust.
pub fn is_trade_robust<G: SimpleGame + ?Sized>(game: &G, cap: usize) -> Result<TradeRobustness> {
    let n = game.players();
    if n > TRADE_MAX_PLAYERS {
        return Err(Error::capacity(
            "trade robustness search",
            TRADE_MAX_PLAYERS as u64,
            "no sampled alternative exists; reduce the game",
        ));
    }
    if cap < 2 {
        return Err(Error::Config("trades need at least two coalitions".into()));
    }
    let set = game.winning_set();
    let minimal = game.minimal_winning();
    if minimal.is_empty() {
        return Ok(TradeRobustness { robust: true, cap, witness: None });
    }
    for j in 2..=cap {
        let mut picks = vec![0usize; j];
        loop {
            let before: Vec<Coalition> = picks.iter().map(|&k| minimal[k]).collect();
            if let Some(after) = losing_redistribution(n, &before, &set) {
                let trades = trades_between(n, &before, &after);
                let witness = TradeWitness { before, after, trades };
                return Ok(TradeRobustness { robust: false, cap, witness: Some(witness) });
            }
            if !next_multiset(&mut picks, minimal.len()) {
                break;
            }
        }
    }
    Ok(TradeRobustness { robust: true, cap, witness: None })
}

/// Advance a non-decreasing index tuple; false when exhausted.
fn next_multiset(picks: &mut [usize], size: usize) -> bool {
    if size == 0 {
        return false;
    }
    let mut k = picks.len();
    while k > 0 {
        k -= 1;
        if picks[k] + 1 < size {
            let v = picks[k] + 1;
            for p in &mut picks[k..] {
                *p = v;
            }
            return true;
        }
    }
    false
}

fn losing_redistribution(n: usize, before: &[Coalition], set: &WinningSet) -> Option<Vec<Coalition>> {
    let multiplicity: Vec<(usize, usize)> = (0..n)
        .map(|p| (p, before.iter().filter(|c| c.contains(p)).count()))
        .filter(|&(_, m)| m > 0)
        .collect();
    let mut slots = vec![Coalition::EMPTY; before.len()];
    if assign(&multiplicity, 0, &mut slots, set) {
        Some(slots)
    } else {
        None
    }
}

fn assign(players: &[(usize, usize)], next: usize, slots: &mut [Coalition], set: &WinningSet) -> bool {
    let Some(&(player, copies)) = players.get(next) else {
        return true;
    };
    let j = slots.len();
    // choose `copies` distinct slots via bitmask
    for choice in 0u32..1 << j {
        if choice.count_ones() as usize != copies {
            continue;
        }
        let chosen: Vec<usize> = (0..j).filter(|s| choice >> s & 1 == 1).collect();
        // subsets of losing coalitions lose, so a winning partial is a dead end
        if chosen.iter().any(|&s| set.contains(slots[s].with(player).mask())) {
            continue;
        }
        for &s in &chosen {
            slots[s] = slots[s].with(player);
        }
        if assign(players, next + 1, slots, set) {
            return true;
        }
        for &s in &chosen {
            slots[s] = slots[s].without(player);
        }
    }
    false
}

fn trades_between(n: usize, before: &[Coalition], after: &[Coalition]) -> Vec<Trade> {
    let mut trades = Vec::new();
    for player in 0..n {
        let leaves = (0..before.len()).filter(|&k| before[k].contains(player) && !after[k].contains(player));
        let joins = (0..after.len()).filter(|&k| after[k].contains(player) && !before[k].contains(player));
        trades.extend(leaves.zip(joins).map(|(from, to)| Trade { player, from, to }));
    }
    trades
}

/// Complete graph over rules; edge weight is the number of profiles on
/// which the two rules decide differently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisagreementGraph {
    pub distances: Vec<Vec<u64>>,
}

impl DisagreementGraph {
    pub fn distance(&self, a: usize, b: usize) -> u64 {
        self.distances[a][b]
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }
}

pub fn wmr_network(rules: &[CanonicalWmr]) -> Result<DisagreementGraph> {
    let mut distances = vec![vec![0; rules.len()]; rules.len()];
    for a in 0..rules.len() {
        for b in a + 1..rules.len() {
            let d = rules[a].rule.disagreement(&rules[b].rule)?;
            distances[a][b] = d;
            distances[b][a] = d;
        }
    }
    Ok(DisagreementGraph { distances })
}

/// The candidate with the highest group competence under `skills`.
///
/// Ties (within 1e-12) go to the candidate that disagrees least with the rule
/// induced by `target_weights`, then to the lexicographically smaller weights.
pub fn nearest_simple_rule<F: Real>(
    target_weights: &[F],
    candidates: &[CanonicalWmr],
    skills: &SkillProfile<F>,
) -> Result<CanonicalWmr> {
    let Some(first) = candidates.first() else {
        return Err(Error::Config("no candidate rules".into()));
    };
    let n = skills.len();
    if target_weights.len() != n {
        return Err(Error::dimension(n, target_weights.len()));
    }
    let target = rule_from_weights(target_weights, F::zero())?;
    let tie = F::from_f64(1e-12).unwrap();
    let mut scored = Vec::with_capacity(candidates.len());
    for c in candidates {
        if c.weights.len() != n {
            return Err(Error::dimension(n, c.weights.len()));
        }
        let weights: Vec<F> = c.weights.iter().map(|&w| F::from_u32(w).unwrap()).collect();
        let competence = group_competence(&weights, F::zero(), skills, Stalemate::Incorrect)?;
        scored.push((competence, c.rule.disagreement(&target)?, c));
    }
    let mut best = (scored[0].0, scored[0].1, first);
    for &(competence, distance, c) in &scored[1..] {
        let better = if competence > best.0 + tie {
            true
        } else if competence + tie < best.0 {
            false
        } else {
            (distance, &c.weights) < (best.1, &best.2.weights)
        };
        if better {
            best = (competence, distance, c);
        }
    }
    Ok(best.2.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ExplicitGame;
    use crate::Rational;
    use proptest::prelude::*;

    fn profile(votes: &[i8]) -> DecisionProfile {
        DecisionProfile::from_votes(votes).unwrap()
    }

    fn ints(ws: &[i64]) -> Vec<i64> {
        ws.to_vec()
    }

    #[test]
    fn rule_outcomes() {
        let r = rule_from_weights(&ints(&[1, 1, 1]), 0).unwrap();
        assert_eq!(r.outcome(&profile(&[1, 1, -1])).unwrap(), Outcome::A);
        let r = rule_from_weights(&ints(&[1, 1, 1, 1]), 0).unwrap();
        assert_eq!(r.outcome(&profile(&[1, 1, -1, -1])).unwrap(), Outcome::NoDecision);
        let r = rule_from_weights(&ints(&[2, 1, 1, 1]), 0).unwrap();
        assert_eq!(r.outcome(&profile(&[1, -1, -1, -1])).unwrap(), Outcome::B);
    }

    #[test]
    fn bias_creates_stalemate_band() {
        let g = VotingGame::<i64>::majority(vec![1, 1, 1]).unwrap();
        let r = rule_from_game(&g, 1).unwrap();
        assert_eq!(r.outcome(&profile(&[1, 1, -1])).unwrap(), Outcome::NoDecision);
        assert_eq!(r.outcome(&profile(&[1, 1, 1])).unwrap(), Outcome::A);
        assert!(rule_from_game(&g, 4).is_err());
    }

    #[test]
    fn equivalence() {
        let a = rule_from_weights(&ints(&[2, 2, 2]), 0).unwrap();
        let b = rule_from_weights(&ints(&[1, 1, 1]), 0).unwrap();
        assert!(rules_equivalent(&a, &b).unwrap());
        let c = rule_from_weights(&ints(&[2, 1, 1, 1]), 0).unwrap();
        let d = rule_from_weights(&ints(&[3, 1, 1, 1]), 0).unwrap();
        assert!(!rules_equivalent(&c, &d).unwrap());
        assert!(rules_equivalent(&c, &c).unwrap());
        assert!(matches!(rules_equivalent(&a, &c), Err(Error::Dimension { .. })));
    }

    #[test]
    fn four_player_rules() {
        let e = enumerate_unique_wmr(4, None).unwrap();
        let ws: Vec<_> = e.rules.iter().map(|r| r.weights.clone()).collect();
        assert_eq!(ws, vec![vec![1, 0, 0, 0], vec![1, 1, 1, 0], vec![2, 1, 1, 1]]);
        assert!(e.stable_at_next_bound);
        assert!(e.rules.iter().all(|r| r.rule.is_decisive() && r.rule.is_monotone() && r.rule.is_neutral()));
    }

    #[test]
    fn small_counts() {
        for (n, count) in [(1, 1), (2, 1), (3, 2), (4, 3), (5, 7)] {
            assert_eq!(enumerate_unique_wmr(n, None).unwrap().rules.len(), count, "n={n}");
        }
        assert!(enumerate_unique_wmr(8, None).unwrap_err().is_capacity());
        assert!(enumerate_unique_wmr(0, None).unwrap_err().is_capacity());
    }

    #[test]
    fn low_bound_misses_rules() {
        let e = enumerate_unique_wmr(5, Some(1)).unwrap();
        assert!(e.rules.len() < 7);
        assert!(!e.stable_at_next_bound);
    }

    #[test]
    fn network_distances() {
        let e = enumerate_unique_wmr(4, None).unwrap();
        let g = wmr_network(&e.rules).unwrap();
        // (1,1,1,0) vs (2,1,1,1)
        assert_eq!(g.distance(1, 2), 2);
        for a in 0..g.len() {
            assert_eq!(g.distance(a, a), 0);
            for b in 0..g.len() {
                assert_eq!(g.distance(a, b), g.distance(b, a));
                if a != b {
                    assert!(g.distance(a, b) > 0);
                }
            }
        }
        let mixed = [e.rules[0].clone(), enumerate_unique_wmr(3, None).unwrap().rules[0].clone()];
        assert!(wmr_network(&mixed).is_err());
    }

    #[test]
    fn weighted_games_are_trade_robust() {
        let g = VotingGame::new(
            [3, 2, 2, 1].iter().map(|&w| Rational::from_integer(w)).collect(),
            Rational::from_integer(4),
        )
        .unwrap();
        let r = is_trade_robust(&g, 2).unwrap();
        assert!(r.robust && r.witness.is_none());
        let dictator = VotingGame::<i64>::new(vec![1, 0, 0, 0], 0).unwrap();
        assert!(is_trade_robust(&dictator, 3).unwrap().robust);
    }

    #[test]
    fn non_weighted_game_has_witness() {
        let g = ExplicitGame::new(4, vec![Coalition::from_members([0, 1]), Coalition::from_members([2, 3])])
            .unwrap();
        let r = is_trade_robust(&g, 2).unwrap();
        assert!(!r.robust);
        let w = r.witness.unwrap();
        assert!(w.before.iter().all(|&c| g.wins(c)));
        assert!(w.after.iter().all(|&c| !g.wins(c)));
        for p in 0..4 {
            let count = |cs: &[Coalition]| cs.iter().filter(|c| c.contains(p)).count();
            assert_eq!(count(&w.before), count(&w.after));
        }
        // replaying the trades on `before` yields `after`
        let mut replay = w.before.clone();
        for t in &w.trades {
            replay[t.from] = replay[t.from].without(t.player);
            replay[t.to] = replay[t.to].with(t.player);
        }
        assert_eq!(replay, w.after);
        assert!(is_trade_robust(&g, 1).is_err());
    }

    #[test]
    fn nearest_rule_prefers_competence() {
        let e = enumerate_unique_wmr(4, None).unwrap();
        let skills = SkillProfile::new(vec![0.9, 0.6, 0.6, 0.6]).unwrap();
        let target = crate::jury::optimal_weights(&skills, 1e-6).unwrap();
        let best = nearest_simple_rule(&target, &e.rules, &skills).unwrap();
        assert_eq!(best.weights, vec![1, 0, 0, 0]);

        let e5 = enumerate_unique_wmr(5, None).unwrap();
        let skills = SkillProfile::uniform(5, 0.7).unwrap();
        let target = vec![1.0; 5];
        assert_eq!(nearest_simple_rule(&target, &e5.rules, &skills).unwrap().weights, vec![1; 5]);

        let single = &e.rules[1..2];
        let skills = SkillProfile::uniform(4, 0.8).unwrap();
        assert_eq!(nearest_simple_rule(&[1.0; 4], single, &skills).unwrap(), single[0]);
        assert!(nearest_simple_rule(&[1.0; 4], &[], &skills).is_err());
    }

    fn arb_weights() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(0i64..12, 1..8)
    }

    proptest! {
        #[test]
        fn scaling_preserves_rule(ws in arb_weights(), bias in -5i64..5, k in 1i64..6) {
            let a = rule_from_weights(&ws, bias).unwrap();
            let scaled: Vec<i64> = ws.iter().map(|w| w * k).collect();
            prop_assert_eq!(a, rule_from_weights(&scaled, bias * k).unwrap());
        }

        #[test]
        fn rules_are_monotone(ws in arb_weights(), bias in -5i64..5) {
            prop_assert!(rule_from_weights(&ws, bias).unwrap().is_monotone());
        }

        #[test]
        fn zero_bias_is_neutral(ws in arb_weights()) {
            prop_assert!(rule_from_weights(&ws, 0).unwrap().is_neutral());
        }

        #[test]
        fn rational_weights_match_integer(ws in arb_weights()) {
            let rat: Vec<Rational> = ws.iter().map(|&w| Rational::new(w, 3)).collect();
            prop_assert_eq!(rule_from_weights(&rat, Rational::from_integer(0)).unwrap(), rule_from_weights(&ws, 0).unwrap());
        }
    }
}
