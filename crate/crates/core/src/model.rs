//! Core domain types: games, coalitions and vote profiles.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{two, Field, Scalar};

/// Hard cap on players for the bit-mask coalition representation.
pub const MAX_PLAYERS: usize = 63;

/// A set of player indices stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_mask(mask: u64) -> Self {
        Coalition(mask)
    }

    /// The grand coalition of `n` players.
    pub fn all(n: usize) -> Self {
        assert!(n <= MAX_PLAYERS, "at most {MAX_PLAYERS} players");
        Coalition((1u64 << n) - 1)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut mask = 0u64;
        for i in members {
            assert!(i < 64, "player index {i} does not fit a coalition mask");
            mask |= 1 << i;
        }
        Coalition(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Coalition(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Coalition(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    /// Complement within `n` players.
    pub fn complement(self, n: usize) -> Self {
        Coalition(!self.0 & Coalition::all(n).0)
    }

    /// Whether every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    pub(crate) fn check(self, n: usize) -> Result<Self> {
        if self.fits(n) {
            Ok(self)
        } else {
            Err(Error::InvalidCoalition { mask: self.0, n })
        }
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Coalition::from_members(iter)
    }
}

/// A simple (monotone yes/no) game: a family of winning coalitions.
pub trait SimpleGame: Sync {
    fn players(&self) -> usize;

    /// Winningness of `c`, which the caller guarantees fits `players()`.
    fn wins(&self, c: Coalition) -> bool;

    /// Winningness of every coalition, indexed by mask.
    fn winning_set(&self) -> WinningSet {
        let n = self.players();
        assert!(n <= 30, "winning set tables are limited to 30 players");
        let mut set = WinningSet::new(n);
        for mask in 0..1u64 << n {
            if self.wins(Coalition(mask)) {
                set.insert(mask);
            }
        }
        set
    }

    /// Players `i` for which `c` with `i` wins but `c` without `i` loses.
    fn swingers(&self, c: Coalition) -> Coalition {
        (0..self.players())
            .filter(|&i| self.wins(c.with(i)) && !self.wins(c.without(i)))
            .collect()
    }

    /// The player whose arrival first makes the growing coalition winning.
    fn pivot(&self, order: &[usize]) -> Option<usize> {
        let mut c = Coalition::EMPTY;
        if self.wins(c) {
            return None;
        }
        for &i in order {
            c = c.with(i);
            if self.wins(c) {
                return Some(i);
            }
        }
        None
    }

    /// Minimal winning coalitions, in increasing mask order.
    fn minimal_winning(&self) -> Vec<Coalition> {
        let set = self.winning_set();
        let n = self.players();
        (0..1u64 << n)
            .filter(|&m| set.contains(m))
            .filter(|&m| Coalition(m).members().all(|i| !set.contains(m & !(1 << i))))
            .map(Coalition)
            .collect()
    }
}

/// Bitset over all `2^n` coalitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningSet {
    n: usize,
    bits: Vec<u64>,
}

impl WinningSet {
    fn new(n: usize) -> Self {
        let words = (1usize << n).div_ceil(64);
        WinningSet { n, bits: vec![0; words] }
    }

    fn insert(&mut self, mask: u64) {
        self.bits[(mask >> 6) as usize] |= 1 << (mask & 63);
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.bits[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }
}

/// Player weights plus the quota a coalition must strictly exceed to win.
#[derive(Clone, Debug, PartialEq)]
pub struct VotingGame<W> {
    weights: Vec<W>,
    quota: W,
}

impl<W: Scalar> VotingGame<W> {
    pub fn new(weights: Vec<W>, quota: W) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidGame("a game needs at least one player".into()));
        }
        if weights.len() > MAX_PLAYERS {
            return Err(Error::capacity("voting games", MAX_PLAYERS as u64, "split the electorate"));
        }
        if let Some(i) = weights.iter().position(|w| *w < W::zero()) {
            return Err(Error::InvalidGame(format!("weight of player {i} is negative")));
        }
        let total = sum(&weights);
        if quota < W::zero() || quota > total {
            return Err(Error::InvalidGame(format!(
                "quota {quota:?} must lie between 0 and the total weight {total:?}"
            )));
        }
        Ok(VotingGame { weights, quota })
    }

    /// Simple weighted majority: winning means more than half the total weight.
    pub fn majority(weights: Vec<W>) -> Result<Self> {
        let quota = sum(&weights) / two();
        Self::new(weights, quota)
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn quota(&self) -> &W {
        &self.quota
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> W {
        sum(&self.weights)
    }

    pub fn coalition_weight(&self, c: Coalition) -> Result<W> {
        let c = c.check(self.n())?;
        Ok(c.members().fold(W::zero(), |acc, i| acc + self.weights[i].clone()))
    }

    /// Strict: a coalition whose weight equals the quota does not win.
    pub fn is_winning(&self, c: Coalition) -> Result<bool> {
        Ok(self.coalition_weight(c)? > self.quota)
    }

    /// Multiply every weight and the quota by `k > 0`.
    pub fn scaled(&self, k: W) -> Result<Self> {
        if k <= W::zero() {
            return Err(Error::InvalidGame("scale factor must be positive".into()));
        }
        Self::new(
            self.weights.iter().map(|w| w.clone() * k.clone()).collect(),
            self.quota.clone() * k,
        )
    }
}

impl<W: Scalar> SimpleGame for VotingGame<W> {
    fn players(&self) -> usize {
        self.n()
    }

    fn wins(&self, c: Coalition) -> bool {
        c.members().fold(W::zero(), |acc, i| acc + self.weights[i].clone()) > self.quota
    }

    fn swingers(&self, c: Coalition) -> Coalition {
        let base = c.members().fold(W::zero(), |acc, i| acc + self.weights[i].clone());
        let mut out = Coalition::EMPTY;
        for (i, w) in self.weights.iter().enumerate() {
            let (with, without) = if c.contains(i) {
                (base.clone(), base.clone() - w.clone())
            } else {
                (base.clone() + w.clone(), base.clone())
            };
            if with > self.quota && without <= self.quota {
                out = out.with(i);
            }
        }
        out
    }

    fn pivot(&self, order: &[usize]) -> Option<usize> {
        let mut acc = W::zero();
        if acc > self.quota {
            return None;
        }
        for &i in order {
            acc = acc + self.weights[i].clone();
            if acc > self.quota {
                return Some(i);
            }
        }
        None
    }

    fn winning_set(&self) -> WinningSet {
        let n = self.n();
        assert!(n <= 30, "winning set tables are limited to 30 players");
        // weight(mask) = low[mask & lo_mask] + high[mask >> split]
        let split = n / 2;
        let low = subset_sums(&self.weights[..split]);
        let high = subset_sums(&self.weights[split..]);
        let mut set = WinningSet::new(n);
        for (h, hw) in high.iter().enumerate() {
            for (l, lw) in low.iter().enumerate() {
                if hw.clone() + lw.clone() > self.quota {
                    set.insert(((h as u64) << split) | l as u64);
                }
            }
        }
        set
    }
}

fn sum<W: Scalar>(xs: &[W]) -> W {
    xs.iter().fold(W::zero(), |acc, w| acc + w.clone())
}

/// Sums of every subset of `weights`, indexed by mask.
pub(crate) fn subset_sums<W: Scalar>(weights: &[W]) -> Vec<W> {
    let mut sums = Vec::with_capacity(1 << weights.len());
    sums.push(W::zero());
    for mask in 1usize..1 << weights.len() {
        let low = mask.trailing_zeros() as usize;
        let prev = sums[mask & (mask - 1)].clone();
        sums.push(prev + weights[low].clone());
    }
    sums
}

/// A simple game given by its minimal winning coalitions rather than weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGame {
    n: usize,
    minimal: Vec<Coalition>,
}

impl ExplicitGame {
    pub fn new(n: usize, minimal: Vec<Coalition>) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::InvalidGame(format!("player count {n} out of range")));
        }
        for c in &minimal {
            c.check(n)?;
        }
        Ok(ExplicitGame { n, minimal })
    }
}

impl SimpleGame for ExplicitGame {
    fn players(&self) -> usize {
        self.n
    }

    fn wins(&self, c: Coalition) -> bool {
        self.minimal.iter().any(|m| m.is_subset(c))
    }
}

/// Per-player probability of voting for the correct alternative.
#[derive(Clone, Debug, PartialEq)]
pub struct SkillProfile<T> {
    p: Vec<T>,
}

impl<T: Field> SkillProfile<T> {
    pub fn new(p: Vec<T>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Probability("skill profile is empty".into()));
        }
        for (i, x) in p.iter().enumerate() {
            // NaN fails both comparisons
            if !(*x >= T::zero() && *x <= T::one()) {
                return Err(Error::Probability(format!("skill of player {i} is {x:?}, not in [0, 1]")));
            }
        }
        Ok(SkillProfile { p })
    }

    /// Every player with the same skill.
    pub fn uniform(n: usize, p: T) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn get(&self, i: usize) -> &T {
        &self.p[i]
    }

    /// A copy with player `i`'s skill replaced (used for derivatives).
    pub fn with_skill(&self, i: usize, p: T) -> Result<Self> {
        let mut v = self.p.clone();
        v[i] = p;
        Self::new(v)
    }
}

/// One dichotomous vote per player: `true` is +1 (class A), `false` is -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecisionProfile {
    n: usize,
    plus: Coalition,
}

impl DecisionProfile {
    pub fn from_votes(votes: &[i8]) -> Result<Self> {
        if votes.len() > MAX_PLAYERS {
            return Err(Error::capacity("decision profiles", MAX_PLAYERS as u64, "use fewer voters"));
        }
        let mut plus = Coalition::EMPTY;
        for (i, &v) in votes.iter().enumerate() {
            match v {
                1 => plus = plus.with(i),
                -1 => {}
                other => return Err(Error::Config(format!("vote {other} of player {i} is not +1 or -1"))),
            }
        }
        Ok(DecisionProfile { n: votes.len(), plus })
    }

    /// Profile whose +1 voters are exactly `plus`.
    pub fn from_index(n: usize, index: u64) -> Self {
        DecisionProfile { n, plus: Coalition::from_mask(index) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Index into a decision table: bit `i` set when player `i` votes +1.
    pub fn index(&self) -> u64 {
        self.plus.mask()
    }

    pub fn vote(&self, i: usize) -> i8 {
        if self.plus.contains(i) {
            1
        } else {
            -1
        }
    }

    pub fn supporters(&self) -> Coalition {
        self.plus
    }

    pub fn negated(&self) -> Self {
        DecisionProfile { n: self.n, plus: self.plus.complement(self.n) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn game(ws: &[i64], quota: Rational) -> VotingGame<Rational> {
        VotingGame::new(ws.iter().map(|&w| r(w)).collect(), quota).unwrap()
    }

    #[test]
    fn coalition_weight_sums_members() {
        let g = game(&[2, 1, 1], r(2));
        assert_eq!(g.coalition_weight(Coalition::from_members([0, 2])).unwrap(), r(3));
        assert_eq!(g.coalition_weight(Coalition::EMPTY).unwrap(), r(0));
        assert_eq!(g.coalition_weight(Coalition::all(3)).unwrap(), r(4));
    }

    #[test]
    fn out_of_range_coalition_is_rejected() {
        let g = game(&[2, 1, 1], r(2));
        let err = g.coalition_weight(Coalition::from_members([3])).unwrap_err();
        assert!(matches!(err, Error::InvalidCoalition { n: 3, .. }));
    }

    #[test]
    fn winning_is_strict() {
        let g = game(&[2, 1, 1], r(2));
        assert!(!g.is_winning(Coalition::from_members([1, 2])).unwrap());
        assert!(g.is_winning(Coalition::from_members([0, 1])).unwrap());
        let dictator = game(&[1, 0, 0, 0], Rational::new(1, 2));
        assert!(dictator.is_winning(Coalition::from_members([0])).unwrap());
    }

    #[test]
    fn majority_quota_is_half_total() {
        let g = VotingGame::majority(vec![r(2), r(1), r(1)]).unwrap();
        assert_eq!(*g.quota(), r(2));
        let odd = VotingGame::<i64>::majority(vec![1, 1, 1]).unwrap();
        assert!(odd.is_winning(Coalition::from_members([0, 1])).unwrap());
        assert!(!odd.is_winning(Coalition::from_members([0])).unwrap());
    }

    #[test]
    fn invalid_games_are_rejected() {
        assert!(VotingGame::<Rational>::new(vec![], r(0)).is_err());
        assert!(VotingGame::new(vec![r(-1), r(2)], r(0)).is_err());
        assert!(VotingGame::new(vec![r(1), r(2)], r(4)).is_err());
        assert!(VotingGame::new(vec![r(1), r(2)], r(-1)).is_err());
    }

    #[test]
    fn skills_must_be_probabilities() {
        assert!(SkillProfile::new(vec![0.2, 1.0, 0.0]).is_ok());
        assert!(SkillProfile::new(vec![1.2]).is_err());
        assert!(SkillProfile::new(vec![f64::NAN]).is_err());
        assert!(SkillProfile::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn decision_profile_roundtrip() {
        let p = DecisionProfile::from_votes(&[1, -1, 1]).unwrap();
        assert_eq!(p.index(), 0b101);
        assert_eq!(p.vote(1), -1);
        assert_eq!(p.negated().index(), 0b010);
        assert!(DecisionProfile::from_votes(&[0]).is_err());
    }

    #[test]
    fn explicit_game_wins_supersets_of_minimal() {
        let g = ExplicitGame::new(4, vec![Coalition::from_members([0, 1]), Coalition::from_members([2, 3])])
            .unwrap();
        assert!(g.wins(Coalition::from_members([0, 1, 2])));
        assert!(!g.wins(Coalition::from_members([0, 2])));
        assert_eq!(g.minimal_winning().len(), 2);
    }

    fn arb_game() -> impl Strategy<Value = VotingGame<Rational>> {
        prop::collection::vec(0i64..20, 1..9).prop_map(|ws| {
            VotingGame::majority(ws.into_iter().map(Rational::from_integer).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn winning_is_monotone(g in arb_game(), a in any::<u64>(), b in any::<u64>()) {
            let n = g.n();
            let small = Coalition::from_mask(a & b & Coalition::all(n).mask());
            let big = Coalition::from_mask(a & Coalition::all(n).mask());
            prop_assert!(g.coalition_weight(small).unwrap() <= g.coalition_weight(big).unwrap());
            if g.is_winning(small).unwrap() {
                prop_assert!(g.is_winning(big).unwrap());
            }
        }

        #[test]
        fn complements_cannot_both_win(g in arb_game(), a in any::<u64>()) {
            let c = Coalition::from_mask(a & Coalition::all(g.n()).mask());
            prop_assert!(!(g.is_winning(c).unwrap() && g.is_winning(c.complement(g.n())).unwrap()));
        }

        #[test]
        fn split_table_matches_direct(g in arb_game()) {
            let set = g.winning_set();
            for mask in 0..1u64 << g.n() {
                prop_assert_eq!(set.contains(mask), g.is_winning(Coalition::from_mask(mask)).unwrap());
            }
        }
    }
}
