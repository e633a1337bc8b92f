use num_traits::Signed;
use proptest::prelude::*;
use wmrkit::wmr::{enumerate_unique_wmr, is_trade_robust, rule_from_game, rules_equivalent, Outcome};
use wmrkit::{Coalition, DecisionProfile, ExplicitGame, Game, Rational, SimpleGame, VotingGame};

fn game_strategy() -> impl Strategy<Value = (Game, Rational)> {
    (1usize..=7).prop_flat_map(|n| (prop::collection::vec(0i64..=5, n), -3i64..=3)).prop_map(|(w, b)| {
        let game = VotingGame::majority(w.into_iter().map(Rational::from_integer).collect()).unwrap();
        let bias = Rational::new(b, 2);
        let bias = if bias.abs() > game.total_weight() { Rational::from_integer(0) } else { bias };
        (game, bias)
    })
}

fn rank(o: Outcome) -> i8 {
    match o {
        Outcome::B => -1,
        Outcome::NoDecision => 0,
        Outcome::A => 1,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_scaling_keeps_the_table((game, bias) in game_strategy(), p in 1i64..=7, q in 1i64..=7) {
        let k = Rational::new(p, q);
        let scaled = game.scaled(k).unwrap();
        prop_assert_eq!(rule_from_game(&game, bias).unwrap(), rule_from_game(&scaled, bias * k).unwrap());
    }

    #[test]
    fn flipping_a_vote_towards_a_never_hurts_a((game, bias) in game_strategy()) {
        let rule = rule_from_game(&game, bias).unwrap();
        let n = game.n();
        for index in 0..1u64 << n {
            let before = rule.outcome(&DecisionProfile::from_index(n, index)).unwrap();
            for i in (0..n).filter(|i| index >> i & 1 == 0) {
                let after = rule.outcome(&DecisionProfile::from_index(n, index | 1 << i)).unwrap();
                prop_assert!(rank(after) >= rank(before));
            }
        }
    }

    #[test]
    fn negating_votes_swaps_outcomes_at_zero_bias((game, _) in game_strategy()) {
        let rule = rule_from_game(&game, Rational::from_integer(0)).unwrap();
        let n = game.n();
        for index in 0..1u64 << n {
            let d = DecisionProfile::from_index(n, index);
            prop_assert_eq!(rank(rule.outcome(&d.negated()).unwrap()), -rank(rule.outcome(&d).unwrap()));
        }
    }

    #[test]
    fn weighted_games_survive_trades((game, _) in game_strategy()) {
        prop_assert!(is_trade_robust(&game, 3).unwrap().robust);
    }
}

#[test]
fn enumerated_rules_are_pairwise_distinct() {
    for n in 1..=6 {
        let e = enumerate_unique_wmr(n, None).unwrap();
        for (i, a) in e.rules.iter().enumerate() {
            assert!(a.rule.is_decisive() && a.rule.is_monotone() && a.rule.is_neutral());
            for b in &e.rules[i + 1..] {
                assert!(!rules_equivalent(&a.rule, &b.rule).unwrap(), "{:?} ~ {:?}", a.weights, b.weights);
            }
        }
    }
}

#[test]
fn four_voter_set_appears_verbatim() {
    let e = enumerate_unique_wmr(4, None).unwrap();
    let weights: Vec<Vec<u32>> = e.rules.iter().map(|r| r.weights.clone()).collect();
    for expected in [vec![1, 0, 0, 0], vec![2, 1, 1, 1], vec![1, 1, 1, 0]] {
        assert!(weights.contains(&expected), "{expected:?} missing from {weights:?}");
    }
}

#[test]
fn two_disjoint_pairs_fail_a_trade() {
    let game = ExplicitGame::new(4, vec![Coalition::from_members([0, 1]), Coalition::from_members([2, 3])]).unwrap();
    let result = is_trade_robust(&game, 2).unwrap();
    assert!(!result.robust);
    let w = result.witness.expect("a witness");
    assert!(w.before.iter().all(|&c| game.wins(c)));
    assert!(w.after.iter().all(|&c| !game.wins(c)));
    let count = |cs: &[Coalition], i: usize| cs.iter().filter(|c| c.contains(i)).count();
    for i in 0..4 {
        assert_eq!(count(&w.before, i), count(&w.after, i), "player {i} appears a different number of times");
    }
}

#[test]
fn game_without_winners_is_robust() {
    let game = VotingGame::new(vec![0i64, 0], 0).unwrap();
    assert!(is_trade_robust(&game, 3).unwrap().robust);
}
