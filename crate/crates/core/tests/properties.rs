//! Property tests over random games, acts, coordination problems and
//! trade markets.

mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use ambigame::best_response::{maximin_mixed, pure_lex_br, pure_min_br, PayoffMatrix};
use ambigame::coordination::{
    build_coordination_game, is_minne_coordination, lexne_location_sets, location_set, CoordinationSpec, LocationSet,
};
use ambigame::equilibrium::{
    enumerate_pure, minne_gap, search_mixed_minne, verify_profile, Concept, EnumerationConfig, SearchConfig,
    SearchOutcome, Verdict,
};
use ambigame::model::{evaluate_profile, induced_acts};
use ambigame::preferences::{canonical_minmax, Coarsening, Comparator};
use ambigame::trade::{
    build_trade_game, enumerate_lexne_analytic, from_profile, outcome_class, outcome_table, two_price_pairs, Bid,
    PriceRule, TradeEquilibriumClass, TradeSpec,
};
use ambigame::{q, Act, GameWithAmbiguity, MixedAction, PureProfile, Rational, StrategyProfile};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_mixed(rng: &mut ChaCha8Rng, k: usize) -> MixedAction {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    let total: i64 = raw.iter().sum();
    if total == 0 {
        return MixedAction::pure(k, rng.gen_range(0..k));
    }
    MixedAction::new(raw.iter().map(|&w| q(w, total)).collect()).unwrap()
}

fn random_profile(rng: &mut ChaCha8Rng, game: &GameWithAmbiguity) -> StrategyProfile {
    let s = (0..game.num_players())
        .map(|i| {
            (0..game.partition(i).len())
                .map(|_| random_mixed(rng, game.num_actions(i)))
                .collect()
        })
        .collect();
    StrategyProfile::new(game, s).unwrap()
}

fn random_pure(rng: &mut ChaCha8Rng, game: &GameWithAmbiguity) -> PureProfile {
    let a = (0..game.num_players())
        .map(|i| {
            (0..game.partition(i).len())
                .map(|_| rng.gen_range(0..game.num_actions(i)))
                .collect()
        })
        .collect();
    PureProfile::new(game, a).unwrap()
}

fn all_pure(game: &GameWithAmbiguity) -> Vec<PureProfile> {
    let slots: Vec<usize> = (0..game.num_players())
        .flat_map(|i| std::iter::repeat_n(game.num_actions(i), game.partition(i).len()))
        .collect();
    let total: usize = slots.iter().product();
    (0..total)
        .map(|mut code| {
            let mut flat = Vec::with_capacity(slots.len());
            for &k in slots.iter().rev() {
                flat.push(code % k);
                code /= k;
            }
            flat.reverse();
            let mut it = flat.into_iter();
            let actions = (0..game.num_players())
                .map(|i| (0..game.partition(i).len()).map(|_| it.next().unwrap()).collect())
                .collect();
            PureProfile::new(game, actions).unwrap()
        })
        .collect()
}

fn comparators() -> Vec<Comparator> {
    vec![
        Comparator::Min,
        Comparator::Lex,
        Comparator::SecondWorst,
        Comparator::MinThen(Coarsening::floor_step(q(2, 1))),
        Comparator::MinThen(Coarsening::threshold(q(1, 1))),
    ]
}

fn act_triple() -> impl Strategy<Value = (Act, Act, Act)> {
    (1usize..=5).prop_flat_map(|k| {
        let v = || prop::collection::vec((-6i64..=6, 1i64..=3), k);
        (v(), v(), v()).prop_map(|(a, b, c)| {
            let act = |xs: Vec<(i64, i64)>| Act::from_values(xs.into_iter().map(|(n, d)| q(n, d)).collect());
            (act(a), act(b), act(c))
        })
    })
}

fn random_trade_spec(rng: &mut ChaCha8Rng, rule: PriceRule) -> TradeSpec {
    let mut pool: Vec<i64> = (0..=8).map(|i| i * 5).collect();
    pool.shuffle(rng);
    let mut grid: Vec<i64> = pool[..rng.gen_range(3..=4)].to_vec();
    grid.sort();
    let pick = |rng: &mut ChaCha8Rng| {
        let mut g = grid.clone();
        g.shuffle(rng);
        g.truncate(rng.gen_range(1..=2));
        g
    };
    let seller = pick(rng);
    let buyer = pick(rng);
    TradeSpec::from_ints(&seller, &buyer, &grid, rule).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comparators_are_total_preorders((a, b, c) in act_triple()) {
        for cmp in comparators() {
            prop_assert_eq!(cmp.compare(&a, &a).unwrap(), Ordering::Equal);
            let ab = cmp.compare(&a, &b).unwrap();
            prop_assert_eq!(cmp.compare(&b, &a).unwrap(), ab.reverse());
            let bc = cmp.compare(&b, &c).unwrap();
            let ac = cmp.compare(&a, &c).unwrap();
            if ab != Ordering::Less && bc != Ordering::Less {
                prop_assert!(ac != Ordering::Less, "{} not transitive", cmp.name());
            }
        }
    }

    #[test]
    fn lex_and_min_depend_only_on_worst_and_best((a, b, _) in act_triple(), seed in any::<u64>()) {
        let mut shuffled = a.values().to_vec();
        shuffled.shuffle(&mut rng(seed));
        let a2 = Act::from_values(shuffled);
        prop_assert_eq!(
            Comparator::Lex.compare(&a, &b).unwrap(),
            canonical_minmax(&a).cmp(&canonical_minmax(&b))
        );
        prop_assert_eq!(Comparator::Min.compare(&a, &b).unwrap(), a.worst().cmp(b.worst()));
        for cmp in comparators() {
            prop_assert_eq!(cmp.compare(&a2, &b).unwrap(), cmp.compare(&a, &b).unwrap());
        }
    }

    #[test]
    fn lex_refines_min((a, b, _) in act_triple()) {
        let min = Comparator::Min.compare(&a, &b).unwrap();
        if min != Ordering::Equal {
            prop_assert_eq!(Comparator::Lex.compare(&a, &b).unwrap(), min);
        }
    }

    #[test]
    fn pure_lex_best_responses_are_min_best_responses(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let c = random_matrix(&mut r, rows, cols);
        let acts: Vec<Act> = c.rows().iter().map(|row| Act::from_values(row.clone())).collect();
        let lex = pure_lex_br(&acts);
        let min = pure_min_br(&acts);
        prop_assert!(!lex.is_empty());
        prop_assert!(lex.iter().all(|a| min.contains(a)));
    }

    #[test]
    fn maximin_value_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let c = random_matrix(&mut r, rows, cols);
        let (v, sigma) = maximin_mixed(&c);
        let best_pure = (0..rows).map(|i| c.row_min(i).clone()).max().unwrap();
        prop_assert!(v >= best_pure);
        prop_assert!(v >= grid_maximin(&c, 6));
        prop_assert_eq!(c.mixed_minmax(&sigma).0, v);
    }

    #[test]
    fn consistent_states_partition_the_state_space(seed in any::<u64>()) {
        let game = random_type_game(&mut rng(seed));
        for i in 0..game.num_players() {
            let mut seen = vec![0usize; game.num_states()];
            for c in 0..game.partition(i).len() {
                for &s in game.consistent_states(i, c).unwrap() {
                    seen[s] += 1;
                    prop_assert_eq!(game.cell_of(i, s), c);
                }
            }
            prop_assert!(seen.iter().all(|&n| n == 1));
        }
    }

    #[test]
    fn induced_acts_are_linear_in_the_opponent(seed in any::<u64>(), k in 0i64..=4) {
        let mut r = rng(seed);
        let game = loop {
            let g = random_type_game(&mut r);
            if g.num_players() == 2 {
                break g;
            }
        };
        let p = random_profile(&mut r, &game);
        let o = random_profile(&mut r, &game);
        let alpha = q(k, 4);
        let beta = Rational::one() - &alpha;
        let mixed = p.mix(&o, &alpha);
        for i in 0..2 {
            for c in 0..game.partition(i).len() {
                let (ap, ao, am) = (
                    induced_acts(&game, i, c, &p).unwrap(),
                    induced_acts(&game, i, c, &o).unwrap(),
                    induced_acts(&game, i, c, &mixed).unwrap(),
                );
                for ((x, y), z) in ap.iter().zip(&ao).zip(&am) {
                    for ((u, w), m) in x.values().iter().zip(y.values()).zip(z.values()) {
                        prop_assert_eq!(&(&alpha * u + &beta * w), m);
                    }
                }
            }
        }
    }

    #[test]
    fn single_state_induced_acts_match_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let game = random_single_state_game(&mut r);
        let p = random_profile(&mut r, &game);
        for i in 0..game.num_players() {
            let acts = induced_acts(&game, i, 0, &p).unwrap();
            for (a, act) in acts.iter().enumerate() {
                let dev = p.with_strategy(i, 0, MixedAction::pure(game.num_actions(i), a));
                prop_assert_eq!(act.values(), &evaluate_profile(&game, 0, &dev)[i..=i]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn enumeration_matches_exhaustive_verification(seed in any::<u64>()) {
        let game = random_type_game(&mut rng(seed));
        let profiles = all_pure(&game);
        for concept in [Concept::Minne, Concept::Lexne] {
            let found = enumerate_pure(&game, concept, &EnumerationConfig::default()).unwrap();
            let expected: Vec<PureProfile> = profiles
                .iter()
                .filter(|p| verify_profile(&game, &StrategyProfile::from_pure(&game, p), concept).is_equilibrium())
                .cloned()
                .collect();
            let found: BTreeSet<_> = found.into_iter().collect();
            prop_assert_eq!(found, expected.into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn one_state_equilibria_are_classical_nash(seed in any::<u64>()) {
        let game = random_single_state_game(&mut rng(seed));
        let classical: BTreeSet<Vec<usize>> = classical_pure_nash(&game).into_iter().collect();
        for concept in [Concept::Minne, Concept::Lexne] {
            let found: BTreeSet<Vec<usize>> = enumerate_pure(&game, concept, &EnumerationConfig::default())
                .unwrap()
                .iter()
                .map(|p| p.at_state(&game, 0))
                .collect();
            prop_assert_eq!(&found, &classical);
        }
    }

    #[test]
    fn coordination_equilibria_are_determined_by_their_location_set(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(2..=4);
        let spec = random_coord_spec(&mut r, m, 3);
        let game = build_coordination_game(&spec).unwrap();
        let brute = enumerate_pure(&game, Concept::Lexne, &EnumerationConfig::default()).unwrap();
        let min_types = (0..spec.num_players()).map(|i| spec.types(i).len()).min().unwrap();
        let mut sets = BTreeSet::new();
        for p in &brute {
            let set = location_set(&spec, p);
            prop_assert!(set.len() <= min_types);
            for i in 0..spec.num_players() {
                for (t, order) in spec.types(i).iter().enumerate() {
                    prop_assert_eq!(p.action(i, t), order.best_in(set.indices()));
                }
            }
            prop_assert!(sets.insert(set), "two LEXNE share a location set");
        }
        let analytic: BTreeSet<LocationSet> = lexne_location_sets(&spec).into_iter().map(|e| e.set).collect();
        prop_assert_eq!(sets, analytic);
    }

    #[test]
    fn a_location_ranked_last_by_everyone_adds_only_its_singleton(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(2..=4);
        let spec = random_coord_spec(&mut r, m, 3);
        let ranks: Vec<Vec<usize>> = (0..2).map(|i| vec![m; spec.types(i).len()]).collect();
        let extended = spec.with_extra_location("extra", &ranks).unwrap();
        let mut expected: BTreeSet<Vec<usize>> =
            lexne_location_sets(&spec).iter().map(|e| e.set.indices().to_vec()).collect();
        expected.insert(vec![m]);
        let got: BTreeSet<Vec<usize>> =
            lexne_location_sets(&extended).iter().map(|e| e.set.indices().to_vec()).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn coordination_minne_rule_matches_verification(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.gen_range(2..=4);
        let spec: CoordinationSpec = random_coord_spec(&mut r, m, 3);
        let game = build_coordination_game(&spec).unwrap();
        for _ in 0..8 {
            let p = random_pure(&mut r, &game);
            let direct = verify_profile(&game, &StrategyProfile::from_pure(&game, &p), Concept::Minne).verdict;
            prop_assert_eq!(is_minne_coordination(&spec, &p), direct);
        }
    }

    #[test]
    fn analytic_trade_classes_do_not_depend_on_the_price_rule(seed in any::<u64>()) {
        let spec = random_trade_spec(&mut rng(seed), PriceRule::Midpoint);
        let classes = |s: &TradeSpec| -> Vec<String> {
            enumerate_lexne_analytic(s).iter().map(|e| e.class.to_string()).collect()
        };
        let base = classes(&spec);
        for rule in [PriceRule::SellerPrice, PriceRule::BuyerPrice, PriceRule::Convex(q(1, 3))] {
            prop_assert_eq!(classes(&spec.with_rule(rule).unwrap()), base.clone());
        }
    }

    #[test]
    fn canonical_trade_profiles_have_their_shape(seed in any::<u64>()) {
        let spec = random_trade_spec(&mut rng(seed), PriceRule::Midpoint);
        for e in enumerate_lexne_analytic(&spec) {
            let table = outcome_table(&spec, &e.seller, &e.buyer);
            if let TradeEquilibriumClass::TwoPrice { low, high } = &e.class {
                prop_assert!(e.seller.participates_everywhere() && e.buyer.participates_everywhere());
                for (a, ask) in e.seller.bids().iter().enumerate() {
                    for (b, bid) in e.buyer.bids().iter().enumerate() {
                        let expected = match (ask, bid) {
                            (Bid::At(x), Bid::At(y)) if x == low => Some(spec.rule().price(x, y)),
                            (Bid::At(x), Bid::At(y)) if x == high && y == high => Some(high.clone()),
                            _ => None,
                        };
                        prop_assert_eq!(&table.0[a][b], &expected);
                    }
                }
            }
            prop_assert_eq!(outcome_class(&e.seller, &e.buyer, &table), e.class);
        }
        prop_assert!(two_price_pairs(&spec).iter().all(|(lo, hi)| lo < hi));
    }

    #[test]
    fn trade_equilibria_are_individually_rational(seed in any::<u64>()) {
        let spec = random_trade_spec(&mut rng(seed), PriceRule::Midpoint);
        let game = build_trade_game(&spec).unwrap();
        for p in enumerate_pure(&game, Concept::Lexne, &EnumerationConfig::default()).unwrap() {
            let (seller, buyer) = from_profile(&spec, &p);
            let table = outcome_table(&spec, &seller, &buyer);
            for (i, row) in table.0.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    if let Some(price) = cell {
                        prop_assert!(&spec.seller_values()[i] <= price && price <= &spec.buyer_values()[j]);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn search_returns_only_verified_profiles(seed in any::<u64>()) {
        let game = random_type_game(&mut rng(seed));
        let config = SearchConfig { max_rounds: 40, seed, ..SearchConfig::default() };
        if let SearchOutcome::Found { profile, .. } = search_mixed_minne(&game, &config) {
            prop_assert!(minne_gap(&game, &profile).is_zero());
            prop_assert!(verify_profile(&game, &profile, Concept::Minne).is_equilibrium());
        }
    }
}

#[test]
fn coordination_minne_verdicts_cover_both_outcomes() {
    let spec = random_coord_spec(&mut rng(3), 3, 3);
    let game = build_coordination_game(&spec).unwrap();
    let verdicts: BTreeSet<bool> = all_pure(&game)
        .iter()
        .map(|p| is_minne_coordination(&spec, p) == Verdict::Equilibrium)
        .collect();
    assert_eq!(verdicts.len(), 2);
}

#[test]
fn payoff_matrix_from_acts_round_trips() {
    let acts = vec![Act::from_ints(&[1, 2]), Act::from_ints(&[3, -1])];
    let m = PayoffMatrix::from_acts(&acts).unwrap();
    assert_eq!(m.num_rows(), 2);
    assert_eq!(m.row_min(1), &q(-1, 1));
}
