//! Small built-in games used by examples, tests and the CLI.

use crate::coordination::CoordinationSpec;
use crate::model::{GameWithAmbiguity, MixedAction, StrategyProfile};
use crate::rational::{q, Rational};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Two players, two actions each. The row player has one type and cannot
/// tell which of two column types it faces. This game has a mixed MINNE
/// but no LEXNE, pure or mixed.
pub fn no_lexne_game() -> GameWithAmbiguity {
    // row: T = 0 everywhere; B,L = -1; B,R = 1
    let row = [[0, 0], [-1, 1]];
    let col1 = [[0, 1], [0, -2]];
    let col2 = [[0, 2], [0, -1]];
    GameWithAmbiguity::from_fn(
        names(&["row", "col"]),
        vec![names(&["T", "B"]), names(&["L", "R"])],
        names(&["w1", "w2"]),
        vec![names(&["r", "c1"]), names(&["r", "c2"])],
        |i, s, p| {
            let v = match (i, s) {
                (0, _) => row[p[0]][p[1]],
                (_, 0) => col1[p[0]][p[1]],
                _ => col2[p[0]][p[1]],
            };
            Rational::from_integer(v)
        },
    )
    .expect("static game")
}

/// Row mixes 2/3 T + 1/3 B, column type 1 mixes evenly, type 2 plays R.
pub fn no_lexne_minne_profile(game: &GameWithAmbiguity) -> StrategyProfile {
    StrategyProfile::new(
        game,
        vec![
            vec![MixedAction::new(vec![q(2, 3), q(1, 3)]).unwrap()],
            vec![MixedAction::uniform(2), MixedAction::pure(2, 1)],
        ],
    )
    .expect("matches the game")
}

/// Alice and Bob choose between `B` and `S`. Alice has one type and likes
/// `B`; Bob is either a `B` type or an `S` type.
pub fn alice_and_bob() -> GameWithAmbiguity {
    GameWithAmbiguity::from_fn(
        names(&["alice", "bob"]),
        vec![names(&["B", "S"]), names(&["B", "S"])],
        names(&["bobB", "bobS"]),
        vec![names(&["alice", "B"]), names(&["alice", "S"])],
        |i, s, p| {
            if p[0] != p[1] {
                return Rational::zero();
            }
            let favourite = if i == 0 { 0 } else { s };
            if p[0] == favourite {
                q(2, 1)
            } else {
                q(1, 1)
            }
        },
    )
    .expect("static game")
}

/// The row player's problem from the no-LEXNE game when column type 1 plays
/// `(1/2 + eps) L + (1/2 - eps) R` and type 2 plays `R`: rows are the
/// expected payoffs of `T` and `B` at the two states.
pub fn perturbed_row_problem(eps: &Rational) -> Vec<Vec<Rational>> {
    let half = q(1, 2);
    let left = &half + eps;
    let right = &half - eps;
    let b_at_w1 = -left + right;
    vec![vec![Rational::zero(), Rational::zero()], vec![b_at_w1, q(1, 1)]]
}

/// Four locations on a street, `LL - L - R - RR`, spaced 10, 9 and 8
/// apart. Both players may be any of four types, one per location, each
/// ranking locations by distance.
pub fn street_spec() -> CoordinationSpec {
    let types = vec![
        ("LL".to_string(), names(&["LL", "L", "R", "RR"])),
        ("L".to_string(), names(&["L", "R", "LL", "RR"])),
        ("R".to_string(), names(&["R", "RR", "L", "LL"])),
        ("RR".to_string(), names(&["RR", "R", "L", "LL"])),
    ];
    CoordinationSpec::new(
        names(&["LL", "L", "R", "RR"]),
        names(&["p1", "p2"]),
        vec![types.clone(), types],
    )
    .expect("static spec")
}
