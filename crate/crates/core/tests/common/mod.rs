//! Random instance generators and brute-force oracles shared by the
//! integration tests.

#![allow(dead_code)]

use ambigame::best_response::PayoffMatrix;
use ambigame::coordination::CoordinationSpec;
use ambigame::ratlp::{Constraint, LinearProgram, Relation, VarBounds};
use ambigame::{q, GameWithAmbiguity, MixedAction, Rational};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Two or three players, two or three actions each, one or two types
/// each; states are all type vectors; integer payoffs in [-3, 3].
pub fn random_type_game(rng: &mut ChaCha8Rng) -> GameWithAmbiguity {
    let n = rng.gen_range(2..=3);
    let actions: Vec<Vec<String>> = (0..n).map(|i| names(&format!("a{i}_"), rng.gen_range(2..=3))).collect();
    let types: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let mut vectors = vec![vec![]];
    for &k in &types {
        vectors = vectors
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..k).map(move |t| {
                    let mut v = v.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    let states: Vec<String> = vectors.iter().map(|v| format!("{v:?}")).collect();
    let labels: Vec<Vec<String>> = vectors
        .iter()
        .map(|v| v.iter().map(|t| format!("t{t}")).collect())
        .collect();
    GameWithAmbiguity::from_fn(names("p", n), actions, states, labels, |_, _, _| {
        Rational::from_integer(rng.gen_range(-3..=3))
    })
    .expect("well-formed")
}

/// A one-state game (ordinary normal form).
pub fn random_single_state_game(rng: &mut ChaCha8Rng) -> GameWithAmbiguity {
    let n = rng.gen_range(2..=3);
    let actions: Vec<Vec<String>> = (0..n).map(|i| names(&format!("a{i}_"), rng.gen_range(2..=3))).collect();
    GameWithAmbiguity::from_fn(
        names("p", n),
        actions,
        vec!["w".into()],
        vec![vec!["t".into(); n]],
        |_, _, _| Rational::from_integer(rng.gen_range(-3..=3)),
    )
    .expect("well-formed")
}

/// Random coordination spec: `m` locations, two players, one to
/// `max_types` distinct random orders each (at most `m!`).
pub fn random_coord_spec(rng: &mut ChaCha8Rng, m: usize, max_types: usize) -> CoordinationSpec {
    let locations = names("l", m);
    let max_types = max_types.min((1..=m).product());
    let type_sets = (0..2)
        .map(|_| {
            let k = rng.gen_range(1..=max_types);
            let mut orders: Vec<Vec<String>> = Vec::new();
            while orders.len() < k {
                let mut o = locations.clone();
                o.shuffle(rng);
                if !orders.contains(&o) {
                    orders.push(o);
                }
            }
            orders
                .into_iter()
                .enumerate()
                .map(|(i, o)| (format!("t{i}"), o))
                .collect()
        })
        .collect();
    CoordinationSpec::new(locations, names("p", 2), type_sets).expect("valid")
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> PayoffMatrix {
    PayoffMatrix::new(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=2)))
                    .collect()
            })
            .collect(),
    )
    .expect("rectangular")
}

/// A random feasible, bounded LP: a box `0 <= x <= 5` plus random
/// constraints satisfied by a known interior point.
pub fn random_bounded_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.gen_range(2..=4);
    let mut lp = LinearProgram::new((0..n).map(|_| Rational::from_integer(rng.gen_range(-4..=4))).collect());
    let anchor: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(0..=4), 1)).collect();
    for v in 0..n {
        if rng.gen_bool(0.3) {
            lp.set_bounds(v, VarBounds::free());
            let mut c = vec![Rational::zero(); n];
            c[v] = Rational::one();
            lp.add(Constraint::new(c.clone(), Relation::Le, q(5, 1))).unwrap();
            lp.add(Constraint::new(c, Relation::Ge, q(-5, 1))).unwrap();
        } else {
            lp.set_bounds(v, VarBounds::between(Rational::zero(), q(5, 1)));
        }
    }
    for _ in 0..rng.gen_range(1..=3) {
        let coeffs: Vec<Rational> = (0..n).map(|_| Rational::from_integer(rng.gen_range(-3..=3))).collect();
        let at: Rational = coeffs.iter().zip(&anchor).map(|(c, x)| c * x).sum();
        let relation = [Relation::Le, Relation::Ge, Relation::Eq][rng.gen_range(0..3)];
        let slack = Rational::from_integer(rng.gen_range(0..=2));
        let rhs = match relation {
            Relation::Le => at + slack,
            Relation::Ge => at - slack,
            Relation::Eq => at,
        };
        lp.add(Constraint::new(coeffs, relation, rhs)).unwrap();
    }
    lp
}

/// All mixtures over `k` actions whose weights are multiples of `1/d`.
pub fn grid_mixtures(k: usize, d: u64) -> Vec<MixedAction> {
    fn rec(k: usize, left: u64, d: u64, acc: &mut Vec<u64>, out: &mut Vec<MixedAction>) {
        if acc.len() == k - 1 {
            acc.push(left);
            out.push(MixedAction::new(acc.iter().map(|&c| q(c as i64, d as i64)).collect()).unwrap());
            acc.pop();
            return;
        }
        for c in 0..=left {
            acc.push(c);
            rec(k, left - c, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, d, d, &mut Vec::new(), &mut out);
    out
}

/// Best worst-case over a mixture grid.
pub fn grid_maximin(c: &PayoffMatrix, d: u64) -> Rational {
    grid_mixtures(c.num_rows(), d)
        .iter()
        .map(|m| c.mixed_minmax(m).0)
        .max()
        .expect("non-empty grid")
}

/// Classical pure Nash equilibria of a one-state game, by direct
/// comparison of payoffs.
pub fn classical_pure_nash(game: &GameWithAmbiguity) -> Vec<Vec<usize>> {
    let n = game.num_players();
    let sizes: Vec<usize> = (0..n).map(|i| game.num_actions(i)).collect();
    let total: usize = sizes.iter().product();
    let mut out = Vec::new();
    for code in 0..total {
        let mut p = Vec::with_capacity(n);
        let mut c = code;
        for &k in sizes.iter().rev() {
            p.push(c % k);
            c /= k;
        }
        p.reverse();
        let stable = (0..n).all(|i| {
            (0..sizes[i]).all(|a| {
                let mut d = p.clone();
                d[i] = a;
                game.utility(i, 0, &d) <= game.utility(i, 0, &p)
            })
        });
        if stable {
            out.push(p);
        }
    }
    out
}
