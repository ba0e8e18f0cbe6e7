//! Pure equilibrium enumeration, exact verification, and a verified
//! heuristic search for mixed MINNE.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::best_response::{maximin_mixed, mixed_lex_br, PayoffMatrix};
use crate::model::{response_matrix, GameWithAmbiguity, MixedAction, PureProfile, RawMixed, StrategyProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Concept {
    Minne,
    Lexne,
}

impl FromStr for Concept {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "minne" | "min" => Ok(Concept::Minne),
            "lexne" | "lex" => Ok(Concept::Lexne),
            _ => Err(format!("unknown concept {s:?} (expected minne or lexne)")),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Concept::Minne => "minne",
            Concept::Lexne => "lexne",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquilibriumError {
    #[error("{count} pure profiles exceed the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub budget: u128,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub jobs: Option<usize>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

/// Run `f` on a pool with the requested number of workers.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, EquilibriumError> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| EquilibriumError::Pool(e.to_string())),
    }
}

// (worst, best) of each own action against the pure actions in `acts`.
fn row_stats<'g>(
    game: &'g GameWithAmbiguity,
    player: usize,
    cell: usize,
    acts: &[Vec<usize>],
    scratch: &mut Vec<usize>,
) -> Vec<(&'g Rational, &'g Rational)> {
    let states = &game.partition(player).cells()[cell].states();
    let k = game.num_actions(player);
    let stride = game.stride(player);
    let mut stats: Vec<Option<(&Rational, &Rational)>> = vec![None; k];
    for &s in states.iter() {
        scratch.clear();
        for j in 0..game.num_players() {
            scratch.push(if j == player { 0 } else { acts[j][game.cell_of(j, s)] });
        }
        let base = game.profile_index(scratch);
        for (a, st) in stats.iter_mut().enumerate() {
            let u = game.utility_at(player, s, base + a * stride);
            *st = Some(match *st {
                None => (u, u),
                Some((lo, hi)) => (lo.min(u), hi.max(u)),
            });
        }
    }
    stats.into_iter().map(|s| s.expect("cells are non-empty")).collect()
}

fn best_set(stats: &[(&Rational, &Rational)], concept: Concept) -> Vec<usize> {
    let top_min = stats.iter().map(|s| s.0).max().expect("non-empty");
    let min_br: Vec<usize> = (0..stats.len()).filter(|&a| stats[a].0 == top_min).collect();
    match concept {
        Concept::Minne => min_br,
        Concept::Lexne => {
            let top_max = min_br.iter().map(|&a| stats[a].1).max().expect("non-empty");
            min_br.into_iter().filter(|&a| stats[a].1 == top_max).collect()
        }
    }
}

fn is_best(stats: &[(&Rational, &Rational)], chosen: usize, concept: Concept) -> bool {
    let top_min = stats.iter().map(|s| s.0).max().expect("non-empty");
    if stats[chosen].0 != top_min {
        return false;
    }
    match concept {
        Concept::Minne => true,
        Concept::Lexne => {
            let top_max = stats
                .iter()
                .filter(|s| s.0 == top_min)
                .map(|s| s.1)
                .max()
                .expect("non-empty");
            stats[chosen].1 == top_max
        }
    }
}

/// All pure profiles in which every type plays a pure best response
/// under `concept`, in canonical order.
pub fn enumerate_pure(
    game: &GameWithAmbiguity,
    concept: Concept,
    config: &EnumerationConfig,
) -> Result<Vec<PureProfile>, EquilibriumError> {
    let count = game.pure_profile_count();
    if count > config.budget {
        return Err(EquilibriumError::BudgetExceeded {
            count,
            budget: config.budget,
        });
    }
    with_jobs(config.jobs, || enumerate_inner(game, concept))
}

fn enumerate_inner(game: &GameWithAmbiguity, concept: Concept) -> Vec<PureProfile> {
    let n = game.num_players();
    let space = |i: usize| (game.num_actions(i) as u128).pow(game.partition(i).len() as u32);
    let pivot = (0..n)
        .max_by_key(|&i| (space(i), std::cmp::Reverse(i)))
        .expect("players");
    let others: Vec<(usize, usize)> = (0..n)
        .filter(|&j| j != pivot)
        .flat_map(|j| (0..game.partition(j).len()).map(move |c| (j, c)))
        .collect();
    let total: u64 = others.iter().map(|&(j, _)| game.num_actions(j) as u64).product();
    let pivot_cells = game.partition(pivot).len();

    let mut found: Vec<PureProfile> = (0..total)
        .into_par_iter()
        .flat_map_iter(|mut idx| {
            let mut acts: Vec<Vec<usize>> = (0..n).map(|i| vec![0; game.partition(i).len()]).collect();
            for &(j, c) in others.iter().rev() {
                let k = game.num_actions(j) as u64;
                acts[j][c] = (idx % k) as usize;
                idx /= k;
            }
            let mut scratch = Vec::with_capacity(n);
            let br: Vec<Vec<usize>> = (0..pivot_cells)
                .map(|c| best_set(&row_stats(game, pivot, c, &acts, &mut scratch), concept))
                .collect();
            let mut out = Vec::new();
            let mut choice = vec![0usize; pivot_cells];
            'product: loop {
                for c in 0..pivot_cells {
                    acts[pivot][c] = br[c][choice[c]];
                }
                let ok = others
                    .iter()
                    .all(|&(j, c)| is_best(&row_stats(game, j, c, &acts, &mut scratch), acts[j][c], concept));
                if ok {
                    out.push(PureProfile::from_vec_unchecked(acts.clone()));
                }
                for c in (0..pivot_cells).rev() {
                    choice[c] += 1;
                    if choice[c] < br[c].len() {
                        continue 'product;
                    }
                    choice[c] = 0;
                }
                break;
            }
            out.into_iter()
        })
        .collect();
    found.sort();
    found
}

pub fn enumerate_pure_minne(game: &GameWithAmbiguity) -> Result<Vec<PureProfile>, EquilibriumError> {
    enumerate_pure(game, Concept::Minne, &EnumerationConfig::default())
}

pub fn enumerate_pure_lexne(game: &GameWithAmbiguity) -> Result<Vec<PureProfile>, EquilibriumError> {
    enumerate_pure(game, Concept::Lexne, &EnumerationConfig::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equilibrium,
    NotEquilibrium,
}

/// Which deviations a profile is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deviations {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub player: String,
    #[serde(rename = "type")]
    pub type_cell: String,
    #[serde(skip)]
    pub player_index: usize,
    #[serde(skip)]
    pub cell_index: usize,
    pub current: RawMixed,
    pub deviation: RawMixed,
    #[serde(skip)]
    pub deviation_action: MixedAction,
    pub before_worst: Rational,
    pub before_best: Rational,
    pub after_worst: Rational,
    pub after_best: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumReport {
    pub concept: Concept,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl EquilibriumReport {
    pub fn is_equilibrium(&self) -> bool {
        self.verdict == Verdict::Equilibrium
    }
}

fn raw_mixed(game: &GameWithAmbiguity, player: usize, m: &MixedAction) -> RawMixed {
    match m.as_pure() {
        Some(a) => RawMixed::Pure(game.actions(player)[a].clone()),
        None => RawMixed::Mixed(
            m.support()
                .map(|a| (game.actions(player)[a].clone(), m.weight(a).clone()))
                .collect(),
        ),
    }
}

fn check_type(
    game: &GameWithAmbiguity,
    profile: &StrategyProfile,
    player: usize,
    cell: usize,
    concept: Concept,
    deviations: Deviations,
) -> Option<Witness> {
    let c: PayoffMatrix = response_matrix(game, player, cell, profile).expect("profile validated against game");
    let current = profile.strategy(player, cell);
    let (worst, best) = c.mixed_minmax(current);
    let (target, deviation) = match deviations {
        Deviations::Pure => {
            let stats: Vec<(Rational, Rational)> = (0..c.num_rows())
                .map(|a| (c.row_min(a).clone(), c.row_max(a).clone()))
                .collect();
            let refs: Vec<(&Rational, &Rational)> = stats.iter().map(|(a, b)| (a, b)).collect();
            let a = best_set(&refs, concept)[0];
            (stats[a].clone(), MixedAction::pure(c.num_rows(), a))
        }
        Deviations::Mixed => match concept {
            Concept::Minne => {
                let (v, w) = maximin_mixed(&c);
                let best_w = c.mixed_minmax(&w).1;
                ((v, best_w), w)
            }
            Concept::Lexne => {
                let r = mixed_lex_br(&c);
                ((r.maximin_value, r.best_case), r.witness)
            }
        },
    };
    let improves = match concept {
        Concept::Minne => target.0 > worst,
        Concept::Lexne => (target.0.clone(), target.1.clone()) > (worst.clone(), best.clone()),
    };
    improves.then(|| Witness {
        player: game.player_name(player).to_string(),
        type_cell: game.partition(player).cells()[cell].name().to_string(),
        player_index: player,
        cell_index: cell,
        current: raw_mixed(game, player, current),
        deviation: raw_mixed(game, player, &deviation),
        deviation_action: deviation,
        before_worst: worst,
        before_best: best,
        after_worst: target.0,
        after_best: target.1,
    })
}

/// Every type that can strictly improve, in canonical (player, type) order.
pub fn all_witnesses(
    game: &GameWithAmbiguity,
    profile: &StrategyProfile,
    concept: Concept,
    deviations: Deviations,
) -> Vec<Witness> {
    (0..game.num_players())
        .flat_map(|i| (0..game.partition(i).len()).map(move |c| (i, c)))
        .filter_map(|(i, c)| check_type(game, profile, i, c, concept, deviations))
        .collect()
}

/// Verify against the given deviation space; the first improving type
/// becomes the witness.
pub fn verify_profile_with(
    game: &GameWithAmbiguity,
    profile: &StrategyProfile,
    concept: Concept,
    deviations: Deviations,
) -> EquilibriumReport {
    let witness = (0..game.num_players())
        .flat_map(|i| (0..game.partition(i).len()).map(move |c| (i, c)))
        .find_map(|(i, c)| check_type(game, profile, i, c, concept, deviations));
    EquilibriumReport {
        concept,
        verdict: if witness.is_none() {
            Verdict::Equilibrium
        } else {
            Verdict::NotEquilibrium
        },
        witness,
    }
}

/// Pure profiles are checked against pure deviations, mixed profiles
/// against mixed ones.
pub fn verify_profile(game: &GameWithAmbiguity, profile: &StrategyProfile, concept: Concept) -> EquilibriumReport {
    let deviations = if profile.is_pure() {
        Deviations::Pure
    } else {
        Deviations::Mixed
    };
    verify_profile_with(game, profile, concept, deviations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Averaging {
    /// Respond to the running average of all past responses.
    Uniform,
    /// Respond to the last responses only.
    LastResponse,
}

impl FromStr for Averaging {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Averaging::Uniform),
            "last" | "last-response" => Ok(Averaging::LastResponse),
            _ => Err(format!("unknown averaging {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_rounds: usize,
    pub averaging: Averaging,
    pub seed: u64,
    /// Candidate weights are rounded to denominators at most this large.
    pub max_denominator: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_rounds: 2000,
            averaging: Averaging::Uniform,
            seed: 0,
            max_denominator: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub round: usize,
    /// Largest shortfall of a type's worst case below its maximin value.
    pub gap: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { profile: StrategyProfile, round: usize },
    NotFound { trace: Vec<TraceEntry> },
}

/// Largest `v* - worst case` over all types; zero exactly at a mixed MINNE.
pub fn minne_gap(game: &GameWithAmbiguity, profile: &StrategyProfile) -> Rational {
    let mut gap = Rational::zero();
    for i in 0..game.num_players() {
        for c in 0..game.partition(i).len() {
            let m = response_matrix(game, i, c, profile).expect("validated");
            let (v, _) = maximin_mixed(&m);
            let shortfall = v - m.mixed_minmax(profile.strategy(i, c)).0;
            if shortfall > gap {
                gap = shortfall;
            }
        }
    }
    gap
}

fn rationalize(m: &MixedAction, max_denominator: u64) -> MixedAction {
    let rounded: Vec<Rational> = m
        .weights()
        .iter()
        .map(|w| w.nearest_with_denominator(max_denominator))
        .collect();
    let total: Rational = rounded.iter().sum();
    if total.is_zero() {
        return m.clone();
    }
    MixedAction::new(rounded.iter().map(|w| w / &total).collect()).expect("normalized")
}

/// Fictitious-play style search for a mixed MINNE. A profile is returned
/// only after exact verification.
pub fn search_mixed_minne(game: &GameWithAmbiguity, config: &SearchConfig) -> SearchOutcome {
    let mut trace = Vec::new();
    if config.max_rounds == 0 {
        return SearchOutcome::NotFound { trace };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let start: Vec<Vec<MixedAction>> = (0..game.num_players())
        .map(|i| {
            (0..game.partition(i).len())
                .map(|_| MixedAction::pure(game.num_actions(i), rng.gen_range(0..game.num_actions(i))))
                .collect()
        })
        .collect();
    let mut average = StrategyProfile::new(game, start).expect("well-formed start");
    // Responses are computed against the rounded average so that the
    // denominators fed to the LP stay bounded.
    let mut target = average.clone();
    for round in 1..=config.max_rounds {
        let responses: Vec<Vec<MixedAction>> = (0..game.num_players())
            .map(|i| {
                (0..game.partition(i).len())
                    .map(|c| {
                        let m = response_matrix(game, i, c, &target).expect("validated");
                        maximin_mixed(&m).1
                    })
                    .collect()
            })
            .collect();
        let responses = StrategyProfile::new(game, responses).expect("well-formed responses");
        average = match config.averaging {
            Averaging::Uniform => {
                let keep = Rational::new(round as i64, round as i64 + 1);
                average.mix(&responses, &keep)
            }
            Averaging::LastResponse => responses,
        };
        let candidate: Vec<Vec<MixedAction>> = (0..game.num_players())
            .map(|i| {
                average
                    .player(i)
                    .iter()
                    .map(|m| rationalize(m, config.max_denominator))
                    .collect()
            })
            .collect();
        let candidate = StrategyProfile::new(game, candidate).expect("well-formed candidate");
        let gap = minne_gap(game, &candidate);
        if gap.is_zero() {
            let report = verify_profile_with(game, &candidate, Concept::Minne, Deviations::Mixed);
            if report.is_equilibrium() {
                return SearchOutcome::Found {
                    profile: candidate,
                    round,
                };
            }
        }
        trace.push(TraceEntry { round, gap });
        target = candidate;
    }
    SearchOutcome::NotFound { trace }
}
