//! Games with ambiguity.
//!
//! A [`GameWithAmbiguity`] is a finite normal-form game form played at an
//! unknown state of the world. Each player only learns the cell of its own
//! partition of the state set (its *type*) and has no prior over states.
//! A type's response problem is therefore a single-agent decision problem
//! over the states consistent with that type: [`induced_acts`] builds it.
//!
//! All orderings (players, actions, states, type cells) are fixed when the
//! game is constructed and are used for every deterministic iteration in
//! the crate.

mod act;
mod raw;
mod strategy;

pub use act::Act;
pub use raw::{RawGame, RawMixed, RawProfile, RawState};
pub use strategy::{MixedAction, PureProfile, StrategyProfile};

use std::collections::HashMap;
use std::ops::Deref;

use thiserror::Error;

use crate::best_response::PayoffMatrix;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("game has no players")]
    NoPlayers,
    #[error("game has no states")]
    NoStates,
    #[error("duplicate player {0:?}")]
    DuplicatePlayer(String),
    #[error("unknown player {0:?}")]
    UnknownPlayer(String),
    #[error("player {0:?} has no actions")]
    NoActions(String),
    #[error("player {player:?} lists action {action:?} twice")]
    DuplicateAction { player: String, action: String },
    #[error("action name {0:?} may not contain ','")]
    InvalidActionName(String),
    #[error("unknown action {action:?} for player {player:?}")]
    UnknownAction { player: String, action: String },
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("missing utility for player {player:?} at state {state:?}, profile {profile:?}")]
    MissingUtility {
        player: String,
        state: String,
        profile: String,
    },
    #[error("malformed profile key {key:?}: {reason}")]
    InvalidProfileKey { key: String, reason: String },
    #[error("state {state:?} lies in two cells of player {player:?}'s partition")]
    OverlappingPartitionCells { player: String, state: String },
    #[error("state {state:?} is not covered by player {player:?}'s partition")]
    UncoveredState { player: String, state: String },
    #[error("state {state:?} has a type label for player {player:?} that disagrees with the explicit partition")]
    ConflictingTypeLabel { player: String, state: String },
    #[error("player {player:?} has no type cell {cell:?}")]
    UnknownTypeCell { player: String, cell: String },
    #[error("no strategy given for player {player:?}, type {cell:?}")]
    IncompleteStrategy { player: String, cell: String },
    #[error("opponent strategy missing for player {player:?}, type {cell:?}")]
    IncompleteOpponentStrategy { player: String, cell: String },
    #[error("invalid mixed action: {0}")]
    InvalidMixedAction(String),
    #[error("states {0:?} and {1:?} carry the same type vector")]
    IndistinguishableStates(String, String),
    #[error("an act needs at least one state")]
    EmptyAct,
    #[error("act has {states} state labels but {values} values")]
    ActArity { states: usize, values: usize },
}

/// One cell of a player's information partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCell {
    name: String,
    states: Vec<usize>,
}

impl TypeCell {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// State indices in canonical order.
    pub fn states(&self) -> &[usize] {
        &self.states
    }
}

/// A player's partition of the state set, cells ordered by first state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<TypeCell>,
    cell_of_state: Vec<usize>,
}

impl Partition {
    pub fn cells(&self) -> &[TypeCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_index(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }
}

/// A finite game with ambiguity: players, action sets, states of the world,
/// exact utilities and per-player type partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameWithAmbiguity {
    players: Vec<String>,
    actions: Vec<Vec<String>>,
    states: Vec<String>,
    partitions: Vec<Partition>,
    strides: Vec<usize>,
    num_profiles: usize,
    // index: (player * |states| + state) * num_profiles + profile
    utilities: Vec<Rational>,
}

impl GameWithAmbiguity {
    /// Build a game from per-state type labels and a utility function.
    ///
    /// `state_types[s][i]` names player `i`'s type cell at state `s`; cells
    /// are formed by grouping equal labels. `utility(i, s, profile)` is
    /// called once for every player, state and pure action profile.
    pub fn from_fn<F>(
        players: Vec<String>,
        actions: Vec<Vec<String>>,
        states: Vec<String>,
        state_types: Vec<Vec<String>>,
        mut utility: F,
    ) -> Result<Self, ModelError>
    where
        F: FnMut(usize, usize, &[usize]) -> Rational,
    {
        Self::try_from_fn(players, actions, states, state_types, |i, s, p| Ok(utility(i, s, p)))
    }

    /// As [`GameWithAmbiguity::from_fn`], with a fallible utility lookup.
    pub fn try_from_fn<F>(
        players: Vec<String>,
        actions: Vec<Vec<String>>,
        states: Vec<String>,
        state_types: Vec<Vec<String>>,
        mut utility: F,
    ) -> Result<Self, ModelError>
    where
        F: FnMut(usize, usize, &[usize]) -> Result<Rational, ModelError>,
    {
        check_names(&players, &actions, &states)?;
        let mut partitions = Vec::with_capacity(players.len());
        for (i, player) in players.iter().enumerate() {
            let mut labels = Vec::with_capacity(states.len());
            for (s, state) in states.iter().enumerate() {
                let label = state_types
                    .get(s)
                    .and_then(|t| t.get(i))
                    .ok_or_else(|| ModelError::UncoveredState {
                        player: player.clone(),
                        state: state.clone(),
                    })?;
                labels.push(label.clone());
            }
            partitions.push(partition_from_labels(&labels));
        }
        let strides = strides_for(&actions);
        let num_profiles = actions.iter().map(Vec::len).product();
        let mut utilities = Vec::with_capacity(players.len() * states.len() * num_profiles);
        let mut profile = vec![0usize; players.len()];
        for i in 0..players.len() {
            for s in 0..states.len() {
                for p in 0..num_profiles {
                    decode_profile(p, &actions, &mut profile);
                    utilities.push(utility(i, s, &profile)?);
                }
            }
        }
        Ok(GameWithAmbiguity {
            players,
            actions,
            states,
            partitions,
            strides,
            num_profiles,
            utilities,
        })
    }

    /// Validate an externally supplied description.
    pub fn from_raw(raw: &RawGame) -> Result<Self, ModelError> {
        raw::validate(raw)
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn player_name(&self, player: usize) -> &str {
        &self.players[player]
    }

    pub fn player_index(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p == name)
    }

    pub fn actions(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn action_index(&self, player: usize, name: &str) -> Option<usize> {
        self.actions[player].iter().position(|a| a == name)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn partition(&self, player: usize) -> &Partition {
        &self.partitions[player]
    }

    /// Index of player's type cell containing `state`.
    pub fn cell_of(&self, player: usize, state: usize) -> usize {
        self.partitions[player].cell_of_state[state]
    }

    pub fn num_profiles(&self) -> usize {
        self.num_profiles
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    /// Utility of `player` at `state` under a pure action profile.
    pub fn utility(&self, player: usize, state: usize, profile: &[usize]) -> &Rational {
        self.utility_at(player, state, self.profile_index(profile))
    }

    pub(crate) fn utility_at(&self, player: usize, state: usize, profile_index: usize) -> &Rational {
        &self.utilities[(player * self.states.len() + state) * self.num_profiles + profile_index]
    }

    pub(crate) fn stride(&self, player: usize) -> usize {
        self.strides[player]
    }

    /// The ordered list of states consistent with a type cell.
    pub fn consistent_states(&self, player: usize, cell: usize) -> Result<&[usize], ModelError> {
        self.partitions[player]
            .cells
            .get(cell)
            .map(|c| c.states.as_slice())
            .ok_or_else(|| ModelError::UnknownTypeCell {
                player: self.players[player].clone(),
                cell: cell.to_string(),
            })
    }

    /// Count of pure strategy profiles, `prod_i |A_i|^{|T_i|}` (saturating).
    pub fn pure_profile_count(&self) -> u128 {
        let mut total: u128 = 1;
        for i in 0..self.num_players() {
            for _ in 0..self.partitions[i].len() {
                total = total.saturating_mul(self.actions[i].len() as u128);
            }
        }
        total
    }

    /// The witness map state -> type vector.
    pub fn type_vector(&self, state: usize) -> Vec<usize> {
        (0..self.num_players()).map(|i| self.cell_of(i, state)).collect()
    }

    pub fn to_raw(&self) -> RawGame {
        raw::to_raw(self)
    }
}

fn check_names(players: &[String], actions: &[Vec<String>], states: &[String]) -> Result<(), ModelError> {
    if players.is_empty() {
        return Err(ModelError::NoPlayers);
    }
    if states.is_empty() {
        return Err(ModelError::NoStates);
    }
    for (i, p) in players.iter().enumerate() {
        if players[..i].contains(p) {
            return Err(ModelError::DuplicatePlayer(p.clone()));
        }
        let acts = actions.get(i).ok_or_else(|| ModelError::NoActions(p.clone()))?;
        if acts.is_empty() {
            return Err(ModelError::NoActions(p.clone()));
        }
        for (k, a) in acts.iter().enumerate() {
            if a.contains(',') || a.trim() != a || a.is_empty() {
                return Err(ModelError::InvalidActionName(a.clone()));
            }
            if acts[..k].contains(a) {
                return Err(ModelError::DuplicateAction {
                    player: p.clone(),
                    action: a.clone(),
                });
            }
        }
    }
    for (i, s) in states.iter().enumerate() {
        if states[..i].contains(s) {
            return Err(ModelError::DuplicateState(s.clone()));
        }
    }
    Ok(())
}

fn partition_from_labels(labels: &[String]) -> Partition {
    let mut cells: Vec<TypeCell> = Vec::new();
    let mut by_name: HashMap<&str, usize> = HashMap::new();
    let mut cell_of_state = Vec::with_capacity(labels.len());
    for (s, label) in labels.iter().enumerate() {
        let idx = *by_name.entry(label.as_str()).or_insert_with(|| {
            cells.push(TypeCell {
                name: label.clone(),
                states: Vec::new(),
            });
            cells.len() - 1
        });
        cells[idx].states.push(s);
        cell_of_state.push(idx);
    }
    Partition { cells, cell_of_state }
}

fn strides_for(actions: &[Vec<String>]) -> Vec<usize> {
    // Last player varies fastest.
    let mut strides = vec![1usize; actions.len()];
    for i in (0..actions.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * actions[i + 1].len();
    }
    strides
}

fn decode_profile(mut index: usize, actions: &[Vec<String>], out: &mut [usize]) {
    for i in (0..actions.len()).rev() {
        let n = actions[i].len();
        out[i] = index % n;
        index /= n;
    }
}

/// A game whose states are vectors of player types: no two states share
/// the same type vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeAmbiguityGame {
    game: GameWithAmbiguity,
}

impl TypeAmbiguityGame {
    pub fn new(game: GameWithAmbiguity) -> Result<Self, ModelError> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in 0..game.num_states() {
            if let Some(&prev) = seen.get(&game.type_vector(s)) {
                return Err(ModelError::IndistinguishableStates(
                    game.states[prev].clone(),
                    game.states[s].clone(),
                ));
            }
            seen.insert(game.type_vector(s), s);
        }
        Ok(TypeAmbiguityGame { game })
    }

    pub fn game(&self) -> &GameWithAmbiguity {
        &self.game
    }

    pub fn into_game(self) -> GameWithAmbiguity {
        self.game
    }

    /// The state carrying a given type vector, if present.
    pub fn state_of(&self, types: &[usize]) -> Option<usize> {
        (0..self.game.num_states()).find(|&s| self.game.type_vector(s) == types)
    }
}

impl Deref for TypeAmbiguityGame {
    type Target = GameWithAmbiguity;

    fn deref(&self) -> &GameWithAmbiguity {
        &self.game
    }
}

/// Expected utility of `player` at `state` when it plays the pure action
/// `own` and everybody else follows `profile`.
pub fn expected_utility_of_action(
    game: &GameWithAmbiguity,
    player: usize,
    state: usize,
    own: usize,
    profile: &StrategyProfile,
) -> Rational {
    let mut total = Rational::zero();
    let base = own * game.stride(player);
    accumulate(
        game,
        player,
        state,
        Some(player),
        profile,
        0,
        base,
        Rational::one(),
        &mut total,
    );
    total
}

#[allow(clippy::too_many_arguments)]
fn accumulate(
    game: &GameWithAmbiguity,
    payee: usize,
    state: usize,
    skip: Option<usize>,
    profile: &StrategyProfile,
    next: usize,
    index: usize,
    prob: Rational,
    total: &mut Rational,
) {
    if next == game.num_players() {
        *total += prob * game.utility_at(payee, state, index);
        return;
    }
    if Some(next) == skip {
        accumulate(game, payee, state, skip, profile, next + 1, index, prob, total);
        return;
    }
    let mixed = profile.strategy(next, game.cell_of(next, state));
    for a in mixed.support() {
        accumulate(
            game,
            payee,
            state,
            skip,
            profile,
            next + 1,
            index + a * game.stride(next),
            &prob * mixed.weight(a),
            total,
        );
    }
}

/// Expected utility vector at `state` under the product of the mixed
/// actions the active types play there.
pub fn evaluate_profile(game: &GameWithAmbiguity, state: usize, profile: &StrategyProfile) -> Vec<Rational> {
    (0..game.num_players())
        .map(|i| {
            let mut total = Rational::zero();
            accumulate(game, i, state, None, profile, 0, 0, Rational::one(), &mut total);
            total
        })
        .collect()
}

/// The payoff matrix of a type's response problem: rows are own pure
/// actions, columns the consistent states, entries the expected utility
/// against the opponents' strategies in `profile`.
pub fn response_matrix(
    game: &GameWithAmbiguity,
    player: usize,
    cell: usize,
    profile: &StrategyProfile,
) -> Result<PayoffMatrix, ModelError> {
    check_opponents(game, player, profile)?;
    let states = game.consistent_states(player, cell)?;
    let rows = (0..game.num_actions(player))
        .map(|a| {
            states
                .iter()
                .map(|&s| expected_utility_of_action(game, player, s, a, profile))
                .collect()
        })
        .collect();
    Ok(PayoffMatrix::new(rows).expect("non-empty by construction"))
}

/// The acts a type faces: for each own pure action (in canonical order),
/// the act over the consistent states giving the expected utility there.
pub fn induced_acts(
    game: &GameWithAmbiguity,
    player: usize,
    cell: usize,
    profile: &StrategyProfile,
) -> Result<Vec<Act>, ModelError> {
    let matrix = response_matrix(game, player, cell, profile)?;
    let labels: Vec<String> = game
        .consistent_states(player, cell)?
        .iter()
        .map(|&s| game.states()[s].clone())
        .collect();
    Ok(matrix
        .rows()
        .iter()
        .map(|row| Act::new(labels.clone(), row.clone()).expect("labels are distinct"))
        .collect())
}

fn check_opponents(game: &GameWithAmbiguity, player: usize, profile: &StrategyProfile) -> Result<(), ModelError> {
    for j in 0..game.num_players() {
        if j == player {
            continue;
        }
        let cells = game.partition(j).cells();
        let given = profile.player(j);
        if given.len() != cells.len() {
            let cell = cells.get(given.len()).map(|c| c.name.clone()).unwrap_or_default();
            return Err(ModelError::IncompleteOpponentStrategy {
                player: game.player_name(j).to_string(),
                cell,
            });
        }
    }
    Ok(())
}
