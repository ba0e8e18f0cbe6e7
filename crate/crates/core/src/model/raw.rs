//! The JSON game and profile formats.
//!
//! A game file looks like
//!
//! ```json
//! {
//!   "players": ["row", "col"],
//!   "actions": {"row": ["T", "B"], "col": ["L", "R"]},
//!   "states": [
//!     {"id": "w1", "types": {"row": "r", "col": "c1"}},
//!     {"id": "w2", "types": {"row": "r", "col": "c2"}}
//!   ],
//!   "utilities": {"row": {"w1": {"T,L": "0", "T,R": "1/2"}}}
//! }
//! ```
//!
//! Profile keys list one action per player, in player order, separated by
//! commas. Partitions are read off the per-state type labels; an optional
//! `partitions` object (`{player: {type: [state ids]}}`) may be given
//! instead of, or in addition to, the labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GameWithAmbiguity, MixedAction, ModelError, StrategyProfile};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawState {
    pub id: String,
    #[serde(default)]
    pub types: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGame {
    pub players: Vec<String>,
    pub actions: BTreeMap<String, Vec<String>>,
    pub states: Vec<RawState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partitions: Option<BTreeMap<String, BTreeMap<String, Vec<String>>>>,
    pub utilities: BTreeMap<String, BTreeMap<String, BTreeMap<String, Rational>>>,
}

/// A type's entry in a profile file: either a bare action name or a weight
/// map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawMixed {
    Pure(String),
    Mixed(BTreeMap<String, Rational>),
}

/// `{player: {type: action-or-weights}}`.
pub type RawProfile = BTreeMap<String, BTreeMap<String, RawMixed>>;

pub(super) fn validate(raw: &RawGame) -> Result<GameWithAmbiguity, ModelError> {
    let players = raw.players.clone();
    let mut actions = Vec::with_capacity(players.len());
    for p in &players {
        actions.push(
            raw.actions
                .get(p)
                .cloned()
                .ok_or_else(|| ModelError::NoActions(p.clone()))?,
        );
    }
    if let Some(extra) = raw.actions.keys().find(|k| !players.contains(k)) {
        return Err(ModelError::UnknownPlayer(extra.clone()));
    }
    let states: Vec<String> = raw.states.iter().map(|s| s.id.clone()).collect();
    super::check_names(&players, &actions, &states)?;
    let state_types = state_labels(raw, &players, &states)?;

    for (player, per_state) in &raw.utilities {
        if !players.contains(player) {
            return Err(ModelError::UnknownPlayer(player.clone()));
        }
        for (state, table) in per_state {
            if !states.contains(state) {
                return Err(ModelError::UnknownState(state.clone()));
            }
            for key in table.keys() {
                parse_key(key, &players, &actions)?;
            }
        }
    }

    GameWithAmbiguity::try_from_fn(
        players.clone(),
        actions.clone(),
        states.clone(),
        state_types,
        |i, s, profile| {
            let key = profile_key(&actions, profile);
            raw.utilities
                .get(&players[i])
                .and_then(|m| m.get(&states[s]))
                .and_then(|m| lookup(m, &key))
                .cloned()
                .ok_or_else(|| ModelError::MissingUtility {
                    player: players[i].clone(),
                    state: states[s].clone(),
                    profile: key,
                })
        },
    )
}

// Keys are matched after trimming whitespace around each action name.
fn lookup<'a>(table: &'a BTreeMap<String, Rational>, key: &str) -> Option<&'a Rational> {
    table
        .get(key)
        .or_else(|| table.iter().find(|(k, _)| normalize_key(k) == key).map(|(_, v)| v))
}

fn normalize_key(key: &str) -> String {
    key.split(',').map(str::trim).collect::<Vec<_>>().join(",")
}

fn profile_key(actions: &[Vec<String>], profile: &[usize]) -> String {
    profile
        .iter()
        .enumerate()
        .map(|(i, &a)| actions[i][a].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_key(key: &str, players: &[String], actions: &[Vec<String>]) -> Result<Vec<usize>, ModelError> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    if parts.len() != players.len() {
        return Err(ModelError::InvalidProfileKey {
            key: key.to_string(),
            reason: format!("expected {} actions, found {}", players.len(), parts.len()),
        });
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, a)| {
            actions[i]
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| ModelError::UnknownAction {
                    player: players[i].clone(),
                    action: a.to_string(),
                })
        })
        .collect()
}

fn state_labels(raw: &RawGame, players: &[String], states: &[String]) -> Result<Vec<Vec<String>>, ModelError> {
    for s in &raw.states {
        if let Some(p) = s.types.keys().find(|p| !players.contains(p)) {
            return Err(ModelError::UnknownPlayer(p.clone()));
        }
    }
    let mut labels: Vec<Vec<Option<String>>> = raw
        .states
        .iter()
        .map(|s| players.iter().map(|p| s.types.get(p).cloned()).collect())
        .collect();

    if let Some(parts) = &raw.partitions {
        for (player, cells) in parts {
            let i = players
                .iter()
                .position(|p| p == player)
                .ok_or_else(|| ModelError::UnknownPlayer(player.clone()))?;
            let mut seen = vec![false; states.len()];
            for (cell, members) in cells {
                for st in members {
                    let s = states
                        .iter()
                        .position(|x| x == st)
                        .ok_or_else(|| ModelError::UnknownState(st.clone()))?;
                    if seen[s] {
                        return Err(ModelError::OverlappingPartitionCells {
                            player: player.clone(),
                            state: st.clone(),
                        });
                    }
                    seen[s] = true;
                    match &labels[s][i] {
                        Some(l) if l != cell => {
                            return Err(ModelError::ConflictingTypeLabel {
                                player: player.clone(),
                                state: st.clone(),
                            })
                        }
                        _ => labels[s][i] = Some(cell.clone()),
                    }
                }
            }
            if let Some(s) = seen.iter().position(|&b| !b) {
                return Err(ModelError::UncoveredState {
                    player: player.clone(),
                    state: states[s].clone(),
                });
            }
        }
    }

    labels
        .into_iter()
        .enumerate()
        .map(|(s, row)| {
            row.into_iter()
                .enumerate()
                .map(|(i, l)| {
                    l.ok_or_else(|| ModelError::UncoveredState {
                        player: players[i].clone(),
                        state: states[s].clone(),
                    })
                })
                .collect()
        })
        .collect()
}

pub(super) fn to_raw(game: &GameWithAmbiguity) -> RawGame {
    let players = game.players().to_vec();
    let actions = players
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), game.actions(i).to_vec()))
        .collect();
    let states = (0..game.num_states())
        .map(|s| RawState {
            id: game.states()[s].clone(),
            types: players
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let cell = game.cell_of(i, s);
                    (p.clone(), game.partition(i).cells()[cell].name().to_string())
                })
                .collect(),
        })
        .collect();
    let mut profile = vec![0usize; players.len()];
    let mut utilities = BTreeMap::new();
    for (i, p) in players.iter().enumerate() {
        let mut per_state = BTreeMap::new();
        for s in 0..game.num_states() {
            let mut table = BTreeMap::new();
            for idx in 0..game.num_profiles() {
                super::decode_profile(idx, &game.actions, &mut profile);
                table.insert(profile_key(&game.actions, &profile), game.utility_at(i, s, idx).clone());
            }
            per_state.insert(game.states()[s].clone(), table);
        }
        utilities.insert(p.clone(), per_state);
    }
    RawGame {
        players,
        actions,
        states,
        partitions: None,
        utilities,
    }
}

impl StrategyProfile {
    /// Resolve a profile file against a game.
    pub fn from_raw(game: &GameWithAmbiguity, raw: &RawProfile) -> Result<StrategyProfile, ModelError> {
        if let Some(p) = raw.keys().find(|p| game.player_index(p).is_none()) {
            return Err(ModelError::UnknownPlayer(p.clone()));
        }
        let mut strategies = Vec::with_capacity(game.num_players());
        for i in 0..game.num_players() {
            let name = game.player_name(i);
            let per_type = raw.get(name);
            if let Some(t) = per_type.and_then(|m| m.keys().find(|t| game.partition(i).cell_index(t).is_none())) {
                return Err(ModelError::UnknownTypeCell {
                    player: name.to_string(),
                    cell: t.clone(),
                });
            }
            let mut cells = Vec::with_capacity(game.partition(i).len());
            for cell in game.partition(i).cells() {
                let entry =
                    per_type
                        .and_then(|m| m.get(cell.name()))
                        .ok_or_else(|| ModelError::IncompleteStrategy {
                            player: name.to_string(),
                            cell: cell.name().to_string(),
                        })?;
                cells.push(mixed_from_raw(game, i, entry)?);
            }
            strategies.push(cells);
        }
        StrategyProfile::new(game, strategies)
    }

    /// The file form: degenerate mixtures become bare action names, other
    /// mixtures list their support.
    pub fn to_raw(&self, game: &GameWithAmbiguity) -> RawProfile {
        let mut out = RawProfile::new();
        for i in 0..game.num_players() {
            let mut per_type = BTreeMap::new();
            for (c, cell) in game.partition(i).cells().iter().enumerate() {
                let m = self.strategy(i, c);
                let entry = match m.as_pure() {
                    Some(a) => RawMixed::Pure(game.actions(i)[a].clone()),
                    None => RawMixed::Mixed(
                        m.support()
                            .map(|a| (game.actions(i)[a].clone(), m.weight(a).clone()))
                            .collect(),
                    ),
                };
                per_type.insert(cell.name().to_string(), entry);
            }
            out.insert(game.player_name(i).to_string(), per_type);
        }
        out
    }
}

fn mixed_from_raw(game: &GameWithAmbiguity, player: usize, raw: &RawMixed) -> Result<MixedAction, ModelError> {
    let unknown = |a: &str| ModelError::UnknownAction {
        player: game.player_name(player).to_string(),
        action: a.to_string(),
    };
    match raw {
        RawMixed::Pure(a) => {
            let idx = game.action_index(player, a).ok_or_else(|| unknown(a))?;
            Ok(MixedAction::pure(game.num_actions(player), idx))
        }
        RawMixed::Mixed(weights) => {
            let mut dense = vec![Rational::zero(); game.num_actions(player)];
            for (a, w) in weights {
                let idx = game.action_index(player, a).ok_or_else(|| unknown(a))?;
                dense[idx] = w.clone();
            }
            MixedAction::new(dense)
        }
    }
}
