use serde::{Deserialize, Serialize};

use super::{GameWithAmbiguity, ModelError};
use crate::rational::Rational;

/// A probability distribution over one player's actions, stored densely in
/// the game's canonical action order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedAction {
    weights: Vec<Rational>,
}

impl MixedAction {
    pub fn new(weights: Vec<Rational>) -> Result<Self, ModelError> {
        if weights.is_empty() {
            return Err(ModelError::InvalidMixedAction("no actions".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(ModelError::InvalidMixedAction(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if total != Rational::one() {
            return Err(ModelError::InvalidMixedAction(format!("weights sum to {total}, not 1")));
        }
        Ok(MixedAction { weights })
    }

    /// The degenerate distribution on `action` out of `num_actions`.
    pub fn pure(num_actions: usize, action: usize) -> Self {
        assert!(action < num_actions);
        let mut weights = vec![Rational::zero(); num_actions];
        weights[action] = Rational::one();
        MixedAction { weights }
    }

    pub fn uniform(num_actions: usize) -> Self {
        let w = Rational::new(1, num_actions as i64);
        MixedAction {
            weights: vec![w; num_actions],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, action: usize) -> &Rational {
        &self.weights[action]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The single action played with probability one, if any.
    pub fn as_pure(&self) -> Option<usize> {
        let mut support = self.support();
        match (support.next(), support.next()) {
            (Some(a), None) => Some(a),
            _ => None,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, _)| i)
    }

    /// `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, other: &MixedAction, alpha: &Rational) -> MixedAction {
        assert_eq!(self.len(), other.len());
        let beta = Rational::one() - alpha;
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| alpha * a + &beta * b)
            .collect();
        MixedAction { weights }
    }
}

/// One strategy per player: a mixed action for each of the player's type
/// cells, indexed `[player][cell]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrategyProfile {
    strategies: Vec<Vec<MixedAction>>,
}

impl StrategyProfile {
    pub fn new(game: &GameWithAmbiguity, strategies: Vec<Vec<MixedAction>>) -> Result<Self, ModelError> {
        if strategies.len() != game.num_players() {
            return Err(ModelError::IncompleteStrategy {
                player: format!("expected {} players", game.num_players()),
                cell: String::new(),
            });
        }
        for (i, per_cell) in strategies.iter().enumerate() {
            let cells = game.partition(i).cells();
            if per_cell.len() != cells.len() {
                let missing = cells
                    .get(per_cell.len())
                    .map(|c| c.name().to_string())
                    .unwrap_or_default();
                return Err(ModelError::IncompleteStrategy {
                    player: game.player_name(i).to_string(),
                    cell: missing,
                });
            }
            for m in per_cell {
                if m.len() != game.num_actions(i) {
                    return Err(ModelError::InvalidMixedAction(format!(
                        "player {} has {} actions, mixed action has {}",
                        game.player_name(i),
                        game.num_actions(i),
                        m.len()
                    )));
                }
            }
        }
        Ok(StrategyProfile { strategies })
    }

    pub fn from_pure(game: &GameWithAmbiguity, pure: &PureProfile) -> Self {
        let strategies = pure
            .actions()
            .iter()
            .enumerate()
            .map(|(i, cells)| {
                cells
                    .iter()
                    .map(|&a| MixedAction::pure(game.num_actions(i), a))
                    .collect()
            })
            .collect();
        StrategyProfile { strategies }
    }

    pub fn strategy(&self, player: usize, cell: usize) -> &MixedAction {
        &self.strategies[player][cell]
    }

    pub fn player(&self, player: usize) -> &[MixedAction] {
        &self.strategies[player]
    }

    pub fn with_strategy(&self, player: usize, cell: usize, action: MixedAction) -> Self {
        let mut out = self.clone();
        out.strategies[player][cell] = action;
        out
    }

    /// Pointwise `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, other: &StrategyProfile, alpha: &Rational) -> StrategyProfile {
        let strategies = self
            .strategies
            .iter()
            .zip(&other.strategies)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.mix(y, alpha)).collect())
            .collect();
        StrategyProfile { strategies }
    }

    /// The pure profile, when every mixed action is degenerate.
    pub fn as_pure(&self) -> Option<PureProfile> {
        let actions = self
            .strategies
            .iter()
            .map(|cells| cells.iter().map(MixedAction::as_pure).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(PureProfile { actions })
    }

    pub fn is_pure(&self) -> bool {
        self.as_pure().is_some()
    }
}

/// A pure strategy profile: one action index per `[player][cell]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PureProfile {
    actions: Vec<Vec<usize>>,
}

impl PureProfile {
    pub fn new(game: &GameWithAmbiguity, actions: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        if actions.len() != game.num_players() {
            return Err(ModelError::IncompleteStrategy {
                player: format!("expected {} players", game.num_players()),
                cell: String::new(),
            });
        }
        for (i, cells) in actions.iter().enumerate() {
            if cells.len() != game.partition(i).len() {
                return Err(ModelError::IncompleteStrategy {
                    player: game.player_name(i).to_string(),
                    cell: format!("expected {} cells", game.partition(i).len()),
                });
            }
            if let Some(&a) = cells.iter().find(|&&a| a >= game.num_actions(i)) {
                return Err(ModelError::UnknownAction {
                    player: game.player_name(i).to_string(),
                    action: a.to_string(),
                });
            }
        }
        Ok(PureProfile { actions })
    }

    pub(crate) fn from_vec_unchecked(actions: Vec<Vec<usize>>) -> Self {
        PureProfile { actions }
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    pub fn action(&self, player: usize, cell: usize) -> usize {
        self.actions[player][cell]
    }

    /// The pure action profile played at `state`.
    pub fn at_state(&self, game: &GameWithAmbiguity, state: usize) -> Vec<usize> {
        (0..game.num_players())
            .map(|i| self.actions[i][game.cell_of(i, state)])
            .collect()
    }
}
