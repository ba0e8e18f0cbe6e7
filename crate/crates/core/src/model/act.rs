use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::rational::Rational;

/// An assignment of an outcome to each state of a (possibly reduced) state
/// set. This is the object the preference comparators rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Act {
    states: Vec<String>,
    values: Vec<Rational>,
}

impl Act {
    pub fn new(states: Vec<String>, values: Vec<Rational>) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::EmptyAct);
        }
        if states.len() != values.len() {
            return Err(ModelError::ActArity {
                states: states.len(),
                values: values.len(),
            });
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(ModelError::DuplicateState(s.clone()));
            }
        }
        Ok(Act { states, values })
    }

    /// An act over anonymous states `w0, w1, ...`.
    pub fn from_values(values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "an act needs at least one state");
        let states = (0..values.len()).map(|i| format!("w{i}")).collect();
        Act { states, values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Act::from_values(values.iter().map(|&v| Rational::from_integer(v)).collect())
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn worst(&self) -> &Rational {
        self.values.iter().min().expect("non-empty act")
    }

    pub fn best(&self) -> &Rational {
        self.values.iter().max().expect("non-empty act")
    }

    /// Value at the state with the given label.
    pub fn at(&self, state: &str) -> Option<&Rational> {
        self.states.iter().position(|s| s == state).map(|i| &self.values[i])
    }

    /// True when both acts are defined on the same set of state labels.
    pub fn same_states(&self, other: &Act) -> bool {
        self.states.len() == other.states.len() && self.states.iter().all(|s| other.states.contains(s))
    }

    /// The values of `other` re-ordered to follow this act's state order.
    pub(crate) fn aligned_values<'a>(&self, other: &'a Act) -> Vec<&'a Rational> {
        self.states
            .iter()
            .map(|s| other.at(s).expect("state sets checked by caller"))
            .collect()
    }

    /// Replace values, keeping the state labels.
    pub fn with_values(&self, values: Vec<Rational>) -> Act {
        assert_eq!(values.len(), self.values.len());
        Act {
            states: self.states.clone(),
            values,
        }
    }
}
