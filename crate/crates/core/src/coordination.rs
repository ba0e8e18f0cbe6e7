//! Coordination games with type ambiguity.
//!
//! Every player picks a location. A player's type is a strict ranking of
//! the locations; it first wants to meet as many others as possible and
//! then prefers better-ranked locations. The compiled game uses the
//! payoff `k * m + (m - r)` for meeting `k > 0` others at a location of
//! rank `r` (0 is best) among `m` locations, and `0` for meeting nobody.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::equilibrium::Verdict;
use crate::model::{GameWithAmbiguity, ModelError, PureProfile, TypeAmbiguityGame};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoordError {
    #[error("a coordination game needs at least two locations")]
    TooFewLocations,
    #[error("a coordination game needs at least two players")]
    TooFewPlayers,
    #[error("location {0:?} listed twice")]
    DuplicateLocation(String),
    #[error("unknown location {0:?}")]
    UnknownLocation(String),
    #[error("player {0:?} has no types")]
    EmptyTypeSet(String),
    #[error("type {type_name:?} of player {player:?} does not rank every location exactly once")]
    NotAnOrder { player: String, type_name: String },
    #[error("player {player:?} lists type {type_name:?} twice")]
    DuplicateType { player: String, type_name: String },
    #[error("{0}")]
    Domain(String),
    #[error("type {type_name:?} of player {player:?} does not peak at {peak:?}")]
    PeakMismatch {
        player: String,
        type_name: String,
        peak: String,
    },
    #[error("type {type_name:?} of player {player:?} is not single-peaked on the order {order:?}")]
    NotSinglePeaked {
        player: String,
        type_name: String,
        order: Vec<String>,
    },
    #[error("ideal point {ideal} of player {player:?} is equidistant from two locations")]
    EquidistantIdeal { player: String, ideal: Rational },
    #[error("two locations share the coordinate {0}")]
    DuplicateCoordinate(Rational),
    #[error("player {player:?} lists ideal point {ideal} twice")]
    DuplicateIdeal { player: String, ideal: Rational },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One type: a strict ranking of the locations, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOrder {
    pub name: String,
    /// `order[r]` is the location of rank `r`.
    pub order: Vec<usize>,
    /// `rank[l]` is the rank of location `l`.
    pub rank: Vec<usize>,
}

impl TypeOrder {
    pub fn top(&self) -> usize {
        self.order[0]
    }

    /// Best-ranked location among `set`.
    pub fn best_in(&self, set: &[usize]) -> usize {
        *set.iter().min_by_key(|&&l| self.rank[l]).expect("non-empty set")
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinationSpec {
    locations: Vec<String>,
    players: Vec<String>,
    type_sets: Vec<Vec<TypeOrder>>,
}

/// A type entry in a coordination file: a bare ranking (named by joining it with
/// `>`), or a named ranking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawType {
    Order(Vec<String>),
    Named { name: String, order: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCoordinationSpec {
    pub locations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<Vec<String>>,
    pub type_sets: Vec<Vec<RawType>>,
}

/// Input for [`known_peak_lexne`]: a coordination problem plus, per player,
/// the common peak and the lines its types are single-peaked on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawKnownPeakSpec {
    pub locations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<Vec<String>>,
    pub type_sets: Vec<Vec<RawType>>,
    pub peaks: Vec<String>,
    pub orders: Vec<Vec<Vec<String>>>,
}

impl RawKnownPeakSpec {
    pub fn spec(&self) -> RawCoordinationSpec {
        RawCoordinationSpec {
            locations: self.locations.clone(),
            players: self.players.clone(),
            type_sets: self.type_sets.clone(),
        }
    }
}

impl CoordinationSpec {
    /// `type_sets[i]` lists player `i`'s types as `(name, ranking)`.
    pub fn new(
        locations: Vec<String>,
        players: Vec<String>,
        type_sets: Vec<Vec<(String, Vec<String>)>>,
    ) -> Result<Self, CoordError> {
        let m = locations.len();
        if m < 2 {
            return Err(CoordError::TooFewLocations);
        }
        for (i, l) in locations.iter().enumerate() {
            if locations[..i].contains(l) {
                return Err(CoordError::DuplicateLocation(l.clone()));
            }
        }
        if players.len() < 2 || type_sets.len() != players.len() {
            return Err(CoordError::TooFewPlayers);
        }
        let mut sets = Vec::with_capacity(players.len());
        for (player, types) in players.iter().zip(type_sets) {
            if types.is_empty() {
                return Err(CoordError::EmptyTypeSet(player.clone()));
            }
            let mut parsed: Vec<TypeOrder> = Vec::with_capacity(types.len());
            for (name, ranking) in types {
                let not_order = || CoordError::NotAnOrder {
                    player: player.clone(),
                    type_name: name.clone(),
                };
                if ranking.len() != m {
                    return Err(not_order());
                }
                let mut order = Vec::with_capacity(m);
                let mut rank = vec![usize::MAX; m];
                for (r, l) in ranking.iter().enumerate() {
                    let idx = locations
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| CoordError::UnknownLocation(l.clone()))?;
                    if rank[idx] != usize::MAX {
                        return Err(not_order());
                    }
                    rank[idx] = r;
                    order.push(idx);
                }
                if parsed.iter().any(|t| t.name == name || t.order == order) {
                    return Err(CoordError::DuplicateType {
                        player: player.clone(),
                        type_name: name,
                    });
                }
                parsed.push(TypeOrder { name, order, rank });
            }
            sets.push(parsed);
        }
        Ok(CoordinationSpec {
            locations,
            players,
            type_sets: sets,
        })
    }

    pub fn from_raw(raw: &RawCoordinationSpec) -> Result<Self, CoordError> {
        let players = raw
            .players
            .clone()
            .unwrap_or_else(|| (1..=raw.type_sets.len()).map(|i| format!("p{i}")).collect());
        let type_sets = raw
            .type_sets
            .iter()
            .map(|types| {
                types
                    .iter()
                    .map(|t| match t {
                        RawType::Order(o) => (o.join(">"), o.clone()),
                        RawType::Named { name, order } => (name.clone(), order.clone()),
                    })
                    .collect()
            })
            .collect();
        CoordinationSpec::new(raw.locations.clone(), players, type_sets)
    }

    pub fn to_raw(&self) -> RawCoordinationSpec {
        RawCoordinationSpec {
            locations: self.locations.clone(),
            players: Some(self.players.clone()),
            type_sets: self
                .type_sets
                .iter()
                .map(|ts| {
                    ts.iter()
                        .map(|t| RawType::Named {
                            name: t.name.clone(),
                            order: t.order.iter().map(|&l| self.locations[l].clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn types(&self, player: usize) -> &[TypeOrder] {
        &self.type_sets[player]
    }

    pub fn location_index(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|l| l == name)
    }

    /// A copy with extra types appended to player `player`.
    pub fn with_extra_types(&self, player: usize, extra: Vec<(String, Vec<String>)>) -> Result<Self, CoordError> {
        let mut type_sets = self.named_rankings();
        type_sets[player].extend(extra);
        CoordinationSpec::new(self.locations.clone(), self.players.clone(), type_sets)
    }

    /// A copy with one more location, inserted into every ranking at the
    /// given rank (`ranks[i][t]` for type `t` of player `i`).
    pub fn with_extra_location(&self, name: &str, ranks: &[Vec<usize>]) -> Result<Self, CoordError> {
        let mut locations = self.locations.clone();
        locations.push(name.to_string());
        let mut type_sets = self.named_rankings();
        for (i, types) in type_sets.iter_mut().enumerate() {
            for (t, (_, ranking)) in types.iter_mut().enumerate() {
                let at = ranks[i][t].min(ranking.len());
                ranking.insert(at, name.to_string());
            }
        }
        CoordinationSpec::new(locations, self.players.clone(), type_sets)
    }

    fn named_rankings(&self) -> Vec<Vec<(String, Vec<String>)>> {
        self.type_sets
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|t| {
                        (
                            t.name.clone(),
                            t.order.iter().map(|&l| self.locations[l].clone()).collect(),
                        )
                    })
                    .collect()
            })
            .collect()
    }
}

/// Payoff of a type meeting `others` other players at a location of rank
/// `rank` among `m` locations.
pub fn coordination_payoff(m: usize, others: usize, rank: usize) -> Rational {
    if others == 0 {
        Rational::zero()
    } else {
        Rational::from_integer((others * m + (m - rank)) as i64)
    }
}

/// State id for a type vector, e.g. `(LL,R)`.
pub fn state_name(spec: &CoordinationSpec, types: &[usize]) -> String {
    let names: Vec<&str> = types
        .iter()
        .enumerate()
        .map(|(i, &t)| spec.type_sets[i][t].name.as_str())
        .collect();
    format!("({})", names.join(","))
}

fn type_vectors(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    out
}

/// The compiled game: states are all type vectors, actions are locations.
/// Type cells appear in the order the input lists the types.
pub fn build_coordination_game(spec: &CoordinationSpec) -> Result<TypeAmbiguityGame, CoordError> {
    let n = spec.num_players();
    let m = spec.locations.len();
    let sizes: Vec<usize> = spec.type_sets.iter().map(Vec::len).collect();
    let vectors = type_vectors(&sizes);
    let states: Vec<String> = vectors.iter().map(|v| state_name(spec, v)).collect();
    let labels: Vec<Vec<String>> = vectors
        .iter()
        .map(|v| (0..n).map(|i| spec.type_sets[i][v[i]].name.clone()).collect())
        .collect();
    let game = GameWithAmbiguity::from_fn(
        spec.players.clone(),
        vec![spec.locations.clone(); n],
        states,
        labels,
        |i, s, profile| {
            let others = (0..n).filter(|&j| j != i && profile[j] == profile[i]).count();
            let rank = spec.type_sets[i][vectors[s][i]].rank[profile[i]];
            coordination_payoff(m, others, rank)
        },
    )?;
    Ok(TypeAmbiguityGame::new(game)?)
}

/// A non-empty set of locations, kept sorted by location index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocationSet {
    indices: Vec<usize>,
    names: Vec<String>,
}

impl LocationSet {
    pub fn new(spec_locations: &[String], mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        let names = indices.iter().map(|&l| spec_locations[l].clone()).collect();
        LocationSet { indices, names }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl Serialize for LocationSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.names.serialize(serializer)
    }
}

/// Locations chosen by some type of some player.
pub fn location_set(spec: &CoordinationSpec, profile: &PureProfile) -> LocationSet {
    LocationSet::new(&spec.locations, profile.actions().iter().flatten().copied().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocationSetEquilibrium {
    pub set: LocationSet,
    #[serde(skip)]
    pub profile: PureProfile,
}

fn canonical_sets(m: usize) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (1u64..(1u64 << m))
        .map(|mask| (0..m).filter(|&l| mask >> l & 1 == 1).collect())
        .collect();
    sets.sort_by(|a: &Vec<usize>, b: &Vec<usize>| (a.len(), a).cmp(&(b.len(), b)));
    sets
}

fn is_onto(spec: &CoordinationSpec, set: &[usize]) -> bool {
    spec.type_sets.iter().all(|types| {
        let mut hit = vec![false; spec.locations.len()];
        for t in types {
            hit[t.best_in(set)] = true;
        }
        set.iter().all(|&l| hit[l])
    })
}

/// Every location set whose best-location map is onto for all players,
/// paired with the profile where each type goes to its favourite location
/// in the set. Ordered by size, then by location order.
pub fn lexne_location_sets(spec: &CoordinationSpec) -> Vec<LocationSetEquilibrium> {
    canonical_sets(spec.locations.len())
        .into_par_iter()
        .filter(|set| is_onto(spec, set))
        .map(|set| {
            let actions = spec
                .type_sets
                .iter()
                .map(|types| types.iter().map(|t| t.best_in(&set)).collect())
                .collect();
            LocationSetEquilibrium {
                set: LocationSet::new(&spec.locations, set),
                profile: PureProfile::from_vec_unchecked(actions),
            }
        })
        .collect()
}

/// MINNE test for a pure profile of the compiled game: either everybody
/// meets at one location, or no player sends all of its types to a single
/// location.
pub fn is_minne_coordination(spec: &CoordinationSpec, profile: &PureProfile) -> Verdict {
    let acts = profile.actions();
    let first = acts[0][0];
    let everyone_together = acts.iter().flatten().all(|&a| a == first);
    let someone_concentrated = acts.iter().any(|types| types.iter().all(|&a| a == types[0]));
    debug_assert_eq!(acts.len(), spec.num_players());
    if everyone_together || !someone_concentrated {
        Verdict::Equilibrium
    } else {
        Verdict::NotEquilibrium
    }
}

/// `(1 - 1/m^(t-1))^n`: a lower bound on the share of pure profiles that
/// are MINNE when every player has `t` types.
pub fn minne_fraction_lower_bound(m: u32, t: u32, n: u32) -> Result<Rational, CoordError> {
    if m < 2 || t < 1 || n < 2 {
        return Err(CoordError::Domain(format!(
            "need m >= 2, t >= 1, n >= 2 (got m={m}, t={t}, n={n})"
        )));
    }
    let base = Rational::one() - Rational::from_integer(m as i64).pow(t - 1).recip();
    Ok(base.pow(n))
}

fn positions(spec: &CoordinationSpec, order: &[String]) -> Result<Vec<usize>, CoordError> {
    let m = spec.locations.len();
    let mut pos = vec![usize::MAX; m];
    if order.len() != m {
        return Err(CoordError::Domain(format!(
            "an order must list all {m} locations, got {order:?}"
        )));
    }
    for (p, l) in order.iter().enumerate() {
        let idx = spec
            .location_index(l)
            .ok_or_else(|| CoordError::UnknownLocation(l.clone()))?;
        if pos[idx] != usize::MAX {
            return Err(CoordError::DuplicateLocation(l.clone()));
        }
        pos[idx] = p;
    }
    Ok(pos)
}

/// Whether `t` is single-peaked along the line given by `pos`.
pub fn is_single_peaked(t: &TypeOrder, pos: &[usize]) -> bool {
    let peak = pos[t.top()];
    let m = pos.len();
    (0..m).all(|y| {
        (0..m).all(|z| {
            let (py, pz) = (pos[y], pos[z]);
            let same_side_closer = (peak < py && py < pz) || (peak > py && py > pz);
            !same_side_closer || t.prefers(y, z)
        })
    })
}

/// Location sets for single-peaked type sets with known peaks.
///
/// `peaks[i]` is player `i`'s common peak and `orders[i]` the lines its
/// type set is single-peaked on. A pair `{a, b}` qualifies when, on every
/// supplied line of every player, the peak lies strictly between `a` and
/// `b`, and every player has a type preferring `a` to `b` and one
/// preferring `b` to `a`. All singletons are included.
pub fn known_peak_lexne(
    spec: &CoordinationSpec,
    peaks: &[String],
    orders: &[Vec<Vec<String>>],
) -> Result<Vec<LocationSet>, CoordError> {
    let n = spec.num_players();
    if peaks.len() != n || orders.len() != n {
        return Err(CoordError::Domain(format!(
            "need one peak and one list of orders per player ({n} players)"
        )));
    }
    let mut lines: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    let mut peak_idx = Vec::with_capacity(n);
    for i in 0..n {
        let peak = spec
            .location_index(&peaks[i])
            .ok_or_else(|| CoordError::UnknownLocation(peaks[i].clone()))?;
        if orders[i].is_empty() {
            return Err(CoordError::Domain(format!(
                "player {:?} has no orders",
                spec.players[i]
            )));
        }
        let mut player_lines = Vec::new();
        for order in &orders[i] {
            let pos = positions(spec, order)?;
            for t in &spec.type_sets[i] {
                if t.top() != peak {
                    return Err(CoordError::PeakMismatch {
                        player: spec.players[i].clone(),
                        type_name: t.name.clone(),
                        peak: peaks[i].clone(),
                    });
                }
                if !is_single_peaked(t, &pos) {
                    return Err(CoordError::NotSinglePeaked {
                        player: spec.players[i].clone(),
                        type_name: t.name.clone(),
                        order: order.clone(),
                    });
                }
            }
            player_lines.push(pos);
        }
        lines.push(player_lines);
        peak_idx.push(peak);
    }

    let m = spec.locations.len();
    let mut out: Vec<LocationSet> = (0..m).map(|l| LocationSet::new(&spec.locations, vec![l])).collect();
    for a in 0..m {
        for b in a + 1..m {
            let flanked = (0..n).all(|i| {
                lines[i].iter().all(|pos| {
                    let (pa, pb, px) = (pos[a], pos[b], pos[peak_idx[i]]);
                    (pa < px && px < pb) || (pb < px && px < pa)
                })
            });
            let rich = spec
                .type_sets
                .iter()
                .all(|types| types.iter().any(|t| t.prefers(a, b)) && types.iter().any(|t| t.prefers(b, a)));
            if flanked && rich {
                out.push(LocationSet::new(&spec.locations, vec![a, b]));
            }
        }
    }
    Ok(out)
}

/// Locations on a line and, per player, the possible ideal points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanSpec {
    /// Sorted by coordinate.
    locations: Vec<(String, Rational)>,
    players: Vec<String>,
    ideals: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEuclideanSpec {
    pub locations: BTreeMap<String, Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub players: Option<Vec<String>>,
    pub ideal_points: Vec<Vec<Rational>>,
}

impl EuclideanSpec {
    pub fn new(
        mut locations: Vec<(String, Rational)>,
        players: Vec<String>,
        ideals: Vec<Vec<Rational>>,
    ) -> Result<Self, CoordError> {
        if locations.len() < 2 {
            return Err(CoordError::TooFewLocations);
        }
        if players.len() < 2 || ideals.len() != players.len() {
            return Err(CoordError::TooFewPlayers);
        }
        locations.sort_by(|a, b| a.1.cmp(&b.1));
        for w in locations.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(CoordError::DuplicateCoordinate(w[0].1.clone()));
            }
        }
        for (i, l) in locations.iter().enumerate() {
            if locations[..i].iter().any(|x| x.0 == l.0) {
                return Err(CoordError::DuplicateLocation(l.0.clone()));
            }
        }
        let mut sorted = Vec::with_capacity(ideals.len());
        for (p, mut xs) in players.iter().zip(ideals) {
            if xs.is_empty() {
                return Err(CoordError::EmptyTypeSet(p.clone()));
            }
            xs.sort();
            if let Some(w) = xs.windows(2).find(|w| w[0] == w[1]) {
                return Err(CoordError::DuplicateIdeal {
                    player: p.clone(),
                    ideal: w[0].clone(),
                });
            }
            sorted.push(xs);
        }
        Ok(EuclideanSpec {
            locations,
            players,
            ideals: sorted,
        })
    }

    pub fn from_raw(raw: &RawEuclideanSpec) -> Result<Self, CoordError> {
        let players = raw
            .players
            .clone()
            .unwrap_or_else(|| (1..=raw.ideal_points.len()).map(|i| format!("p{i}")).collect());
        EuclideanSpec::new(
            raw.locations.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            players,
            raw.ideal_points.clone(),
        )
    }

    pub fn locations(&self) -> &[(String, Rational)] {
        &self.locations
    }

    pub fn ideals(&self, player: usize) -> &[Rational] {
        &self.ideals[player]
    }

    /// Rank locations by distance from each ideal point. Fails when an
    /// ideal point is equally far from two locations.
    pub fn to_coordination_spec(&self) -> Result<CoordinationSpec, CoordError> {
        let names: Vec<String> = self.locations.iter().map(|l| l.0.clone()).collect();
        let mut type_sets = Vec::with_capacity(self.players.len());
        for (p, xs) in self.players.iter().zip(&self.ideals) {
            let mut types = Vec::with_capacity(xs.len());
            for x in xs {
                let mut by_distance: Vec<(Rational, &String)> =
                    self.locations.iter().map(|(name, c)| ((c - x).abs(), name)).collect();
                by_distance.sort();
                if by_distance.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(CoordError::EquidistantIdeal {
                        player: p.clone(),
                        ideal: x.clone(),
                    });
                }
                types.push((
                    format!("x={x}"),
                    by_distance.into_iter().map(|(_, n)| n.clone()).collect(),
                ));
            }
            type_sets.push(types);
        }
        CoordinationSpec::new(names, self.players.clone(), type_sets)
    }
}

/// Location sets where, for every player, each gap between consecutive
/// midpoints holds one of its ideal points (strictly). Singletons always
/// qualify. Sets are given in location-coordinate order.
pub fn euclidean_lexne(spec: &EuclideanSpec) -> Vec<LocationSet> {
    let names: Vec<String> = spec.locations.iter().map(|l| l.0.clone()).collect();
    let two = Rational::from_integer(2);
    canonical_sets(names.len())
        .into_iter()
        .filter(|set| {
            let mids: Vec<Rational> = set
                .windows(2)
                .map(|w| (&spec.locations[w[0]].1 + &spec.locations[w[1]].1) / &two)
                .collect();
            spec.ideals.iter().all(|xs| {
                (0..=mids.len()).all(|t| {
                    xs.iter()
                        .any(|x| (t == 0 || x > &mids[t - 1]) && (t == mids.len() || x < &mids[t]))
                })
            })
        })
        .map(|set| LocationSet::new(&names, set))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::street_spec;
    use crate::equilibrium::{verify_profile, Concept};
    use crate::model::StrategyProfile;
    use crate::rational::q;

    fn s(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn street_game_compiles() {
        let g = build_coordination_game(&street_spec()).unwrap();
        assert_eq!(g.num_states(), 16);
        assert_eq!(g.num_actions(0), 4);
        // both active types at LL: one other player, LL ranked 0 by type LL
        let st = g.state_index("(LL,L)").unwrap();
        assert_eq!(g.utility(0, st, &[0, 0]), &q(8, 1));
        // type L ranks LL third
        assert_eq!(g.utility(1, st, &[0, 0]), &q(6, 1));
        assert_eq!(g.utility(1, st, &[0, 1]), &q(0, 1));
    }

    #[test]
    fn type_cells_follow_input_order() {
        let spec = street_spec();
        let g = build_coordination_game(&spec).unwrap();
        for i in 0..2 {
            let names: Vec<&str> = g.partition(i).cells().iter().map(|c| c.name()).collect();
            assert_eq!(names, vec!["LL", "L", "R", "RR"]);
        }
    }

    #[test]
    fn street_game_sets() {
        let spec = street_spec();
        let sets = lexne_location_sets(&spec);
        assert_eq!(sets.len(), 15);
        let llrr = sets.iter().find(|e| e.set.names() == s(&["LL", "RR"])).unwrap();
        // LL and L go to LL; R and RR go to RR
        assert_eq!(llrr.profile.actions()[0], vec![0, 0, 3, 3]);
    }

    #[test]
    fn single_type_player_allows_only_singletons() {
        let spec = CoordinationSpec::new(
            s(&["a", "b", "c"]),
            s(&["p", "q"]),
            vec![
                vec![("x".into(), s(&["a", "b", "c"]))],
                vec![("y".into(), s(&["b", "a", "c"])), ("z".into(), s(&["c", "b", "a"]))],
            ],
        )
        .unwrap();
        assert!(lexne_location_sets(&spec).iter().all(|e| e.set.len() == 1));
    }

    #[test]
    fn minne_clauses() {
        let spec = street_spec();
        let g = build_coordination_game(&spec).unwrap();
        let cases = [
            (vec![vec![0; 4], vec![0; 4]], Verdict::Equilibrium),
            (vec![vec![3, 3, 0, 0], vec![3, 3, 0, 0]], Verdict::Equilibrium),
            (vec![vec![0; 4], vec![0, 0, 3, 3]], Verdict::NotEquilibrium),
        ];
        for (acts, expected) in cases {
            let p = PureProfile::new(&g, acts).unwrap();
            assert_eq!(is_minne_coordination(&spec, &p), expected);
            let sp = StrategyProfile::from_pure(&g, &p);
            assert_eq!(verify_profile(&g, &sp, Concept::Minne).verdict, expected);
        }
        let far = PureProfile::new(&g, vec![vec![3, 3, 0, 0], vec![3, 3, 0, 0]]).unwrap();
        let sp = StrategyProfile::from_pure(&g, &far);
        assert!(!verify_profile(&g, &sp, Concept::Lexne).is_equilibrium());
    }

    #[test]
    fn fraction_bound() {
        assert_eq!(minne_fraction_lower_bound(3, 2, 2).unwrap(), q(4, 9));
        assert_eq!(minne_fraction_lower_bound(5, 1, 3).unwrap(), q(0, 1));
        assert!(minne_fraction_lower_bound(1, 2, 2).is_err());
    }

    fn numbered(prefs: &[&str]) -> Vec<(String, Vec<String>)> {
        prefs
            .iter()
            .map(|p| (p.to_string(), p.chars().map(|c| c.to_string()).collect()))
            .collect()
    }

    #[test]
    fn known_peak_example() {
        let spec = CoordinationSpec::new(
            s(&["1", "2", "3", "4", "5"]),
            s(&["a", "b"]),
            vec![numbered(&["21345", "23145"]), numbered(&["21345", "23145"])],
        )
        .unwrap();
        let order = s(&["5", "1", "2", "3", "4"]);
        let sets = known_peak_lexne(&spec, &s(&["2", "2"]), &[vec![order.clone()], vec![order]]).unwrap();
        let pairs: Vec<&[String]> = sets.iter().filter(|l| l.len() == 2).map(|l| l.names()).collect();
        assert_eq!(pairs, vec![&s(&["1", "3"])[..]]);
        assert_eq!(sets.len(), 6);
    }

    #[test]
    fn known_peak_rejects_bad_inputs() {
        let spec = CoordinationSpec::new(
            s(&["1", "2", "3"]),
            s(&["a", "b"]),
            vec![numbered(&["213", "231"]), numbered(&["132"])],
        )
        .unwrap();
        let line = s(&["1", "2", "3"]);
        assert!(matches!(
            known_peak_lexne(&spec, &s(&["2", "2"]), &[vec![line.clone()], vec![line.clone()]]),
            Err(CoordError::PeakMismatch { .. })
        ));
        assert!(matches!(
            known_peak_lexne(&spec, &s(&["2", "1"]), &[vec![line.clone()], vec![line]]),
            Err(CoordError::NotSinglePeaked { .. })
        ));
    }

    #[test]
    fn euclidean_examples() {
        let spec = EuclideanSpec::new(
            vec![
                ("a".into(), q(0, 1)),
                ("b".into(), q(2, 1)),
                ("c".into(), q(4, 1)),
                ("d".into(), q(14, 1)),
            ],
            s(&["p", "q"]),
            vec![vec![q(0, 1), q(10, 1)], vec![q(4, 1), q(12, 1)]],
        )
        .unwrap();
        let sets = euclidean_lexne(&spec);
        let names: Vec<Vec<String>> = sets.iter().map(|l| l.names().to_vec()).collect();
        assert!(names.contains(&s(&["b", "d"])));
        assert!(!names.contains(&s(&["a", "c"])));
        assert!(sets.iter().filter(|l| l.len() == 1).count() == 4);
    }

    #[test]
    fn euclidean_ties_refuse_to_compile() {
        let spec = EuclideanSpec::new(
            vec![("a".into(), q(0, 1)), ("b".into(), q(2, 1))],
            s(&["p", "q"]),
            vec![vec![q(1, 1)], vec![q(3, 1)]],
        )
        .unwrap();
        assert!(matches!(
            spec.to_coordination_spec(),
            Err(CoordError::EquidistantIdeal { .. })
        ));
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            CoordinationSpec::new(
                s(&["a", "b"]),
                s(&["p", "q"]),
                vec![vec![("x".into(), s(&["a"]))], vec![]]
            ),
            Err(CoordError::NotAnOrder { .. })
        ));
        assert!(matches!(
            CoordinationSpec::new(s(&["a"]), s(&["p", "q"]), vec![vec![], vec![]]),
            Err(CoordError::TooFewLocations)
        ));
    }
}
