//! Bilateral trade under type ambiguity.
//!
//! A seller and a buyer each know only their own value for one item. Each
//! either stays out (`none`) or names a price from a finite grid; trade
//! happens when both name a price and the seller's is not above the
//! buyer's, at a price fixed by a [`PriceRule`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::equilibrium::{
    all_witnesses, enumerate_pure, Concept, Deviations, EnumerationConfig, EquilibriumError, Witness,
};
use crate::model::{GameWithAmbiguity, ModelError, PureProfile, StrategyProfile, TypeAmbiguityGame};
use crate::rational::Rational;

pub const SELLER: usize = 0;
pub const BUYER: usize = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TradeError {
    #[error("{0} values must be non-empty")]
    NoValues(&'static str),
    #[error("{which} value {value} listed twice")]
    DuplicateValue { which: &'static str, value: Rational },
    #[error("bid grid must be non-empty")]
    EmptyGrid,
    #[error("bid grid must contain every value; {0} is missing")]
    ValueOffGrid(Rational),
    #[error("price rule {rule} gives {price} for bids ({ask}, {bid})")]
    PriceOutOfRange {
        rule: String,
        ask: String,
        bid: String,
        price: String,
    },
    #[error("price rule {0} is not monotone on the grid")]
    NonMonotoneRule(String),
    #[error("unknown price rule {0:?} (expected midpoint, seller-price, buyer-price or convex:<lambda>)")]
    UnknownRule(String),
    #[error("{which} strategy has {found} entries, expected {expected}")]
    StrategyArity {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("bid {0} is not on the grid")]
    BidOffGrid(Rational),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
}

/// How the transaction price depends on the two bids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PriceRule {
    Midpoint,
    SellerPrice,
    BuyerPrice,
    /// `ask + lambda * (bid - ask)`.
    Convex(Rational),
}

impl PriceRule {
    pub fn price(&self, ask: &Rational, bid: &Rational) -> Rational {
        match self {
            PriceRule::Midpoint => (ask + bid) / Rational::from_integer(2),
            PriceRule::SellerPrice => ask.clone(),
            PriceRule::BuyerPrice => bid.clone(),
            PriceRule::Convex(l) => ask + &(l * &(bid - ask)),
        }
    }
}

impl fmt::Display for PriceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriceRule::Midpoint => f.write_str("midpoint"),
            PriceRule::SellerPrice => f.write_str("seller-price"),
            PriceRule::BuyerPrice => f.write_str("buyer-price"),
            PriceRule::Convex(l) => write!(f, "convex:{l}"),
        }
    }
}

impl FromStr for PriceRule {
    type Err = TradeError;

    fn from_str(s: &str) -> Result<Self, TradeError> {
        match s.trim() {
            "midpoint" => Ok(PriceRule::Midpoint),
            "seller-price" => Ok(PriceRule::SellerPrice),
            "buyer-price" => Ok(PriceRule::BuyerPrice),
            other => other
                .strip_prefix("convex:")
                .or_else(|| other.strip_prefix("convex(").and_then(|r| r.strip_suffix(')')))
                .and_then(|l| l.trim().parse::<Rational>().ok())
                .map(PriceRule::Convex)
                .ok_or_else(|| TradeError::UnknownRule(s.to_string())),
        }
    }
}

impl Serialize for PriceRule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PriceRule {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTradeSpec {
    pub seller_values: Vec<Rational>,
    pub buyer_values: Vec<Rational>,
    pub bid_grid: Vec<Rational>,
    #[serde(default = "default_rule")]
    pub price_rule: PriceRule,
}

fn default_rule() -> PriceRule {
    PriceRule::Midpoint
}

/// Validated trade setting; value lists and the grid are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TradeSpec {
    seller_values: Vec<Rational>,
    buyer_values: Vec<Rational>,
    grid: Vec<Rational>,
    rule: PriceRule,
}

fn sorted_distinct(mut xs: Vec<Rational>, which: &'static str) -> Result<Vec<Rational>, TradeError> {
    if xs.is_empty() {
        return Err(TradeError::NoValues(which));
    }
    xs.sort();
    if let Some(w) = xs.windows(2).find(|w| w[0] == w[1]) {
        return Err(TradeError::DuplicateValue {
            which,
            value: w[0].clone(),
        });
    }
    Ok(xs)
}

impl TradeSpec {
    pub fn new(
        seller_values: Vec<Rational>,
        buyer_values: Vec<Rational>,
        grid: Vec<Rational>,
        rule: PriceRule,
    ) -> Result<Self, TradeError> {
        let seller_values = sorted_distinct(seller_values, "seller")?;
        let buyer_values = sorted_distinct(buyer_values, "buyer")?;
        if grid.is_empty() {
            return Err(TradeError::EmptyGrid);
        }
        let grid = sorted_distinct(grid, "grid")?;
        if let Some(v) = seller_values
            .iter()
            .chain(&buyer_values)
            .find(|v| grid.binary_search(v).is_err())
        {
            return Err(TradeError::ValueOffGrid(v.clone()));
        }
        check_rule(&rule, &grid)?;
        Ok(TradeSpec {
            seller_values,
            buyer_values,
            grid,
            rule,
        })
    }

    /// Integer values and grid.
    pub fn from_ints(seller: &[i64], buyer: &[i64], grid: &[i64], rule: PriceRule) -> Result<Self, TradeError> {
        let r = |xs: &[i64]| xs.iter().map(|&x| Rational::from_integer(x)).collect();
        TradeSpec::new(r(seller), r(buyer), r(grid), rule)
    }

    pub fn from_raw(raw: &RawTradeSpec) -> Result<Self, TradeError> {
        TradeSpec::new(
            raw.seller_values.clone(),
            raw.buyer_values.clone(),
            raw.bid_grid.clone(),
            raw.price_rule.clone(),
        )
    }

    pub fn to_raw(&self) -> RawTradeSpec {
        RawTradeSpec {
            seller_values: self.seller_values.clone(),
            buyer_values: self.buyer_values.clone(),
            bid_grid: self.grid.clone(),
            price_rule: self.rule.clone(),
        }
    }

    pub fn seller_values(&self) -> &[Rational] {
        &self.seller_values
    }

    pub fn buyer_values(&self) -> &[Rational] {
        &self.buyer_values
    }

    pub fn grid(&self) -> &[Rational] {
        &self.grid
    }

    pub fn rule(&self) -> &PriceRule {
        &self.rule
    }

    pub fn with_rule(&self, rule: PriceRule) -> Result<Self, TradeError> {
        check_rule(&rule, &self.grid)?;
        Ok(TradeSpec { rule, ..self.clone() })
    }

    /// Transaction price, if the two bids trade.
    pub fn trade_price(&self, ask: &Bid, bid: &Bid) -> Option<Rational> {
        match (ask, bid) {
            (Bid::At(a), Bid::At(b)) if a <= b => Some(self.rule.price(a, b)),
            _ => None,
        }
    }
}

fn check_rule(rule: &PriceRule, grid: &[Rational]) -> Result<(), TradeError> {
    for (i, a) in grid.iter().enumerate() {
        for b in &grid[i..] {
            let x = rule.price(a, b);
            if x < *a || x > *b {
                return Err(TradeError::PriceOutOfRange {
                    rule: rule.to_string(),
                    ask: a.to_string(),
                    bid: b.to_string(),
                    price: x.to_string(),
                });
            }
        }
    }
    // weak monotonicity: raising either bid never lowers the price
    for (i, a) in grid.iter().enumerate() {
        for (j, b) in grid.iter().enumerate().skip(i) {
            let x = rule.price(a, b);
            let up_ask = grid.get(i + 1).filter(|a2| *a2 <= b).map(|a2| rule.price(a2, b));
            let up_bid = grid.get(j + 1).map(|b2| rule.price(a, b2));
            if up_ask.is_some_and(|y| y < x) || up_bid.is_some_and(|y| y < x) {
                return Err(TradeError::NonMonotoneRule(rule.to_string()));
            }
        }
    }
    Ok(())
}

/// One type's action: stay out, or name a price.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bid {
    None,
    At(Rational),
}

impl fmt::Display for Bid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bid::None => f.write_str("none"),
            Bid::At(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Bid {
    type Err = crate::rational::ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "none" | "⊥" => Ok(Bid::None),
            p => p.parse().map(Bid::At),
        }
    }
}

impl Serialize for Bid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bid {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A bid for each value of one side, aligned with the sorted value list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TradeStrategy(pub Vec<Bid>);

impl TradeStrategy {
    pub fn constant(values: &[Rational], bid: Bid) -> Self {
        TradeStrategy(vec![bid; values.len()])
    }

    pub fn bids(&self) -> &[Bid] {
        &self.0
    }

    pub fn participates_everywhere(&self) -> bool {
        self.0.iter().all(|b| b != &Bid::None)
    }
}

/// File form of a seller/buyer strategy pair: value → bid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTradeProfile {
    pub seller: BTreeMap<String, Bid>,
    pub buyer: BTreeMap<String, Bid>,
}

impl RawTradeProfile {
    pub fn resolve(&self, spec: &TradeSpec) -> Result<(TradeStrategy, TradeStrategy), TradeError> {
        let side = |map: &BTreeMap<String, Bid>, values: &[Rational], which: &'static str| {
            let parsed: BTreeMap<Rational, &Bid> = map
                .iter()
                .filter_map(|(k, v)| k.parse::<Rational>().ok().map(|k| (k, v)))
                .collect();
            if parsed.len() != map.len()
                || values.iter().any(|v| !parsed.contains_key(v))
                || parsed.len() != values.len()
            {
                return Err(TradeError::StrategyArity {
                    which,
                    expected: values.len(),
                    found: map.len(),
                });
            }
            Ok(TradeStrategy(values.iter().map(|v| parsed[v].clone()).collect()))
        };
        Ok((
            side(&self.seller, &spec.seller_values, "seller")?,
            side(&self.buyer, &spec.buyer_values, "buyer")?,
        ))
    }

    pub fn from_strategies(spec: &TradeSpec, seller: &TradeStrategy, buyer: &TradeStrategy) -> Self {
        let side = |values: &[Rational], s: &TradeStrategy| {
            values
                .iter()
                .zip(s.bids())
                .map(|(v, b)| (v.to_string(), b.clone()))
                .collect()
        };
        RawTradeProfile {
            seller: side(&spec.seller_values, seller),
            buyer: side(&spec.buyer_values, buyer),
        }
    }
}

fn action_names(spec: &TradeSpec) -> Vec<String> {
    std::iter::once("none".to_string())
        .chain(spec.grid.iter().map(|p| p.to_string()))
        .collect()
}

fn bid_of_action(spec: &TradeSpec, a: usize) -> Bid {
    if a == 0 {
        Bid::None
    } else {
        Bid::At(spec.grid[a - 1].clone())
    }
}

fn action_of_bid(spec: &TradeSpec, bid: &Bid) -> Result<usize, TradeError> {
    match bid {
        Bid::None => Ok(0),
        Bid::At(p) => spec
            .grid
            .binary_search(p)
            .map(|i| i + 1)
            .map_err(|_| TradeError::BidOffGrid(p.clone())),
    }
}

/// Compile to a game with players `seller` and `buyer`. States are value
/// pairs `(v_s,v_b)`; actions are `none` followed by the grid.
pub fn build_trade_game(spec: &TradeSpec) -> Result<TypeAmbiguityGame, TradeError> {
    let actions = action_names(spec);
    let mut states = Vec::new();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for vs in &spec.seller_values {
        for vb in &spec.buyer_values {
            states.push(format!("({vs},{vb})"));
            labels.push(vec![vs.to_string(), vb.to_string()]);
            pairs.push((vs.clone(), vb.clone()));
        }
    }
    let game = GameWithAmbiguity::from_fn(
        vec!["seller".to_string(), "buyer".to_string()],
        vec![actions.clone(), actions],
        states,
        labels,
        |i, s, p| {
            let (vs, vb) = &pairs[s];
            match spec.trade_price(&bid_of_action(spec, p[0]), &bid_of_action(spec, p[1])) {
                None => Rational::zero(),
                Some(x) if i == SELLER => x - vs,
                Some(x) => vb - &x,
            }
        },
    )?;
    Ok(TypeAmbiguityGame::new(game)?)
}

/// The pure profile of the compiled game for a strategy pair.
pub fn to_profile(
    spec: &TradeSpec,
    game: &GameWithAmbiguity,
    seller: &TradeStrategy,
    buyer: &TradeStrategy,
) -> Result<PureProfile, TradeError> {
    let side = |s: &TradeStrategy, values: &[Rational], which: &'static str| {
        if s.0.len() != values.len() {
            return Err(TradeError::StrategyArity {
                which,
                expected: values.len(),
                found: s.0.len(),
            });
        }
        s.0.iter()
            .map(|b| action_of_bid(spec, b))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(PureProfile::new(
        game,
        vec![
            side(seller, &spec.seller_values, "seller")?,
            side(buyer, &spec.buyer_values, "buyer")?,
        ],
    )?)
}

/// The strategy pair behind a pure profile of the compiled game.
pub fn from_profile(spec: &TradeSpec, profile: &PureProfile) -> (TradeStrategy, TradeStrategy) {
    let side = |i: usize| TradeStrategy(profile.actions()[i].iter().map(|&a| bid_of_action(spec, a)).collect());
    (side(SELLER), side(BUYER))
}

/// Price paid between each seller value (rows) and buyer value (columns),
/// or `None` where they do not trade.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OutcomeTable(pub Vec<Vec<Option<Rational>>>);

impl OutcomeTable {
    pub fn is_empty(&self) -> bool {
        self.0.iter().flatten().all(Option::is_none)
    }

    pub fn prices(&self) -> BTreeSet<Rational> {
        self.0.iter().flatten().flatten().cloned().collect()
    }
}

pub fn outcome_table(spec: &TradeSpec, seller: &TradeStrategy, buyer: &TradeStrategy) -> OutcomeTable {
    OutcomeTable(
        seller
            .bids()
            .iter()
            .map(|a| buyer.bids().iter().map(|b| spec.trade_price(a, b)).collect())
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum TradeEquilibriumClass {
    NoTransaction,
    OnePrice {
        price: Rational,
    },
    TwoPrice {
        low: Rational,
        high: Rational,
    },
    /// A verified equilibrium that fits none of the three shapes.
    Unclassified {
        table: OutcomeTable,
    },
    NotEquilibrium {
        witnesses: Vec<Witness>,
    },
}

impl TradeEquilibriumClass {
    pub fn is_equilibrium(&self) -> bool {
        !matches!(self, TradeEquilibriumClass::NotEquilibrium { .. })
    }
}

impl fmt::Display for TradeEquilibriumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TradeEquilibriumClass::NoTransaction => f.write_str("NoTransaction"),
            TradeEquilibriumClass::OnePrice { price } => write!(f, "OnePrice({price})"),
            TradeEquilibriumClass::TwoPrice { low, high } => write!(f, "TwoPrice({low},{high})"),
            TradeEquilibriumClass::Unclassified { .. } => f.write_str("Unclassified"),
            TradeEquilibriumClass::NotEquilibrium { witnesses } => {
                write!(f, "NotEquilibrium({} deviating)", witnesses.len())
            }
        }
    }
}

/// An analytic equilibrium class with its canonical strategies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeEquilibrium {
    #[serde(flatten)]
    pub class: TradeEquilibriumClass,
    pub seller: TradeStrategy,
    pub buyer: TradeStrategy,
}

/// Grid pairs `p_L < p_H` with `min V_s <= p_L < max V_s <= p_H` and
/// `p_L <= min V_b < p_H <= max V_b`.
pub fn two_price_pairs(spec: &TradeSpec) -> Vec<(Rational, Rational)> {
    let (vs, vb) = (&spec.seller_values, &spec.buyer_values);
    let (s_lo, s_hi) = (&vs[0], &vs[vs.len() - 1]);
    let (b_lo, b_hi) = (&vb[0], &vb[vb.len() - 1]);
    let mut out = Vec::new();
    for lo in &spec.grid {
        for hi in &spec.grid {
            if lo < hi && s_lo <= lo && lo < s_hi && s_hi <= hi && lo <= b_lo && b_lo < hi && hi <= b_hi {
                out.push((lo.clone(), hi.clone()));
            }
        }
    }
    out
}

pub fn one_price_points(spec: &TradeSpec) -> Vec<Rational> {
    let lo = &spec.seller_values[0];
    let hi = &spec.buyer_values[spec.buyer_values.len() - 1];
    spec.grid.iter().filter(|p| lo <= *p && *p <= hi).cloned().collect()
}

/// The three equilibrium families with canonical strategies: everyone
/// out; one price `p` (sellers with `v_s <= p` ask `p`, buyers with
/// `v_b >= p` bid `p`, others stay out); two prices (sellers with
/// `v_s <= p_L` ask `p_L` and the rest `p_H`; buyers with `v_b >= p_H` bid
/// `p_H` and the rest `p_L`).
pub fn enumerate_lexne_analytic(spec: &TradeSpec) -> Vec<TradeEquilibrium> {
    let (vs, vb) = (&spec.seller_values, &spec.buyer_values);
    let mut out = vec![TradeEquilibrium {
        class: TradeEquilibriumClass::NoTransaction,
        seller: TradeStrategy::constant(vs, Bid::None),
        buyer: TradeStrategy::constant(vb, Bid::None),
    }];
    for p in one_price_points(spec) {
        out.push(TradeEquilibrium {
            seller: TradeStrategy(
                vs.iter()
                    .map(|v| if v <= &p { Bid::At(p.clone()) } else { Bid::None })
                    .collect(),
            ),
            buyer: TradeStrategy(
                vb.iter()
                    .map(|v| if v >= &p { Bid::At(p.clone()) } else { Bid::None })
                    .collect(),
            ),
            class: TradeEquilibriumClass::OnePrice { price: p },
        });
    }
    for (lo, hi) in two_price_pairs(spec) {
        out.push(TradeEquilibrium {
            seller: TradeStrategy(
                vs.iter()
                    .map(|v| Bid::At(if v <= &lo { lo.clone() } else { hi.clone() }))
                    .collect(),
            ),
            buyer: TradeStrategy(
                vb.iter()
                    .map(|v| Bid::At(if v >= &hi { hi.clone() } else { lo.clone() }))
                    .collect(),
            ),
            class: TradeEquilibriumClass::TwoPrice { low: lo, high: hi },
        });
    }
    out
}

/// Shape of an outcome, ignoring whether it is an equilibrium: no trade,
/// one price, full participation at two prices with bids rising in value,
/// or none of these.
pub fn outcome_class(seller: &TradeStrategy, buyer: &TradeStrategy, table: &OutcomeTable) -> TradeEquilibriumClass {
    let prices = table.prices();
    if prices.is_empty() {
        return TradeEquilibriumClass::NoTransaction;
    }
    if prices.len() == 1 {
        let price = prices.into_iter().next().expect("one price");
        return TradeEquilibriumClass::OnePrice { price };
    }
    let bids: BTreeSet<&Bid> = seller.bids().iter().chain(buyer.bids()).collect();
    let two_price_shape = seller.participates_everywhere() && buyer.participates_everywhere() && bids.len() == 2 && {
        // sellers ask low then high as value rises; buyers bid low then high
        let monotone = |s: &TradeStrategy| s.bids().windows(2).all(|w| w[0] <= w[1]);
        monotone(seller) && monotone(buyer)
    };
    if two_price_shape {
        let mut it = bids.into_iter();
        if let (Some(Bid::At(low)), Some(Bid::At(high))) = (it.next(), it.next()) {
            return TradeEquilibriumClass::TwoPrice {
                low: low.clone(),
                high: high.clone(),
            };
        }
    }
    TradeEquilibriumClass::Unclassified { table: table.clone() }
}

fn classify_in(
    spec: &TradeSpec,
    game: &GameWithAmbiguity,
    seller: &TradeStrategy,
    buyer: &TradeStrategy,
) -> Result<TradeEquilibriumClass, TradeError> {
    let pure = to_profile(spec, game, seller, buyer)?;
    let profile = StrategyProfile::from_pure(game, &pure);
    let witnesses = all_witnesses(game, &profile, Concept::Lexne, Deviations::Pure);
    if !witnesses.is_empty() {
        return Ok(TradeEquilibriumClass::NotEquilibrium { witnesses });
    }
    Ok(outcome_class(seller, buyer, &outcome_table(spec, seller, buyer)))
}

/// Check LEX best responses for every type on the compiled game, then
/// name the equilibrium's shape. Deviating types are listed in
/// (player, value) order.
pub fn classify_profile(
    spec: &TradeSpec,
    seller: &TradeStrategy,
    buyer: &TradeStrategy,
) -> Result<TradeEquilibriumClass, TradeError> {
    let game = build_trade_game(spec)?;
    classify_in(spec, &game, seller, buyer)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub class: TradeEquilibriumClass,
    pub table: OutcomeTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub brute_force_profiles: usize,
    pub analytic_classes: usize,
    /// Distinct outcome tables on each side; all no-trade tables count once.
    pub brute_force_tables: usize,
    pub analytic_tables: usize,
    /// Brute-force equilibria that fit no class.
    pub unclassified: Vec<OutcomeTable>,
    /// Analytic classes whose canonical profile is not an equilibrium.
    pub canonical_not_found: Vec<TradeEquilibrium>,
    /// Outcome tables reached by brute force but by no canonical profile.
    pub only_brute_force: Vec<TableMismatch>,
    /// Outcome tables of canonical profiles that brute force never reaches.
    pub only_analytic: Vec<TableMismatch>,
}

impl CrossValidation {
    pub fn is_match(&self) -> bool {
        self.unclassified.is_empty()
            && self.canonical_not_found.is_empty()
            && self.only_brute_force.is_empty()
            && self.only_analytic.is_empty()
    }
}

/// Compare the analytic classes with a brute-force LEXNE enumeration of
/// the compiled game.
pub fn cross_validate(spec: &TradeSpec, config: &EnumerationConfig) -> Result<CrossValidation, TradeError> {
    let game = build_trade_game(spec)?;
    let found = enumerate_pure(&game, Concept::Lexne, config)?;
    let found_set: BTreeSet<&PureProfile> = found.iter().collect();

    let mut brute: BTreeMap<OutcomeTable, TradeEquilibriumClass> = BTreeMap::new();
    let mut unclassified = BTreeSet::new();
    for p in &found {
        let (s, b) = from_profile(spec, p);
        let table = outcome_table(spec, &s, &b);
        let class = outcome_class(&s, &b, &table);
        if let TradeEquilibriumClass::Unclassified { .. } = class {
            unclassified.insert(table.clone());
        }
        brute.entry(table).or_insert(class);
    }

    let analytic = enumerate_lexne_analytic(spec);
    let mut analytic_tables: BTreeMap<OutcomeTable, TradeEquilibriumClass> = BTreeMap::new();
    let mut canonical_not_found = Vec::new();
    for eq in &analytic {
        let profile = to_profile(spec, &game, &eq.seller, &eq.buyer)?;
        if !found_set.contains(&profile) {
            canonical_not_found.push(eq.clone());
        }
        analytic_tables
            .entry(outcome_table(spec, &eq.seller, &eq.buyer))
            .or_insert_with(|| eq.class.clone());
    }

    let diff = |a: &BTreeMap<OutcomeTable, TradeEquilibriumClass>,
                b: &BTreeMap<OutcomeTable, TradeEquilibriumClass>| {
        a.iter()
            .filter(|(t, _)| !b.contains_key(*t))
            .map(|(t, c)| TableMismatch {
                class: c.clone(),
                table: t.clone(),
            })
            .collect::<Vec<_>>()
    };
    Ok(CrossValidation {
        brute_force_profiles: found.len(),
        analytic_classes: analytic.len(),
        brute_force_tables: brute.len(),
        analytic_tables: analytic_tables.len(),
        unclassified: unclassified.into_iter().collect(),
        canonical_not_found,
        only_brute_force: diff(&brute, &analytic_tables),
        only_analytic: diff(&analytic_tables, &brute),
    })
}
