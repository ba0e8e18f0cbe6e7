//! Preferences over acts and a finite-sample axiom battery.
//!
//! [`Comparator::Min`] ranks acts by their worst outcome.
//! [`Comparator::Lex`] breaks ties in the worst outcome by the best one.
//! [`Comparator::SecondWorst`] applies the worst-outcome rule recursively
//! (leximin), which is sensitive to duplicated states.
//! [`Comparator::MinThen`] breaks worst-outcome ties by a monotone
//! coarsening of the best outcome.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::Act;
use crate::rational::{q, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreferenceError {
    #[error("acts are defined on different state sets")]
    StateSetMismatch,
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error("unknown comparator {0:?}")]
    UnknownComparator(String),
}

/// A monotone map applied to the best outcome by [`Comparator::MinThen`].
#[derive(Clone)]
pub struct Coarsening {
    name: String,
    f: Arc<dyn Fn(&Rational) -> Rational + Send + Sync>,
}

impl Coarsening {
    /// `f` must be non-decreasing; this is not checked.
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Rational) -> Rational + Send + Sync + 'static,
    {
        Coarsening {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn identity() -> Self {
        Coarsening::custom("identity", |x| x.clone())
    }

    pub fn constant() -> Self {
        Coarsening::custom("constant", |_| Rational::zero())
    }

    /// `x -> floor(x / step)`.
    pub fn floor_step(step: Rational) -> Self {
        assert!(step.is_positive(), "step must be positive");
        Coarsening::custom(format!("floor/{step}"), move |x| (x / &step).floor())
    }

    /// `x -> 1` if `x >= t`, else `0`.
    pub fn threshold(t: Rational) -> Self {
        Coarsening::custom(format!("at-least/{t}"), move |x| {
            if x >= &t {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        (self.f)(x)
    }
}

impl fmt::Debug for Coarsening {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coarsening({})", self.name)
    }
}

#[derive(Debug, Clone)]
pub enum Comparator {
    Min,
    Lex,
    SecondWorst,
    MinThen(Coarsening),
}

impl Comparator {
    pub fn name(&self) -> String {
        match self {
            Comparator::Min => "min".into(),
            Comparator::Lex => "lex".into(),
            Comparator::SecondWorst => "second-worst".into(),
            Comparator::MinThen(g) => format!("min-then:{}", g.name()),
        }
    }

    /// How `a` compares to `b`; `Greater` means `a` is strictly preferred.
    pub fn compare(&self, a: &Act, b: &Act) -> Result<Ordering, PreferenceError> {
        if !a.same_states(b) {
            return Err(PreferenceError::StateSetMismatch);
        }
        Ok(match self {
            Comparator::Min => a.worst().cmp(b.worst()),
            Comparator::Lex => a.worst().cmp(b.worst()).then_with(|| a.best().cmp(b.best())),
            Comparator::SecondWorst => {
                let mut x: Vec<&Rational> = a.values().iter().collect();
                let mut y: Vec<&Rational> = b.values().iter().collect();
                x.sort();
                y.sort();
                x.cmp(&y)
            }
            Comparator::MinThen(g) => a
                .worst()
                .cmp(b.worst())
                .then_with(|| g.apply(a.best()).cmp(&g.apply(b.best()))),
        })
    }

    /// The axioms this comparator is known to satisfy.
    pub fn documented_axioms(&self) -> Vec<Axiom> {
        use Axiom::*;
        match self {
            Comparator::Min => Axiom::ALL.to_vec(),
            Comparator::Lex => vec![
                Monotonicity,
                StateSymmetry,
                IrrelevantInformation,
                CertaintyIndependence,
                GsMonotonicity,
            ],
            Comparator::SecondWorst => vec![Monotonicity, StateSymmetry, CertaintyIndependence, GsMonotonicity],
            Comparator::MinThen(_) => vec![Monotonicity, StateSymmetry, IrrelevantInformation, GsMonotonicity],
        }
    }
}

impl FromStr for Comparator {
    type Err = PreferenceError;

    /// `min`, `lex`, `second-worst`, or `min-then:<step>` for a
    /// floor-step coarsening of the best outcome.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Comparator::Min),
            "lex" => Ok(Comparator::Lex),
            "second-worst" => Ok(Comparator::SecondWorst),
            _ => {
                let step = s
                    .strip_prefix("min-then:")
                    .and_then(|t| t.parse::<Rational>().ok())
                    .filter(Rational::is_positive)
                    .ok_or_else(|| PreferenceError::UnknownComparator(s.to_string()))?;
                Ok(Comparator::MinThen(Coarsening::floor_step(step)))
            }
        }
    }
}

pub fn min_compare(a: &Act, b: &Act) -> Result<Ordering, PreferenceError> {
    Comparator::Min.compare(a, b)
}

pub fn lex_compare(a: &Act, b: &Act) -> Result<Ordering, PreferenceError> {
    Comparator::Lex.compare(a, b)
}

/// `(worst, best)` of an act.
pub fn canonical_minmax(a: &Act) -> (Rational, Rational) {
    (a.worst().clone(), a.best().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Monotonicity,
    StateSymmetry,
    IrrelevantInformation,
    CertaintyIndependence,
    GsMonotonicity,
    UncertaintyAversion,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Monotonicity,
        Axiom::StateSymmetry,
        Axiom::IrrelevantInformation,
        Axiom::CertaintyIndependence,
        Axiom::GsMonotonicity,
        Axiom::UncertaintyAversion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Monotonicity => "monotonicity",
            Axiom::StateSymmetry => "state-symmetry",
            Axiom::IrrelevantInformation => "irrelevant-information",
            Axiom::CertaintyIndependence => "certainty-independence",
            Axiom::GsMonotonicity => "gs-monotonicity",
            Axiom::UncertaintyAversion => "uncertainty-aversion",
        }
    }
}

impl FromStr for Axiom {
    type Err = PreferenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let found = Axiom::ALL.iter().find(|a| a.name() == s).copied();
        match (found, s) {
            (Some(a), _) => Ok(a),
            (None, "iii") => Ok(Axiom::IrrelevantInformation),
            (None, "a2") => Ok(Axiom::CertaintyIndependence),
            (None, "a4") => Ok(Axiom::GsMonotonicity),
            (None, "a5") => Ok(Axiom::UncertaintyAversion),
            _ => Err(PreferenceError::UnknownAxiom(s.to_string())),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The mixture weights used by the certainty-independence and
/// uncertainty-aversion checks.
pub fn mixture_weights() -> Vec<Rational> {
    vec![q(1, 4), q(1, 3), q(1, 2), q(2, 3), q(3, 4)]
}

/// A finite list of act pairs; each pair shares a state set.
#[derive(Debug, Clone, Default)]
pub struct Battery {
    pub pairs: Vec<(Act, Act)>,
}

impl Battery {
    pub fn new(pairs: Vec<(Act, Act)>) -> Self {
        Battery { pairs }
    }

    /// `n` seeded random pairs on 1 to 6 states with small rational entries.
    pub fn random(seed: u64, n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entry = |rng: &mut ChaCha8Rng| q(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let pairs = (0..n)
            .map(|_| {
                let k = rng.gen_range(1..=6);
                let a = (0..k).map(|_| entry(&mut rng)).collect();
                let b = (0..k).map(|_| entry(&mut rng)).collect();
                (Act::from_values(a), Act::from_values(b))
            })
            .collect();
        Battery { pairs }
    }

    /// The known edge cases.
    pub fn witnesses() -> Self {
        let labelled = |labels: &[&str], v: &[i64]| {
            Act::new(
                labels.iter().map(|s| s.to_string()).collect(),
                v.iter().map(|&x| Rational::from_integer(x)).collect(),
            )
            .expect("distinct labels")
        };
        let bob = ["bobB", "bobS"];
        let bob3 = ["bobB", "bobS1", "bobS2"];
        Battery {
            pairs: vec![
                (labelled(&bob, &[2, 0]), labelled(&bob, &[0, 1])),
                (labelled(&bob3, &[2, 0, 0]), labelled(&bob3, &[0, 1, 1])),
                (Act::from_ints(&[0, 2, 0]), Act::from_ints(&[0, 0, 2])),
                (Act::from_ints(&[0, 5]), Act::from_ints(&[1, 1])),
                (Act::from_ints(&[0, 1, 2]), Act::from_ints(&[0, 2, 1])),
                (Act::from_ints(&[0, 0]), Act::from_ints(&[0, 1])),
                (Act::from_ints(&[3]), Act::from_ints(&[3])),
            ],
        }
    }

    /// Fixed witnesses followed by `n` random pairs.
    pub fn standard(seed: u64, n: usize) -> Self {
        let mut b = Battery::witnesses();
        b.pairs.extend(Battery::random(seed, n).pairs);
        b
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub transform: String,
    pub before: String,
    pub after: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub comparator: String,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ord_name(o: Ordering) -> String {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
    .to_string()
}

fn cmp(c: &Comparator, a: &Act, b: &Act) -> Ordering {
    c.compare(a, b).expect("battery acts share their state sets")
}

fn pointwise(a: &Act, b: &Act, f: impl Fn(&Rational, &Rational) -> Rational) -> Act {
    let bv = a.aligned_values(b);
    a.with_values(a.values().iter().zip(bv).map(|(x, y)| f(x, y)).collect())
}

fn mix(a: &Act, b: &Act, alpha: &Rational) -> Act {
    let beta = Rational::one() - alpha;
    pointwise(a, b, |x, y| alpha * x + &beta * y)
}

fn mix_const(a: &Act, c: &Rational, alpha: &Rational) -> Act {
    let beta = Rational::one() - alpha;
    a.with_values(a.values().iter().map(|x| alpha * x + &beta * c).collect())
}

fn permute(a: &Act, perm: &[usize]) -> Act {
    a.with_values(perm.iter().map(|&i| a.values()[i].clone()).collect())
}

fn duplicate(a: &Act, state: usize) -> Act {
    let mut labels = a.states().to_vec();
    let mut values = a.values().to_vec();
    let base = &labels[state];
    let mut fresh = format!("{base}'");
    while labels.contains(&fresh) {
        fresh.push('\'');
    }
    labels.push(fresh);
    values.push(values[state].clone());
    Act::new(labels, values).expect("fresh label")
}

fn permutations(k: usize) -> Vec<(String, Vec<usize>)> {
    let mut out = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let mut p: Vec<usize> = (0..k).collect();
        p.swap(i, i + 1);
        out.push((format!("swap states {i} and {}", i + 1), p));
    }
    if k > 2 {
        out.push(("rotate states".into(), (1..k).chain(0..1).collect()));
        out.push(("reverse states".into(), (0..k).rev().collect()));
    }
    out
}

/// Check one axiom on every pair of the battery (and on the transformed
/// acts the axiom quantifies over).
pub fn check_axiom(axiom: Axiom, comparator: &Comparator, battery: &Battery) -> AxiomReport {
    let mut checks = 0usize;
    let mut violations = Vec::new();
    let mut record = |a: &Act, b: &Act, transform: String, before: Ordering, after: Ordering| {
        violations.push(Violation {
            axiom,
            a: a.values().to_vec(),
            b: b.values().to_vec(),
            transform,
            before: ord_name(before),
            after: ord_name(after),
        });
    };
    for (a, b) in &battery.pairs {
        match axiom {
            Axiom::Monotonicity | Axiom::GsMonotonicity => {
                let join = pointwise(a, b, |x, y| x.max(y).clone());
                let meet = pointwise(a, b, |x, y| x.min(y).clone());
                let mut cases = vec![
                    (join.clone(), a.clone(), "join vs first"),
                    (join, b.clone(), "join vs second"),
                    (a.clone(), meet.clone(), "first vs meet"),
                    (b.clone(), meet, "second vs meet"),
                ];
                let bv = a.aligned_values(b);
                if a.values().iter().zip(&bv).all(|(x, y)| x >= *y) {
                    cases.push((a.clone(), b.clone(), "first dominates"));
                }
                if a.values().iter().zip(&bv).all(|(x, y)| x <= *y) {
                    cases.push((b.clone(), a.clone(), "second dominates"));
                }
                for (hi, lo, label) in cases {
                    checks += 1;
                    let o = cmp(comparator, &hi, &lo);
                    if o == Ordering::Less {
                        record(&hi, &lo, label.to_string(), Ordering::Greater, o);
                    }
                }
            }
            Axiom::StateSymmetry => {
                let before = cmp(comparator, a, b);
                let b_aligned = a.with_values(a.aligned_values(b).into_iter().cloned().collect());
                for (label, perm) in permutations(a.len()) {
                    checks += 1;
                    let after = cmp(comparator, &permute(a, &perm), &permute(&b_aligned, &perm));
                    if after != before {
                        record(a, b, label, before, after);
                    }
                }
            }
            Axiom::IrrelevantInformation => {
                let before = cmp(comparator, a, b);
                let b_aligned = a.with_values(a.aligned_values(b).into_iter().cloned().collect());
                for s in 0..a.len() {
                    checks += 1;
                    let after = cmp(comparator, &duplicate(a, s), &duplicate(&b_aligned, s));
                    if after != before {
                        record(a, b, format!("duplicate state {}", a.states()[s]), before, after);
                    }
                }
            }
            Axiom::CertaintyIndependence => {
                let before = cmp(comparator, a, b);
                if before == Ordering::Equal {
                    continue;
                }
                let lo = a.worst().min(b.worst()).clone();
                let hi = a.best().max(b.best()).clone();
                let consts = [lo, hi.clone(), Rational::zero(), hi + Rational::one()];
                for alpha in mixture_weights() {
                    for c in &consts {
                        checks += 1;
                        let after = cmp(comparator, &mix_const(a, c, &alpha), &mix_const(b, c, &alpha));
                        if after != before {
                            record(a, b, format!("mix {alpha} with constant {c}"), before, after);
                        }
                    }
                }
            }
            Axiom::UncertaintyAversion => {
                let reversed = permute(a, &(0..a.len()).rev().collect::<Vec<_>>());
                for (x, y) in [(a, b), (a, &reversed)] {
                    if cmp(comparator, x, y) != Ordering::Equal {
                        continue;
                    }
                    for alpha in mixture_weights() {
                        let m = mix(x, y, &alpha);
                        for other in [x, y] {
                            checks += 1;
                            let o = cmp(comparator, &m, other);
                            if o == Ordering::Less {
                                record(x, y, format!("mixture {alpha} against an endpoint"), Ordering::Equal, o);
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomReport {
        axiom,
        comparator: comparator.name(),
        checks,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementViolation {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub coarse: String,
    pub fine: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementReport {
    pub coarse: String,
    pub fine: String,
    pub checks: usize,
    pub violations: Vec<RefinementViolation>,
}

impl RefinementReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whenever `coarse` is strict on a pair, `fine` must be strict in the same
/// direction.
pub fn check_refinement(coarse: &Comparator, fine: &Comparator, battery: &Battery) -> RefinementReport {
    let mut violations = Vec::new();
    for (a, b) in &battery.pairs {
        let c = cmp(coarse, a, b);
        if c == Ordering::Equal {
            continue;
        }
        let f = cmp(fine, a, b);
        if f != c {
            violations.push(RefinementViolation {
                a: a.values().to_vec(),
                b: b.values().to_vec(),
                coarse: ord_name(c),
                fine: ord_name(f),
            });
        }
    }
    RefinementReport {
        coarse: coarse.name(),
        fine: fine.name(),
        checks: battery.len(),
        violations,
    }
}
