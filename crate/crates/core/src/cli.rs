//! Command-line front end.
//!
//! Reports go to standard output as JSON; diagnostics go to standard
//! error. Exit codes: 0 for success (an equilibrium, a match), 1 for a
//! verified negative finding, 2 for bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coordination::{
    build_coordination_game, euclidean_lexne, known_peak_lexne, lexne_location_sets, location_set,
    minne_fraction_lower_bound, CoordinationSpec, EuclideanSpec, RawCoordinationSpec, RawEuclideanSpec,
    RawKnownPeakSpec,
};
use crate::equilibrium::{
    enumerate_pure, search_mixed_minne, verify_profile, Averaging, Concept, EnumerationConfig, SearchConfig,
    SearchOutcome, DEFAULT_BUDGET,
};
use crate::model::{GameWithAmbiguity, RawGame, RawProfile, StrategyProfile};
use crate::preferences::{check_axiom, check_refinement, Axiom, Battery, Comparator};
use crate::trade::{
    build_trade_game, classify_profile, cross_validate, enumerate_lexne_analytic, from_profile, outcome_class,
    outcome_table, RawTradeProfile, RawTradeSpec, TradeSpec,
};
use crate::ENGINE_VERSION;

/// Violations listed per axiom in an `axioms` report.
const MAX_LISTED_VIOLATIONS: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "ambigame",
    version,
    about = "Equilibria of games with type ambiguity, in exact arithmetic"
)]
pub struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, env = "AMBIGAME_JOBS", global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock timing to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConceptArg {
    Minne,
    Lexne,
}

impl From<ConceptArg> for Concept {
    fn from(c: ConceptArg) -> Concept {
        match c {
            ConceptArg::Minne => Concept::Minne,
            ConceptArg::Lexne => Concept::Lexne,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategies {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AveragingArg {
    Uniform,
    LastResponse,
}

#[derive(Debug, Args)]
pub struct BudgetArg {
    /// Largest number of pure profiles a brute-force enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate pure equilibria, or search for a mixed MINNE.
    Solve {
        /// Game file, coordination spec or trade spec.
        game: PathBuf,
        #[arg(long, value_enum, default_value = "lexne")]
        concept: ConceptArg,
        #[arg(long, value_enum, default_value = "pure")]
        strategies: Strategies,
        #[command(flatten)]
        budget: BudgetArg,
        /// Seed for the mixed search's starting profile.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        max_rounds: usize,
        #[arg(long, value_enum, default_value = "uniform")]
        averaging: AveragingArg,
        /// Largest denominator tried when rounding search candidates.
        #[arg(long, default_value_t = 12)]
        max_denominator: u64,
    },
    /// Check one strategy profile.
    Verify {
        game: PathBuf,
        profile: PathBuf,
        #[arg(long, value_enum, default_value = "lexne")]
        concept: ConceptArg,
    },
    /// Coordination games.
    Coord {
        #[command(subcommand)]
        command: CoordCommand,
    },
    /// Bilateral trade.
    Trade {
        #[command(subcommand)]
        command: TradeCommand,
    },
    /// Run the axiom battery against a comparator.
    Axioms {
        /// min, lex, second-worst or min-then:<step>.
        #[arg(long, default_value = "lex")]
        comparator: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoordCommand {
    /// Location sets of pure LEXNE, with canonical profiles.
    Solve { spec: PathBuf },
    /// Location sets for Euclidean preferences on a line.
    Euclidean { spec: PathBuf },
    /// Location sets for single-peaked types with known peaks.
    KnownPeak { spec: PathBuf },
    /// Lower bound on the share of pure profiles that are MINNE.
    MinneFraction {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum TradeCommand {
    /// Analytic LEXNE classes with canonical strategies.
    Solve { spec: PathBuf },
    /// Verify and label a seller/buyer strategy pair.
    Classify { spec: PathBuf, profile: PathBuf },
    /// Compare the analytic classes with brute force.
    CrossValidate {
        spec: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the input files, in argument order.
    pub input_digest: String,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    pub version: &'static str,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Inputs {
    digest: Sha256,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<Vec<u8>, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        self.digest.update(&bytes);
        Ok(bytes)
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, Failure> {
        let bytes = self.read(path)?;
        serde_json::from_slice(&bytes).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }
}

/// A game file after format detection.
enum Loaded {
    Plain(GameWithAmbiguity),
    Coordination(CoordinationSpec, GameWithAmbiguity),
    Trade(TradeSpec, GameWithAmbiguity),
}

impl Loaded {
    fn game(&self) -> &GameWithAmbiguity {
        match self {
            Loaded::Plain(g) | Loaded::Coordination(_, g) | Loaded::Trade(_, g) => g,
        }
    }
}

fn load_game(inputs: &mut Inputs, path: &Path) -> Result<Loaded, Failure> {
    let value: Value = inputs.json(path)?;
    let ctx = |e: String| Failure(format!("{}: {e}", path.display()));
    if value.get("type_sets").is_some() {
        let raw: RawCoordinationSpec = serde_json::from_value(value).map_err(|e| ctx(e.to_string()))?;
        let spec = CoordinationSpec::from_raw(&raw).map_err(|e| ctx(e.to_string()))?;
        let game = build_coordination_game(&spec).map_err(|e| ctx(e.to_string()))?;
        Ok(Loaded::Coordination(spec, game.into_game()))
    } else if value.get("seller_values").is_some() {
        let raw: RawTradeSpec = serde_json::from_value(value).map_err(|e| ctx(e.to_string()))?;
        let spec = TradeSpec::from_raw(&raw).map_err(|e| ctx(e.to_string()))?;
        let game = build_trade_game(&spec).map_err(|e| ctx(e.to_string()))?;
        Ok(Loaded::Trade(spec, game.into_game()))
    } else {
        let raw: RawGame = serde_json::from_value(value).map_err(|e| ctx(e.to_string()))?;
        Ok(Loaded::Plain(
            GameWithAmbiguity::from_raw(&raw).map_err(|e| ctx(e.to_string()))?,
        ))
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn solve(
    inputs: &mut Inputs,
    jobs: Option<usize>,
    game_path: &Path,
    concept: Concept,
    strategies: Strategies,
    budget: u128,
    search: SearchConfig,
) -> Result<(Value, i32), Failure> {
    let loaded = load_game(inputs, game_path)?;
    let game = loaded.game();
    match strategies {
        Strategies::Pure => {
            let config = EnumerationConfig { budget, jobs };
            let found = enumerate_pure(game, concept, &config)?;
            let equilibria: Vec<Value> = found
                .iter()
                .map(|p| {
                    let raw = StrategyProfile::from_pure(game, p).to_raw(game);
                    match &loaded {
                        Loaded::Plain(_) => json!({ "profile": raw }),
                        Loaded::Coordination(spec, _) => {
                            json!({ "profile": raw, "location_set": location_set(spec, p) })
                        }
                        Loaded::Trade(spec, _) => {
                            let (s, b) = from_profile(spec, p);
                            let class = outcome_class(&s, &b, &outcome_table(spec, &s, &b));
                            json!({ "profile": raw, "class": class })
                        }
                    }
                })
                .collect();
            Ok((
                json!({
                    "concept": concept,
                    "strategies": "pure",
                    "profiles_checked": game.pure_profile_count().to_string(),
                    "count": found.len(),
                    "equilibria": equilibria,
                }),
                0,
            ))
        }
        Strategies::Mixed => match concept {
            Concept::Lexne => Err(Failure("mixed LEXNE: verification only".into())),
            Concept::Minne => {
                let outcome = search_mixed_minne(game, &search);
                let results = match outcome {
                    SearchOutcome::Found { profile, round } => json!({
                        "concept": concept,
                        "strategies": "mixed",
                        "found": true,
                        "round": round,
                        "profile": profile.to_raw(game),
                    }),
                    SearchOutcome::NotFound { trace } => json!({
                        "concept": concept,
                        "strategies": "mixed",
                        "found": false,
                        "rounds": search.max_rounds,
                        "final_gap": trace.last().map(|t| t.gap.clone()),
                    }),
                };
                Ok((results, 0))
            }
        },
    }
}

fn verify(
    inputs: &mut Inputs,
    game_path: &Path,
    profile_path: &Path,
    concept: Concept,
) -> Result<(Value, i32), Failure> {
    let loaded = load_game(inputs, game_path)?;
    let game = loaded.game();
    let raw: RawProfile = inputs.json(profile_path)?;
    let profile =
        StrategyProfile::from_raw(game, &raw).map_err(|e| Failure(format!("{}: {e}", profile_path.display())))?;
    let report = verify_profile(game, &profile, concept);
    let code = if report.is_equilibrium() { 0 } else { 1 };
    Ok((to_json(&report), code))
}

fn coord(inputs: &mut Inputs, command: &CoordCommand) -> Result<(Value, i32), Failure> {
    match command {
        CoordCommand::Solve { spec } => {
            let raw: RawCoordinationSpec = inputs.json(spec)?;
            let spec = CoordinationSpec::from_raw(&raw)?;
            let game = build_coordination_game(&spec)?;
            let sets: Vec<Value> = lexne_location_sets(&spec)
                .iter()
                .map(|e| {
                    let profile = StrategyProfile::from_pure(&game, &e.profile).to_raw(&game);
                    json!({ "location_set": e.set, "profile": profile })
                })
                .collect();
            Ok((json!({ "count": sets.len(), "location_sets": sets }), 0))
        }
        CoordCommand::Euclidean { spec } => {
            let raw: RawEuclideanSpec = inputs.json(spec)?;
            let spec = EuclideanSpec::from_raw(&raw)?;
            let sets = euclidean_lexne(&spec);
            Ok((json!({ "count": sets.len(), "location_sets": sets }), 0))
        }
        CoordCommand::KnownPeak { spec } => {
            let raw: RawKnownPeakSpec = inputs.json(spec)?;
            let coord_spec = CoordinationSpec::from_raw(&raw.spec())?;
            let sets = known_peak_lexne(&coord_spec, &raw.peaks, &raw.orders)?;
            Ok((json!({ "count": sets.len(), "location_sets": sets }), 0))
        }
        CoordCommand::MinneFraction { m, t, n } => {
            inputs.digest.update(format!("{m},{t},{n}"));
            let bound = minne_fraction_lower_bound(*m, *t, *n)?;
            Ok((json!({ "m": m, "t": t, "n": n, "bound": bound }), 0))
        }
    }
}

fn load_trade(inputs: &mut Inputs, path: &Path) -> Result<TradeSpec, Failure> {
    let raw: RawTradeSpec = inputs.json(path)?;
    TradeSpec::from_raw(&raw).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn trade(inputs: &mut Inputs, jobs: Option<usize>, command: &TradeCommand) -> Result<(Value, i32), Failure> {
    match command {
        TradeCommand::Solve { spec } => {
            let spec = load_trade(inputs, spec)?;
            let classes: Vec<Value> = enumerate_lexne_analytic(&spec)
                .iter()
                .map(|e| {
                    json!({
                        "class": e.class,
                        "profile": RawTradeProfile::from_strategies(&spec, &e.seller, &e.buyer),
                    })
                })
                .collect();
            Ok((json!({ "count": classes.len(), "classes": classes }), 0))
        }
        TradeCommand::Classify { spec, profile } => {
            let spec = load_trade(inputs, spec)?;
            let raw: RawTradeProfile = inputs.json(profile)?;
            let (seller, buyer) = raw.resolve(&spec)?;
            let class = classify_profile(&spec, &seller, &buyer)?;
            let code = if class.is_equilibrium() { 0 } else { 1 };
            Ok((json!({ "class": class }), code))
        }
        TradeCommand::CrossValidate { spec, budget } => {
            let spec = load_trade(inputs, spec)?;
            let config = EnumerationConfig {
                budget: budget.budget,
                jobs,
            };
            let report = cross_validate(&spec, &config)?;
            let verdict = if report.is_match() { "match" } else { "mismatch" };
            let code = if report.is_match() { 0 } else { 1 };
            let mut results = to_json(&report);
            results["verdict"] = json!(verdict);
            Ok((results, code))
        }
    }
}

fn axioms(inputs: &mut Inputs, comparator: &str, samples: usize, seed: u64) -> Result<(Value, i32), Failure> {
    inputs.digest.update(format!("{comparator},{samples},{seed}"));
    let comparator: Comparator = comparator.parse()?;
    let battery = Battery::standard(seed, samples);
    let documented = comparator.documented_axioms();
    let mut failed_documented = false;
    let mut rows = Vec::new();
    for axiom in Axiom::ALL {
        let report = check_axiom(axiom, &comparator, &battery);
        let is_documented = documented.contains(&axiom);
        failed_documented |= is_documented && !report.passed();
        rows.push(json!({
            "axiom": axiom,
            "documented": is_documented,
            "passed": report.passed(),
            "checks": report.checks,
            "violation_count": report.violations.len(),
            "violations": &report.violations[..report.violations.len().min(MAX_LISTED_VIOLATIONS)],
        }));
    }
    let refinement = check_refinement(&Comparator::Min, &comparator, &battery);
    failed_documented |= !refinement.passed();
    rows.push(json!({
        "axiom": "refines-min",
        "documented": true,
        "passed": refinement.passed(),
        "checks": refinement.checks,
        "violation_count": refinement.violations.len(),
        "violations": &refinement.violations[..refinement.violations.len().min(MAX_LISTED_VIOLATIONS)],
    }));
    let results = json!({
        "comparator": comparator.name(),
        "samples": samples,
        "seed": seed,
        "pairs": battery.len(),
        "axioms": rows,
    });
    Ok((results, if failed_documented { 1 } else { 0 }))
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<(Value, i32), Failure> {
    match &cli.command {
        Command::Solve {
            game,
            concept,
            strategies,
            budget,
            seed,
            max_rounds,
            averaging,
            max_denominator,
        } => {
            let search = SearchConfig {
                max_rounds: *max_rounds,
                averaging: match averaging {
                    AveragingArg::Uniform => Averaging::Uniform,
                    AveragingArg::LastResponse => Averaging::LastResponse,
                },
                seed: *seed,
                max_denominator: *max_denominator,
            };
            solve(
                inputs,
                cli.jobs,
                game,
                (*concept).into(),
                *strategies,
                budget.budget,
                search,
            )
        }
        Command::Verify { game, profile, concept } => verify(inputs, game, profile, (*concept).into()),
        Command::Coord { command } => coord(inputs, command),
        Command::Trade { command } => trade(inputs, cli.jobs, command),
        Command::Axioms {
            comparator,
            samples,
            seed,
        } => axioms(inputs, comparator, *samples, *seed),
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs { digest: Sha256::new() };
    let outcome = match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(Failure::from)
            .and_then(|pool| pool.install(|| dispatch(&cli, &mut inputs))),
        None => dispatch(&cli, &mut inputs),
    };
    match outcome {
        Ok((results, code)) => {
            let report = RunReport {
                command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
                input_digest: hex::encode(inputs.digest.finalize()),
                results,
                elapsed_ms: cli.timing.then(|| start.elapsed().as_millis()),
                version: ENGINE_VERSION,
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            let _ = writeln!(out, "{text}");
            code
        }
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
