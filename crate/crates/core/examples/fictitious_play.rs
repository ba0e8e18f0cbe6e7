//! Search for a mixed MINNE by averaging maximin responses, then verify
//! the rounded candidate exactly.

use ambigame::catalog::no_lexne_game;
use ambigame::equilibrium::{minne_gap, search_mixed_minne, SearchConfig, SearchOutcome};

fn main() {
    let game = no_lexne_game();
    for seed in 0..4 {
        let config = SearchConfig {
            seed,
            ..SearchConfig::default()
        };
        match search_mixed_minne(&game, &config) {
            SearchOutcome::Found { profile, round } => {
                println!(
                    "seed {seed}: round {round}, gap {}, {}",
                    minne_gap(&game, &profile),
                    serde_json::to_string(&profile.to_raw(&game)).unwrap()
                );
            }
            SearchOutcome::NotFound { trace } => {
                println!(
                    "seed {seed}: not found, last gap {:?}",
                    trace.last().map(|t| t.gap.to_string())
                );
            }
        }
    }
}
