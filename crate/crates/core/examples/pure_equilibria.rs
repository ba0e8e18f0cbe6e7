//! Pure equilibria of a small meeting game.
//!
//! Alice likes `B` more than `S` but does not know which Bob she faces;
//! one Bob prefers `B`, the other `S`. The example lists every pure MINNE
//! and LEXNE, then shows how LEX trims the MINNE set.

use ambigame::catalog::alice_and_bob;
use ambigame::equilibrium::{enumerate_pure, Concept, EnumerationConfig};
use ambigame::StrategyProfile;

fn main() {
    let game = alice_and_bob();
    for concept in [Concept::Minne, Concept::Lexne] {
        let found = enumerate_pure(&game, concept, &EnumerationConfig::default()).unwrap();
        println!("{concept}: {} pure equilibria", found.len());
        for p in &found {
            let raw = StrategyProfile::from_pure(&game, p).to_raw(&game);
            println!("  {}", serde_json::to_string(&raw).unwrap());
        }
    }
}
