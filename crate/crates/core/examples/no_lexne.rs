//! A game with a mixed MINNE but no LEXNE.
//!
//! The row player cannot tell which of two column types it faces. Against
//! the mixed MINNE below it could raise its best case by switching to `B`
//! without lowering its worst case, so the profile is not a LEXNE.

use ambigame::catalog::{no_lexne_game, no_lexne_minne_profile};
use ambigame::equilibrium::{enumerate_pure_lexne, enumerate_pure_minne, verify_profile, Concept};

fn main() {
    let game = no_lexne_game();
    println!("pure MINNE: {}", enumerate_pure_minne(&game).unwrap().len());
    println!("pure LEXNE: {}", enumerate_pure_lexne(&game).unwrap().len());

    let profile = no_lexne_minne_profile(&game);
    for concept in [Concept::Minne, Concept::Lexne] {
        let report = verify_profile(&game, &profile, concept);
        print!("{concept}: {:?}", report.verdict);
        if let Some(w) = report.witness {
            print!(
                " ({} type {} moves to {:?}: best case {} -> {})",
                w.player, w.type_cell, w.deviation, w.before_best, w.after_best
            );
        }
        println!();
    }
}
