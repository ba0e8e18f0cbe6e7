//! Two friends on a street with four cafes, each unsure where the other
//! lives.
//!
//! Lists the LEXNE location sets, checks them against brute force, and
//! shows that "go to the farther cafe" survives MIN but not LEX.

use std::collections::BTreeSet;
use std::time::Instant;

use ambigame::catalog::street_spec;
use ambigame::coordination::{build_coordination_game, is_minne_coordination, lexne_location_sets, location_set};
use ambigame::equilibrium::{enumerate_pure_lexne, verify_profile, Concept};
use ambigame::{PureProfile, StrategyProfile};

fn main() {
    let spec = street_spec();
    let game = build_coordination_game(&spec).unwrap();

    let analytic = lexne_location_sets(&spec);
    for e in &analytic {
        println!("{:?}", e.set.names());
    }

    let start = Instant::now();
    let brute = enumerate_pure_lexne(&game).unwrap();
    let brute_sets: BTreeSet<_> = brute.iter().map(|p| location_set(&spec, p)).collect();
    let analytic_sets: BTreeSet<_> = analytic.iter().map(|e| e.set.clone()).collect();
    println!(
        "{} sets analytically, {} pure LEXNE by brute force ({:.2?}); sets agree: {}",
        analytic.len(),
        brute.len(),
        start.elapsed(),
        brute_sets == analytic_sets
    );

    // LL and L go to RR, R and RR go to LL
    let farthest = PureProfile::new(&game, vec![vec![3, 3, 0, 0], vec![3, 3, 0, 0]]).unwrap();
    let sp = StrategyProfile::from_pure(&game, &farthest);
    println!(
        "farthest choice: MINNE {:?} (characterization {:?}), LEXNE {:?}",
        verify_profile(&game, &sp, Concept::Minne).verdict,
        is_minne_coordination(&spec, &farthest),
        verify_profile(&game, &sp, Concept::Lexne).verdict
    );
}
