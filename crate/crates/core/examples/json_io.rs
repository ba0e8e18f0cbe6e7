//! Write the built-in games and profiles in the JSON file format and read
//! them back.
//!
//! `cargo run --example json_io -- no-lexne` prints the game;
//! `cargo run --example json_io -- no-lexne-profile` prints the profile.

use ambigame::catalog::{alice_and_bob, no_lexne_game, no_lexne_minne_profile, street_spec};
use ambigame::model::RawGame;
use ambigame::GameWithAmbiguity;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "no-lexne".into());
    let text = match which.as_str() {
        "no-lexne" => serde_json::to_string_pretty(&no_lexne_game().to_raw()),
        "no-lexne-profile" => {
            let g = no_lexne_game();
            serde_json::to_string_pretty(&no_lexne_minne_profile(&g).to_raw(&g))
        }
        "alice-bob" => serde_json::to_string_pretty(&alice_and_bob().to_raw()),
        "street" => serde_json::to_string_pretty(&street_spec().to_raw()),
        other => {
            eprintln!("unknown game {other:?}");
            std::process::exit(2);
        }
    }
    .expect("serializable");
    println!("{text}");

    if let Ok(raw) = serde_json::from_str::<RawGame>(&text) {
        let game = GameWithAmbiguity::from_raw(&raw).expect("round trip");
        eprintln!(
            "read back: {} players, {} states",
            game.num_players(),
            game.num_states()
        );
    }
}
