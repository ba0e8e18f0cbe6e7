//! How many pure profiles of a coordination game are MINNE.
//!
//! Three locations, two players with two types each: brute force against
//! the characterization and against the lower bound.

use ambigame::coordination::{
    build_coordination_game, is_minne_coordination, minne_fraction_lower_bound, CoordinationSpec,
};
use ambigame::equilibrium::{enumerate_pure_minne, Verdict};
use ambigame::{q, PureProfile};

fn s(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn main() {
    let types = vec![
        ("x".to_string(), s(&["a", "b", "c"])),
        ("y".to_string(), s(&["c", "b", "a"])),
    ];
    let spec = CoordinationSpec::new(s(&["a", "b", "c"]), s(&["p1", "p2"]), vec![types.clone(), types]).unwrap();
    let game = build_coordination_game(&spec).unwrap();

    let brute = enumerate_pure_minne(&game).unwrap().len();
    let mut characterized = 0;
    for code in 0..81 {
        let d = |k: u32| (code / 3usize.pow(k)) % 3;
        let p = PureProfile::new(&game, vec![vec![d(0), d(1)], vec![d(2), d(3)]]).unwrap();
        if is_minne_coordination(&spec, &p) == Verdict::Equilibrium {
            characterized += 1;
        }
    }
    let bound = minne_fraction_lower_bound(3, 2, 2).unwrap();
    println!("brute force: {brute}/81, characterization: {characterized}/81, bound: {bound}");
    println!("fraction >= bound: {}", q(brute as i64, 81) >= bound);
}
