//! Analytic trade equilibria and the classifier.
//!
//! Seller values 10, 20, 30; buyer values 20, 30, 40; bids on a grid of
//! step 5; the price is the midpoint of the two bids.

use ambigame::q;
use ambigame::trade::{
    classify_profile, enumerate_lexne_analytic, outcome_table, Bid, PriceRule, TradeSpec, TradeStrategy,
};

fn main() {
    let spec = TradeSpec::from_ints(
        &[10, 20, 30],
        &[20, 30, 40],
        &[5, 10, 15, 20, 25, 30, 35, 40, 45],
        PriceRule::Midpoint,
    )
    .unwrap();
    for eq in enumerate_lexne_analytic(&spec) {
        let verdict = classify_profile(&spec, &eq.seller, &eq.buyer).unwrap();
        println!("{:<16} canonical profile classifies as {verdict}", eq.class.to_string());
    }

    let two = enumerate_lexne_analytic(&spec)
        .into_iter()
        .find(|e| e.class.to_string() == "TwoPrice(15,35)")
        .unwrap();
    println!("outcome table for (15, 35):");
    for (vs, row) in spec
        .seller_values()
        .iter()
        .zip(outcome_table(&spec, &two.seller, &two.buyer).0)
    {
        let cells: Vec<String> = row
            .iter()
            .map(|p| p.as_ref().map_or("-".into(), |p| p.to_string()))
            .collect();
        println!("  seller {vs}: {}", cells.join("  "));
    }

    let seller = TradeStrategy::constant(spec.seller_values(), Bid::At(q(20, 1)));
    let buyer = TradeStrategy::constant(spec.buyer_values(), Bid::At(q(25, 1)));
    println!(
        "everyone at 20/25: {}",
        classify_profile(&spec, &seller, &buyer).unwrap()
    );
}
