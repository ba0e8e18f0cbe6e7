//! Compare the analytic trade equilibria with brute force.
//!
//! Run with `cargo run --release --example trade_cross_validate`.

use std::time::Instant;

use ambigame::equilibrium::EnumerationConfig;
use ambigame::trade::{cross_validate, PriceRule, TradeSpec};

fn main() {
    let spec = TradeSpec::from_ints(
        &[10, 20, 30],
        &[20, 30, 40],
        &[5, 10, 15, 20, 25, 30, 35, 40, 45],
        PriceRule::Midpoint,
    )
    .expect("valid spec");
    let start = Instant::now();
    let report = cross_validate(&spec, &EnumerationConfig::default()).expect("within budget");
    println!(
        "{} brute-force equilibria, {} distinct tables ({:.2?})",
        report.brute_force_profiles,
        report.brute_force_tables,
        start.elapsed()
    );
    println!("{} analytic classes", report.analytic_classes);
    for eq in &report.canonical_not_found {
        println!("  canonical profile is not an equilibrium: {}", eq.class);
    }
    for m in &report.only_brute_force {
        println!(
            "  only brute force: {} {}",
            m.class,
            serde_json::to_string(&m.table).unwrap()
        );
    }
    for m in &report.only_analytic {
        println!(
            "  only analytic: {} {}",
            m.class,
            serde_json::to_string(&m.table).unwrap()
        );
    }
    println!("{}", if report.is_match() { "match" } else { "mismatch" });
}
