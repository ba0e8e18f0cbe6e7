//! Run the axiom battery on each comparator.

use ambigame::preferences::{check_axiom, check_refinement, Axiom, Battery, Coarsening, Comparator};
use ambigame::q;

fn main() {
    let battery = Battery::standard(7, 1000);
    let comparators = [
        Comparator::Min,
        Comparator::Lex,
        Comparator::SecondWorst,
        Comparator::MinThen(Coarsening::floor_step(q(2, 1))),
    ];
    for c in &comparators {
        println!("{}", c.name());
        let documented = c.documented_axioms();
        for axiom in Axiom::ALL {
            let report = check_axiom(axiom, c, &battery);
            let mark = if report.passed() { "pass" } else { "FAIL" };
            let note = if documented.contains(&axiom) {
                ""
            } else {
                " (not claimed)"
            };
            println!("  {:<24} {mark}{note}", axiom.name());
            if let Some(v) = report.violations.first() {
                println!(
                    "    e.g. {:?} vs {:?} under {}: {} -> {}",
                    v.a, v.b, v.transform, v.before, v.after
                );
            }
        }
        let r = check_refinement(&Comparator::Min, c, &battery);
        println!("  {:<24} {}", "refines MIN", if r.passed() { "pass" } else { "FAIL" });
    }
}
