//! Mixed LEX best responses need not form a convex set, and pure LEX best
//! responses can jump under small perturbations.

use ambigame::best_response::{mixed_lex_br, pure_lex_br_matrix, PayoffMatrix};
use ambigame::catalog::perturbed_row_problem;
use ambigame::{q, MixedAction, Rational};

fn main() {
    let c = PayoffMatrix::from_ints(&[&[0, 1, 2], &[0, 2, 1]]).unwrap();
    let r = mixed_lex_br(&c);
    println!("(v*, M*) = ({}, {})", r.maximin_value, r.best_case);
    for (col, w) in &r.column_witnesses {
        println!(
            "  column {col}: {:?}",
            w.weights().iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    let half = MixedAction::uniform(2);
    println!("uniform mixture reaches best case {}", c.mixed_minmax(&half).1);

    for eps in [q(1, 10), q(1, 100), Rational::zero()] {
        let m = PayoffMatrix::new(perturbed_row_problem(&eps)).unwrap();
        println!("eps = {eps}: pure LEX best responses {:?}", pure_lex_br_matrix(&m));
    }
}
