//! The exact simplex solver on a small program and its dual.

use ambigame::ratlp::{solve_lp, Constraint, LinearProgram, Relation};
use ambigame::Rational;

fn r(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn main() {
    // maximize 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3
    let lp = LinearProgram::with_constraints(
        vec![r(3), r(2)],
        vec![
            Constraint::new(vec![r(1), r(1)], Relation::Le, r(4)),
            Constraint::new(vec![r(1), r(3)], Relation::Le, r(6)),
            Constraint::new(vec![r(1), r(0)], Relation::Le, r(3)),
        ],
    )
    .unwrap();
    let primal = solve_lp(&lp);
    let dual = solve_lp(&lp.dual());
    println!(
        "primal: {:?} at {:?}",
        primal.value().map(ToString::to_string),
        primal
            .point()
            .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>())
    );
    println!("dual:   {:?}", dual.value().map(ToString::to_string));
    println!(
        "violations at the optimum: {:?}",
        lp.check_point(primal.point().unwrap())
    );
}
