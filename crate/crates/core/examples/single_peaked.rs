//! Location sets for single-peaked and Euclidean preferences, compared
//! with the general onto-map test.

use ambigame::coordination::{euclidean_lexne, known_peak_lexne, lexne_location_sets, CoordinationSpec, EuclideanSpec};
use ambigame::q;

fn s(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn main() {
    let types = vec![
        ("A".to_string(), s(&["2", "1", "3", "4", "5"])),
        ("B".to_string(), s(&["2", "3", "1", "4", "5"])),
    ];
    let spec = CoordinationSpec::new(
        s(&["1", "2", "3", "4", "5"]),
        s(&["p1", "p2"]),
        vec![types.clone(), types],
    )
    .unwrap();
    let line = s(&["5", "1", "2", "3", "4"]);
    let peaked = known_peak_lexne(&spec, &s(&["2", "2"]), &[vec![line.clone()], vec![line]]).unwrap();
    println!(
        "known peak: {:?}",
        peaked.iter().map(|l| l.names().join("+")).collect::<Vec<_>>()
    );
    let general = lexne_location_sets(&spec);
    println!(
        "onto test:  {:?}",
        general.iter().map(|e| e.set.names().join("+")).collect::<Vec<_>>()
    );

    let euclid = EuclideanSpec::new(
        vec![
            ("a".into(), q(0, 1)),
            ("b".into(), q(2, 1)),
            ("c".into(), q(4, 1)),
            ("d".into(), q(14, 1)),
        ],
        s(&["p1", "p2"]),
        vec![vec![q(0, 1), q(10, 1)], vec![q(4, 1), q(12, 1)]],
    )
    .unwrap();
    let by_midpoints = euclidean_lexne(&euclid);
    let by_orders = lexne_location_sets(&euclid.to_coordination_spec().unwrap());
    println!(
        "midpoints: {:?}",
        by_midpoints.iter().map(|l| l.names().join("+")).collect::<Vec<_>>()
    );
    println!(
        "onto test: {:?}",
        by_orders.iter().map(|e| e.set.names().join("+")).collect::<Vec<_>>()
    );
}
