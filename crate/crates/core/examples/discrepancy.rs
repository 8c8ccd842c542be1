//! Discrepancies of the refined chart shipped as a fixture.
use trinomial_fano::tdiv::{parse_fan, solve_discrepancies};

fn main() {
    let fan = parse_fan(include_str!("../fixtures/threefold8.fan")).expect("valid fan file");
    let report = solve_discrepancies(&fan).expect("unique solution");
    println!("{}", report.to_json());
}
