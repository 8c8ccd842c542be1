//! Relations and canonical grading of a trinomial ring.
use trinomial_fano::ring::{canonical_k_grading, describe, validate_triple, TripleData};

fn main() {
    // T01^5 T02 + T11^3 T12^3 + T21^2
    let data = TripleData::new(vec![vec![5, 1], vec![3, 3], vec![2]], 0);
    let triple = validate_triple(&data).expect("admissible");
    print!("{}", describe(&triple));
    let grading = canonical_k_grading(&triple);
    println!("free rank of the grading group: {}", grading.rank);
    for (name, deg) in triple.var_names().iter().zip(&grading.degrees) {
        let deg: Vec<String> = deg.iter().map(ToString::to_string).collect();
        println!("deg {name} = ({})", deg.join(", "));
    }
}
