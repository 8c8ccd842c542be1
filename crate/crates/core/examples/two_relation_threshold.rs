//! Smallest Picard index at which a surface needs two relations.
use trinomial_fano::classify::{enumerate, ClassificationQuery};

fn main() {
    let limit: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    for mu in 1..=limit {
        let records = enumerate(&ClassificationQuery::new(2, [mu])).expect("bounded search");
        if let Some(rec) = records.iter().find(|r| r.candidate.relation_count() >= 2) {
            println!("mu = {mu}: {}", rec.key());
            return;
        }
    }
    println!("no surface with two relations up to mu = {limit}");
}
