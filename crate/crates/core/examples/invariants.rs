//! Invariants of a ring read from a TOML document.
use trinomial_fano::invariants::{CoxCandidate, InvariantReport};
use trinomial_fano::ring::RingDoc;

const RING: &str = r#"
n = [2, 2, 1]
L = [[5, 1], [3, 3], [2]]
m = 0
weights = [[1, 1], [1, 1], [3]]
"#;

fn main() {
    let doc: RingDoc = toml::from_str(RING).expect("valid document");
    let candidate = CoxCandidate::from_doc(&doc).expect("valid ring");
    let report = InvariantReport::compute(&candidate).expect("homogeneous");
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
}
