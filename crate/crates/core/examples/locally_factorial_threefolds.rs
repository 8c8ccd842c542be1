//! Locally factorial non-toric Fano threefolds, checked against the shipped table.
use trinomial_fano::classify::enumerate;
use trinomial_fano::tables::{render_markdown, verify_against_reference, ReferenceTable};

fn main() {
    let table = ReferenceTable::ThreefoldsMu1;
    let records = enumerate(&table.query()).expect("bounded search");
    print!("{}", render_markdown(&records));
    let report = verify_against_reference(table).expect("bounded search");
    println!("{}", report.summary());
}
