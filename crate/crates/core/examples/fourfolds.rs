//! Locally factorial non-toric Fano fourfolds, grouped by number of relations.
use std::collections::BTreeMap;

use trinomial_fano::classify::enumerate;
use trinomial_fano::tables::{compare, ReferenceTable};

fn main() {
    let table = ReferenceTable::FourfoldsMu1;
    let records = enumerate(&table.query()).expect("bounded search");
    let mut by_relations: BTreeMap<usize, usize> = BTreeMap::new();
    for rec in &records {
        *by_relations.entry(rec.candidate.relation_count()).or_default() += 1;
    }
    for (k, count) in &by_relations {
        println!("{count} fourfolds with {k} relation(s)");
    }
    for rec in records.iter().filter(|r| r.moduli_dimension > 0) {
        println!("family {} ({} moduli)", rec.key(), rec.moduli_dimension);
    }
    println!("{}", compare(table, &records).summary());
}
