//! Non-toric Fano surfaces of Picard index at most 6.
use trinomial_fano::classify::{enumerate, ClassificationQuery};
use trinomial_fano::tables::render_markdown;

fn main() {
    let query = ClassificationQuery::new(2, 1..=6);
    let records = enumerate(&query).expect("bounded search");
    print!("{}", render_markdown(&records));
    println!("{} surfaces", records.len());
}
