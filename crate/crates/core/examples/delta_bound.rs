//! Upper bounds on the number of deformation types.
use trinomial_fano::invariants::delta_bound;

fn main() {
    for d in 2..=4 {
        for mu in [1, 2, 6] {
            let b = delta_bound(d, mu);
            println!("d = {d}, mu = {mu}: {} decimal digits", b.to_string().len());
        }
    }
    println!("delta(2, 1) = {}", delta_bound(2, 1));
}
