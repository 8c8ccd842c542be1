//! Smith normal form with its transformation matrices.
use trinomial_fano::linalg::{smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("M = {m:?}");
    println!("S = {:?}", snf.s);
    println!("U = {:?}", snf.u);
    println!("V = {:?}", snf.v);
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    println!("invariant factors {:?}", snf.invariant_factors());
}
