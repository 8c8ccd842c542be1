mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use trinomial_fano::linalg::{cone_is_regular, is_basis_extendable, solve_rational_system, IntMatrix, SolveError};

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
        .prop_map(move |r| IntMatrix::from_rows_with_cols(cols, r))
}

// Product of elementary column operations, always unimodular.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, f, swap) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(n);
            if swap {
                e.set(i, i, 0.into());
                e.set(j, j, 0.into());
                e.set(i, j, 1.into());
                e.set(j, i, 1.into());
            } else {
                e.set(i, j, f.into());
            }
            u = u.mul(&e);
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_matches_determinantal_divisors(m in matrix(4, 6, 9)) {
        prop_assert_eq!(common::check_snf(&m), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_small_shapes(rows in 1usize..4, cols in 1usize..4, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_matrix(&mut rng, rows, cols, 5);
        prop_assert_eq!(common::check_snf(&m), Ok(()));
    }

    #[test]
    fn regularity_is_invariant_under_lattice_automorphisms(g in matrix(3, 3, 3), u in unimodular(3)) {
        prop_assume!(g.row_vecs().iter().all(|r| r.iter().any(|x| x != &BigInt::from(0))));
        prop_assert_eq!(cone_is_regular(&g), cone_is_regular(&g.mul(&u)));
    }

    #[test]
    fn regularity_ignores_generator_scaling(g in matrix(2, 3, 4), k in 1i64..5) {
        prop_assume!(g.row_vecs().iter().all(|r| r.iter().any(|x| x != &BigInt::from(0))));
        let mut rows = g.row_vecs();
        for x in rows[0].iter_mut() {
            *x *= k;
        }
        prop_assert_eq!(cone_is_regular(&g), cone_is_regular(&IntMatrix::from_rows_with_cols(3, rows)));
    }

    #[test]
    fn unimodular_rows_extend(u in unimodular(4), k in 1usize..=4) {
        let rows = IntMatrix::from_rows_with_cols(4, u.row_vecs()[..k].to_vec());
        prop_assert!(is_basis_extendable(&rows));
    }

    #[test]
    fn solver_recovers_exact_solutions(a in matrix(4, 4, 6), x in prop::collection::vec((-20i64..=20, 1i64..=7), 4)) {
        let x: Vec<BigRational> = x.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect();
        let b: Vec<BigRational> = a
            .row_vecs()
            .iter()
            .map(|row| row.iter().zip(&x).map(|(c, v)| BigRational::from_integer(c.clone()) * v).sum())
            .collect();
        match a.determinant() {
            Some(d) if d != BigInt::from(0) => prop_assert_eq!(solve_rational_system(&a, &b), Ok(x)),
            _ => prop_assert_eq!(solve_rational_system(&a, &b), Err(SolveError::NonUnique)),
        }
    }
}
