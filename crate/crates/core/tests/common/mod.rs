//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use trinomial_fano::classify::{canonical_key, CanonicalKey};
use trinomial_fano::invariants::{is_cox_grading, is_fano, picard_index_by_strata, CoxCandidate};
use trinomial_fano::linalg::{combinations, is_basis_extendable, smith_normal_form, IntMatrix};
use trinomial_fano::ring::{
    build_relations, canonical_k_grading, validate_triple, AdmissibleTriple, SparsePolynomial, TripleData,
};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Determinant by cofactor expansion; only used on tiny minors.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of all `k x k` minors.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

/// Checks an SNF against the determinantal-divisor oracle. Returns a reason on failure.
pub fn check_snf(m: &IntMatrix) -> Result<(), String> {
    let snf = smith_normal_form(m);
    if snf.u.mul(m).mul(&snf.v) != snf.s {
        return Err(format!("U M V != S for {m:?}"));
    }
    if !snf.u.is_unimodular() || !snf.v.is_unimodular() {
        return Err(format!("transformations not unimodular for {m:?}"));
    }
    if !snf.s.is_diagonal() {
        return Err(format!("S not diagonal for {m:?}"));
    }
    let mine: Vec<BigInt> = snf.invariant_factors().into_iter().filter(|d| !d.is_zero()).collect();
    if mine.iter().any(Signed::is_negative) {
        return Err("negative invariant factor".into());
    }
    let oracle = invariant_factors_by_minors(m);
    if mine != oracle {
        return Err(format!("invariant factors {mine:?} != oracle {oracle:?} for {m:?}"));
    }
    Ok(())
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_rows_with_cols(
        cols,
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<i64>>())
            .collect(),
    )
}

/// Random exponent data with `r + 1` blocks and weakly decreasing block sizes.
pub fn random_exponents(rng: &mut impl Rng, max_r: usize, max_exp: u64) -> Vec<Vec<u64>> {
    let r = rng.gen_range(1..=max_r);
    let mut sizes: Vec<usize> = (0..=r).map(|_| rng.gen_range(1..=3)).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
        .iter()
        .map(|&n| (0..n).map(|_| rng.gen_range(1..=max_exp)).collect())
        .collect()
}

/// Pairwise coprimality of block gcds, straight from the definition.
pub fn blocks_pairwise_coprime(l: &[Vec<u64>]) -> bool {
    let g: Vec<u64> = l.iter().map(|b| b.iter().fold(0, |a, &x| a.gcd(&x))).collect();
    (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].gcd(&g[j]) == 1))
}

/// Rows `l_i - l_{i+1}` of the relation lattice, blocks flattened.
pub fn relation_lattice(l: &[Vec<u64>]) -> IntMatrix {
    let total: usize = l.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = l
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.len();
            Some(o)
        })
        .collect();
    let rows: Vec<Vec<i64>> = (0..l.len() - 1)
        .map(|i| {
            let mut row = vec![0i64; total];
            for (j, &e) in l[i].iter().enumerate() {
                row[offsets[i] + j] = e as i64;
            }
            for (j, &e) in l[i + 1].iter().enumerate() {
                row[offsets[i + 1] + j] = -(e as i64);
            }
            row
        })
        .collect();
    IntMatrix::from_rows_with_cols(total, rows)
}

pub fn admissibility_matches_extendability(l: &[Vec<u64>]) -> bool {
    let valid = validate_triple(&TripleData::new(l.to_vec(), 0)).is_ok();
    valid == blocks_pairwise_coprime(l) && valid == is_basis_extendable(&relation_lattice(l))
}

/// Every trinomial `g_{ijk}` is a linear combination of the consecutive
/// relations, `g_{ijk} = -g_{jik}`, and `g_{ijk} = g_{jki}`.
pub fn check_cocycles(t: &AdmissibleTriple) -> Result<(), String> {
    let r = t.r();
    let rels = build_relations(t);
    for i in 0..=r {
        for j in 0..=r {
            for k in 0..=r {
                if i == j || j == k || i == k {
                    continue;
                }
                let g = t.trinomial(i, j, k);
                if g.add(&t.trinomial(j, i, k)) != SparsePolynomial::zero(t.var_count()) {
                    return Err(format!("g_{i}{j}{k} is not antisymmetric"));
                }
                if g != t.trinomial(j, k, i) {
                    return Err(format!("g_{i}{j}{k} is not cyclic"));
                }
                if !in_span(&g, &rels) {
                    return Err(format!("g_{i}{j}{k} not in the span of the relations"));
                }
            }
        }
    }
    Ok(())
}

// Gaussian elimination on coefficient vectors indexed by monomials.
#[allow(clippy::needless_range_loop)]
fn in_span(g: &SparsePolynomial, basis: &[SparsePolynomial]) -> bool {
    let monomials: Vec<Vec<u32>> = basis
        .iter()
        .chain(std::iter::once(g))
        .flat_map(|p| p.terms().keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vec_of = |p: &SparsePolynomial| -> Vec<BigRational> { monomials.iter().map(|e| p.coefficient(e)).collect() };
    let rank_of = |rows: Vec<Vec<BigRational>>| -> usize {
        let mut rows = rows;
        let mut rank = 0;
        for c in 0..monomials.len() {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank][c].clone();
            for i in 0..rows.len() {
                if i != rank && !rows[i][c].is_zero() {
                    let f = &rows[i][c] / &pivot;
                    for cc in 0..monomials.len() {
                        let d = &f * &rows[rank][cc];
                        rows[i][cc] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    let base: Vec<Vec<BigRational>> = basis.iter().map(vec_of).collect();
    let mut with_g = base.clone();
    with_g.push(vec_of(g));
    rank_of(base) == rank_of(with_g)
}

/// Homogeneity of every relation and freeness of the grading group.
pub fn check_grading(t: &AdmissibleTriple) -> Result<(), String> {
    let grading = canonical_k_grading(t);
    let expected_rank = t.var_count() - t.r();
    if grading.rank != expected_rank {
        return Err(format!("rank {} != {expected_rank}", grading.rank));
    }
    for g in build_relations(t) {
        if g.homogeneous_degree(&grading.degrees).is_none() {
            return Err("relation not homogeneous".into());
        }
    }
    // the degrees generate K = Z^rank
    let snf = smith_normal_form(&grading.degree_matrix());
    if snf.invariant_factors().iter().any(|d| !d.is_one()) || snf.rank() != expected_rank {
        return Err("degrees do not generate the grading group".into());
    }
    Ok(())
}

/// Admissible triple with random blocks, `r <= max_r`, and random points.
pub fn random_triple(rng: &mut impl Rng, max_r: usize) -> AdmissibleTriple {
    loop {
        let l = random_exponents(rng, max_r, 6);
        let m = rng.gen_range(0..=2);
        let mut data = TripleData::new(l, m);
        if rng.gen_bool(0.5) {
            let pts: Vec<[BigRational; 2]> = (0..data.n.len())
                .map(|_| [q(rng.gen_range(-5..=5)), q(rng.gen_range(-5..=5))])
                .collect();
            data.a = Some(pts);
        }
        if let Ok(t) = validate_triple(&data) {
            return t;
        }
    }
}

/// All ways to write `gamma = sum l_j w_j` with `n` pairs, `l_j >= min_l`, `w_j >= 1`.
pub fn block_options(gamma: u64, n: usize, min_l: u64) -> Vec<Vec<(u64, u64)>> {
    if n == 0 {
        return if gamma == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for l in min_l..=gamma {
        for w in 1..=gamma / l {
            for mut rest in block_options(gamma - l * w, n - 1, min_l) {
                rest.insert(0, (l, w));
                out.push(rest);
            }
        }
    }
    out
}

/// Non-toric Fano surfaces by brute force: every shape with `r >= 2`, singleton
/// exponents at least 2, every weight assignment with `gamma < gamma_bound`
/// and free weights up to `max_mu`, filtered by the definitions.
pub fn brute_force_surfaces(max_mu: u64, gamma_bound: u64) -> BTreeSet<CanonicalKey> {
    let d = 2usize;
    let mut found = BTreeSet::new();
    for r in 2..=4usize {
        // sum n_i + m - r = d with n_i >= 1
        for m in 0..=d {
            let extra = d + r - m;
            if extra < r + 1 {
                continue;
            }
            let surplus = extra - (r + 1);
            for sizes in weakly_decreasing(r + 1, surplus) {
                for gamma in 1..gamma_bound {
                    let per_block: Vec<Vec<Vec<(u64, u64)>>> = sizes
                        .iter()
                        .map(|&n| block_options(gamma, n, if n == 1 { 2 } else { 1 }))
                        .collect();
                    for blocks in product(&per_block) {
                        let l: Vec<Vec<u64>> = blocks.iter().map(|b| b.iter().map(|p| p.0).collect()).collect();
                        let w: Vec<Vec<u64>> = blocks.iter().map(|b| b.iter().map(|p| p.1).collect()).collect();
                        let Ok(t) = validate_triple(&TripleData::new(l, m)) else {
                            continue;
                        };
                        for u in free_weight_tuples(m, max_mu) {
                            let c = CoxCandidate::new(t.clone(), w.clone(), u).expect("shape fits");
                            if is_cox_grading(&c)
                                && is_fano(&c).unwrap_or(false)
                                && picard_index_by_strata(&c) <= max_mu
                            {
                                found.insert(canonical_key(&c));
                            }
                        }
                    }
                }
            }
        }
    }
    found
}

/// Block sizes: `blocks` positive parts, weakly decreasing, adding `surplus` to all ones.
fn weakly_decreasing(blocks: usize, surplus: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, blocks: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if blocks == 0 {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for x in (0..=left.min(cap)).rev() {
            acc.push(x + 1);
            go(left - x, blocks - 1, x, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(surplus, blocks, surplus, &mut Vec::new(), &mut out);
    out
}

fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

fn free_weight_tuples(m: usize, max: u64) -> Vec<Vec<u64>> {
    let ranges: Vec<Vec<u64>> = (0..m).map(|_| (1..=max).collect()).collect();
    product(&ranges)
}

/// Every candidate with singleton blocks only, pairwise coprime exponents
/// `>= 2`, exponent product at most `max_product`, relation degree `k * prod`
/// for `k <= max_k`, and up to `max_m` free weights bounded by `max_u`.
/// Returns the Cox-valid ones.
pub fn all_singleton_candidates(max_product: u64, max_k: u64, max_m: usize, max_u: u64) -> Vec<CoxCandidate> {
    let mut shapes: Vec<Vec<u64>> = Vec::new();
    fn grow(cur: &mut Vec<u64>, prod: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if cur.len() >= 3 {
            out.push(cur.clone());
        }
        let last = *cur.last().unwrap_or(&(max + 1));
        for l in 2..last {
            if prod * l <= max && cur.iter().all(|&x| x.gcd(&l) == 1) {
                cur.push(l);
                grow(cur, prod * l, max, out);
                cur.pop();
            }
        }
    }
    grow(&mut Vec::new(), 1, max_product, &mut shapes);
    let mut out = Vec::new();
    for ls in shapes {
        let prod: u64 = ls.iter().product();
        for k in 1..=max_k {
            let gamma = k * prod;
            let w: Vec<Vec<u64>> = ls.iter().map(|l| vec![gamma / l]).collect();
            for m in 0..=max_m {
                let t = validate_triple(&TripleData::new(ls.iter().map(|&l| vec![l]).collect(), m)).expect("coprime");
                for u in free_weight_tuples(m, max_u) {
                    if u.windows(2).any(|p| p[0] < p[1]) {
                        continue;
                    }
                    let c = CoxCandidate::new(t.clone(), w.clone(), u).expect("shape fits");
                    if is_cox_grading(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}
