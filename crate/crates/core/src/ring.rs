//! Trinomial rings `R(A, n, L)[S_1..S_m]`: validation, relations and the
//! canonical grading by the lattice `K`.
//!
//! Variables are always ordered `T01, .., T0n0, T11, .., Trnr, S1, .., Sm`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{smith_normal_form, IntMatrix};

/// A coefficient point `a_i = (b_i, c_i)` in the plane.
pub type Point = [BigRational; 2];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a triple needs at least one block")]
    NoBlocks,
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("block {block} has {found} exponents but n_{block} = {expected}")]
    ShapeMismatch {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("exponent l_{block},{index} is zero")]
    ZeroExponent { block: usize, index: usize },
    #[error("block sizes are not weakly decreasing at block {block}")]
    NotWeaklyDecreasing { block: usize },
    #[error("blocks {first} and {second} have gcds {gcd_first} and {gcd_second}, which are not coprime")]
    BlocksNotCoprime {
        first: usize,
        second: usize,
        gcd_first: u64,
        gcd_second: u64,
    },
    #[error("expected {expected} coefficient points, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("coefficient points a_{first} and a_{second} are linearly dependent")]
    DegenerateCoefficients { first: usize, second: usize },
}

/// Unvalidated triple data, as read from a file or produced by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    pub n: Vec<usize>,
    pub l: Vec<Vec<u64>>,
    pub m: usize,
    pub a: Option<Vec<Point>>,
}

impl TripleData {
    pub fn new(l: Vec<Vec<u64>>, m: usize) -> Self {
        Self {
            n: l.iter().map(Vec::len).collect(),
            l,
            m,
            a: None,
        }
    }

    /// gcd of the exponents in block `i`.
    pub fn block_gcd(&self, i: usize) -> u64 {
        self.l[i].iter().fold(0, |g, &x| g.gcd(&x))
    }

    fn check_structure(&self) -> Result<(), ValidationError> {
        if self.n.is_empty() {
            return Err(ValidationError::NoBlocks);
        }
        for (i, (&ni, li)) in self.n.iter().zip(&self.l).enumerate() {
            if ni == 0 {
                return Err(ValidationError::EmptyBlock { block: i });
            }
            if li.len() != ni {
                return Err(ValidationError::ShapeMismatch {
                    block: i,
                    expected: ni,
                    found: li.len(),
                });
            }
            if let Some(j) = li.iter().position(|&x| x == 0) {
                return Err(ValidationError::ZeroExponent { block: i, index: j });
            }
        }
        if self.l.len() != self.n.len() {
            return Err(ValidationError::ShapeMismatch {
                block: self.l.len().min(self.n.len()),
                expected: self.n.len(),
                found: self.l.len(),
            });
        }
        Ok(())
    }
}

/// Default coefficient points: `(1,0), (1,1), (0,1)` and `(1, i-1)` for `i >= 3`.
pub fn default_points(count: usize) -> Vec<Point> {
    let q = |x: i64| BigRational::from_integer(x.into());
    (0..count)
        .map(|i| match i {
            0 => [q(1), q(0)],
            1 => [q(1), q(1)],
            2 => [q(0), q(1)],
            _ => [q(1), q(i as i64 - 1)],
        })
        .collect()
}

fn det(a: &Point, b: &Point) -> BigRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// A validated admissible triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    n: Vec<usize>,
    l: Vec<Vec<u64>>,
    m: usize,
    a: Option<Vec<Point>>,
}

/// Checks the invariants of an admissible triple.
pub fn validate_triple(t: &TripleData) -> Result<AdmissibleTriple, ValidationError> {
    t.check_structure()?;
    if let Some(i) = (1..t.n.len()).find(|&i| t.n[i] > t.n[i - 1]) {
        return Err(ValidationError::NotWeaklyDecreasing { block: i });
    }
    let gcds: Vec<u64> = (0..t.n.len()).map(|i| t.block_gcd(i)).collect();
    for i in 0..gcds.len() {
        for k in i + 1..gcds.len() {
            if gcds[i].gcd(&gcds[k]) != 1 {
                return Err(ValidationError::BlocksNotCoprime {
                    first: i,
                    second: k,
                    gcd_first: gcds[i],
                    gcd_second: gcds[k],
                });
            }
        }
    }
    if let Some(a) = &t.a {
        if a.len() != t.n.len() {
            return Err(ValidationError::CoefficientCount {
                expected: t.n.len(),
                found: a.len(),
            });
        }
        for i in 0..a.len() {
            for k in i + 1..a.len() {
                if det(&a[i], &a[k]).is_zero() {
                    return Err(ValidationError::DegenerateCoefficients { first: i, second: k });
                }
            }
        }
    }
    Ok(AdmissibleTriple {
        n: t.n.clone(),
        l: t.l.clone(),
        m: t.m,
        a: t.a.clone(),
    })
}

/// The criterion for `T_ij` to define a prime ideal: the gcds of the blocks
/// other than `i` are pairwise coprime. Only the block index matters.
///
/// Panics if `i` is out of range or the exponent data is malformed.
pub fn variable_is_prime(t: &TripleData, i: usize, j: usize) -> bool {
    t.check_structure().expect("structurally valid triple data");
    assert!(j < t.n[i], "variable index out of range");
    let gcds: Vec<u64> = (0..t.n.len()).filter(|&k| k != i).map(|k| t.block_gcd(k)).collect();
    (0..gcds.len()).all(|a| (a + 1..gcds.len()).all(|b| gcds[a].gcd(&gcds[b]) == 1))
}

impl AdmissibleTriple {
    /// Number of blocks minus one.
    pub fn r(&self) -> usize {
        self.n.len() - 1
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn l(&self) -> &[Vec<u64>] {
        &self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Explicitly given coefficient points, if any.
    pub fn explicit_points(&self) -> Option<&[Point]> {
        self.a.as_deref()
    }

    /// Coefficient points, falling back to the defaults.
    pub fn points(&self) -> Vec<Point> {
        self.a.clone().unwrap_or_else(|| default_points(self.n.len()))
    }

    /// `alpha_ij = det(a_i, a_j)`.
    pub fn alpha(&self, i: usize, j: usize) -> BigRational {
        let a = self.points();
        det(&a[i], &a[j])
    }

    /// Total number of `T` variables.
    pub fn t_count(&self) -> usize {
        self.n.iter().sum()
    }

    pub fn var_count(&self) -> usize {
        self.t_count() + self.m
    }

    /// Position of `T_ij` (0-based `j`) in the variable order.
    pub fn var_index(&self, i: usize, j: usize) -> usize {
        self.n[..i].iter().sum::<usize>() + j
    }

    /// Variable names in order: `T01`, `T02`, ..., `S1`, ...
    pub fn var_names(&self) -> Vec<String> {
        let wide = self.n.len() > 10 || self.n.iter().any(|&x| x > 9);
        let mut names = Vec::with_capacity(self.var_count());
        for (i, &ni) in self.n.iter().enumerate() {
            for j in 1..=ni {
                names.push(if wide { format!("T{i}_{j}") } else { format!("T{i}{j}") });
            }
        }
        names.extend((1..=self.m).map(|k| format!("S{k}")));
        names
    }

    pub fn ring_dimension(&self) -> usize {
        self.variety_dimension() + 1
    }

    /// `n + m - r`.
    pub fn variety_dimension(&self) -> usize {
        self.t_count() + self.m - self.r()
    }

    /// Exponent vector of the monomial `f_i`.
    pub fn monomial_exponents(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; self.var_count()];
        for (j, &l) in self.l[i].iter().enumerate() {
            e[self.var_index(i, j)] = u32::try_from(l).expect("exponent fits in u32");
        }
        e
    }

    /// `g_{i,j,k} = alpha_jk f_i + alpha_ki f_j + alpha_ij f_k`.
    pub fn trinomial(&self, i: usize, j: usize, k: usize) -> SparsePolynomial {
        let nv = self.var_count();
        let mut g = SparsePolynomial::monomial(nv, self.monomial_exponents(i), self.alpha(j, k));
        g = g.add(&SparsePolynomial::monomial(
            nv,
            self.monomial_exponents(j),
            self.alpha(k, i),
        ));
        g.add(&SparsePolynomial::monomial(
            nv,
            self.monomial_exponents(k),
            self.alpha(i, j),
        ))
    }
}

/// The defining relations `g_{i,i+1,i+2}` for `0 <= i <= r-2`.
pub fn build_relations(t: &AdmissibleTriple) -> Vec<SparsePolynomial> {
    (0..t.r().saturating_sub(1))
        .map(|i| t.trinomial(i, i + 1, i + 2))
        .collect()
}

pub fn ring_dimension(t: &AdmissibleTriple) -> usize {
    t.ring_dimension()
}

pub fn variety_dimension(t: &AdmissibleTriple) -> usize {
    t.variety_dimension()
}

/// Multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, coefficient: BigRational) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !coefficient.is_zero() {
            p.terms.insert(exponents, coefficient);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    fn accumulate(&mut self, exponents: &[u32], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.to_vec()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exponents);
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> SparsePolynomial {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// The common degree of all terms under `degrees` (one vector per
    /// variable), or `None` if the polynomial is not homogeneous.
    pub fn homogeneous_degree(&self, degrees: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
        assert_eq!(degrees.len(), self.nvars, "one degree per variable");
        let rank = degrees.first().map_or(0, Vec::len);
        let mut common: Option<Vec<BigInt>> = None;
        for e in self.terms.keys() {
            let mut deg = vec![BigInt::zero(); rank];
            for (x, d) in e.iter().zip(degrees) {
                for (acc, di) in deg.iter_mut().zip(d) {
                    *acc += di * BigInt::from(*x);
                }
            }
            match &common {
                None => common = Some(deg),
                Some(c) if *c != deg => return None,
                Some(_) => {}
            }
        }
        Some(common.unwrap_or_else(|| vec![BigInt::zero(); rank]))
    }

    /// Renders with the given variable names, leading variables first.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            let mono = render_monomial(e, names);
            if abs.is_one() {
                out.push_str(if mono.is_empty() { "1" } else { &mono });
            } else {
                out.push_str(&abs.to_string());
                if !mono.is_empty() {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `T01*T02^5`-style rendering of an exponent vector.
pub fn render_monomial(exponents: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (x, name) in exponents.iter().zip(names) {
        match x {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{x}")),
        }
    }
    parts.join("*")
}

/// Text form of the relations of a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationText {
    pub relations: Vec<String>,
    /// Set when some printed coefficient is not `±1`.
    pub non_unit_coefficients: bool,
}

/// Renders the relations in table style.
///
/// With a single relation the coefficients can always be absorbed into the
/// variables, so it prints as `f0 + f1 + f2`. With two or more relations the
/// exact coefficients are printed.
pub fn render_relations(t: &AdmissibleTriple) -> RelationText {
    let names = t.var_names();
    if t.r() == 2 {
        let monos: Vec<String> = (0..3)
            .map(|i| render_monomial(&t.monomial_exponents(i), &names))
            .collect();
        return RelationText {
            relations: vec![monos.join(" + ")],
            non_unit_coefficients: false,
        };
    }
    let relations = build_relations(t);
    let non_unit = relations.iter().any(|g| g.terms().values().any(|c| !c.abs().is_one()));
    RelationText {
        relations: relations.iter().map(|g| g.render(&names)).collect(),
        non_unit_coefficients: non_unit,
    }
}

/// Grading of the ring by `K x Z^m`, one degree vector per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGrading {
    pub rank: usize,
    pub degrees: Vec<Vec<BigInt>>,
}

impl KGrading {
    /// `sum_j l_ij deg T_ij` for block `i`.
    pub fn block_degree(&self, t: &AdmissibleTriple, i: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.rank];
        for (j, &l) in t.l()[i].iter().enumerate() {
            for (a, d) in acc.iter_mut().zip(&self.degrees[t.var_index(i, j)]) {
                *a += d * BigInt::from(l);
            }
        }
        acc
    }

    pub fn degree_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(self.rank, self.degrees.clone())
    }
}

/// The canonical grading: `deg T_ij` is the image of `e_ij` under a map
/// `Z^n -> K` whose kernel is spanned by the vectors `v_i`, computed from a
/// Smith normal form.
pub fn canonical_k_grading(t: &AdmissibleTriple) -> KGrading {
    let n = t.t_count();
    let r = t.r();
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut v = vec![BigInt::zero(); n];
        for (j, &l) in t.l()[i].iter().enumerate() {
            v[t.var_index(i, j)] = BigInt::from(l);
        }
        for (j, &l) in t.l()[i + 1].iter().enumerate() {
            v[t.var_index(i + 1, j)] = -BigInt::from(l);
        }
        rows.push(v);
    }
    let snf = smith_normal_form(&IntMatrix::from_rows_with_cols(n, rows));
    let w = snf.v;
    let k_rank = n - r;
    let mut t_degrees: Vec<Vec<BigInt>> = (0..n)
        .map(|row| (r..n).map(|c| w.get(row, c).clone()).collect())
        .collect();
    if let Some(first) = t_degrees[0].iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for d in &mut t_degrees {
                for x in d.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    let m = t.m();
    let rank = k_rank + m;
    let mut degrees = Vec::with_capacity(n + m);
    for d in t_degrees {
        let mut v = d;
        v.resize(rank, BigInt::zero());
        degrees.push(v);
    }
    for k in 0..m {
        let mut v = vec![BigInt::zero(); rank];
        v[k_rank + k] = BigInt::one();
        degrees.push(v);
    }
    KGrading { rank, degrees }
}

/// Serialized ring description, shared by the ring and record file formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub n: Vec<usize>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<u64>>,
    #[serde(default)]
    pub m: usize,
    /// Coefficient points as pairs of rational strings such as `"3/2"`.
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<u64>>,
}

#[derive(Debug, Error)]
pub enum RingDocError {
    #[error("r = {given} does not match {blocks} blocks")]
    BlockCount { given: usize, blocks: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl RingDoc {
    pub fn triple_data(&self) -> Result<TripleData, RingDocError> {
        if let Some(r) = self.r {
            if r + 1 != self.n.len() {
                return Err(RingDocError::BlockCount {
                    given: r,
                    blocks: self.n.len(),
                });
            }
        }
        let a = match &self.a {
            None => None,
            Some(points) => {
                let mut out = Vec::with_capacity(points.len());
                for [b, c] in points {
                    let b = parse_rational(b).ok_or_else(|| RingDocError::BadRational(b.clone()))?;
                    let c = parse_rational(c).ok_or_else(|| RingDocError::BadRational(c.clone()))?;
                    out.push([b, c]);
                }
                Some(out)
            }
        };
        Ok(TripleData {
            n: self.n.clone(),
            l: self.l.clone(),
            m: self.m,
            a,
        })
    }

    pub fn triple(&self) -> Result<AdmissibleTriple, RingDocError> {
        Ok(validate_triple(&self.triple_data()?)?)
    }

    pub fn from_triple(t: &AdmissibleTriple) -> Self {
        Self {
            r: Some(t.r()),
            n: t.n().to_vec(),
            l: t.l().to_vec(),
            m: t.m(),
            a: t.explicit_points()
                .map(|pts| pts.iter().map(|[b, c]| [b.to_string(), c.to_string()]).collect()),
            weights: None,
            u: None,
        }
    }
}

/// Multi-line human summary of a triple.
pub fn describe(t: &AdmissibleTriple) -> String {
    let mut s = String::new();
    let text = render_relations(t);
    let _ = writeln!(s, "r = {}, n = {:?}, m = {}", t.r(), t.n(), t.m());
    for rel in &text.relations {
        let _ = writeln!(s, "  {rel}");
    }
    if text.non_unit_coefficients {
        let _ = writeln!(s, "  (relations carry non-unit coefficients)");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(l: Vec<Vec<u64>>, m: usize) -> AdmissibleTriple {
        validate_triple(&TripleData::new(l, m)).unwrap()
    }

    #[test]
    fn validation() {
        triple(vec![vec![1, 5], vec![3], vec![2]], 1);
        triple(vec![vec![2, 4], vec![3], vec![5]], 0);
        assert!(matches!(
            validate_triple(&TripleData::new(vec![vec![2], vec![4]], 0)),
            Err(ValidationError::BlocksNotCoprime { .. })
        ));
        assert!(matches!(
            validate_triple(&TripleData::new(vec![vec![2], vec![3, 1]], 0)),
            Err(ValidationError::NotWeaklyDecreasing { block: 1 })
        ));
        let mut d = TripleData::new(vec![vec![2], vec![3], vec![5]], 0);
        d.a = Some(vec![
            default_points(1)[0].clone(),
            default_points(2)[1].clone(),
            default_points(1)[0].clone(),
        ]);
        assert!(matches!(
            validate_triple(&d),
            Err(ValidationError::DegenerateCoefficients { first: 0, second: 2 })
        ));
    }

    #[test]
    fn default_trinomial_signs() {
        let t = triple(vec![vec![1, 5], vec![3], vec![2]], 1);
        let g = build_relations(&t);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].len(), 3);
        assert_eq!(g[0].render(&t.var_names()), "T01*T02^5 - T11^3 + T21^2");
        assert_eq!(render_relations(&t).relations, vec!["T01*T02^5 + T11^3 + T21^2"]);
        assert!(build_relations(&triple(vec![vec![1, 1], vec![1]], 0)).is_empty());
    }

    #[test]
    fn grading_of_235() {
        let t = triple(vec![vec![2], vec![3], vec![5]], 1);
        let k = canonical_k_grading(&t);
        assert_eq!(k.rank, 2);
        let b = |x: i64| BigInt::from(x);
        assert_eq!(k.degrees[0], vec![b(15), b(0)]);
        assert_eq!(k.degrees[1], vec![b(10), b(0)]);
        assert_eq!(k.degrees[2], vec![b(6), b(0)]);
        assert_eq!(k.degrees[3], vec![b(0), b(1)]);
    }

    #[test]
    fn grading_trivial() {
        let t = triple(vec![vec![1]], 0);
        let k = canonical_k_grading(&t);
        assert_eq!(k.rank, 1);
        assert_eq!(k.degrees, vec![vec![BigInt::from(1)]]);
    }

    #[test]
    fn dimensions() {
        let t = triple(vec![vec![1, 5], vec![3], vec![2]], 1);
        assert_eq!((t.ring_dimension(), t.variety_dimension()), (4, 3));
        let t = triple(vec![vec![1]], 0);
        assert_eq!(t.ring_dimension(), 2);
        let t = triple(vec![vec![2], vec![3], vec![5]], 1);
        assert_eq!((t.ring_dimension(), t.variety_dimension()), (3, 2));
    }

    #[test]
    fn prime_variables() {
        let d = TripleData::new(vec![vec![2, 2], vec![2], vec![3]], 0);
        assert!(!variable_is_prime(&d, 2, 0));
        assert!(variable_is_prime(&d, 0, 1));
    }

    #[test]
    fn polynomial_arithmetic() {
        let one = BigRational::one();
        let p = SparsePolynomial::monomial(2, vec![1, 0], one.clone());
        let q = SparsePolynomial::monomial(2, vec![0, 1], one.clone());
        let s = p.add(&q);
        assert_eq!(s.len(), 2);
        assert!(s.sub(&p).sub(&q).is_empty());
        assert!(s.scale(&BigRational::zero()).is_empty());
        assert_eq!(SparsePolynomial::zero(2).render(&["x".into(), "y".into()]), "0");
    }

    #[test]
    fn ring_doc_round_trip() {
        let src = "r = 2\nn = [2, 1, 1]\nL = [[1, 5], [3], [2]]\nm = 1\nA = [[\"1\", \"0\"], [\"1\", \"1\"], [\"0\", \"1/2\"]]\n";
        let doc: RingDoc = toml::from_str(src).unwrap();
        let t = doc.triple().unwrap();
        assert_eq!(t.alpha(1, 2), BigRational::new(1.into(), 2.into()));
        let back: RingDoc = toml::from_str(&toml::to_string(&RingDoc::from_triple(&t)).unwrap()).unwrap();
        assert_eq!(back.triple().unwrap(), t);
    }
}
