//! Invariants of Z-graded candidates for Cox rings: relation degree, Cox
//! criterion, Picard index, anticanonical class and degree, Fano test.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::prime_count;
use crate::ring::{AdmissibleTriple, RingDoc, RingDocError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("block {block} has degree {found}, block 0 has degree {expected}")]
    NotHomogeneous { block: usize, expected: u64, found: u64 },
    #[error("weights do not match the block shape at block {block}")]
    WeightShape { block: usize },
    #[error("expected {expected} free weights, found {found}")]
    FreeWeightCount { expected: usize, found: usize },
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("support is empty")]
    EmptySupport,
    #[error("support index {0} is out of range")]
    SupportOutOfRange(usize),
}

/// Shape cases of a trinomial Cox ring, ordered as they are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    /// No relations: a weighted projective space.
    Toric,
    /// Every block is a single variable.
    Ii,
    /// Exactly one block has more than one variable.
    Iii,
    /// Exactly two blocks have more than one variable.
    Iv,
    /// At least three blocks have more than one variable.
    V,
}

impl CaseTag {
    pub fn of(t: &AdmissibleTriple) -> Self {
        let n = t.n();
        if t.r() <= 1 {
            CaseTag::Toric
        } else if n[0] == 1 {
            CaseTag::Ii
        } else if n[1] == 1 {
            CaseTag::Iii
        } else if n[2] == 1 {
            CaseTag::Iv
        } else {
            CaseTag::V
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Toric => "i",
            CaseTag::Ii => "ii",
            CaseTag::Iii => "iii",
            CaseTag::Iv => "iv",
            CaseTag::V => "v",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "i" | "toric" => CaseTag::Toric,
            "ii" => CaseTag::Ii,
            "iii" => CaseTag::Iii,
            "iv" => CaseTag::Iv,
            "v" => CaseTag::V,
            _ => return None,
        })
    }
}

/// A triple together with a Z-degree for every variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxCandidate {
    pub triple: AdmissibleTriple,
    pub weights: Vec<Vec<u64>>,
    pub free_weights: Vec<u64>,
}

impl CoxCandidate {
    /// Checks that the weights fit the shape of the triple and are positive.
    pub fn new(
        triple: AdmissibleTriple,
        weights: Vec<Vec<u64>>,
        free_weights: Vec<u64>,
    ) -> Result<Self, InvariantError> {
        if weights.len() != triple.n().len() {
            return Err(InvariantError::WeightShape {
                block: weights.len().min(triple.n().len()),
            });
        }
        for (i, (w, &ni)) in weights.iter().zip(triple.n()).enumerate() {
            if w.len() != ni {
                return Err(InvariantError::WeightShape { block: i });
            }
        }
        if free_weights.len() != triple.m() {
            return Err(InvariantError::FreeWeightCount {
                expected: triple.m(),
                found: free_weights.len(),
            });
        }
        if weights.iter().flatten().chain(&free_weights).any(|&w| w == 0) {
            return Err(InvariantError::ZeroWeight);
        }
        Ok(Self {
            triple,
            weights,
            free_weights,
        })
    }

    /// Reads the triple and the weights of a ring document.
    pub fn from_doc(doc: &RingDoc) -> Result<Self, CandidateDocError> {
        let triple = doc.triple()?;
        let weights = doc.weights.clone().ok_or(CandidateDocError::MissingWeights)?;
        let u = doc.u.clone().unwrap_or_default();
        Ok(Self::new(triple, weights, u)?)
    }

    pub fn to_doc(&self) -> RingDoc {
        let mut doc = RingDoc::from_triple(&self.triple);
        doc.weights = Some(self.weights.clone());
        doc.u = Some(self.free_weights.clone());
        doc
    }

    /// All weights in variable order.
    pub fn all_weights(&self) -> Vec<u64> {
        self.weights
            .iter()
            .flatten()
            .chain(&self.free_weights)
            .copied()
            .collect()
    }

    /// Number of relations, `max(0, r - 1)`.
    pub fn relation_count(&self) -> usize {
        self.triple.r().saturating_sub(1)
    }

    pub fn dimension(&self) -> usize {
        self.triple.variety_dimension()
    }

    fn block_degree(&self, i: usize) -> u64 {
        self.triple.l()[i]
            .iter()
            .zip(&self.weights[i])
            .map(|(l, w)| l * w)
            .sum()
    }
}

#[derive(Debug, Error)]
pub enum CandidateDocError {
    #[error("the ring document has no weights")]
    MissingWeights,
    #[error(transparent)]
    Ring(#[from] RingDocError),
    #[error(transparent)]
    Weights(#[from] InvariantError),
}

/// The common degree `gamma = sum_j l_ij w_ij` of the blocks.
///
/// Without relations (`r <= 1`) nothing has to agree and the degree of block
/// 0 is returned.
pub fn relation_degree(c: &CoxCandidate) -> Result<u64, InvariantError> {
    let gamma = c.block_degree(0);
    if c.triple.r() >= 2 {
        for i in 1..c.weights.len() {
            let found = c.block_degree(i);
            if found != gamma {
                return Err(InvariantError::NotHomogeneous {
                    block: i,
                    expected: gamma,
                    found,
                });
            }
        }
    }
    Ok(gamma)
}

fn gcd_all<'a>(it: impl IntoIterator<Item = &'a u64>) -> u64 {
    it.into_iter().fold(0, |g, &x| g.gcd(&x))
}

fn lcm_all<'a>(it: impl IntoIterator<Item = &'a u64>) -> u64 {
    it.into_iter().fold(1, |g, &x| g.lcm(&x))
}

/// Weights are positive and any `n - 1` of them generate Z.
pub fn is_cox_grading(c: &CoxCandidate) -> bool {
    let w = c.all_weights();
    weights_are_cox(&w)
}

pub(crate) fn weights_are_cox(w: &[u64]) -> bool {
    if w.contains(&0) {
        return false;
    }
    (0..w.len()).all(|i| {
        w.iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(0u64, |g, (_, &x)| g.gcd(&x))
            == 1
    })
}

/// Order of the local class group at a point whose nonzero coordinates are
/// `support`: the gcd of the weights there.
pub fn local_class_group_order(weights: &[u64], support: &[usize]) -> Result<u64, InvariantError> {
    if support.is_empty() {
        return Err(InvariantError::EmptySupport);
    }
    let mut g = 0;
    for &i in support {
        let w = weights.get(i).ok_or(InvariantError::SupportOutOfRange(i))?;
        g = w.gcd(&g);
    }
    Ok(g)
}

/// Picard index `[Cl(X) : Pic(X)]` from the closed formula for the shape.
pub fn picard_index(c: &CoxCandidate) -> u64 {
    let w = &c.weights;
    let u = &c.free_weights;
    let n = c.triple.n();
    let r = c.triple.r();
    let big_blocks = |count: usize| lcm_all(w[..count].iter().flatten()).lcm(&lcm_all(u));
    match CaseTag::of(&c.triple) {
        CaseTag::Toric => lcm_all(c.all_weights().iter()),
        CaseTag::Ii => {
            let mut mu = lcm_all(u);
            for i in 0..=r {
                let g = gcd_all((0..=r).filter(|&j| j != i).map(|j| &w[j][0]));
                mu = mu.lcm(&g);
            }
            mu
        }
        CaseTag::Iii => big_blocks(1).lcm(&gcd_all((1..=r).map(|i| &w[i][0]))),
        CaseTag::Iv => big_blocks(2),
        CaseTag::V => big_blocks(n.iter().take_while(|&&x| x > 1).count()),
    }
}

/// Picard index as the lcm of local class group orders over all coordinate
/// supports of points of the variety.
///
/// A support is realized iff the number of blocks not contained in it is
/// 0, 1 or all of them: the tuple `(f_0, .., f_r)` of a point is
/// `(det(a_i, y))_i` for some `y`, so it has no zero entry, exactly one, or is
/// zero. Without relations every nonempty support occurs.
pub fn picard_index_by_strata(c: &CoxCandidate) -> u64 {
    let w = c.all_weights();
    let t = &c.triple;
    let nvars = w.len();
    assert!(nvars < 32, "too many variables for support enumeration");
    let blocks = t.n().len();
    let mut mu = 1u64;
    for mask in 1u32..(1 << nvars) {
        if t.r() >= 2 {
            let outside = (0..blocks)
                .filter(|&i| (0..t.n()[i]).any(|j| mask & (1 << t.var_index(i, j)) == 0))
                .count();
            if outside > 1 && outside < blocks {
                continue;
            }
        }
        let g = (0..nvars)
            .filter(|&k| mask & (1 << k) != 0)
            .fold(0u64, |g, k| g.gcd(&w[k]));
        mu = mu.lcm(&g);
    }
    mu
}

/// `-K = sum of all weights - (r - 1) gamma`.
pub fn anticanonical_class(c: &CoxCandidate) -> Result<i64, InvariantError> {
    let gamma = relation_degree(c)?;
    let total: u64 = c.all_weights().iter().sum();
    Ok(total as i64 - (c.relation_count() as u64 * gamma) as i64)
}

/// `(-K)^d = (-K)^d * gamma^(r-1) / prod of all weights`.
pub fn anticanonical_selfintersection(c: &CoxCandidate, d: usize) -> Result<BigRational, InvariantError> {
    let gamma = relation_degree(c)?;
    let k = BigInt::from(anticanonical_class(c)?);
    let num = Pow::pow(&k, d) * Pow::pow(BigInt::from(gamma), c.relation_count());
    let den: BigInt = c.all_weights().iter().map(|&x| BigInt::from(x)).product();
    Ok(BigRational::new(num, den))
}

/// Fano iff `(r - 1) gamma < sum of all weights`.
pub fn is_fano(c: &CoxCandidate) -> Result<bool, InvariantError> {
    Ok(anticanonical_class(c)? > 0)
}

/// Upper bound for the number of deformation types of Fano varieties of
/// dimension `d` and Picard index `mu` with a complexity-one torus action and
/// class group Z.
pub fn delta_bound(d: u64, mu: u64) -> BigUint {
    assert!(d >= 1 && mu >= 1, "dimension and index must be positive");
    let xi = prime_count;
    let base = BigUint::from(6 * d * mu);
    let e1 = 2 * xi(3 * d * mu) + d - 2;
    let e2 = xi(mu).pow(2) + 2 * xi((d + 2) * mu) + 2 * d + 2;
    Pow::pow(base, e1) * Pow::pow(BigUint::from(mu), e2)
}

/// Invariants of one candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub gamma: u64,
    pub mu: u64,
    pub minus_k: i64,
    #[serde(with = "rational_string")]
    pub minus_k_power_d: BigRational,
    pub fano: bool,
    pub locally_factorial: bool,
}

impl InvariantReport {
    pub fn compute(c: &CoxCandidate) -> Result<Self, InvariantError> {
        let gamma = relation_degree(c)?;
        let mu = picard_index(c);
        Ok(Self {
            gamma,
            mu,
            minus_k: anticanonical_class(c)?,
            minus_k_power_d: anticanonical_selfintersection(c, c.dimension())?,
            fano: is_fano(c)?,
            locally_factorial: mu == 1,
        })
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        crate::ring::parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{validate_triple, TripleData};

    fn cand(l: Vec<Vec<u64>>, w: Vec<Vec<u64>>, u: Vec<u64>) -> CoxCandidate {
        let t = validate_triple(&TripleData::new(l, u.len())).unwrap();
        CoxCandidate::new(t, w, u).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn threefold_row_one() {
        let c = cand(
            vec![vec![1, 5], vec![3], vec![2]],
            vec![vec![1, 1], vec![2], vec![3]],
            vec![1],
        );
        assert_eq!(relation_degree(&c), Ok(6));
        assert!(is_cox_grading(&c));
        assert_eq!(anticanonical_selfintersection(&c, 3), Ok(q(8, 1)));
        assert_eq!(picard_index(&c), 1);
        assert_eq!(picard_index_by_strata(&c), 1);
    }

    #[test]
    fn example_235() {
        let c = cand(
            vec![vec![2], vec![3], vec![5]],
            vec![vec![15], vec![10], vec![6]],
            vec![1],
        );
        assert_eq!(relation_degree(&c), Ok(30));
        assert_eq!(anticanonical_class(&c), Ok(2));
        assert_eq!(picard_index(&c), 30);
        assert_eq!(picard_index_by_strata(&c), 30);
        assert!(is_fano(&c).unwrap());
        let w = c.all_weights();
        assert_eq!(local_class_group_order(&w, &[0, 1]), Ok(5));
        assert_eq!(local_class_group_order(&w, &[]), Err(InvariantError::EmptySupport));
    }

    #[test]
    fn non_fano_examples() {
        let c = cand(
            vec![vec![2], vec![3], vec![7]],
            vec![vec![21], vec![14], vec![6]],
            vec![1],
        );
        assert_eq!(anticanonical_class(&c), Ok(0));
        assert!(!is_fano(&c).unwrap());
        assert_eq!(local_class_group_order(&c.all_weights(), &[0, 2]), Ok(3));
        let c = cand(
            vec![vec![2], vec![3], vec![11]],
            vec![vec![33], vec![22], vec![6]],
            vec![1],
        );
        assert_eq!(anticanonical_class(&c), Ok(-4));
    }

    #[test]
    fn surface_row_with_index_three() {
        let c = cand(
            vec![vec![1, 3], vec![5], vec![2]],
            vec![vec![1, 3], vec![2], vec![5]],
            vec![],
        );
        assert_eq!(picard_index(&c), 3);
        assert_eq!(anticanonical_selfintersection(&c, 2), Ok(q(1, 3)));
    }

    #[test]
    fn projective_plane() {
        let c = cand(vec![vec![1]], vec![vec![1]], vec![1, 1]);
        assert_eq!(anticanonical_selfintersection(&c, 2), Ok(q(9, 1)));
        assert_eq!(CaseTag::of(&c.triple), CaseTag::Toric);
    }

    #[test]
    fn cox_criterion() {
        let c = cand(
            vec![vec![2, 2], vec![1], vec![3]],
            vec![vec![2, 4], vec![2], vec![3]],
            vec![],
        );
        assert!(!is_cox_grading(&c));
    }

    #[test]
    fn not_homogeneous() {
        let c = cand(vec![vec![2], vec![3], vec![5]], vec![vec![1], vec![1], vec![1]], vec![]);
        assert!(matches!(
            relation_degree(&c),
            Err(InvariantError::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn bound_values() {
        assert_eq!(delta_bound(2, 1), BigUint::from(2_985_984u64));
        assert_eq!(delta_bound(1, 1), BigUint::from(216u64));
    }

    #[test]
    fn report_json() {
        let c = cand(
            vec![vec![1, 3], vec![5], vec![2]],
            vec![vec![1, 3], vec![2], vec![5]],
            vec![],
        );
        let r = InvariantReport::compute(&c).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"minus_k_power_d\":\"1/3\""));
        let back: InvariantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
