//! Bounded exhaustive classification of Fano varieties with a torus action of
//! complexity one and class group Z, for fixed dimension and Picard index.
//!
//! The search runs over shapes `n`, the relation degree `gamma` and then the
//! exponents and weights of each block. A few facts keep it finite and small:
//!
//! * the Picard index is an lcm in which every weight of a block with more
//!   than one variable and every free weight occurs, so those weights divide
//!   some admissible index;
//! * exponents of single-variable blocks are pairwise coprime divisors of
//!   `gamma`, at least 2, listed in decreasing order;
//! * the Fano inequality `(r - 1) gamma < sum of weights` bounds `gamma`
//!   once the weights of the multi-variable blocks are bounded.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::invariants::{
    is_cox_grading, picard_index, weights_are_cox, CaseTag, CoxCandidate, InvariantError, InvariantReport,
};
use crate::linalg::prime_count;
use crate::ring::{validate_triple, TripleData};

/// Default limit on the number of weight assignments a search may examine.
pub const DEFAULT_RESOURCE_CAP: u64 = 20_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationQuery {
    pub dimension: usize,
    pub picard_indices: BTreeSet<u64>,
    pub include_toric: bool,
    /// Maximum number of complete weight assignments to examine.
    pub resource_cap: u64,
    pub parallel: bool,
}

impl ClassificationQuery {
    pub fn new(dimension: usize, picard_indices: impl IntoIterator<Item = u64>) -> Self {
        Self {
            dimension,
            picard_indices: picard_indices.into_iter().collect(),
            include_toric: false,
            resource_cap: DEFAULT_RESOURCE_CAP,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<(), ClassifyError> {
        if self.dimension == 0 {
            return Err(ClassifyError::InvalidQuery("dimension must be at least 1".into()));
        }
        if self.picard_indices.is_empty() {
            return Err(ClassifyError::InvalidQuery("no Picard index given".into()));
        }
        if self.picard_indices.contains(&0) {
            return Err(ClassifyError::InvalidQuery("Picard indices must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error(
        "resource cap of {cap} candidates exceeded in case {} after {examined} candidates ({found} records so far)",
        case.as_str()
    )]
    ResourceCapExceeded {
        cap: u64,
        case: CaseTag,
        examined: u64,
        found: usize,
    },
    #[error("record {key} violates the bounds of its case: {reason}")]
    CaseBoundViolated { key: String, reason: String },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Sorted discrete data identifying a candidate up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    /// `(n_i, [(l_ij, w_ij)])` per block.
    pub blocks: Vec<(usize, Vec<(u64, u64)>)>,
    pub u: Vec<u64>,
}

impl std::fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|(_, pairs)| {
                let p: Vec<String> = pairs.iter().map(|(l, w)| format!("{l}:{w}")).collect();
                format!("[{}]", p.join(" "))
            })
            .collect();
        write!(f, "{} u={:?}", blocks.join(""), self.u)
    }
}

/// Key of the canonical representative of `c`.
pub fn canonical_key(c: &CoxCandidate) -> CanonicalKey {
    raw_key(&canonicalize(c))
}

fn raw_key(c: &CoxCandidate) -> CanonicalKey {
    CanonicalKey {
        blocks: c
            .triple
            .l()
            .iter()
            .zip(&c.weights)
            .map(|(l, w)| (l.len(), l.iter().copied().zip(w.iter().copied()).collect()))
            .collect(),
        u: c.free_weights.clone(),
    }
}

fn desc<T: Ord>(v: &mut [T]) {
    v.sort_unstable_by(|a, b| b.cmp(a));
}

/// Sorted representative: `(l, w)` pairs descending inside each block,
/// blocks descending by size and then by their pairs, free weights
/// descending. Coefficient points are dropped.
///
/// Without relations all exponents play no role when they are 1, so the
/// weights are pooled and redistributed in descending order.
pub fn canonicalize(c: &CoxCandidate) -> CoxCandidate {
    let t = &c.triple;
    if t.r() <= 1 && t.l().iter().flatten().all(|&l| l == 1) {
        let mut all = c.all_weights();
        desc(&mut all);
        let mut it = all.into_iter();
        let weights: Vec<Vec<u64>> = t.n().iter().map(|&k| it.by_ref().take(k).collect()).collect();
        let triple = validate_triple(&TripleData::new(t.l().to_vec(), t.m()))
            .expect("dropping coefficient points keeps a triple admissible");
        return CoxCandidate::new(triple, weights, it.collect()).expect("same shape");
    }
    let mut blocks: Vec<Vec<(u64, u64)>> = t
        .l()
        .iter()
        .zip(&c.weights)
        .map(|(l, w)| {
            let mut pairs: Vec<(u64, u64)> = l.iter().copied().zip(w.iter().copied()).collect();
            desc(&mut pairs);
            pairs
        })
        .collect();
    blocks.sort_unstable_by(|a, b| (b.len(), b).cmp(&(a.len(), a)));
    let mut u = c.free_weights.clone();
    desc(&mut u);
    let l = blocks.iter().map(|b| b.iter().map(|p| p.0).collect()).collect();
    let w = blocks.iter().map(|b| b.iter().map(|p| p.1).collect()).collect();
    let triple = validate_triple(&TripleData::new(l, t.m())).expect("permuting blocks keeps a triple admissible");
    CoxCandidate::new(triple, w, u).expect("same shape")
}

/// One row of a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub candidate: CoxCandidate,
    pub report: InvariantReport,
    pub moduli_dimension: usize,
    pub case: CaseTag,
}

impl ClassificationRecord {
    /// Canonicalizes `c` and computes its invariants.
    pub fn from_candidate(c: &CoxCandidate) -> Result<Self, InvariantError> {
        let candidate = canonicalize(c);
        let report = InvariantReport::compute(&candidate)?;
        Ok(Self {
            moduli_dimension: candidate.triple.r().saturating_sub(2),
            case: CaseTag::of(&candidate.triple),
            candidate,
            report,
        })
    }

    pub fn key(&self) -> CanonicalKey {
        raw_key(&self.candidate)
    }

    /// Output order: case, relation degree, canonical data.
    pub fn sort_key(&self) -> (CaseTag, u64, CanonicalKey) {
        (self.case, self.report.gamma, self.key())
    }

    pub fn dimension(&self) -> usize {
        self.candidate.dimension()
    }
}

fn nth_primes(q: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(q);
    let mut x = 2u64;
    while out.len() < q {
        if (2..x).take_while(|p| p * p <= x).all(|p| !x.is_multiple_of(p)) {
            out.push(x);
        }
        x += 1;
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|&k| n.is_multiple_of(k)).collect()
}

#[derive(Clone, Debug)]
struct Job {
    case: CaseTag,
    /// Sizes of the multi-variable blocks, descending.
    sizes: Vec<usize>,
    /// Number of single-variable blocks.
    singles: usize,
    m: usize,
    gamma: u64,
}

struct Search<'a> {
    d: usize,
    query: &'a ClassificationQuery,
    /// Weights dividing some admissible index, descending.
    allowed: Vec<u64>,
    examined: AtomicU64,
    aborted: AtomicBool,
}

struct Abort;

// Weights of the multi-variable blocks of a partial assignment.
struct Partial {
    blocks: Vec<Vec<(u64, u64)>>,
    gcds: Vec<u64>,
    lcm: u64,
    sum: u64,
}

impl<'a> Search<'a> {
    fn new(query: &'a ClassificationQuery) -> Self {
        let mut allowed: BTreeSet<u64> = BTreeSet::new();
        for &mu in &query.picard_indices {
            allowed.extend(divisors(mu));
        }
        let mut allowed: Vec<u64> = allowed.into_iter().collect();
        desc(&mut allowed);
        Self {
            d: query.dimension,
            query,
            allowed,
            examined: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    fn divides_some_index(&self, x: u64) -> bool {
        self.query.picard_indices.iter().any(|mu| mu % x == 0)
    }

    fn tick(&self) -> Result<(), Abort> {
        let n = self.examined.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.query.resource_cap || self.aborted.load(Ordering::Relaxed) {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Abort);
        }
        Ok(())
    }

    fn jobs(&self) -> Vec<Job> {
        let d = self.d;
        let wmax = self.allowed[0];
        let mut jobs = Vec::new();

        // At least one block with two or more variables: s + 1 of them, with
        // sizes summing to d + s - m.
        for s in 0..d.saturating_sub(1) {
            let case = match s {
                0 => CaseTag::Iii,
                1 => CaseTag::Iv,
                _ => CaseTag::V,
            };
            for sizes in size_partitions(s + 1, d + s) {
                let m = d + s - sizes.iter().sum::<usize>();
                let free_vars = (sizes.iter().sum::<usize>() + m) as u64;
                let bound = BigRational::from_integer(BigInt::from(free_vars * wmax));
                for q in 0.. {
                    if s + q < 2 {
                        continue;
                    }
                    let primes = nth_primes(q);
                    // smallest possible value of (r - 1) - sum 1/l over singleton blocks
                    let c_min = primes
                        .iter()
                        .fold(BigRational::from_integer(BigInt::from(s as i64 - 1)), |acc, &p| {
                            acc + BigRational::new(BigInt::from(p - 1), BigInt::from(p))
                        });
                    let ratio = &bound / &c_min;
                    let gmax = if ratio.is_integer() {
                        ratio.to_integer() - 1
                    } else {
                        ratio.floor().to_integer()
                    };
                    let gmax = gmax.to_u64().unwrap_or(0);
                    let primorial: u64 = primes.iter().product();
                    if primorial > gmax {
                        break;
                    }
                    for gamma in primorial..=gmax {
                        jobs.push(Job {
                            case,
                            sizes: sizes.clone(),
                            singles: q,
                            m,
                            gamma,
                        });
                    }
                }
            }
        }

        // Only single-variable blocks: gamma divides the Picard index.
        let mu_max = *self.query.picard_indices.iter().max().expect("nonempty");
        let gammas: BTreeSet<u64> = self.query.picard_indices.iter().flat_map(|&mu| divisors(mu)).collect();
        for q in 3.. {
            let primorial: u64 = nth_primes(q).iter().product();
            if primorial > mu_max {
                break;
            }
            for &gamma in gammas.range(primorial..) {
                jobs.push(Job {
                    case: CaseTag::Ii,
                    sizes: Vec::new(),
                    singles: q,
                    m: d - 1,
                    gamma,
                });
            }
        }
        jobs
    }

    /// Descending lists of `(l, w)` with `sum l w = gamma` and allowed `w`.
    fn block_options(&self, gamma: u64, size: usize) -> Vec<Vec<(u64, u64)>> {
        fn rec(
            allowed: &[u64],
            rem: u64,
            left: usize,
            prev: (u64, u64),
            acc: &mut Vec<(u64, u64)>,
            out: &mut Vec<Vec<(u64, u64)>>,
        ) {
            if left == 0 {
                if rem == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            for l in (1..=prev.0.min(rem)).rev() {
                for &w in allowed {
                    if (l, w) > prev || l * w > rem {
                        continue;
                    }
                    acc.push((l, w));
                    rec(allowed, rem - l * w, left - 1, (l, w), acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(
            &self.allowed,
            gamma,
            size,
            (u64::MAX, u64::MAX),
            &mut Vec::new(),
            &mut out,
        );
        out
    }

    fn run_job(&self, job: &Job) -> Result<Vec<CoxCandidate>, Abort> {
        let gamma = job.gamma;
        let singles = singleton_exponents(gamma, job.singles);
        if singles.is_empty() {
            return Ok(Vec::new());
        }
        let mut options: BTreeMap<usize, Vec<Vec<(u64, u64)>>> = BTreeMap::new();
        for &sz in &job.sizes {
            options.entry(sz).or_insert_with(|| self.block_options(gamma, sz));
        }
        let mut out = Vec::new();
        let mut partial = Partial {
            blocks: Vec::new(),
            gcds: Vec::new(),
            lcm: 1,
            sum: 0,
        };
        self.choose_blocks(job, &options, &singles, &mut partial, &mut out)?;
        Ok(out)
    }

    fn choose_blocks(
        &self,
        job: &Job,
        options: &BTreeMap<usize, Vec<Vec<(u64, u64)>>>,
        singles: &[Vec<u64>],
        p: &mut Partial,
        out: &mut Vec<CoxCandidate>,
    ) -> Result<(), Abort> {
        let i = p.blocks.len();
        if i == job.sizes.len() {
            for ls in singles {
                self.finish(job, ls, p, out)?;
            }
            return Ok(());
        }
        let size = job.sizes[i];
        for block in &options[&size] {
            if i > 0 && job.sizes[i - 1] == size && *block > p.blocks[i - 1] {
                continue;
            }
            let g = block.iter().fold(0, |g, &(l, _)| g.gcd(&l));
            if p.gcds.iter().any(|h| h.gcd(&g) != 1) {
                continue;
            }
            let lcm = block.iter().fold(p.lcm, |acc, &(_, w)| acc.lcm(&w));
            if !self.divides_some_index(lcm) {
                continue;
            }
            let (old_lcm, old_sum) = (p.lcm, p.sum);
            p.lcm = lcm;
            p.sum += block.iter().map(|&(_, w)| w).sum::<u64>();
            p.gcds.push(g);
            p.blocks.push(block.clone());
            let res = self.choose_blocks(job, options, singles, p, out);
            p.blocks.pop();
            p.gcds.pop();
            p.lcm = old_lcm;
            p.sum = old_sum;
            res?;
        }
        Ok(())
    }

    fn finish(&self, job: &Job, ls: &[u64], p: &Partial, out: &mut Vec<CoxCandidate>) -> Result<(), Abort> {
        if ls.iter().any(|l| p.gcds.iter().any(|g| g.gcd(l) != 1)) {
            return Ok(());
        }
        let gamma = job.gamma;
        let sw: Vec<u64> = ls.iter().map(|l| gamma / l).collect();
        let r = job.sizes.len() + ls.len() - 1;
        let need = (r as u64 - 1) * gamma;
        let fixed = p.sum + sw.iter().sum::<u64>();
        if need >= fixed + job.m as u64 * self.allowed[0] {
            return Ok(());
        }
        let base = match job.case {
            CaseTag::Ii => gamma,
            CaseTag::Iii => p.lcm.lcm(&sw.iter().fold(0, |g, &x| g.gcd(&x))),
            _ => p.lcm,
        };
        if !self.divides_some_index(base) {
            return Ok(());
        }
        let mut weights: Vec<u64> = p.blocks.iter().flatten().map(|&(_, w)| w).collect();
        weights.extend(&sw);
        let mut u = Vec::with_capacity(job.m);
        self.choose_free(job, ls, p, &weights, base, fixed, need, &mut u, 0, out)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_free(
        &self,
        job: &Job,
        ls: &[u64],
        p: &Partial,
        weights: &[u64],
        lcm: u64,
        sum: u64,
        need: u64,
        u: &mut Vec<u64>,
        start: usize,
        out: &mut Vec<CoxCandidate>,
    ) -> Result<(), Abort> {
        if u.len() == job.m {
            self.tick()?;
            if sum <= need || !self.query.picard_indices.contains(&lcm) {
                return Ok(());
            }
            let mut all = weights.to_vec();
            all.extend(u.iter());
            if !weights_are_cox(&all) {
                return Ok(());
            }
            let mut l: Vec<Vec<u64>> = p.blocks.iter().map(|b| b.iter().map(|x| x.0).collect()).collect();
            let mut w: Vec<Vec<u64>> = p.blocks.iter().map(|b| b.iter().map(|x| x.1).collect()).collect();
            for &x in ls {
                l.push(vec![x]);
                w.push(vec![job.gamma / x]);
            }
            let triple = validate_triple(&TripleData::new(l, job.m)).expect("coprime blocks");
            let c = CoxCandidate::new(triple, w, u.clone()).expect("positive weights");
            debug_assert_eq!(picard_index(&c), lcm);
            out.push(c);
            return Ok(());
        }
        for k in start..self.allowed.len() {
            let x = self.allowed[k];
            let next = lcm.lcm(&x);
            if !self.divides_some_index(next) {
                continue;
            }
            u.push(x);
            let res = self.choose_free(job, ls, p, weights, next, sum + x, need, u, k, out);
            u.pop();
            res?;
        }
        Ok(())
    }

    /// Weighted projective spaces of dimension d.
    fn toric(&self) -> Result<Vec<CoxCandidate>, Abort> {
        let mut out = Vec::new();
        let mut w = Vec::new();
        self.toric_rec(&mut w, 0, 1, &mut out)?;
        Ok(out)
    }

    fn toric_rec(&self, w: &mut Vec<u64>, start: usize, lcm: u64, out: &mut Vec<CoxCandidate>) -> Result<(), Abort> {
        if w.len() == self.d + 1 {
            self.tick()?;
            if self.query.picard_indices.contains(&lcm) && weights_are_cox(w) {
                let triple =
                    validate_triple(&TripleData::new(vec![vec![1], vec![1]], self.d - 1)).expect("toric triple");
                let c =
                    CoxCandidate::new(triple, vec![vec![w[0]], vec![w[1]]], w[2..].to_vec()).expect("positive weights");
                out.push(c);
            }
            return Ok(());
        }
        for k in start..self.allowed.len() {
            let x = self.allowed[k];
            let next = lcm.lcm(&x);
            if !self.divides_some_index(next) {
                continue;
            }
            w.push(x);
            let res = self.toric_rec(w, k, next, out);
            w.pop();
            res?;
        }
        Ok(())
    }
}

/// Descending sequences of `parts` integers `>= 2` with sum at most `max_total`.
fn size_partitions(parts: usize, max_total: usize) -> Vec<Vec<usize>> {
    fn rec(parts: usize, max_part: usize, rem: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            out.push(acc.clone());
            return;
        }
        let hi = max_part.min(rem.saturating_sub(2 * (parts - 1)));
        for x in (2..=hi).rev() {
            acc.push(x);
            rec(parts - 1, x, rem - x, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, max_total, max_total, &mut Vec::new(), &mut out);
    out
}

/// Strictly decreasing, pairwise coprime divisors `>= 2` of `gamma`.
fn singleton_exponents(gamma: u64, count: usize) -> Vec<Vec<u64>> {
    fn rec(divs: &[u64], count: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if acc.len() == count {
            out.push(acc.clone());
            return;
        }
        for (k, &x) in divs.iter().enumerate() {
            if acc.iter().all(|y| y.gcd(&x) == 1) {
                acc.push(x);
                rec(&divs[k + 1..], count, acc, out);
                acc.pop();
            }
        }
    }
    let mut divs: Vec<u64> = divisors(gamma).into_iter().filter(|&x| x >= 2).collect();
    desc(&mut divs);
    let mut out = Vec::new();
    rec(&divs, count, &mut Vec::new(), &mut out);
    out
}

/// All non-toric (unless requested) Fano candidates of the query, one per
/// canonical form, sorted by case, relation degree and canonical data.
pub fn enumerate(query: &ClassificationQuery) -> Result<Vec<ClassificationRecord>, ClassifyError> {
    query.validate()?;
    let search = Search::new(query);
    let jobs = search.jobs();
    let run = |job: &Job| search.run_job(job).map_err(|_| job.case);
    let results: Vec<Result<Vec<CoxCandidate>, CaseTag>> = if query.parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    let mut candidates = Vec::new();
    let mut failed = None;
    for res in results {
        match res {
            Ok(c) => candidates.extend(c),
            Err(case) => failed = failed.or(Some(case)),
        }
    }
    if query.include_toric && failed.is_none() {
        match search.toric() {
            Ok(c) => candidates.extend(c),
            Err(Abort) => failed = Some(CaseTag::Toric),
        }
    }

    let mut records: BTreeMap<CanonicalKey, ClassificationRecord> = BTreeMap::new();
    for c in &candidates {
        debug_assert!(is_cox_grading(c));
        let rec = ClassificationRecord::from_candidate(c)?;
        records.entry(rec.key()).or_insert(rec);
    }
    if let Some(case) = failed {
        return Err(ClassifyError::ResourceCapExceeded {
            cap: query.resource_cap,
            case,
            examined: search.examined.load(Ordering::Relaxed),
            found: records.len(),
        });
    }
    let mut records: Vec<ClassificationRecord> = records.into_values().collect();
    records.sort_by_key(ClassificationRecord::sort_key);
    for rec in &records {
        if let Err(reason) = check_case_bounds(rec) {
            return Err(ClassifyError::CaseBoundViolated {
                key: rec.key().to_string(),
                reason,
            });
        }
    }
    Ok(records)
}

/// Checks a record against the a priori bounds on weights, exponents and
/// `gamma` that hold in its case.
pub fn check_case_bounds(rec: &ClassificationRecord) -> Result<(), String> {
    let c = &rec.candidate;
    let t = &c.triple;
    let d = rec.dimension() as u64;
    let mu = rec.report.mu;
    let gamma = rec.report.gamma;
    let r = t.r();
    let n = t.n();
    let l = t.l();
    let w = &c.weights;
    let u = &c.free_weights;
    let fail = |what: &str| Err(what.to_string());

    if rec.moduli_dimension != r.saturating_sub(2) {
        return fail("moduli dimension differs from r - 2");
    }
    if !rec.report.fano {
        return fail("not Fano");
    }
    if u.iter().any(|&x| x > mu) {
        return fail("free weight exceeds mu");
    }
    let singles_from = n.iter().take_while(|&&k| k > 1).count();
    let ls: Vec<u64> = l[singles_from..].iter().map(|b| b[0]).collect();
    if r >= 2 {
        if ls.iter().any(|&x| x < 2) || ls.windows(2).any(|p| p[0] <= p[1]) {
            return fail("singleton exponents are not strictly decreasing and at least 2");
        }
        let prod: u64 = ls.iter().product();
        if !gamma.is_multiple_of(prod) {
            return fail("product of singleton exponents does not divide gamma");
        }
    }
    let r64 = r as u64;
    // pairwise coprime block gcds above 1 need distinct primes below the bound
    let nontrivial_blocks = l.iter().filter(|b| b.iter().fold(0u64, |g, &x| g.gcd(&x)) > 1).count() as u64;
    let all_lw = || l.iter().flatten().chain(w.iter().flatten());
    match rec.case {
        CaseTag::Toric => {
            if c.all_weights().iter().any(|&x| x > mu) {
                return fail("weight exceeds mu");
            }
            if (t.t_count() + t.m()) as u64 > d + 1 {
                return fail("n + m > d + 1");
            }
        }
        CaseTag::Ii => {
            if r64 + 1 > prime_count(mu) {
                return fail("r > xi(mu) - 1");
            }
            if t.m() as u64 != d - 1 {
                return fail("m != d - 1");
            }
            let bound = mu.pow(r as u32);
            if w.iter().any(|b| b[0] > bound) {
                return fail("w > mu^r");
            }
            let prod: u64 = ls.iter().product();
            if !mu.is_multiple_of(prod) || gamma > mu.pow(r as u32 + 1) {
                return fail("exponent product does not divide mu or gamma too large");
            }
        }
        CaseTag::Iii => {
            let b = 6 * d * mu;
            if nontrivial_blocks > prime_count(6 * d * mu) {
                return fail("more blocks with nontrivial gcd than primes below the bound");
            }
            if w[0].iter().any(|&x| x > mu) || l[0].iter().any(|&x| x >= b) {
                return fail("block 0 bound");
            }
            if w[1][0] >= 2 * d * mu || l[1][0] >= 3 * d * mu {
                return fail("w_11 or l_11 bound");
            }
            if r >= 2 && (w[2][0] >= 3 * d * mu || l[2][0] >= 2 * d * mu) {
                return fail("w_21 or l_21 bound");
            }
            if (2..=r).any(|i| w[i][0] >= b || l[i][0] >= 2 * d * mu) {
                return fail("singleton bound");
            }
            if gamma >= b {
                return fail("gamma >= 6 d mu");
            }
        }
        CaseTag::Iv => {
            let b = 2 * (d + 1) * mu;
            if nontrivial_blocks > prime_count(b) {
                return fail("more blocks with nontrivial gcd than primes below the bound");
            }
            if w[..2].iter().flatten().any(|&x| x > mu) {
                return fail("w_ij > mu in blocks 0, 1");
            }
            if r >= 2 && w[2][0] >= (d + 1) * mu {
                return fail("w_21 bound");
            }
            if all_lw().any(|&x| x >= b) || gamma >= b {
                return fail("2(d+1)mu bound");
            }
        }
        CaseTag::V => {
            let b = (d + 2) * mu;
            if nontrivial_blocks > prime_count(b) {
                return fail("more blocks with nontrivial gcd than primes below the bound");
            }
            if w[..singles_from].iter().flatten().any(|&x| x > mu) {
                return fail("w_ij > mu in multi-variable blocks");
            }
            if all_lw().any(|&x| x >= b) || gamma >= b {
                return fail("(d+2)mu bound");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_sizes() {
        assert_eq!(size_partitions(1, 3), vec![vec![3], vec![2]]);
        assert_eq!(size_partitions(2, 5), vec![vec![3, 2], vec![2, 2]]);
        assert!(size_partitions(2, 3).is_empty());
    }

    #[test]
    fn singleton_sets() {
        assert_eq!(singleton_exponents(30, 3), vec![vec![5, 3, 2]]);
        assert_eq!(singleton_exponents(12, 2), vec![vec![4, 3], vec![3, 2]]);
        assert!(singleton_exponents(8, 2).is_empty());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let t = validate_triple(&TripleData::new(vec![vec![1, 1], vec![1, 1], vec![2]], 0)).unwrap();
        let c = CoxCandidate::new(t, vec![vec![1, 1], vec![1, 1], vec![1]], vec![]).unwrap();
        let k = canonicalize(&c);
        assert_eq!(canonicalize(&k), k);
    }

    #[test]
    fn locally_factorial_threefolds() {
        let recs = enumerate(&ClassificationQuery::new(3, [1])).unwrap();
        assert_eq!(recs.len(), 9);
    }
}
