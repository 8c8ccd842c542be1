//! Polyhedral divisors on the projective line over a lattice of rank at most
//! two, smoothness of their charts, and discrepancies of refinements.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    clear_denominators, cone_contains, cone_is_regular, primitive, solve_rational_rows, IntMatrix, SolveError,
};
use crate::ring::parse_rational;

/// Highest lattice rank handled here.
pub const MAX_LATTICE_RANK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TdivError {
    #[error("lattice rank {0} is not supported (at most {MAX_LATTICE_RANK})")]
    UnsupportedRank(usize),
    #[error("vector {0:?} has the wrong length")]
    Dimension(String),
    #[error("a polyhedron needs at least one vertex")]
    NoVertices,
    #[error("the coefficient at {0} does not have the tail cone of the divisor")]
    TailMismatch(PointLabel),
    #[error("u is not in the dual of the tail cone; the minimum at {0} is unbounded")]
    UnboundedBelow(PointLabel),
    #[error("smoothness test needs at most two nontrivial coefficients on a complete locus, found {0}")]
    UnsupportedShape(usize),
    #[error("vertex at {0} is not at a marked point")]
    UnmarkedPoint(PointLabel),
    #[error("original vertex {vertex} at {point} is not a vertex of the base divisor")]
    NotInBase { point: PointLabel, vertex: String },
    #[error("the discrepancy system has more than one solution")]
    Degenerate,
    #[error("zero ray generator")]
    ZeroRay,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLabel {
    Zero,
    One,
    Infinity,
    Named(String),
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Zero => write!(f, "0"),
            PointLabel::One => write!(f, "1"),
            PointLabel::Infinity => write!(f, "inf"),
            PointLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for PointLabel {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "0" => PointLabel::Zero,
            "1" => PointLabel::One,
            "inf" | "infinity" | "∞" => PointLabel::Infinity,
            other => PointLabel::Named(other.to_string()),
        })
    }
}

impl Serialize for PointLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PointLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(s.parse().expect("infallible"))
    }
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn pair(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smallest positive integer `k` with `k v` integral.
pub fn denominator_lcm(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn fmt_vec(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Convex hull of finitely many rational vertices plus a cone of integer rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    vertices: Vec<Vec<BigRational>>,
    rays: Vec<Vec<BigInt>>,
}

impl Polyhedron {
    /// Builds a polyhedron and drops redundant vertices and rays.
    pub fn new(vertices: Vec<Vec<BigRational>>, rays: Vec<Vec<BigInt>>) -> Result<Self, TdivError> {
        let dim = vertices.first().ok_or(TdivError::NoVertices)?.len();
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(TdivError::Dimension(fmt_vec(v)));
        }
        if let Some(r) = rays.iter().find(|r| r.len() != dim) {
            return Err(TdivError::Dimension(format!("{r:?}")));
        }
        if rays.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return Err(TdivError::ZeroRay);
        }
        let mut p = Self { vertices, rays };
        p.prune();
        Ok(p)
    }

    /// The cone `sigma` itself, as a polyhedron with vertex 0.
    pub fn cone(dim: usize, rays: Vec<Vec<BigInt>>) -> Result<Self, TdivError> {
        Self::new(vec![vec![BigRational::zero(); dim]], rays)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    fn ray_generators(&self) -> Vec<Vec<BigRational>> {
        self.rays.iter().map(|r| r.iter().map(q).collect()).collect()
    }

    fn prune(&mut self) {
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        for r in &self.rays {
            let p = primitive(r);
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        // a ray is redundant if the others generate it
        let mut k = 0;
        while k < rays.len() {
            let others: Vec<Vec<BigRational>> = rays
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, r)| r.iter().map(q).collect())
                .collect();
            let target: Vec<BigRational> = rays[k].iter().map(q).collect();
            if cone_contains(&others, &target) && !others.is_empty() {
                rays.remove(k);
            } else {
                k += 1;
            }
        }
        self.rays = rays;

        let mut verts: Vec<Vec<BigRational>> = Vec::new();
        for v in &self.vertices {
            if !verts.contains(v) {
                verts.push(v.clone());
            }
        }
        let mut k = 0;
        while k < verts.len() {
            let rest: Vec<Vec<BigRational>> = verts
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, v)| v.clone())
                .collect();
            if !rest.is_empty() && Self::hull_contains(&rest, &self.rays, &verts[k]) {
                verts.remove(k);
            } else {
                k += 1;
            }
        }
        self.vertices = verts;
    }

    // x in conv(vertices) + cone(rays), via the homogenized cone.
    fn hull_contains(vertices: &[Vec<BigRational>], rays: &[Vec<BigInt>], x: &[BigRational]) -> bool {
        let mut gens: Vec<Vec<BigRational>> = vertices
            .iter()
            .map(|v| std::iter::once(BigRational::one()).chain(v.iter().cloned()).collect())
            .collect();
        gens.extend(
            rays.iter()
                .map(|r| std::iter::once(BigRational::zero()).chain(r.iter().map(q)).collect()),
        );
        let target: Vec<BigRational> = std::iter::once(BigRational::one()).chain(x.iter().cloned()).collect();
        cone_contains(&gens, &target)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        Self::hull_contains(&self.vertices, &self.rays, x)
    }

    /// Same tail cone as the cone generated by `rays`.
    pub fn has_tail(&self, rays: &[Vec<BigInt>]) -> bool {
        let mine = self.ray_generators();
        let theirs: Vec<Vec<BigRational>> = rays.iter().map(|r| r.iter().map(q).collect()).collect();
        mine.iter().all(|r| cone_contains(&theirs, r)) && theirs.iter().all(|r| cone_contains(&mine, r))
    }

    /// Set equality.
    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.has_tail(&other.rays)
            && self.vertices.iter().all(|v| other.contains(v))
            && other.vertices.iter().all(|v| self.contains(v))
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Polyhedron {
        let mut vertices = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                vertices.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        Polyhedron::new(vertices, rays).expect("sum of valid polyhedra")
    }

    /// `min <u, v>` over the polyhedron, `None` if unbounded below.
    pub fn min_pairing(&self, u: &[BigRational]) -> Option<BigRational> {
        if self
            .rays
            .iter()
            .any(|r| pair(&r.iter().map(q).collect::<Vec<_>>(), u).is_negative())
        {
            return None;
        }
        self.vertices.iter().map(|v| pair(v, u)).min()
    }

    /// Generators of `cone({sign} x P)` in `Z x N`, integral and primitive.
    pub fn homogenized_generators(&self, sign: i64) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for v in &self.vertices {
            let lifted: Vec<BigRational> = std::iter::once(BigRational::from_integer(sign.into()))
                .chain(v.iter().cloned())
                .collect();
            let (_, ints) = clear_denominators(&lifted);
            out.push(primitive(&ints));
        }
        for r in &self.rays {
            out.push(std::iter::once(BigInt::zero()).chain(r.iter().cloned()).collect());
        }
        out
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(|v| fmt_vec(v)).collect();
        write!(f, "conv{{{}}}", v.join(", "))?;
        if !self.rays.is_empty() {
            let r: Vec<String> = self.rays.iter().map(|r| format!("{r:?}")).collect();
            write!(f, " + cone{{{}}}", r.join(", "))?;
        }
        Ok(())
    }
}

/// `D = sum D_y y` with polyhedral coefficients sharing the tail cone.
/// Points not listed carry the tail cone itself; `None` marks a point outside
/// the locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    lattice_rank: usize,
    tail: Vec<Vec<BigInt>>,
    coefficients: BTreeMap<PointLabel, Option<Polyhedron>>,
}

/// Minkowski sum of the coefficients and whether every point is in the locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree {
    pub polyhedron: Polyhedron,
    pub full_locus: bool,
}

impl PolyhedralDivisor {
    pub fn new(
        lattice_rank: usize,
        tail: Vec<Vec<BigInt>>,
        coefficients: BTreeMap<PointLabel, Option<Polyhedron>>,
    ) -> Result<Self, TdivError> {
        if lattice_rank > MAX_LATTICE_RANK {
            return Err(TdivError::UnsupportedRank(lattice_rank));
        }
        if let Some(r) = tail.iter().find(|r| r.len() != lattice_rank) {
            return Err(TdivError::Dimension(format!("{r:?}")));
        }
        for (y, p) in &coefficients {
            if let Some(p) = p {
                if p.dim() != lattice_rank {
                    return Err(TdivError::Dimension(y.to_string()));
                }
                if !p.has_tail(&tail) {
                    return Err(TdivError::TailMismatch(y.clone()));
                }
            }
        }
        Ok(Self {
            lattice_rank,
            tail,
            coefficients,
        })
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn tail(&self) -> &[Vec<BigInt>] {
        &self.tail
    }

    pub fn coefficients(&self) -> &BTreeMap<PointLabel, Option<Polyhedron>> {
        &self.coefficients
    }

    pub fn tail_polyhedron(&self) -> Polyhedron {
        Polyhedron::cone(self.lattice_rank, self.tail.clone()).expect("valid tail")
    }

    /// Coefficient at `y`; unlisted points carry the tail cone.
    pub fn coefficient(&self, y: &PointLabel) -> Option<Polyhedron> {
        match self.coefficients.get(y) {
            Some(p) => p.clone(),
            None => Some(self.tail_polyhedron()),
        }
    }

    pub fn full_locus(&self) -> bool {
        self.coefficients.values().all(Option::is_some)
    }

    pub fn degree_polytope(&self) -> Degree {
        let polyhedron = self
            .coefficients
            .values()
            .flatten()
            .fold(self.tail_polyhedron(), |acc, p| acc.minkowski_sum(p));
        Degree {
            polyhedron,
            full_locus: self.full_locus(),
        }
    }

    /// `deg D` is strictly contained in the tail cone.
    pub fn is_proper(&self) -> bool {
        let deg = self.degree_polytope().polyhedron;
        let sigma = self.tail_polyhedron();
        let origin = vec![BigRational::zero(); self.lattice_rank];
        deg.vertices().iter().all(|v| sigma.contains(v)) && !deg.contains(&origin)
    }

    /// `D(u) = sum_y min <u, D_y> y` over the listed nonempty coefficients.
    pub fn evaluate(&self, u: &[BigRational]) -> Result<BTreeMap<PointLabel, BigRational>, TdivError> {
        if u.len() != self.lattice_rank {
            return Err(TdivError::Dimension(fmt_vec(u)));
        }
        let mut out = BTreeMap::new();
        for (y, p) in &self.coefficients {
            if let Some(p) = p {
                let m = p.min_pairing(u).ok_or_else(|| TdivError::UnboundedBelow(y.clone()))?;
                out.insert(y.clone(), m);
            }
        }
        if self.tail_polyhedron().min_pairing(u).is_none() {
            return Err(TdivError::UnboundedBelow(PointLabel::Named("generic".into())));
        }
        Ok(out)
    }

    fn is_trivial(&self, p: &Polyhedron) -> bool {
        p.same_set(&self.tail_polyhedron())
    }

    /// Smoothness of the affine chart `X(D)`.
    ///
    /// With affine locus every `cone({1} x D_y)` has to be regular. With
    /// complete locus `D` must have at most two nontrivial coefficients
    /// `D_y, D_z`, and `cone({1} x D_y) + cone({-1} x D_z)` has to be regular.
    pub fn is_smooth_chart(&self) -> Result<bool, TdivError> {
        let sigma = self.tail_polyhedron();
        if !self.full_locus() {
            let mut pieces: Vec<&Polyhedron> = self.coefficients.values().flatten().collect();
            pieces.push(&sigma);
            return Ok(pieces.iter().all(|p| {
                let g = p.homogenized_generators(1);
                cone_is_regular(&IntMatrix::from_rows_with_cols(self.lattice_rank + 1, g))
            }));
        }
        let nontrivial: Vec<&Polyhedron> = self
            .coefficients
            .values()
            .flatten()
            .filter(|p| !self.is_trivial(p))
            .collect();
        if nontrivial.len() > 2 {
            return Err(TdivError::UnsupportedShape(nontrivial.len()));
        }
        let dy = nontrivial.first().copied().unwrap_or(&sigma);
        let dz = nontrivial.get(1).copied().unwrap_or(&sigma);
        let mut g = dy.homogenized_generators(1);
        g.extend(dz.homogenized_generators(-1));
        Ok(cone_is_regular(&IntMatrix::from_rows_with_cols(
            self.lattice_rank + 1,
            g,
        )))
    }
}

/// A vertex of a refined slice, marked as exceptional or original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedVertex {
    pub point: PointLabel,
    pub vertex: Vec<BigRational>,
    pub exceptional: bool,
}

impl MarkedVertex {
    /// Order `mu(v)` of the generic isotropy group along `D_{y,v}`.
    pub fn mu(&self) -> BigInt {
        denominator_lcm(&self.vertex)
    }
}

/// An extremal ray of the refined tail fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedRay {
    pub ray: Vec<BigInt>,
    pub exceptional: bool,
}

/// Refinement of a polyhedral divisor: the vertices of the refined slices at
/// the marked points and the extremal rays, each flagged as exceptional or
/// original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementData {
    pub lattice_rank: usize,
    /// The points `y_1, .., y_s` whose slices differ from the tail fan.
    pub marked_points: Vec<PointLabel>,
    pub vertices: Vec<MarkedVertex>,
    pub rays: Vec<MarkedRay>,
    /// A point whose slice is the tail fan, used for the canonical divisor.
    pub y0: PointLabel,
    pub base: Option<PolyhedralDivisor>,
}

impl RefinementData {
    pub fn validate(&self) -> Result<(), TdivError> {
        if self.lattice_rank > MAX_LATTICE_RANK {
            return Err(TdivError::UnsupportedRank(self.lattice_rank));
        }
        for v in &self.vertices {
            if v.vertex.len() != self.lattice_rank {
                return Err(TdivError::Dimension(fmt_vec(&v.vertex)));
            }
            if !self.marked_points.contains(&v.point) {
                return Err(TdivError::UnmarkedPoint(v.point.clone()));
            }
        }
        for r in &self.rays {
            if r.ray.len() != self.lattice_rank {
                return Err(TdivError::Dimension(format!("{:?}", r.ray)));
            }
            if r.ray.iter().all(Zero::is_zero) {
                return Err(TdivError::ZeroRay);
            }
        }
        if self.marked_points.contains(&self.y0) {
            return Err(TdivError::Parse(format!("y0 = {} is a marked point", self.y0)));
        }
        if let Some(base) = &self.base {
            for v in self.vertices.iter().filter(|v| !v.exceptional) {
                let is_vertex = base
                    .coefficient(&v.point)
                    .is_some_and(|p| p.vertices().contains(&v.vertex));
                if !is_vertex {
                    return Err(TdivError::NotInBase {
                        point: v.point.clone(),
                        vertex: fmt_vec(&v.vertex),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Invariant prime divisors of `X(Xi)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorLabel {
    /// `D_{y,v}` for a vertex `v` of the slice at `y`.
    Vertex {
        point: PointLabel,
        vertex: Vec<BigRational>,
    },
    /// `D_rho` for an extremal ray.
    Ray(Vec<BigInt>),
}

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorLabel::Vertex { point, vertex } => write!(f, "D[{},{}]", point, fmt_vec(vertex)),
            DivisorLabel::Ray(r) => {
                let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
                write!(f, "D[({})]", parts.join(","))
            }
        }
    }
}

fn rational_divisor(
    fan: &RefinementData,
    u: &[BigRational],
    ord: &BTreeMap<PointLabel, BigRational>,
) -> BTreeMap<DivisorLabel, BigRational> {
    let mut out = BTreeMap::new();
    for v in &fan.vertices {
        let o = ord.get(&v.point).cloned().unwrap_or_else(BigRational::zero);
        let c = -q(&v.mu()) * (pair(&v.vertex, u) + o);
        out.insert(
            DivisorLabel::Vertex {
                point: v.point.clone(),
                vertex: v.vertex.clone(),
            },
            c,
        );
    }
    for r in &fan.rays {
        let n: Vec<BigRational> = primitive(&r.ray).iter().map(q).collect();
        out.insert(DivisorLabel::Ray(primitive(&r.ray)), -pair(&n, u));
    }
    let o = ord.get(&fan.y0).cloned().unwrap_or_else(BigRational::zero);
    out.insert(
        DivisorLabel::Vertex {
            point: fan.y0.clone(),
            vertex: vec![BigRational::zero(); fan.lattice_rank],
        },
        -o,
    );
    out
}

/// Divisor of the semi-invariant function `f chi^u`, where `ord` gives the
/// orders of `f` at points of the line.
pub fn semiinvariant_divisor(
    fan: &RefinementData,
    u: &[BigInt],
    ord: &BTreeMap<PointLabel, BigInt>,
) -> BTreeMap<DivisorLabel, BigInt> {
    let u: Vec<BigRational> = u.iter().map(q).collect();
    let ord = ord.iter().map(|(k, v)| (k.clone(), q(v))).collect();
    rational_divisor(fan, &u, &ord)
        .into_iter()
        .map(|(k, v)| (k, v.to_integer()))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// `K_X = (s - 2) D_{y0} - sum D_{y,v} - sum D_rho` over the marked points.
pub fn canonical_divisor(fan: &RefinementData) -> BTreeMap<DivisorLabel, BigInt> {
    let s = fan.marked_points.len() as i64;
    let mut out = BTreeMap::new();
    out.insert(
        DivisorLabel::Vertex {
            point: fan.y0.clone(),
            vertex: vec![BigRational::zero(); fan.lattice_rank],
        },
        BigInt::from(s - 2),
    );
    for v in &fan.vertices {
        out.insert(
            DivisorLabel::Vertex {
                point: v.point.clone(),
                vertex: v.vertex.clone(),
            },
            BigInt::from(-1),
        );
    }
    for r in &fan.rays {
        out.insert(DivisorLabel::Ray(primitive(&r.ray)), BigInt::from(-1));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingularityClass {
    #[serde(rename = "terminal")]
    Terminal,
    #[serde(rename = "canonical")]
    Canonical,
    #[serde(rename = "non-canonical")]
    NonCanonical,
    #[serde(rename = "not_q_gorenstein")]
    NotQGorenstein,
}

/// Sign convention used for the discrepancies.
pub const DISCREPANCY_CONVENTION: &str =
    "d(y,v) = mu(v) (<v,u> + alpha_y) - 1, d(rho) = <n_rho,u> - 1; zero on original divisors";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub alpha: BTreeMap<PointLabel, BigRational>,
    pub u: Vec<BigRational>,
    /// Discrepancies of the exceptional divisors, in input order.
    pub discrepancies: Vec<(DivisorLabel, BigRational)>,
    pub classification: SingularityClass,
}

#[derive(Serialize)]
struct DiscrepancyEntry {
    divisor: String,
    value: String,
}

#[derive(Serialize)]
struct DiscrepancyDoc {
    alpha: BTreeMap<String, String>,
    u: Vec<String>,
    discrepancies: Vec<DiscrepancyEntry>,
    classification: SingularityClass,
    convention: &'static str,
}

impl DiscrepancyReport {
    pub fn to_json(&self) -> String {
        let doc = DiscrepancyDoc {
            alpha: self.alpha.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            u: self.u.iter().map(ToString::to_string).collect(),
            discrepancies: self
                .discrepancies
                .iter()
                .map(|(d, v)| DiscrepancyEntry {
                    divisor: d.to_string(),
                    value: v.to_string(),
                })
                .collect(),
            classification: self.classification,
            convention: DISCREPANCY_CONVENTION,
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// `(alpha_1, .., alpha_s, u)` in the order of the marked points.
    pub fn solution(&self, fan: &RefinementData) -> Vec<BigRational> {
        fan.marked_points
            .iter()
            .map(|y| self.alpha[y].clone())
            .chain(self.u.iter().cloned())
            .collect()
    }
}

/// Solves for `(alpha, u)` with `K_X = div(f chi^u)` near the original
/// divisors and reads off the discrepancies of the exceptional ones.
pub fn solve_discrepancies(fan: &RefinementData) -> Result<DiscrepancyReport, TdivError> {
    fan.validate()?;
    let s = fan.marked_points.len();
    let k = fan.lattice_rank;
    let ncols = s + k;
    let zero = BigRational::zero;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut top = vec![zero(); ncols];
    for x in top.iter_mut().take(s) {
        *x = -BigRational::one();
    }
    rows.push(top);
    rhs.push(BigRational::from_integer(BigInt::from(2 - s as i64)));
    for v in fan.vertices.iter().filter(|v| !v.exceptional) {
        let mu = q(&v.mu());
        let idx = fan.marked_points.iter().position(|y| *y == v.point).expect("validated");
        let mut row = vec![zero(); ncols];
        row[idx] = mu.clone();
        for (j, x) in v.vertex.iter().enumerate() {
            row[s + j] = &mu * x;
        }
        rows.push(row);
        rhs.push(BigRational::one());
    }
    for r in fan.rays.iter().filter(|r| !r.exceptional) {
        let n = primitive(&r.ray);
        let mut row = vec![zero(); ncols];
        for (j, x) in n.iter().enumerate() {
            row[s + j] = q(x);
        }
        rows.push(row);
        rhs.push(BigRational::one());
    }

    let x = match solve_rational_rows(rows, rhs, ncols) {
        Ok(x) => x,
        Err(SolveError::NoSolution) => {
            return Ok(DiscrepancyReport {
                alpha: BTreeMap::new(),
                u: Vec::new(),
                discrepancies: Vec::new(),
                classification: SingularityClass::NotQGorenstein,
            })
        }
        Err(SolveError::NonUnique) => return Err(TdivError::Degenerate),
    };
    let alpha: BTreeMap<PointLabel, BigRational> =
        fan.marked_points.iter().cloned().zip(x[..s].iter().cloned()).collect();
    let u = x[s..].to_vec();

    // K_X - div(f chi^u) with ord_y f = alpha_y and ord_{y0} f = 2 - s.
    let mut ord = alpha.clone();
    ord.insert(fan.y0.clone(), BigRational::from_integer(BigInt::from(2 - s as i64)));
    let div = rational_divisor(fan, &u, &ord);
    let kx = canonical_divisor(fan);
    let coefficient = |label: &DivisorLabel| q(&kx[label]) - &div[label];

    let y0_label = DivisorLabel::Vertex {
        point: fan.y0.clone(),
        vertex: vec![zero(); k],
    };
    assert!(coefficient(&y0_label).is_zero(), "generic fiber must not contribute");

    let mut discrepancies = Vec::new();
    for v in &fan.vertices {
        let label = DivisorLabel::Vertex {
            point: v.point.clone(),
            vertex: v.vertex.clone(),
        };
        let d = q(&v.mu()) * (pair(&v.vertex, &u) + &alpha[&v.point]) - BigRational::one();
        assert_eq!(d, coefficient(&label), "discrepancy formulas disagree");
        if v.exceptional {
            discrepancies.push((label, d));
        } else {
            assert!(d.is_zero(), "original divisor {label} has discrepancy {d}");
        }
    }
    for r in &fan.rays {
        let n: Vec<BigRational> = primitive(&r.ray).iter().map(q).collect();
        let label = DivisorLabel::Ray(primitive(&r.ray));
        let d = pair(&n, &u) - BigRational::one();
        assert_eq!(d, coefficient(&label), "discrepancy formulas disagree");
        if r.exceptional {
            discrepancies.push((label, d));
        } else {
            assert!(d.is_zero(), "original divisor {label} has discrepancy {d}");
        }
    }

    let classification = if discrepancies.iter().all(|(_, d)| d.is_positive()) {
        SingularityClass::Terminal
    } else if discrepancies.iter().all(|(_, d)| !d.is_negative()) {
        SingularityClass::Canonical
    } else {
        SingularityClass::NonCanonical
    };
    Ok(DiscrepancyReport {
        alpha,
        u,
        discrepancies,
        classification,
    })
}

// ---- fan files ----

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VertexDoc {
    at: Vec<String>,
    #[serde(default)]
    exceptional: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SliceDoc {
    point: String,
    vertices: Vec<VertexDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RayDoc {
    ray: Vec<i64>,
    #[serde(default)]
    exceptional: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CoefficientDoc {
    point: String,
    #[serde(default)]
    empty: bool,
    #[serde(default)]
    vertices: Vec<Vec<String>>,
    #[serde(default)]
    rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DivisorDoc {
    tail: Vec<Vec<i64>>,
    #[serde(default)]
    coefficients: Vec<CoefficientDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct FanDoc {
    lattice_rank: usize,
    marked_points: Vec<String>,
    #[serde(default)]
    y0: Option<String>,
    #[serde(default)]
    slices: Vec<SliceDoc>,
    #[serde(default)]
    rays: Vec<RayDoc>,
    #[serde(default)]
    base: Option<DivisorDoc>,
}

#[derive(Debug, Error)]
pub enum FanFileError {
    #[error("cannot read fan file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Invalid(#[from] TdivError),
}

fn rational_vec(v: &[String]) -> Result<Vec<BigRational>, TdivError> {
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| TdivError::Parse(s.clone())))
        .collect()
}

fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn divisor_from_doc(rank: usize, doc: &DivisorDoc) -> Result<PolyhedralDivisor, TdivError> {
    let tail: Vec<Vec<BigInt>> = doc.tail.iter().map(|r| int_vec(r)).collect();
    let mut coefficients = BTreeMap::new();
    for c in &doc.coefficients {
        let point: PointLabel = c.point.parse().expect("infallible");
        let p = if c.empty {
            None
        } else {
            let vertices = c.vertices.iter().map(|v| rational_vec(v)).collect::<Result<_, _>>()?;
            let rays = if c.rays.is_empty() {
                tail.clone()
            } else {
                c.rays.iter().map(|r| int_vec(r)).collect()
            };
            Some(Polyhedron::new(vertices, rays)?)
        };
        coefficients.insert(point, p);
    }
    PolyhedralDivisor::new(rank, tail, coefficients)
}

/// Reads a polyhedral divisor from TOML (`tail`, `[[coefficients]]`).
pub fn parse_divisor(rank: usize, text: &str) -> Result<PolyhedralDivisor, FanFileError> {
    let doc: DivisorDoc = toml::from_str(text)?;
    Ok(divisor_from_doc(rank, &doc)?)
}

/// Reads a fan file (TOML).
pub fn parse_fan(text: &str) -> Result<RefinementData, FanFileError> {
    let doc: FanDoc = toml::from_str(text)?;
    let marked_points: Vec<PointLabel> = doc
        .marked_points
        .iter()
        .map(|s| s.parse().expect("infallible"))
        .collect();
    let mut vertices = Vec::new();
    for slice in &doc.slices {
        let point: PointLabel = slice.point.parse().expect("infallible");
        for v in &slice.vertices {
            vertices.push(MarkedVertex {
                point: point.clone(),
                vertex: rational_vec(&v.at)?,
                exceptional: v.exceptional,
            });
        }
    }
    let rays = doc
        .rays
        .iter()
        .map(|r| MarkedRay {
            ray: int_vec(&r.ray),
            exceptional: r.exceptional,
        })
        .collect();
    let base = doc
        .base
        .as_ref()
        .map(|b| divisor_from_doc(doc.lattice_rank, b))
        .transpose()?;
    let fan = RefinementData {
        lattice_rank: doc.lattice_rank,
        marked_points,
        vertices,
        rays,
        y0: doc
            .y0
            .as_deref()
            .map_or_else(|| PointLabel::Named("y0".into()), |s| s.parse().expect("infallible")),
        base,
    };
    fan.validate()?;
    Ok(fan)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        int_vec(v)
    }

    fn chart(tail: &[[i64; 2]]) -> PolyhedralDivisor {
        let tail: Vec<Vec<BigInt>> = tail.iter().map(|t| iv(t)).collect();
        let mut c = BTreeMap::new();
        c.insert(
            PointLabel::Zero,
            Some(Polyhedron::new(vec![vec![r(3, 5), r(1, 5)]], tail.clone()).unwrap()),
        );
        c.insert(
            PointLabel::Infinity,
            Some(Polyhedron::new(vec![vec![r(-1, 2), r(0, 1)], vec![r(0, 1), r(0, 1)]], tail.clone()).unwrap()),
        );
        PolyhedralDivisor::new(2, tail, c).unwrap()
    }

    #[test]
    fn degree_and_properness() {
        let d = chart(&[[1, 2], [1, 0]]);
        let deg = d.degree_polytope();
        assert!(deg.full_locus);
        let expected = Polyhedron::new(
            vec![vec![r(1, 10), r(1, 5)], vec![r(3, 5), r(1, 5)]],
            vec![iv(&[1, 2]), iv(&[1, 0])],
        )
        .unwrap();
        assert!(deg.polyhedron.same_set(&expected));
        assert!(d.is_proper());
        let trivial = PolyhedralDivisor::new(
            2,
            vec![iv(&[1, 2]), iv(&[1, 0])],
            BTreeMap::from([(PointLabel::Zero, Some(d.tail_polyhedron()))]),
        )
        .unwrap();
        assert!(!trivial.is_proper());
    }

    #[test]
    fn evaluation() {
        let d = chart(&[[1, 2], [3, 1]]);
        let e = d.evaluate(&[r(-1, 1), r(4, 1)]).unwrap();
        assert_eq!(e[&PointLabel::Zero], r(1, 5));
        assert_eq!(e[&PointLabel::Infinity], r(0, 1));
        assert!(matches!(
            d.evaluate(&[r(-1, 1), r(0, 1)]),
            Err(TdivError::UnboundedBelow(_))
        ));
    }

    #[test]
    fn smooth_chart() {
        assert_eq!(chart(&[[1, 2], [3, 1]]).is_smooth_chart(), Ok(true));
    }

    #[test]
    fn semiinvariant_values() {
        let fan = RefinementData {
            lattice_rank: 2,
            marked_points: vec![PointLabel::Zero],
            vertices: vec![MarkedVertex {
                point: PointLabel::Zero,
                vertex: vec![r(3, 5), r(1, 5)],
                exceptional: false,
            }],
            rays: vec![MarkedRay {
                ray: iv(&[1, 0]),
                exceptional: true,
            }],
            y0: PointLabel::Named("y0".into()),
            base: None,
        };
        let div = semiinvariant_divisor(&fan, &iv(&[-1, 4]), &BTreeMap::new());
        let v = DivisorLabel::Vertex {
            point: PointLabel::Zero,
            vertex: vec![r(3, 5), r(1, 5)],
        };
        assert_eq!(div[&v], BigInt::from(-1));
        assert_eq!(div[&DivisorLabel::Ray(iv(&[1, 0]))], BigInt::from(1));
        assert!(semiinvariant_divisor(&fan, &iv(&[0, 0]), &BTreeMap::new()).is_empty());
    }
}
