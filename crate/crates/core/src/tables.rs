//! Rendering of classification results (Markdown, CSV, JSON), the embedded
//! reference tables and the comparison against them.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{
    canonicalize, enumerate, CanonicalKey, ClassificationQuery, ClassificationRecord, ClassifyError,
};
use crate::invariants::{CaseTag, CoxCandidate, InvariantReport};
use crate::ring::{parse_rational, render_relations, validate_triple, RingDoc, TripleData};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {row}: {reason}")]
    BadRow { row: usize, reason: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    case: String,
    r: usize,
    n: String,
    #[serde(rename = "L")]
    l: String,
    weights: String,
    u: String,
    gamma: u64,
    mu: u64,
    minus_k: i64,
    minus_k_power_d: String,
    moduli_dim: usize,
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn split<T: std::str::FromStr>(s: &str) -> Option<Vec<T>> {
    s.split_whitespace().map(|x| x.parse().ok()).collect()
}

fn chunk(flat: &[u64], sizes: &[usize]) -> Vec<Vec<u64>> {
    let mut it = flat.iter().copied();
    sizes.iter().map(|&k| it.by_ref().take(k).collect()).collect()
}

fn row_of(rec: &ClassificationRecord) -> CsvRow {
    let c = &rec.candidate;
    CsvRow {
        case: rec.case.as_str().to_string(),
        r: c.triple.r(),
        n: join(c.triple.n()),
        l: join(c.triple.l().iter().flatten()),
        weights: join(c.weights.iter().flatten()),
        u: join(&c.free_weights),
        gamma: rec.report.gamma,
        mu: rec.report.mu,
        minus_k: rec.report.minus_k,
        minus_k_power_d: rec.report.minus_k_power_d.to_string(),
        moduli_dim: rec.moduli_dimension,
    }
}

/// One row per record:
/// `case,r,n,L,weights,u,gamma,mu,minus_k,minus_k_power_d,moduli_dim`,
/// list fields space separated.
pub fn render_csv(records: &[ClassificationRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record([
            "case",
            "r",
            "n",
            "L",
            "weights",
            "u",
            "gamma",
            "mu",
            "minus_k",
            "minus_k_power_d",
            "moduli_dim",
        ])
        .expect("in-memory write");
    }
    for rec in records {
        w.serialize(row_of(rec)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Parses rows written by [`render_csv`]. The invariants are taken from the
/// file as printed, the variables keep their order.
pub fn parse_csv(text: &str) -> Result<Vec<ClassificationRecord>, TableError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<CsvRow>().enumerate() {
        let row = row?;
        let bad = |reason: &str| TableError::BadRow {
            row: i + 1,
            reason: reason.to_string(),
        };
        let n: Vec<usize> = split(&row.n).ok_or_else(|| bad("n"))?;
        let l: Vec<u64> = split(&row.l).ok_or_else(|| bad("L"))?;
        let w: Vec<u64> = split(&row.weights).ok_or_else(|| bad("weights"))?;
        let u: Vec<u64> = split(&row.u).ok_or_else(|| bad("u"))?;
        let total: usize = n.iter().sum();
        if l.len() != total || w.len() != total || row.r + 1 != n.len() {
            return Err(bad("list lengths do not match n"));
        }
        let triple = validate_triple(&TripleData {
            n: n.clone(),
            l: chunk(&l, &n),
            m: u.len(),
            a: None,
        })
        .map_err(|e| bad(&e.to_string()))?;
        let candidate = CoxCandidate::new(triple, chunk(&w, &n), u).map_err(|e| bad(&e.to_string()))?;
        let q: BigRational = parse_rational(&row.minus_k_power_d).ok_or_else(|| bad("minus_k_power_d"))?;
        out.push(ClassificationRecord {
            candidate,
            report: InvariantReport {
                gamma: row.gamma,
                mu: row.mu,
                minus_k: row.minus_k,
                minus_k_power_d: q,
                fano: row.minus_k > 0,
                locally_factorial: row.mu == 1,
            },
            moduli_dimension: row.moduli_dim,
            case: CaseTag::parse(&row.case).ok_or_else(|| bad("case"))?,
        });
    }
    Ok(out)
}

/// Table with columns `No. | ring | weights | (-K)^d`.
pub fn render_markdown(records: &[ClassificationRecord]) -> String {
    let d = records.first().map_or(0, ClassificationRecord::dimension);
    let mut s = format!("| No. | ring | weights | (-K)^{d} |\n|---|---|---|---|\n");
    for (i, rec) in records.iter().enumerate() {
        let text = render_relations(&rec.candidate.triple);
        let ring = if text.relations.is_empty() {
            "polynomial ring".to_string()
        } else {
            text.relations.join(", ")
        };
        let weights: Vec<String> = rec.candidate.all_weights().iter().map(u64::to_string).collect();
        s.push_str(&format!(
            "| {} | {} | ({}) | {} |\n",
            i + 1,
            ring,
            weights.join(","),
            rec.report.minus_k_power_d
        ));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub case: CaseTag,
    pub ring: RingDoc,
    pub invariants: InvariantReport,
    pub moduli_dim: usize,
}

pub fn record_docs(records: &[ClassificationRecord]) -> Vec<RecordDoc> {
    records
        .iter()
        .map(|rec| RecordDoc {
            case: rec.case,
            ring: rec.candidate.to_doc(),
            invariants: rec.report.clone(),
            moduli_dim: rec.moduli_dimension,
        })
        .collect()
}

pub fn render_json(records: &[ClassificationRecord]) -> String {
    serde_json::to_string_pretty(&record_docs(records)).expect("serializable")
}

/// Reference tables shipped with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceTable {
    /// Non-toric Fano surfaces of Picard index at most 6.
    SurfacesMuLe6,
    /// Locally factorial non-toric Fano threefolds.
    ThreefoldsMu1,
    /// Non-toric Fano threefolds of Picard index at most 2, count only.
    ThreefoldsMuLe2Count,
    /// Locally factorial non-toric Fano fourfolds.
    FourfoldsMu1,
}

impl ReferenceTable {
    pub const ALL: [ReferenceTable; 4] = [
        ReferenceTable::SurfacesMuLe6,
        ReferenceTable::ThreefoldsMu1,
        ReferenceTable::ThreefoldsMuLe2Count,
        ReferenceTable::FourfoldsMu1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ReferenceTable::SurfacesMuLe6 => "surfaces_mu_le_6",
            ReferenceTable::ThreefoldsMu1 => "threefolds_mu_1",
            ReferenceTable::ThreefoldsMuLe2Count => "threefolds_mu_le_2_count",
            ReferenceTable::FourfoldsMu1 => "fourfolds_mu_1",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.id() == id)
    }

    pub fn query(self) -> ClassificationQuery {
        match self {
            ReferenceTable::SurfacesMuLe6 => ClassificationQuery::new(2, 1..=6),
            ReferenceTable::ThreefoldsMu1 => ClassificationQuery::new(3, [1]),
            ReferenceTable::ThreefoldsMuLe2Count => ClassificationQuery::new(3, 1..=2),
            ReferenceTable::FourfoldsMu1 => ClassificationQuery::new(4, [1]),
        }
    }

    /// Embedded CSV rows, if the table has them.
    pub fn csv(self) -> Option<&'static str> {
        match self {
            ReferenceTable::SurfacesMuLe6 => Some(include_str!("../data/surfaces_mu_le_6.csv")),
            ReferenceTable::ThreefoldsMu1 => Some(include_str!("../data/threefolds_mu_1.csv")),
            ReferenceTable::ThreefoldsMuLe2Count => None,
            ReferenceTable::FourfoldsMu1 => Some(include_str!("../data/fourfolds_mu_1.csv")),
        }
    }

    pub fn expected_count(self) -> usize {
        match self {
            ReferenceTable::SurfacesMuLe6 => 15,
            ReferenceTable::ThreefoldsMu1 => 9,
            ReferenceTable::ThreefoldsMuLe2Count => 116,
            ReferenceTable::FourfoldsMu1 => 69,
        }
    }

    /// The rows as printed, in their original variable order.
    pub fn records(self) -> Vec<ClassificationRecord> {
        self.csv()
            .map(|text| parse_csv(text).expect("embedded tables parse"))
            .unwrap_or_default()
    }
}

/// Outcome of comparing a fresh classification with a reference table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub table: String,
    pub expected: usize,
    pub found: usize,
    /// Reference rows the classification did not produce.
    pub missing: Vec<String>,
    /// Produced records absent from the reference rows.
    pub extra: Vec<String>,
    /// Rows present on both sides whose invariants differ.
    pub mismatched: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.expected == self.found && self.missing.is_empty() && self.extra.is_empty() && self.mismatched.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({}/{}; {} missing, {} extra, {} mismatched)",
            self.table,
            if self.passed() { "pass" } else { "FAIL" },
            self.found,
            self.expected,
            self.missing.len(),
            self.extra.len(),
            self.mismatched.len()
        )
    }
}

fn invariants_tuple(rec: &ClassificationRecord) -> (CaseTag, u64, u64, i64, BigRational, usize) {
    (
        rec.case,
        rec.report.gamma,
        rec.report.mu,
        rec.report.minus_k,
        rec.report.minus_k_power_d.clone(),
        rec.moduli_dimension,
    )
}

/// Compares classification output with the rows of a reference table.
pub fn compare(table: ReferenceTable, records: &[ClassificationRecord]) -> VerificationReport {
    let mut report = VerificationReport {
        table: table.id().to_string(),
        expected: table.expected_count(),
        found: records.len(),
        missing: Vec::new(),
        extra: Vec::new(),
        mismatched: Vec::new(),
    };
    let Some(_) = table.csv() else {
        return report;
    };
    let mut reference: BTreeMap<CanonicalKey, ClassificationRecord> = BTreeMap::new();
    for mut rec in table.records() {
        rec.candidate = canonicalize(&rec.candidate);
        reference.insert(rec.key(), rec);
    }
    let produced: BTreeMap<CanonicalKey, &ClassificationRecord> = records.iter().map(|r| (r.key(), r)).collect();
    for (key, rec) in &reference {
        match produced.get(key) {
            None => report.missing.push(key.to_string()),
            Some(p) if invariants_tuple(p) != invariants_tuple(rec) => report.mismatched.push(key.to_string()),
            Some(_) => {}
        }
    }
    for key in produced.keys() {
        if !reference.contains_key(key) {
            report.extra.push(key.to_string());
        }
    }
    report
}

/// Re-runs the classification behind a reference table and compares.
pub fn verify_against_reference(table: ReferenceTable) -> Result<VerificationReport, ClassifyError> {
    let records = enumerate(&table.query())?;
    Ok(compare(table, &records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_have_expected_sizes() {
        for t in ReferenceTable::ALL {
            if t.csv().is_some() {
                assert_eq!(t.records().len(), t.expected_count(), "{}", t.id());
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let recs = ReferenceTable::SurfacesMuLe6.records();
        assert_eq!(parse_csv(&render_csv(&recs)).unwrap(), recs);
        assert!(parse_csv(&render_csv(&[])).unwrap().is_empty());
    }

    #[test]
    fn markdown_layout() {
        let recs = ReferenceTable::ThreefoldsMu1.records();
        let md = render_markdown(&recs[..1]);
        assert!(md.starts_with("| No. | ring | weights | (-K)^3 |"));
        assert!(md.contains("| 1 | T01*T02^5 + T11^3 + T21^2 | (1,1,2,3,1) | 8 |"));
    }
}
