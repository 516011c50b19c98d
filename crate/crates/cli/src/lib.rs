//! Command-line and HTTP front end over `plabic-core`.
//!
//! Every JSON document produced by the binary goes through the types in this
//! crate, so the CLI and the service emit identical bytes for identical inputs.

pub mod server;
pub mod session;

use std::collections::BTreeSet;
use std::path::Path;

use plabic_core::cuts::{enumerate_cuts, has_enough_cuts, is_cut, is_homogeneous_cut, Cut};
use plabic_core::jacobian::{jacobian_by_paths, self_injectivity, ReportJson};
use plabic_core::quiver::{nakayama_permutation, permutation_order};
use plabic_core::{Collection, CollectionJson, Error, Quiver};
use serde::Serialize;

/// Cuts listed by `cuts` and counted by `check` unless `--max-solutions` says otherwise.
pub const DEFAULT_CUT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutCensus {
    pub count: usize,
    /// Only for rotation-invariant collections.
    pub homogeneous: Option<usize>,
    pub enough_cuts: bool,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutStatus {
    pub arrows: Vec<usize>,
    pub valid: bool,
    pub homogeneous: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub k: usize,
    pub n: usize,
    pub symmetric: bool,
    pub nakayama_order: Option<usize>,
    pub report: ReportJson,
    pub cuts: CutCensus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<CutStatus>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutEntry {
    pub arrows: Vec<usize>,
    pub labels: Vec<[String; 2]>,
    pub homogeneous: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutList {
    pub count: usize,
    pub truncated: bool,
    pub cuts: Vec<CutEntry>,
}

/// Underlying quiver of a collection: frozen vertices removed, arrow ids kept.
pub fn inner_quiver(coll: &Collection) -> Result<Quiver, Error> {
    Ok(Quiver::from_collection(coll)?.underline())
}

pub fn cut_status(q: &Quiver, cut: &Cut) -> CutStatus {
    let valid = is_cut(q, cut);
    CutStatus {
        arrows: cut.arrows.iter().copied().collect(),
        valid,
        homogeneous: if valid { is_homogeneous_cut(q, cut).ok() } else { None },
    }
}

pub fn check_report(coll: &Collection, cut: Option<&Cut>, cut_limit: usize) -> Result<CheckReport, Error> {
    let q = inner_quiver(coll)?;
    let table = jacobian_by_paths(&q)?;
    let report = self_injectivity(&table)?.to_json(&table.vertices);
    let symmetric = coll.is_symmetric();
    let nakayama_order = if symmetric { Some(permutation_order(&nakayama_permutation(coll)?)) } else { None };
    let cuts = enumerate_cuts(&q, cut_limit);
    let homogeneous = symmetric.then(|| cuts.iter().filter(|c| is_homogeneous_cut(&q, c).unwrap_or(false)).count());
    Ok(CheckReport {
        k: coll.k(),
        n: coll.n(),
        symmetric,
        nakayama_order,
        report,
        cuts: CutCensus {
            count: cuts.len(),
            homogeneous,
            enough_cuts: has_enough_cuts(&q),
            truncated: cuts.len() >= cut_limit,
        },
        cut: cut.map(|c| cut_status(&q, c)),
    })
}

pub fn cut_list(q: &Quiver, limit: usize) -> CutList {
    let symmetric = q.rho_automorphism().is_some();
    let cuts: Vec<CutEntry> = enumerate_cuts(q, limit)
        .into_iter()
        .map(|c| {
            let labels = c
                .arrows
                .iter()
                .map(|&id| {
                    let a = &q.arrows[q.arrow_index(id).expect("cut arrow")];
                    [q.vertices[a.src].name.clone(), q.vertices[a.tgt].name.clone()]
                })
                .collect();
            CutEntry {
                arrows: c.arrows.iter().copied().collect(),
                labels,
                homogeneous: if symmetric { is_homogeneous_cut(q, &c).ok() } else { None },
            }
        })
        .collect();
    CutList { count: cuts.len(), truncated: cuts.len() >= limit, cuts }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_collection(path: &Path) -> anyhow::Result<Collection> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    parse_collection(&text)
}

pub fn parse_collection(text: &str) -> anyhow::Result<Collection> {
    let json: CollectionJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok(Collection::from_json(&json)?)
}

pub fn dotted(cut: Option<&Cut>) -> BTreeSet<usize> {
    cut.map(|c| c.arrows.clone()).unwrap_or_default()
}

/// Variant name of a core error, as reported to clients.
pub fn error_name(e: &Error) -> &'static str {
    match e {
        Error::ParameterMismatch(_) => "ParameterMismatch",
        Error::InvalidSubset(_) => "InvalidSubset",
        Error::CrossingPair(..) => "CrossingPair",
        Error::EmbeddingDegenerate(..) => "EmbeddingDegenerate",
        Error::NotMutable { .. } => "NotMutable",
        Error::Frozen(_) => "Frozen",
        Error::UnknownVertex(_) => "UnknownVertex",
        Error::NotSymmetric => "NotSymmetric",
        Error::OrbitNotIndependent(_) => "OrbitNotIndependent",
        Error::NotStrict(_) => "NotStrict",
        Error::InvalidCut(_) => "InvalidCut",
        Error::NoStabilization(_) => "NoStabilization",
        Error::NoGrading(_) => "NoGrading",
        Error::UnsupportedParameter(_) => "UnsupportedParameter",
        Error::SearchExhausted(_) => "SearchExhausted",
        Error::Malformed(_) => "Malformed",
        Error::Internal(_) => "Internal",
        Error::Json(_) => "Malformed",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    InvalidInput,
    Unsupported,
    Precondition,
    Environment,
    Internal,
}

impl Failure {
    pub fn of(e: &Error) -> Failure {
        match e {
            Error::ParameterMismatch(_)
            | Error::InvalidSubset(_)
            | Error::CrossingPair(..)
            | Error::EmbeddingDegenerate(..)
            | Error::UnknownVertex(_)
            | Error::Malformed(_)
            | Error::Json(_) => Failure::InvalidInput,
            Error::UnsupportedParameter(_) | Error::SearchExhausted(_) | Error::NoStabilization(_) => {
                Failure::Unsupported
            }
            Error::NotMutable { .. }
            | Error::Frozen(_)
            | Error::NotSymmetric
            | Error::OrbitNotIndependent(_)
            | Error::NotStrict(_)
            | Error::InvalidCut(_)
            | Error::NoGrading(_) => Failure::Precondition,
            Error::Internal(_) => Failure::Internal,
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Failure::InvalidInput => 1,
            Failure::Unsupported => 2,
            Failure::Precondition => 3,
            Failure::Environment => 4,
            Failure::Internal => 5,
        }
    }
}
