//! Raw on-disk schema of the embedded model data files and access to the
//! eight levels compiled into the crate. Everything here is a faithful
//! mirror of the JSON; validation and typed conversion live in `model`.

use once_cell::sync::Lazy;
use serde::Deserialize;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
pub struct RawModel {
    pub level: u32,
    pub genus: usize,
    pub ambient_dim: usize,
    pub weights: Vec<usize>,
    pub equations: Vec<String>,
    pub cusps: Vec<Vec<String>>,
    pub involutions: Vec<RawInvolution>,
    pub quotient_genus: usize,
    pub quotient: RawQuotient,
    #[serde(default)]
    pub second_quotient: Option<RawQuotient>,
    pub base_divisor: Vec<RawDivTerm>,
    pub torsion_generators: Vec<RawTorsionGen>,
    pub free_generators: Vec<RawFreeGen>,
    #[serde(rename = "index_I")]
    pub index_i: i64,
    pub known_points: Vec<RawKnownPoint>,
    pub sieve_primes: Vec<u64>,
    pub iota_checks: Vec<RawIotaCheck>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawInvolution {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
    pub mu: i64,
    pub sigma: Option<i64>,
    pub quotient_genus: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawQuotient {
    pub kind: String,
    pub label: String,
    pub via: Vec<String>,
    #[serde(default)]
    pub a_invariants: Option<Vec<String>>,
    #[serde(default)]
    pub f: Option<Vec<String>>,
    pub marked_points: Vec<RawMarkedPoint>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawMarkedPoint {
    pub name: String,
    pub coords: Vec<String>,
    pub order: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawDivTerm {
    #[serde(default)]
    pub cusp: Option<usize>,
    #[serde(default)]
    pub coords: Option<Vec<String>>,
    pub mult: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawTorsionGen {
    pub name: String,
    pub order: u64,
    pub divisor: Vec<RawDivTerm>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawFreeGen {
    pub name: String,
    pub kind: String,
    #[serde(default)]
    pub disc: Option<i64>,
    #[serde(default)]
    pub coords: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub min_poly: Option<Vec<String>>,
    #[serde(default)]
    pub quartic_coords: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub point_ref: Option<String>,
    pub base_divisor: Vec<RawDivTerm>,
    #[serde(default)]
    pub quotient_image: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawKnownPoint {
    pub name: String,
    pub disc: Option<i64>,
    pub coords: Vec<[String; 2]>,
    #[serde(default)]
    pub cm: Option<i64>,
    #[serde(default)]
    pub qcurve: Vec<String>,
    #[serde(default)]
    pub fixed_by: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawIotaCheck {
    pub kind: String,
    #[serde(default)]
    pub i: Option<usize>,
    #[serde(default)]
    pub j: Option<usize>,
    #[serde(default)]
    pub gen: Option<String>,
    pub vector: Vec<i64>,
}

static FILES: &[(u32, &str)] = &[
    (37, include_str!("../../../data/x0_37.json")),
    (43, include_str!("../../../data/x0_43.json")),
    (53, include_str!("../../../data/x0_53.json")),
    (57, include_str!("../../../data/x0_57.json")),
    (61, include_str!("../../../data/x0_61.json")),
    (65, include_str!("../../../data/x0_65.json")),
    (67, include_str!("../../../data/x0_67.json")),
    (73, include_str!("../../../data/x0_73.json")),
];

static PARSED: Lazy<BTreeMap<u32, RawModel>> = Lazy::new(|| {
    FILES
        .iter()
        .map(|(level, text)| {
            let m: RawModel = serde_json::from_str(text)
                .unwrap_or_else(|e| panic!("embedded data for level {level} is malformed: {e}"));
            assert_eq!(m.level, *level, "embedded data level mismatch");
            (*level, m)
        })
        .collect()
});

/// The levels with embedded model data, ascending.
pub fn levels() -> Vec<u32> {
    PARSED.keys().copied().collect()
}

/// The raw (unvalidated) data for one level.
pub fn raw(level: u32) -> Result<&'static RawModel> {
    PARSED.get(&level).ok_or(Error::UnknownLevel(level))
}

/// Parses raw data from a JSON string (used by tests exercising the loader's
/// failure paths on corrupted inputs).
pub fn raw_from_str(text: &str) -> Result<RawModel> {
    serde_json::from_str(text).map_err(|e| Error::Data(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_eight_levels_parse() {
        assert_eq!(levels(), vec![37, 43, 53, 57, 61, 65, 67, 73]);
        for lvl in levels() {
            let m = raw(lvl).unwrap();
            assert_eq!(m.weights.len(), m.ambient_dim + 1);
            assert!(!m.equations.is_empty());
            assert!(!m.sieve_primes.is_empty());
        }
    }

    #[test]
    fn unknown_level_is_an_error() {
        assert!(matches!(raw(41), Err(Error::UnknownLevel(41))));
    }
}
