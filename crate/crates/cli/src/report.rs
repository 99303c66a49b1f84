//! Structured reports. Text output is rendered from these.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest magnitude written as a JSON number.
pub const SAFE_INTEGER: i64 = (1 << 53) - 1;

/// An integer that serializes as a JSON number when it is exactly
/// representable as an IEEE double and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl Int {
    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! int_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(x: $t) -> Self {
                Int(BigInt::from(x))
            }
        }
    )*};
}
int_from!(i64, u64, usize, i128);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl From<&BigInt> for Int {
    fn from(x: &BigInt) -> Self {
        Int(x.clone())
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= SAFE_INTEGER => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Int::from(x)),
            Raw::Text(t) => t.parse::<BigInt>().map(Int).map_err(serde::de::Error::custom),
        }
    }
}

pub fn ints<T: Into<Int> + Clone>(xs: &[T]) -> Vec<Int> {
    xs.iter().cloned().map(Into::into).collect()
}

pub type Points = Vec<Vec<Int>>;

pub fn points(ps: &[Vec<i64>]) -> Points {
    ps.iter().map(|p| ints(p)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Monodromy,
    MixedVolume,
    Connectivity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixed_volume: Option<MixedVolumes>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Flags>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub essential: Option<Vec<EssentialRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connectivity: Option<ConnectivitySection>,
    pub config: ConfigEcho,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: Command, config: ConfigEcho) -> Self {
        Self {
            version: SCHEMA_VERSION,
            command,
            input: None,
            reduction: None,
            mixed_volume: None,
            flags: None,
            essential: None,
            verdict: None,
            monodromy: None,
            connectivity: None,
            config,
            warnings: vec![],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub n: usize,
    pub supports: Vec<Points>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionSummary {
    /// Each set shifted by its lexicographically smallest point.
    pub normalized: Vec<Points>,
    /// Columns of a basis of the lattice generated by the normalized sets.
    pub lattice_basis: Points,
    /// `m`, the index of that lattice.
    pub index: Int,
    /// Invariant factors of the quotient, all greater than 1.
    pub quotient_invariants: Vec<Int>,
    pub reduced: Vec<Points>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedVolumes {
    /// Root count of the given tuple.
    pub total: Int,
    /// Root count of the reduced tuple.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flags {
    pub reduced: bool,
    pub irreducible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analogous: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample: Option<bool>,
}

/// One essential covector of the reduced tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EssentialRow {
    pub gamma: Vec<Int>,
    pub k_gamma: Vec<usize>,
    pub d_prime: Int,
    pub d_double_prime: Int,
    pub d_gamma: Int,
    pub in_e0: bool,
    pub tuple_id: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub quotient_invariants: Vec<Int>,
    pub m: Int,
    pub d: Int,
    pub total_roots: Int,
    pub expected_order: Int,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Covector in reduced coordinates.
    pub b: Vec<Int>,
    pub p: Int,
    pub divides_each_covector: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub facet_lattice: Points,
    /// `null` when the lattice has lower rank.
    pub facet_index: Option<Int>,
    pub grouped_lattice: Points,
    pub grouped_index: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub name: String,
    pub expected_group: GroupReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopSummary {
    pub index: usize,
    pub kind: String,
    pub accepted: bool,
    /// Cycle notation on roots numbered from 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<String>,
    #[serde(default)]
    pub enlarged_group: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WreathCheck {
    pub wreath_order: Int,
    pub contained: bool,
    pub index: Option<Int>,
    pub block_action_order: Int,
    pub generators_even: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionLatticeReport {
    pub ambient_rank: usize,
    pub invariants: Vec<Int>,
    pub full: bool,
    pub inductively_connected: bool,
    pub decided: bool,
    pub closed_windings: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonEntry {
    pub b: Vec<Int>,
    pub modulus: Int,
    pub loops_checked: usize,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromySection {
    pub roots: usize,
    pub max_residual: f64,
    pub loops_used: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub group_order: Int,
    pub order_history: Vec<Int>,
    pub generators: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
    pub block_size: usize,
    pub block_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wreath: Option<WreathCheck>,
    pub solution_lattice: SolutionLatticeReport,
    pub poisson: Vec<PoissonEntry>,
    pub stable_loops: usize,
    pub budget_exhausted: bool,
    pub loops: Vec<LoopSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectivitySection {
    pub ambient_generators: usize,
    /// Invariant factors greater than 1 of the ambient group.
    pub ambient_torsion: Vec<Int>,
    pub ambient_free_rank: usize,
    pub relations: Points,
    pub cover_image: Points,
    pub subset_image: Points,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: Int,
    pub budget: usize,
    pub newton_tol: f64,
    pub match_tol: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        let small = serde_json::to_string(&Int::from(SAFE_INTEGER)).unwrap();
        assert_eq!(small, SAFE_INTEGER.to_string());
        let big = Int::from(SAFE_INTEGER + 1);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, format!("\"{}\"", SAFE_INTEGER + 1));
        assert_eq!(serde_json::from_str::<Int>(&text).unwrap(), big);
        let neg = Int::from(-(SAFE_INTEGER + 2));
        assert_eq!(serde_json::from_str::<Int>(&serde_json::to_string(&neg).unwrap()).unwrap(), neg);
        let huge = Int::from((1..=30).map(BigInt::from).product::<BigInt>());
        assert_eq!(serde_json::from_str::<Int>(&serde_json::to_string(&huge).unwrap()).unwrap(), huge);
    }
}
