//! Input documents.

use serde::{Deserialize, Serialize};
use sparse_galois::{AbelianPresentation, IntMatrix, SupportTuple};

use crate::error::CliError;

pub const VERSION: u32 = 1;

/// `{"version":1, "n":2, "supports":[[[0,0],[1,0]], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleDocument {
    pub version: u32,
    pub n: usize,
    pub supports: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TupleDocument {
    pub fn new(n: usize, supports: Vec<Vec<Vec<i64>>>) -> Self {
        Self { version: VERSION, n, supports, labels: None }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::parse(format!("tuple document: {e}")))?;
        check_version(doc.version)?;
        if doc.supports.len() != doc.n {
            return Err(CliError::parse(format!("expected {} support sets, found {}", doc.n, doc.supports.len())));
        }
        for (i, set) in doc.supports.iter().enumerate() {
            if let Some(p) = set.iter().find(|p| p.len() != doc.n) {
                return Err(CliError::parse(format!("set {i}: point {p:?} does not have {} coordinates", doc.n)));
            }
        }
        if let Some(labels) = &doc.labels {
            if labels.len() != doc.n {
                return Err(CliError::parse(format!("expected {} labels, found {}", doc.n, labels.len())));
            }
        }
        Ok(doc)
    }

    pub fn tuple(&self) -> Result<SupportTuple, CliError> {
        SupportTuple::from_points(self.n, self.supports.clone()).map_err(CliError::from)
    }
}

/// Ambient group `Z^k / ⟨relations⟩` and the images of the first homology of
/// the cover and of the subset. Matrices are lists of columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectivityDocument {
    pub version: u32,
    pub ambient_generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    #[serde(default)]
    pub cover_image: Vec<Vec<i64>>,
    #[serde(default)]
    pub subset_image: Vec<Vec<i64>>,
}

impl ConnectivityDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self =
            serde_json::from_str(text).map_err(|e| CliError::parse(format!("connectivity document: {e}")))?;
        check_version(doc.version)?;
        let k = doc.ambient_generators;
        for (name, m) in [("relations", &doc.relations), ("cover_image", &doc.cover_image), ("subset_image", &doc.subset_image)] {
            if let Some(c) = m.iter().find(|c| c.len() != k) {
                return Err(CliError::parse(format!("{name}: column {c:?} does not have {k} entries")));
            }
        }
        Ok(doc)
    }

    pub fn ambient(&self) -> AbelianPresentation {
        AbelianPresentation::new(self.ambient_generators, IntMatrix::from_columns(&self.relations, self.ambient_generators))
    }

    pub fn cover(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.cover_image, self.ambient_generators)
    }

    pub fn subset(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.subset_image, self.ambient_generators)
    }
}

fn check_version(v: u32) -> Result<(), CliError> {
    if v == VERSION {
        Ok(())
    } else {
        Err(CliError::parse(format!("unsupported document version {v}, expected {VERSION}")))
    }
}
