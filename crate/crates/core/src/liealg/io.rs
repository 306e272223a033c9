use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraContext, Kind, LieElement};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, ExactScalar};

/// `{ "algebra": "so"|"gl", "n": nat, "entries": [[scalar, …], …] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub algebra: Kind,
    pub n: usize,
    pub entries: Vec<Vec<ExactScalar>>,
}

#[derive(Deserialize)]
struct RawDocument {
    algebra: String,
    n: usize,
    entries: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn from_matrix(kind: Kind, m: &ExactMatrix) -> Self {
        MatrixDocument {
            algebra: kind,
            n: m.rows(),
            entries: (0..m.rows()).map(|i| m.row(i).to_vec()).collect(),
        }
    }

    /// Parse with diagnostics that point at the offending entry.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
        let algebra = Kind::parse(&raw.algebra).map_err(|e| Error::parse("field \"algebra\"", e.to_string()))?;
        if raw.entries.len() != raw.n {
            return Err(Error::parse(
                "field \"entries\"",
                format!("expected {} rows, found {}", raw.n, raw.entries.len()),
            ));
        }
        let mut entries = Vec::with_capacity(raw.n);
        for (i, row) in raw.entries.iter().enumerate() {
            if row.len() != raw.n {
                return Err(Error::parse(
                    format!("entries[{i}]"),
                    format!("expected {} columns, found {}", raw.n, row.len()),
                ));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    s.parse::<ExactScalar>()
                        .map_err(|e| Error::parse(format!("entries[{i}][{j}]"), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            entries.push(parsed);
        }
        Ok(MatrixDocument {
            algebra,
            n: raw.n,
            entries,
        })
    }

    pub fn matrix(&self) -> Result<ExactMatrix> {
        ExactMatrix::from_rows(self.entries.clone())
    }

    /// Build the context and the checked element.
    pub fn into_element(&self) -> Result<LieElement> {
        let ctx = Arc::new(AlgebraContext::new(self.algebra, self.n)?);
        LieElement::new(ctx, self.matrix()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"algebra":"so","n":3,"entries":[["2","0","0"],["0","0","0"],["0","0","-2"]]}"#;
        let doc = MatrixDocument::parse(text).unwrap();
        let again = MatrixDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
        assert!(doc.into_element().is_ok());
    }

    #[test]
    fn diagnostics_name_the_entry() {
        let text = r#"{"algebra":"gl","n":2,"entries":[["1","x"],["0","0"]]}"#;
        let err = MatrixDocument::parse(text).unwrap_err();
        assert!(err.to_string().contains("entries[0][1]"), "{err}");
    }

    #[test]
    fn membership_failure_is_reported() {
        let text = r#"{"algebra":"so","n":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
        let err = MatrixDocument::parse(text).unwrap().into_element().unwrap_err();
        assert!(matches!(err, Error::Membership { .. }));
    }
}
