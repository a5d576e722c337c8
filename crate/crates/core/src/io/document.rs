use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::diagram::CrossingMatrix;
use crate::error::{Result, WeaveError};

/// Value of the top-level `format` key in JSON documents.
pub const FORMAT_TAG: &str = "weave/1";

/// A diagram with an optional label and free-form metadata.
///
/// JSON form: `{"format": "weave/1", "m", "n", "rows": ["01", "10"],
/// "name"?, "metadata"?}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeaveDocument {
    pub matrix: CrossingMatrix,
    pub name: Option<String>,
    pub metadata: BTreeMap<String, Value>,
}

impl WeaveDocument {
    pub fn new(matrix: CrossingMatrix) -> Self {
        WeaveDocument {
            matrix,
            name: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| WeaveError::Document(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct DocumentRepr {
    format: String,
    m: usize,
    n: usize,
    rows: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    metadata: BTreeMap<String, Value>,
}

impl Serialize for WeaveDocument {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = self.matrix.to_string();
        let rows = if self.matrix.m() == 0 {
            Vec::new()
        } else {
            text.split('/').map(str::to_string).collect()
        };
        DocumentRepr {
            format: FORMAT_TAG.to_string(),
            m: self.matrix.m(),
            n: self.matrix.n(),
            rows,
            name: self.name.clone(),
            metadata: self.metadata.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeaveDocument {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = DocumentRepr::deserialize(d)?;
        if repr.format != FORMAT_TAG {
            return Err(D::Error::custom(format!(
                "unsupported format {:?}, expected {FORMAT_TAG:?}",
                repr.format
            )));
        }
        if repr.rows.len() != repr.m {
            return Err(D::Error::custom(format!(
                "m = {} but {} rows given",
                repr.m,
                repr.rows.len()
            )));
        }
        let mut raw = Vec::with_capacity(repr.m);
        for (i, row) in repr.rows.iter().enumerate() {
            raw.push(parse_row(row, i).map_err(D::Error::custom)?);
        }
        let matrix = if repr.m == 0 {
            CrossingMatrix::zeros(0, repr.n).map_err(D::Error::custom)?
        } else {
            CrossingMatrix::new(&raw).map_err(D::Error::custom)?
        };
        if matrix.n() != repr.n {
            return Err(D::Error::custom(format!(
                "n = {} but rows have {} entries",
                repr.n,
                matrix.n()
            )));
        }
        Ok(WeaveDocument {
            matrix,
            name: repr.name,
            metadata: repr.metadata,
        })
    }
}

fn parse_row(row: &str, i: usize) -> Result<Vec<i64>> {
    row.chars()
        .enumerate()
        .map(|(j, ch)| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(WeaveError::Parse {
                row: i + 1,
                col: j + 1,
                msg: format!("unexpected character {other:?}"),
            }),
        })
        .collect()
}

/// Parses the text encoding: rows of '0'/'1' joined by '/', e.g. `01/10`.
pub fn parse_matrix(s: &str) -> Result<CrossingMatrix> {
    let s = s.trim();
    if s.is_empty() {
        return Err(WeaveError::Parse {
            row: 1,
            col: 1,
            msg: "empty matrix".to_string(),
        });
    }
    let mut raw = Vec::new();
    let mut width = None;
    for (i, row) in s.split('/').enumerate() {
        let parsed = parse_row(row, i)?;
        if parsed.is_empty() {
            return Err(WeaveError::Parse {
                row: i + 1,
                col: 1,
                msg: "empty row".to_string(),
            });
        }
        match width {
            None => width = Some(parsed.len()),
            Some(w) if w != parsed.len() => {
                return Err(WeaveError::Parse {
                    row: i + 1,
                    col: w.min(parsed.len()) + 1,
                    msg: format!("row has {} entries, expected {w}", parsed.len()),
                })
            }
            _ => {}
        }
        raw.push(parsed);
    }
    CrossingMatrix::new(&raw)
}

pub fn parse_text(s: &str) -> Result<WeaveDocument> {
    parse_matrix(s).map(WeaveDocument::new)
}

pub fn serialize_text(doc: &WeaveDocument) -> String {
    doc.matrix.to_string()
}
