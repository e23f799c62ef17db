//! Labeled embedding-vector sets and their file formats.
//!
//! JSON: `{"label": s, "dim": d, "vectors": [[...], ...]}` — one set per
//! file. CSV: header `label,v0,...,v{d-1}`, one vector per row; a file may
//! carry several labels and is split into one set per label in order of
//! first appearance. Lines starting with `#` are metadata comments.

use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};

#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    label: String,
    vectors: Vec<Vec<f64>>,
}

impl EmbeddingSet {
    pub fn new(label: impl Into<String>, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if vectors.len() < 2 {
            return Err(AqsError::TooFewPoints {
                need: 2,
                got: vectors.len(),
            });
        }
        let dim = vectors[0].len();
        if dim == 0 {
            return Err(AqsError::invalid_field("vectors", "dimension must be ≥ 1"));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(AqsError::DimMismatch {
                    left: dim,
                    right: v.len(),
                });
            }
            if let Some(index) = v.iter().position(|x| !x.is_finite()) {
                return Err(AqsError::NonFinite { index });
            }
        }
        Ok(Self {
            label: label.into(),
            vectors,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Parses a CSV file into one set per label, in order of first
    /// appearance.
    pub fn from_csv(content: &str) -> Result<Vec<EmbeddingSet>> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(content.as_bytes());
        let mut order: Vec<String> = Vec::new();
        let mut grouped: std::collections::BTreeMap<String, Vec<Vec<f64>>> = Default::default();
        for record in reader.records() {
            let record = record
                .map_err(|e| AqsError::invalid_field("embedding csv", e.to_string()))?;
            let mut fields = record.iter();
            let label = fields
                .next()
                .ok_or_else(|| AqsError::invalid_field("embedding csv", "missing label column"))?
                .to_string();
            let vector: Vec<f64> = fields
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|_| {
                        AqsError::invalid_field(
                            "embedding csv",
                            format!("non-numeric component `{f}`"),
                        )
                    })
                })
                .collect::<Result<_>>()?;
            if !grouped.contains_key(&label) {
                order.push(label.clone());
            }
            grouped.entry(label).or_default().push(vector);
        }
        order
            .into_iter()
            .map(|label| {
                let vectors = grouped.remove(&label).unwrap();
                EmbeddingSet::new(label, vectors)
            })
            .collect()
    }

    /// Serializes sets into the shared CSV layout.
    pub fn to_csv(sets: &[EmbeddingSet]) -> Result<String> {
        if sets.is_empty() {
            return Err(AqsError::invalid_field("sets", "must be nonempty"));
        }
        let dim = sets[0].dim();
        for s in sets {
            if s.dim() != dim {
                return Err(AqsError::DimMismatch {
                    left: dim,
                    right: s.dim(),
                });
            }
        }
        let mut out = String::from("label");
        for j in 0..dim {
            out.push_str(&format!(",v{j}"));
        }
        out.push('\n');
        for s in sets {
            for v in &s.vectors {
                out.push_str(&s.label);
                for x in v {
                    out.push_str(&format!(",{x}"));
                }
                out.push('\n');
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingRepr {
    label: String,
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl Serialize for EmbeddingSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        EmbeddingRepr {
            label: self.label.clone(),
            dim: self.dim(),
            vectors: self.vectors.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EmbeddingSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = EmbeddingRepr::deserialize(deserializer)?;
        if repr.vectors.iter().any(|v| v.len() != repr.dim) {
            return Err(serde::de::Error::custom(format!(
                "every vector must have the declared dim {}",
                repr.dim
            )));
        }
        EmbeddingSet::new(repr.label, repr.vectors).map_err(serde::de::Error::custom)
    }
}
