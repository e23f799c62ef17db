//! Two-axis creativity scoring over Likert-rated items.
//!
//! Per item, the content score Cx averages three criteria (novelty,
//! surprise, depth) and the recipient score Cy averages four (metacognitive
//! stimulation, reframing, autonomy enhancement, personal engagement). The
//! co-creativity index is the item average of min(Cx, Cy), so one strong
//! axis cannot carry a weak one. Scores are accepted as reals in [1, 8];
//! aggregated tables legitimately contain non-integer values.

use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};

const SCORE_MIN: f64 = 1.0;
const SCORE_MAX: f64 = 8.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvaluationRow {
    pub model: String,
    pub item: String,
    pub novelty: f64,
    pub surprise: f64,
    pub depth: f64,
    pub metacog: f64,
    pub reframe: f64,
    pub autonomy: f64,
    pub engage: f64,
}

impl EvaluationRow {
    fn cx(&self) -> f64 {
        (self.novelty + self.surprise + self.depth) / 3.0
    }

    fn cy(&self) -> f64 {
        (self.metacog + self.reframe + self.autonomy + self.engage) / 4.0
    }

    fn scores(&self) -> [f64; 7] {
        [
            self.novelty,
            self.surprise,
            self.depth,
            self.metacog,
            self.reframe,
            self.autonomy,
            self.engage,
        ]
    }
}

#[derive(Clone, Debug)]
pub struct EvaluationTable {
    rows: Vec<EvaluationRow>,
}

impl EvaluationTable {
    pub fn new(rows: Vec<EvaluationRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(AqsError::invalid_field("rows", "must be nonempty"));
        }
        for row in &rows {
            for value in row.scores() {
                if !(SCORE_MIN..=SCORE_MAX).contains(&value) || !value.is_finite() {
                    return Err(AqsError::ScoreOutOfRange {
                        value,
                        model: row.model.clone(),
                        item: row.item.clone(),
                    });
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[EvaluationRow] {
        &self.rows
    }

    /// Parses the `model,item,novelty,surprise,depth,metacog,reframe,autonomy,engage`
    /// CSV layout. Lines starting with `#` are metadata comments.
    pub fn from_csv(content: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(content.as_bytes());
        let mut rows = Vec::new();
        for record in reader.deserialize::<EvaluationRow>() {
            rows.push(record.map_err(|e| AqsError::invalid_field("table", e.to_string()))?);
        }
        Self::new(rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("model,item,novelty,surprise,depth,metacog,reframe,autonomy,engage\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.model, r.item, r.novelty, r.surprise, r.depth, r.metacog, r.reframe, r.autonomy,
                r.engage
            ));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelCreativity {
    pub model: String,
    pub cx_mean: f64,
    pub cy_mean: f64,
    pub cci: f64,
}

/// Per-model Cx/Cy means and the co-creativity index, models in order of
/// first appearance.
pub fn cci_scores(table: &EvaluationTable) -> Vec<ModelCreativity> {
    let mut order: Vec<&str> = Vec::new();
    for row in table.rows() {
        if !order.contains(&row.model.as_str()) {
            order.push(&row.model);
        }
    }
    order
        .into_iter()
        .map(|model| {
            let items: Vec<&EvaluationRow> =
                table.rows().iter().filter(|r| r.model == model).collect();
            let n = items.len() as f64;
            let cx_mean = items.iter().map(|r| r.cx()).sum::<f64>() / n;
            let cy_mean = items.iter().map(|r| r.cy()).sum::<f64>() / n;
            let cci = items.iter().map(|r| r.cx().min(r.cy())).sum::<f64>() / n;
            ModelCreativity {
                model: model.to_string(),
                cx_mean,
                cy_mean,
                cci,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(model: &str, item: &str, cx: [f64; 3], cy: [f64; 4]) -> EvaluationRow {
        EvaluationRow {
            model: model.into(),
            item: item.into(),
            novelty: cx[0],
            surprise: cx[1],
            depth: cx[2],
            metacog: cy[0],
            reframe: cy[1],
            autonomy: cy[2],
            engage: cy[3],
        }
    }

    #[test]
    fn all_eights_score_eight() {
        let table = EvaluationTable::new(vec![
            row("m", "i1", [8.0; 3], [8.0; 4]),
            row("m", "i2", [8.0; 3], [8.0; 4]),
        ])
        .unwrap();
        let scores = cci_scores(&table);
        assert_eq!(scores.len(), 1);
        assert!((scores[0].cci - 8.0).abs() < 1e-12);
    }

    #[test]
    fn min_composition_prevents_one_axis_dominance() {
        let table = EvaluationTable::new(vec![row("m", "i1", [8.0; 3], [1.0; 4])]).unwrap();
        let scores = cci_scores(&table);
        assert!((scores[0].cci - 1.0).abs() < 1e-12);
        assert!((scores[0].cx_mean - 8.0).abs() < 1e-12);
    }

    #[test]
    fn two_item_case_shows_cci_below_min_of_means() {
        // Items (Cx,Cy) = (4,6) and (6,4): per-item mins are both 4, so
        // cci = 4, while min of the means is 5.
        let table = EvaluationTable::new(vec![
            row("m", "i1", [4.0; 3], [6.0; 4]),
            row("m", "i2", [6.0; 3], [4.0; 4]),
        ])
        .unwrap();
        let scores = cci_scores(&table);
        assert!((scores[0].cci - 4.0).abs() < 1e-12);
        assert!((scores[0].cx_mean.min(scores[0].cy_mean) - 5.0).abs() < 1e-12);
        assert!(scores[0].cci <= scores[0].cx_mean.min(scores[0].cy_mean) + 1e-12);
    }

    #[test]
    fn scores_out_of_range_are_rejected() {
        let err = EvaluationTable::new(vec![row("m", "i", [9.0, 8.0, 8.0], [8.0; 4])]).unwrap_err();
        assert!(matches!(err, AqsError::ScoreOutOfRange { value, .. } if value == 9.0));
        let err = EvaluationTable::new(vec![row("m", "i", [0.5, 8.0, 8.0], [8.0; 4])]).unwrap_err();
        assert!(matches!(err, AqsError::ScoreOutOfRange { .. }));
    }

    #[test]
    fn csv_round_trip_preserves_model_order() {
        let table = EvaluationTable::new(vec![
            row("zeta", "i1", [2.5, 3.0, 3.5], [4.0, 4.5, 5.0, 5.5]),
            row("alpha", "i1", [6.0, 6.5, 7.0], [7.5, 8.0, 6.0, 5.0]),
            row("zeta", "i2", [3.0, 3.0, 3.0], [3.0, 3.0, 3.0, 3.0]),
        ])
        .unwrap();
        let csv = table.to_csv();
        let back = EvaluationTable::from_csv(&csv).unwrap();
        let scores = cci_scores(&back);
        assert_eq!(scores[0].model, "zeta");
        assert_eq!(scores[1].model, "alpha");
    }
}
