//! Nested-model comparison by F test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::dist::f_survival;
use crate::stats::ols::FitResult;

/// Result of comparing a reduced model against a full model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaResult {
    #[serde(rename = "f")]
    pub f_statistic: f64,
    #[serde(rename = "df1")]
    pub df_numerator: usize,
    #[serde(rename = "df2")]
    pub df_denominator: usize,
    #[serde(rename = "p")]
    pub p_value: f64,
}

impl AnovaResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("anova result serializes")
    }
}

/// F test of the RSS reduction from `reduced` to `full`:
/// F = ((RSS_r − RSS_f)/Δp) / (RSS_f/df_f).
///
/// The models must be fitted on the same observations and the reduced
/// model's columns must be a subset of the full model's. An RSS
/// difference that is slightly negative from rounding is clamped to 0,
/// giving F = 0 and p = 1 exactly.
pub fn anova_compare(reduced: &FitResult, full: &FitResult) -> Result<AnovaResult> {
    if reduced.n != full.n {
        return Err(Error::NotNested(format!(
            "models fit different observation counts ({} vs {})",
            reduced.n, full.n
        )));
    }
    for column in &reduced.column_names {
        if !full.column_names.contains(column) {
            return Err(Error::NotNested(format!(
                "reduced model column '{column}' is not in the full model"
            )));
        }
    }
    let p_reduced = reduced.column_names.len();
    let p_full = full.column_names.len();
    if p_full <= p_reduced {
        return Err(Error::NotNested(
            "full model adds no parameters over the reduced model".into(),
        ));
    }
    if full.rss == 0.0 {
        return Err(Error::SaturatedModel);
    }
    if full.df_residual == 0 {
        return Err(Error::NoResidualDf);
    }

    let df_numerator = p_full - p_reduced;
    let df_denominator = full.df_residual;
    let rss_drop = (reduced.rss - full.rss).max(0.0);
    let f_statistic = (rss_drop / df_numerator as f64) / (full.rss / df_denominator as f64);
    let p_value = f_survival(f_statistic, df_numerator as f64, df_denominator as f64)?;

    Ok(AnovaResult {
        f_statistic,
        df_numerator,
        df_denominator,
        p_value,
    })
}
