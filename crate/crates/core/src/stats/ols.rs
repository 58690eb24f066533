//! Ordinary least squares via Householder QR, with classical coefficient
//! inference (standard errors, t statistics, two-sided p-values).
//!
//! The solver never forms XᵀX: coefficients come from back substitution
//! on the triangular factor, and (XᵀX)⁻¹ diagonals from rows of R⁻¹.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::design::{DesignMatrix, ModelSpec};
use crate::stats::dist::t_survival;
use crate::stats::qr;

/// Relative pivot tolerance: a diagonal of R below this fraction of the
/// largest diagonal marks its column as linearly dependent.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// RSS at or below this fraction of TSS is treated as a perfect fit, for
/// which standard errors and p-values are reported as 0 with the
/// `degenerate` flag set instead of dividing by (near-)zero variance.
const DEGENERATE_RSS_FRACTION: f64 = 1e-12;

/// A fitted linear model. `standard_errors`, `t_values`, and `p_values`
/// are empty until [`coefficient_inference`] fills them.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub rss: f64,
    pub tss: f64,
    pub df_residual: usize,
    pub residuals: Vec<f64>,
    pub column_names: Vec<String>,
    pub n: usize,
    pub spec: Option<ModelSpec>,
    pub degenerate: bool,
}

#[derive(Serialize)]
struct CoefficientRow<'a> {
    name: &'a str,
    estimate: f64,
    std_error: f64,
    t: f64,
    p: f64,
}

#[derive(Serialize)]
struct FitResultJson<'a> {
    coefficients: Vec<CoefficientRow<'a>>,
    r_squared: f64,
    rss: f64,
    df_residual: usize,
    n: usize,
    degenerate: bool,
}

impl FitResult {
    /// JSON with one row per coefficient plus the fit summary. Inference
    /// fields render as 0 when inference has not run (or is degenerate).
    pub fn to_json(&self) -> String {
        let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        let doc = FitResultJson {
            coefficients: self
                .column_names
                .iter()
                .enumerate()
                .map(|(i, name)| CoefficientRow {
                    name,
                    estimate: self.coefficients[i],
                    std_error: at(&self.standard_errors, i),
                    t: at(&self.t_values, i),
                    p: at(&self.p_values, i),
                })
                .collect(),
            r_squared: self.r_squared,
            rss: self.rss,
            df_residual: self.df_residual,
            n: self.n,
            degenerate: self.degenerate,
        };
        serde_json::to_string_pretty(&doc).expect("fit result serializes")
    }

    /// Estimate for a coefficient by column name.
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.column_names
            .iter()
            .position(|c| c == name)
            .map(|i| self.coefficients[i])
    }
}

/// Least-squares fit of `y` on the design. Requires n ≥ p and full column
/// rank; the rank error names the first dependent column.
pub fn fit_ols(design: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
    assert_eq!(y.len(), design.n, "outcome length must match design rows");
    let (n, p) = (design.n, design.p);
    if n < p {
        return Err(Error::TooFewObservations { rows: n, cols: p });
    }

    let factor = qr::factor(&design.values, n, p, y);
    if let Some(k) = factor.deficient_column(RANK_TOLERANCE) {
        return Err(Error::RankDeficient {
            column: design.column_names[k].clone(),
        });
    }
    let coefficients = factor.solve();

    // Residuals recomputed explicitly against the original design rather
    // than read off the factorization.
    let residuals: Vec<f64> = (0..n)
        .map(|i| {
            let fitted: f64 = (0..p)
                .map(|j| design.values[i * p + j] * coefficients[j])
                .sum();
            y[i] - fitted
        })
        .collect();
    let rss: f64 = residuals.iter().map(|r| r * r).sum();
    let mean = y.iter().sum::<f64>() / n as f64;
    let tss: f64 = y.iter().map(|v| (v - mean) * (v - mean)).sum();
    let r_squared = if tss > 0.0 { 1.0 - rss / tss } else { 0.0 };

    Ok(FitResult {
        coefficients,
        standard_errors: Vec::new(),
        t_values: Vec::new(),
        p_values: Vec::new(),
        r_squared,
        rss,
        tss,
        df_residual: n - p,
        residuals,
        column_names: design.column_names.clone(),
        n,
        spec: design.spec.clone(),
        degenerate: false,
    })
}

/// Fills standard errors, t statistics, and two-sided p-values on a fit.
///
/// Uses s² = RSS/df and Var(β̂) = s²(XᵀX)⁻¹ read from the triangular
/// factor. A perfect fit (RSS ≈ 0) reports zeros with the `degenerate`
/// flag instead, since s² carries no information there.
pub fn coefficient_inference(fit: &FitResult, design: &DesignMatrix) -> Result<FitResult> {
    assert_eq!(
        fit.column_names, design.column_names,
        "inference design must match the fitted design"
    );
    if fit.df_residual == 0 {
        return Err(Error::NoResidualDf);
    }

    let mut out = fit.clone();
    let p = design.p;

    if fit.rss <= DEGENERATE_RSS_FRACTION * fit.tss {
        out.standard_errors = vec![0.0; p];
        out.t_values = vec![0.0; p];
        out.p_values = vec![0.0; p];
        out.degenerate = true;
        return Ok(out);
    }

    let factor = qr::factor(&design.values, design.n, p, &vec![0.0; design.n]);
    let diag = factor.xtx_inverse_diagonal();
    let s2 = fit.rss / fit.df_residual as f64;
    let df = fit.df_residual as f64;

    let mut standard_errors = Vec::with_capacity(p);
    let mut t_values = Vec::with_capacity(p);
    let mut p_values = Vec::with_capacity(p);
    for (&d, &b) in diag.iter().zip(&fit.coefficients) {
        let se = (s2 * d).sqrt();
        let t = b / se;
        standard_errors.push(se);
        t_values.push(t);
        p_values.push(2.0 * t_survival(t.abs(), df)?);
    }
    out.standard_errors = standard_errors;
    out.t_values = t_values;
    out.p_values = p_values;
    Ok(out)
}

/// Builds the design for `spec`, fits it, and runs inference: the whole
/// modeling path for one model in a single call.
pub fn fit_model(
    records: &[crate::metrics::UtteranceMetrics],
    spec: &ModelSpec,
) -> Result<FitResult> {
    let (design, y) = crate::stats::design::build_design_matrix(records, spec)?;
    let fit = fit_ols(&design, &y)?;
    coefficient_inference(&fit, &design)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(values: Vec<f64>, names: &[&str], n: usize) -> DesignMatrix {
        let p = names.len();
        assert_eq!(values.len(), n * p);
        DesignMatrix {
            values,
            column_names: names.iter().map(|s| s.to_string()).collect(),
            n,
            p,
            spec: None,
        }
    }

    #[test]
    fn intercept_only_fits_the_mean_with_zero_r_squared() {
        let d = design(vec![1.0, 1.0], &["intercept"], 2);
        let fit = fit_ols(&d, &[2.0, 4.0]).unwrap();
        assert!((fit.coefficients[0] - 3.0).abs() < 1e-12);
        assert!(fit.r_squared.abs() < 1e-12);
        assert_eq!(fit.df_residual, 1);
    }

    #[test]
    fn exact_line_has_unit_r_squared_and_zero_rss() {
        let d = design(vec![1.0, 0.0, 1.0, 1.0, 1.0, 2.0], &["intercept", "x"], 3);
        let fit = fit_ols(&d, &[1.0, 3.0, 5.0]).unwrap();
        assert!((fit.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
        assert!(fit.rss < 1e-24);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_group_dummy_recovers_group_means() {
        // Reference group y = {10, 14} (mean 12), dummy group y = {20, 26}
        // (mean 23): intercept 12, dummy coefficient 11.
        let d = design(
            vec![1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0],
            &["intercept", "Negative"],
            4,
        );
        let fit = fit_ols(&d, &[10.0, 14.0, 20.0, 26.0]).unwrap();
        assert!((fit.coefficients[0] - 12.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 11.0).abs() < 1e-12);
    }

    #[test]
    fn residuals_are_orthogonal_to_design_columns() {
        let d = design(
            vec![
                1.0, 0.5, 1.0, 1.5, 1.0, 2.5, 1.0, 3.0, 1.0, 4.5, 1.0, 5.0,
            ],
            &["intercept", "x"],
            6,
        );
        let y = [0.3, 1.1, 2.0, 2.2, 3.9, 4.1];
        let fit = fit_ols(&d, &y).unwrap();
        for j in 0..d.p {
            let dot: f64 = (0..d.n).map(|i| d.values[i * d.p + j] * fit.residuals[i]).sum();
            assert!(dot.abs() < 1e-10, "column {j} not orthogonal: {dot}");
        }
    }

    #[test]
    fn too_few_rows_is_an_error() {
        let d = design(vec![1.0, 2.0], &["intercept", "x"], 1);
        assert!(matches!(
            fit_ols(&d, &[1.0]),
            Err(Error::TooFewObservations { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn rank_deficiency_names_the_dependent_column() {
        // Second column duplicates the intercept.
        let d = design(
            vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
            &["intercept", "Mixed_feelings"],
            3,
        );
        let err = fit_ols(&d, &[1.0, 2.0, 3.0]).unwrap_err();
        assert_eq!(
            err.to_string(),
            "design matrix is rank-deficient at column 'Mixed_feelings'"
        );
    }

    #[test]
    fn inference_matches_normal_equations_oracle() {
        // y = 2 + 0.5x + fixed noise, n=10; reference values computed
        // independently via (XᵀX)⁻¹ normal equations.
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y = [
            2.013, 2.479, 3.007, 3.531, 3.985, 4.509, 4.973, 5.518, 5.996, 6.489,
        ];
        let mut values = Vec::new();
        for &xi in &x {
            values.push(1.0);
            values.push(xi);
        }
        let d = design(values, &["intercept", "x"], 10);
        let fit = fit_ols(&d, &y).unwrap();
        let fit = coefficient_inference(&fit, &d).unwrap();

        assert!((fit.coefficients[0] - 2.005236363636363).abs() < 1e-12);
        assert!((fit.coefficients[1] - 0.49883636363636374).abs() < 1e-12);
        assert!((fit.rss - 0.0030042909090908683).abs() < 1e-14);
        assert!((fit.r_squared - 0.9998536784562735).abs() < 1e-12);
        assert!((fit.standard_errors[0] - 0.011389940465237346).abs() < 1e-10);
        assert!((fit.standard_errors[1] - 0.002133531326900299).abs() < 1e-10);
        assert!((fit.t_values[0] - 176.05327874684173).abs() < 1e-6);
        assert!((fit.t_values[1] - 233.80784586889482).abs() < 1e-6);
        // Far-tail p-values: compare on relative scale.
        let p_ref = [1.2124437277424627e-15, 1.2534776437086577e-16];
        for (j, &reference) in p_ref.iter().enumerate() {
            assert!(
                ((fit.p_values[j] - reference) / reference).abs() < 1e-6,
                "p[{j}] = {} vs {}",
                fit.p_values[j],
                reference
            );
        }
        assert!(!fit.degenerate);
    }

    #[test]
    fn equal_group_means_give_zero_coefficient_and_unit_p() {
        let d = design(
            vec![1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0],
            &["intercept", "g"],
            4,
        );
        let fit = fit_ols(&d, &[1.0, 3.0, 2.0, 2.0]).unwrap();
        let fit = coefficient_inference(&fit, &d).unwrap();
        assert!(fit.coefficients[1].abs() < 1e-14);
        assert!((fit.p_values[1] - 1.0).abs() < 1e-10);
        assert!((fit.t_values[1]).abs() < 1e-12);
    }

    #[test]
    fn perfect_fit_inference_is_flagged_degenerate() {
        let d = design(vec![1.0, 0.0, 1.0, 1.0, 1.0, 2.0], &["intercept", "x"], 3);
        let fit = fit_ols(&d, &[1.0, 3.0, 5.0]).unwrap();
        let fit = coefficient_inference(&fit, &d).unwrap();
        assert!(fit.degenerate);
        assert_eq!(fit.standard_errors, vec![0.0, 0.0]);
        assert_eq!(fit.p_values, vec![0.0, 0.0]);
    }

    #[test]
    fn saturated_fit_has_no_residual_df_for_inference() {
        let d = design(vec![1.0, 0.0, 1.0, 1.0], &["intercept", "x"], 2);
        let fit = fit_ols(&d, &[1.0, 2.0]).unwrap();
        assert_eq!(fit.df_residual, 0);
        assert!(matches!(
            coefficient_inference(&fit, &d),
            Err(Error::NoResidualDf)
        ));
    }

    #[test]
    fn r_squared_identity_holds() {
        let d = design(
            vec![1.0, 0.2, 1.0, 1.4, 1.0, 2.1, 1.0, 3.3, 1.0, 4.0],
            &["intercept", "x"],
            5,
        );
        let fit = fit_ols(&d, &[0.1, 1.5, 1.9, 3.6, 3.8]).unwrap();
        assert!((fit.r_squared - (1.0 - fit.rss / fit.tss)).abs() < 1e-15);
        for j in 0..2 {
            let fit_inf = coefficient_inference(&fit, &d).unwrap();
            assert!(
                (fit_inf.t_values[j] - fit_inf.coefficients[j] / fit_inf.standard_errors[j])
                    .abs()
                    < 1e-12
            );
            assert!(fit_inf.p_values[j] >= 0.0 && fit_inf.p_values[j] <= 1.0);
        }
    }

    #[test]
    fn json_shape_has_coefficient_rows_and_summary() {
        let d = design(vec![1.0, 0.0, 1.0, 1.0, 1.0, 2.0], &["intercept", "x"], 3);
        let fit = fit_ols(&d, &[1.0, 3.1, 4.9]).unwrap();
        let fit = coefficient_inference(&fit, &d).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&fit.to_json()).unwrap();
        let rows = parsed["coefficients"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["name"], "intercept");
        assert_eq!(rows[1]["name"], "x");
        for key in ["estimate", "std_error", "t", "p"] {
            assert!(rows[0][key].is_number(), "missing {key}");
        }
        for key in ["r_squared", "rss", "df_residual", "n", "degenerate"] {
            assert!(!parsed[key].is_null(), "missing {key}");
        }
        assert_eq!(parsed["n"], 3);
    }
}
