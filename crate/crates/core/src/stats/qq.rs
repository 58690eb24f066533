//! Q-Q data for residual normality checks: sorted standardized residuals
//! paired with standard-normal quantiles at (i − ½)/n plotting positions.

use std::io::Write;

use crate::error::{Error, Result};
use crate::stats::dist::normal_quantile;
use crate::stats::ols::FitResult;

/// Ordered (theoretical quantile, standardized residual) pairs; both
/// coordinates are non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct QQData {
    pub points: Vec<(f64, f64)>,
}

/// Builds Q-Q data from a fit's residuals, standardized by their sample
/// standard deviation (n−1 denominator).
pub fn qq_data(fit: &FitResult) -> Result<QQData> {
    let n = fit.residuals.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let nf = n as f64;
    let mean = fit.residuals.iter().sum::<f64>() / nf;
    let variance = fit
        .residuals
        .iter()
        .map(|r| (r - mean) * (r - mean))
        .sum::<f64>()
        / (nf - 1.0);
    if variance == 0.0 {
        return Err(Error::ZeroResidualVariance);
    }
    let sd = variance.sqrt();

    let mut standardized: Vec<f64> = fit.residuals.iter().map(|r| r / sd).collect();
    standardized.sort_by(|a, b| a.partial_cmp(b).expect("finite residuals"));

    let points = standardized
        .into_iter()
        .enumerate()
        .map(|(i, r)| Ok((normal_quantile((i as f64 + 0.5) / nf)?, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QQData { points })
}

/// Two-column TSV serialization of Q-Q pairs.
pub fn write_qq_tsv<W: Write>(writer: &mut W, data: &QQData) -> Result<()> {
    writeln!(writer, "theoretical_quantile\tstandardized_residual")?;
    for (theoretical, standardized) in &data.points {
        writeln!(writer, "{theoretical}\t{standardized}")?;
    }
    Ok(())
}
