//! From-scratch statistical modeling: dummy-coded OLS with interactions,
//! coefficient inference, nested-model ANOVA, and Q-Q residual
//! diagnostics, together with the distribution tails they need.

mod anova;
mod design;
mod dist;
mod ols;
mod qq;
mod qr;

pub use anova::{anova_compare, AnovaResult};
pub use design::{build_design_matrix, DesignMatrix, ModelSpec, Outcome, Term};
pub use dist::{
    erf, erfc, f_survival, inc_beta, ln_gamma, normal_cdf, normal_quantile, normal_survival,
    t_survival,
};
pub use ols::{coefficient_inference, fit_model, fit_ols, FitResult, RANK_TOLERANCE};
pub use qq::{qq_data, write_qq_tsv, QQData};
