//! Log-log OLS, nested F-tests and the global / local / combined comparison.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::features::FeatureTable;

pub const INTERCEPT: &str = "(intercept)";

/// Relative pivot size below which a design column counts as collinear.
const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("negative value {value} at row {row} cannot be log-transformed")]
    NegativeInput { row: usize, value: f64 },
    #[error("log offset must be positive, got {0}")]
    BadOffset(f64),
    #[error("need more observations ({n}) than parameters ({p})")]
    TooFewObservations { n: usize, p: usize },
    #[error("design matrix is rank deficient: collinear columns {}", .columns.join(", "))]
    RankDeficient { columns: Vec<String> },
    #[error("design columns have unequal lengths")]
    Ragged,
    #[error("models are not nested: {0}")]
    NotNested(String),
}

/// `ln(x + 1)` elementwise.
pub fn log1_transform(xs: &[f64]) -> Result<Vec<f64>, StatsError> {
    log_transform(xs, 1.0)
}

/// `ln(x + offset)` elementwise, rejecting negative inputs.
pub fn log_transform(xs: &[f64], offset: f64) -> Result<Vec<f64>, StatsError> {
    if offset.is_nan() || offset <= 0.0 {
        return Err(StatsError::BadOffset(offset));
    }
    xs.iter()
        .enumerate()
        .map(|(row, &value)| {
            if value < 0.0 || value.is_nan() {
                Err(StatsError::NegativeInput { row, value })
            } else {
                Ok(libm::log(value + offset))
            }
        })
        .collect()
}

/// Treatment coding with the lexicographically smallest category as
/// reference. Columns are named `"{prefix}={category}"`, in category order.
pub fn dummy_code<S: AsRef<str>>(prefix: &str, values: &[S]) -> Vec<(String, Vec<f64>)> {
    let categories: BTreeSet<&str> = values.iter().map(|v| v.as_ref()).collect();
    categories
        .into_iter()
        .skip(1)
        .map(|cat| {
            let col = values
                .iter()
                .map(|v| if v.as_ref() == cat { 1.0 } else { 0.0 })
                .collect();
            (format!("{prefix}={cat}"), col)
        })
        .collect()
}

/// Named design columns. Callers add the intercept explicitly.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Design {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Design {
    pub fn with_intercept(n: usize) -> Self {
        Design {
            names: vec![INTERCEPT.to_string()],
            columns: vec![vec![1.0; n]],
        }
    }

    pub fn push(&mut self, name: impl Into<String>, column: Vec<f64>) {
        self.names.push(name.into());
        self.columns.push(column);
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Coefficient {
    pub term: String,
    pub estimate: f64,
    pub std_error: f64,
}

/// Fitted OLS model. `p` counts regression coefficients; AIC and BIC add one
/// more parameter for the error variance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegressionResult {
    pub coefficients: Vec<Coefficient>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub rss: f64,
    pub tss: f64,
    pub log_likelihood: f64,
    pub n: usize,
    pub p: usize,
    pub aic: f64,
    pub bic: f64,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub residuals: Vec<f64>,
}

impl RegressionResult {
    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.coefficients.iter().map(|c| c.term.as_str())
    }

    pub fn coefficient(&self, term: &str) -> Option<&Coefficient> {
        self.coefficients.iter().find(|c| c.term == term)
    }
}

/// Least squares through a Householder QR factorization.
pub fn ols_fit(design: &Design, y: &[f64]) -> Result<RegressionResult, StatsError> {
    let n = y.len();
    let p = design.columns.len();
    if design.columns.iter().any(|c| c.len() != n) || design.names.len() != p {
        return Err(StatsError::Ragged);
    }
    if n <= p {
        return Err(StatsError::TooFewObservations { n, p });
    }

    let norms: Vec<f64> = design.columns.iter().map(|c| norm(c)).collect();
    let mut a: Vec<Vec<f64>> = design.columns.clone();
    let mut qty = y.to_vec();
    for j in 0..p {
        let alpha = norm(&a[j][j..]);
        if norms[j] == 0.0 || alpha <= RANK_TOLERANCE * norms[j] {
            return Err(StatsError::RankDeficient {
                columns: collinear_with(design, &a, j, &norms),
            });
        }
        let alpha = if a[j][j] > 0.0 { -alpha } else { alpha };
        // v = x - alpha e1, stored in place of column j below the diagonal.
        let mut v = a[j][j..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        for col in &mut a[j + 1..p] {
            reflect(&v, vv, &mut col[j..]);
        }
        reflect(&v, vv, &mut qty[j..]);
        a[j][j] = alpha;
        for x in &mut a[j][j + 1..] {
            *x = 0.0;
        }
    }

    // R is a[col][row] for row <= col.
    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let mut s = qty[i];
        for k in i + 1..p {
            s -= a[k][i] * beta[k];
        }
        beta[i] = s / a[i][i];
    }

    let mut residuals = y.to_vec();
    for (col, b) in design.columns.iter().zip(&beta) {
        for (r, x) in residuals.iter_mut().zip(col) {
            *r -= x * b;
        }
    }
    let rss: f64 = residuals.iter().map(|r| r * r).sum();
    let tss = total_sum_of_squares(y);
    let r_squared = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let adj_r_squared = 1.0 - (1.0 - r_squared) * (n - 1) as f64 / (n - p) as f64;

    // Standard errors from diag((R^T R)^-1) = row norms of R^-1.
    let sigma2 = rss / (n - p) as f64;
    let rinv = upper_inverse(&a, p);
    let coefficients = (0..p)
        .map(|i| {
            let s: f64 = (i..p).map(|k| rinv[i][k] * rinv[i][k]).sum();
            Coefficient {
                term: design.names[i].clone(),
                estimate: beta[i],
                std_error: libm::sqrt(sigma2 * s),
            }
        })
        .collect();

    let nf = n as f64;
    let log_likelihood =
        -0.5 * nf * (libm::log(2.0 * core::f64::consts::PI) + libm::log(rss / nf) + 1.0);
    let k = (p + 1) as f64;
    Ok(RegressionResult {
        coefficients,
        r_squared,
        adj_r_squared,
        rss,
        tss,
        log_likelihood,
        n,
        p,
        aic: 2.0 * k - 2.0 * log_likelihood,
        bic: k * libm::log(nf) - 2.0 * log_likelihood,
        residuals,
    })
}

fn norm(x: &[f64]) -> f64 {
    // Scaled to avoid overflow on large counts.
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * libm::sqrt(s)
}

fn reflect(v: &[f64], vv: f64, x: &mut [f64]) {
    let dot: f64 = v.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
    let f = 2.0 * dot / vv;
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= f * vi;
    }
}

fn total_sum_of_squares(y: &[f64]) -> f64 {
    if y.iter().all(|&v| v == y[0]) {
        return 0.0;
    }
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    y.iter().map(|v| (v - mean) * (v - mean)).sum()
}

fn upper_inverse(a: &[Vec<f64>], p: usize) -> Vec<Vec<f64>> {
    // inv[i][k] for k >= i, solving R X = I column by column.
    let mut inv = vec![vec![0.0; p]; p];
    for k in 0..p {
        inv[k][k] = 1.0 / a[k][k];
        for i in (0..k).rev() {
            let mut s = 0.0;
            for j in i + 1..=k {
                s += a[j][i] * inv[j][k];
            }
            inv[i][k] = -s / a[i][i];
        }
    }
    inv
}

/// Names column `j` together with the earlier columns that reproduce it.
fn collinear_with(design: &Design, a: &[Vec<f64>], j: usize, norms: &[f64]) -> Vec<String> {
    let mut names = Vec::new();
    if j > 0 && norms[j] > 0.0 {
        // Solve R[..j, ..j] c = R[..j, j]: column j in terms of earlier ones.
        let mut c = vec![0.0; j];
        for i in (0..j).rev() {
            let mut s = a[j][i];
            for k in i + 1..j {
                s -= a[k][i] * c[k];
            }
            c[i] = s / a[i][i];
        }
        for i in 0..j {
            if libm::fabs(c[i]) * norms[i] > 1e-6 * norms[j] {
                names.push(design.names[i].clone());
            }
        }
    }
    names.push(design.names[j].clone());
    names
}

/// Survival function of the F distribution with `d1`, `d2` degrees of freedom.
pub fn f_survival(f: f64, d1: f64, d2: f64) -> f64 {
    if f.is_nan() {
        return f64::NAN;
    }
    if f <= 0.0 {
        return 1.0;
    }
    if f.is_infinite() {
        return 0.0;
    }
    regularized_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0)
}

/// Regularized incomplete beta `I_x(a, b)` by Lentz's continued fraction.
pub fn regularized_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = libm::lgamma(a + b) - libm::lgamma(a) - libm::lgamma(b)
        + a * libm::log(x)
        + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_fraction(x, a, b) / a
    } else {
        1.0 - front * beta_fraction(1.0 - x, b, a) / b
    }
}

fn beta_fraction(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let mut c = 1.0;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if libm::fabs(d) < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..100_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if libm::fabs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if libm::fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if libm::fabs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if libm::fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if libm::fabs(delta - 1.0) < EPS {
            break;
        }
    }
    h
}

/// Outcome of comparing two fitted models.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelComparison {
    /// `"nested_f"` or `"information_criteria"`.
    pub test: String,
    /// Restricted model for F-tests, first model otherwise.
    pub model_a: String,
    /// Full model for F-tests, second model otherwise.
    pub model_b: String,
    /// F statistic, or `aic_b - aic_a` for information criteria.
    pub statistic: f64,
    pub df: Option<(usize, usize)>,
    pub p_value: Option<f64>,
    /// `aic_b - aic_a`.
    pub aic_delta: f64,
    /// `bic_b - bic_a`.
    pub bic_delta: f64,
    pub preferred: String,
}

/// Partial F-test of `restricted` against `full`, whose terms must be a
/// strict superset fitted on the same response.
pub fn nested_f_test(
    restricted: &RegressionResult,
    full: &RegressionResult,
) -> Result<FTest, StatsError> {
    if restricted.n != full.n {
        return Err(StatsError::NotNested(format!(
            "{} vs {} observations",
            restricted.n, full.n
        )));
    }
    let full_terms: BTreeSet<&str> = full.terms().collect();
    if let Some(t) = restricted.terms().find(|t| !full_terms.contains(t)) {
        return Err(StatsError::NotNested(format!(
            "term {t} missing from full model"
        )));
    }
    if full.p <= restricted.p {
        return Err(StatsError::NotNested(
            "full model adds no terms".to_string(),
        ));
    }
    let scale = restricted.tss.abs().max(full.tss.abs()).max(1.0);
    if (restricted.tss - full.tss).abs() > 1e-9 * scale {
        return Err(StatsError::NotNested(
            "models fit different responses".to_string(),
        ));
    }
    let df1 = full.p - restricted.p;
    let df2 = full.n - full.p;
    let gain = (restricted.rss - full.rss).max(0.0);
    let (statistic, p_value) = if full.tss == 0.0 || gain == 0.0 {
        (0.0, 1.0)
    } else if full.rss == 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        let f = (gain / df1 as f64) / (full.rss / df2 as f64);
        (f, f_survival(f, df1 as f64, df2 as f64))
    };
    Ok(FTest {
        statistic,
        df1,
        df2,
        p_value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FTest {
    pub statistic: f64,
    pub df1: usize,
    pub df2: usize,
    pub p_value: f64,
}

/// Options for [`compare_three`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompareOptions {
    /// Added before taking logs of the response and continuous regressors.
    pub log_offset: f64,
    /// Significance level used to label the preferred model.
    pub alpha: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            log_offset: 1.0,
            alpha: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NamedModel {
    pub name: String,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub fit: RegressionResult,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThreeModelReport {
    pub options: CompareOptions,
    pub n: usize,
    /// Models in order: global, local, both.
    pub models: Vec<NamedModel>,
    /// Global vs both (F), local vs both (F), global vs local (AIC/BIC).
    pub comparisons: Vec<ModelComparison>,
    pub preferred_model: String,
    pub notes: Vec<String>,
}

impl ThreeModelReport {
    pub fn model(&self, name: &str) -> Option<&RegressionResult> {
        self.models.iter().find(|m| m.name == name).map(|m| &m.fit)
    }
}

pub const GLOBAL_TERMS: [&str; 3] = ["log_closeness", "log_betweenness", "log_coreness"];
pub const LOCAL_TERMS: [&str; 2] = ["log_local_centrality", "log_local_spanning"];

/// Fits the global, local and combined models (each with tenure and
/// profession controls) and compares them: partial F-tests of each single
/// block against the combined model, and AIC/BIC between the two blocks.
pub fn compare_three(
    table: &FeatureTable,
    opts: CompareOptions,
) -> Result<ThreeModelReport, StatsError> {
    let n = table.rows.len();
    let off = opts.log_offset;
    let col = |f: fn(&crate::features::FeatureRow) -> f64| -> Vec<f64> {
        table.rows.iter().map(f).collect()
    };
    let y = log_transform(&col(|r| r.contribution as f64), off)?;
    let global = [
        log_transform(&col(|r| r.closeness), off)?,
        log_transform(&col(|r| r.betweenness), off)?,
        log_transform(&col(|r| f64::from(r.coreness)), off)?,
    ];
    let local = [
        log_transform(&col(|r| r.local_centrality), off)?,
        log_transform(&col(|r| r.local_spanning), off)?,
    ];

    let mut notes = Vec::new();
    let mut controls: Vec<(String, Vec<f64>)> = Vec::new();
    let tenure = log_transform(&col(|r| r.tenure_days), off)?;
    if is_constant(&tenure) {
        notes.push("log_tenure dropped: constant column".to_string());
    } else {
        controls.push(("log_tenure".to_string(), tenure));
    }
    let professions: Vec<&str> = table.rows.iter().map(|r| r.profession.as_str()).collect();
    let dummies = dummy_code("profession", &professions);
    if dummies.is_empty() {
        notes.push("profession dummies dropped: single category".to_string());
    }
    controls.extend(dummies);
    notes.push(format!(
        "response and continuous regressors transformed as ln(x + {off})"
    ));
    notes.push("betweenness is unnormalized over unordered pairs".to_string());

    let build = |blocks: &[(&[&str], &[Vec<f64>])]| {
        let mut d = Design::with_intercept(n);
        for (names, cols) in blocks {
            for (name, c) in names.iter().zip(cols.iter()) {
                d.push(*name, c.clone());
            }
        }
        for (name, c) in &controls {
            d.push(name.clone(), c.clone());
        }
        d
    };
    let m_global = ols_fit(&build(&[(&GLOBAL_TERMS, &global)]), &y)?;
    let m_local = ols_fit(&build(&[(&LOCAL_TERMS, &local)]), &y)?;
    let m_both = ols_fit(
        &build(&[(&GLOBAL_TERMS, &global), (&LOCAL_TERMS, &local)]),
        &y,
    )?;

    let f_comparison = |a: &str, ra: &RegressionResult| -> Result<ModelComparison, StatsError> {
        let t = nested_f_test(ra, &m_both)?;
        Ok(ModelComparison {
            test: "nested_f".to_string(),
            model_a: a.to_string(),
            model_b: "both".to_string(),
            statistic: t.statistic,
            df: Some((t.df1, t.df2)),
            p_value: Some(t.p_value),
            aic_delta: m_both.aic - ra.aic,
            bic_delta: m_both.bic - ra.bic,
            preferred: if t.p_value < opts.alpha { "both" } else { a }.to_string(),
        })
    };
    let global_vs_both = f_comparison("global", &m_global)?;
    let local_vs_both = f_comparison("local", &m_local)?;
    let ic = ModelComparison {
        test: "information_criteria".to_string(),
        model_a: "global".to_string(),
        model_b: "local".to_string(),
        statistic: m_local.aic - m_global.aic,
        df: None,
        p_value: None,
        aic_delta: m_local.aic - m_global.aic,
        bic_delta: m_local.bic - m_global.bic,
        preferred: if m_local.aic < m_global.aic {
            "local"
        } else {
            "global"
        }
        .to_string(),
    };

    let global_adds = local_vs_both.p_value.unwrap_or(1.0) < opts.alpha;
    let local_adds = global_vs_both.p_value.unwrap_or(1.0) < opts.alpha;
    let preferred_model = match (local_adds, global_adds) {
        (true, false) => "local".to_string(),
        (false, true) => "global".to_string(),
        (true, true) => "both".to_string(),
        (false, false) => ic.preferred.clone(),
    };

    Ok(ThreeModelReport {
        options: opts,
        n,
        models: vec![
            NamedModel {
                name: "global".to_string(),
                fit: m_global,
            },
            NamedModel {
                name: "local".to_string(),
                fit: m_local,
            },
            NamedModel {
                name: "both".to_string(),
                fit: m_both,
            },
        ],
        comparisons: vec![global_vs_both, local_vs_both, ic],
        preferred_model,
        notes,
    })
}

fn is_constant(xs: &[f64]) -> bool {
    xs.iter().all(|&x| x == xs[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(cols: &[(&str, &[f64])]) -> Design {
        let n = cols[0].1.len();
        let mut d = Design::with_intercept(n);
        for (name, c) in cols {
            d.push(*name, c.to_vec());
        }
        d
    }

    #[test]
    fn log1_examples() {
        let e = core::f64::consts::E;
        let out = log1_transform(&[0.0, e - 1.0, e * e - 1.0]).unwrap();
        assert_eq!(out[0], 0.0);
        assert!((out[1] - 1.0).abs() < 1e-15);
        assert!((out[2] - 2.0).abs() < 1e-15);
        assert_eq!(
            log1_transform(&[1.0, -2.0]),
            Err(StatsError::NegativeInput {
                row: 1,
                value: -2.0
            })
        );
        assert_eq!(log_transform(&[1.0], 0.0), Err(StatsError::BadOffset(0.0)));
    }

    #[test]
    fn dummy_examples() {
        let d = dummy_code("profession", &["doctor", "programmer", "doctor"]);
        assert_eq!(
            d,
            vec![("profession=programmer".to_string(), vec![0.0, 1.0, 0.0])]
        );
        assert!(dummy_code("profession", &["doctor", "doctor"]).is_empty());
        let d = dummy_code("p", &["c", "a", "b"]);
        let names: Vec<_> = d.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["p=b", "p=c"]);
    }

    #[test]
    fn exact_line() {
        let fit = ols_fit(&design(&[("x", &[1.0, 2.0, 3.0])]), &[2.0, 4.0, 6.0]).unwrap();
        assert!((fit.coefficients[1].estimate - 2.0).abs() < 1e-12);
        assert!(fit.coefficients[0].estimate.abs() < 1e-12);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn power_law_in_logs() {
        let x: Vec<f64> = (1..=10).map(|v| libm::log(v as f64)).collect();
        let y: Vec<f64> = (1..=10).map(|v| libm::log((v * v) as f64)).collect();
        let fit = ols_fit(&design(&[("log_x", &x)]), &y).unwrap();
        assert!((fit.coefficients[1].estimate - 2.0).abs() < 1e-12);
    }

    #[test]
    fn guards() {
        let d = design(&[("x", &[1.0, 2.0])]);
        assert_eq!(
            ols_fit(&d, &[1.0, 2.0]),
            Err(StatsError::TooFewObservations { n: 2, p: 2 })
        );
        let d = design(&[("a", &[1.0, 2.0, 3.0, 4.0]), ("b", &[2.0, 4.0, 6.0, 8.0])]);
        match ols_fit(&d, &[1.0, 0.0, 2.0, 5.0]) {
            Err(StatsError::RankDeficient { columns }) => assert_eq!(columns, ["a", "b"]),
            other => panic!("{other:?}"),
        }
        let d = design(&[("flat", &[3.0, 3.0, 3.0, 3.0])]);
        match ols_fit(&d, &[1.0, 0.0, 2.0, 5.0]) {
            Err(StatsError::RankDeficient { columns }) => {
                assert_eq!(columns, [INTERCEPT, "flat"])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn adjusted_r2_not_above_r2() {
        let d = design(&[("x", &[1.0, 2.0, 4.0, 3.0, 7.0])]);
        let fit = ols_fit(&d, &[1.0, 3.0, 2.0, 5.0, 4.0]).unwrap();
        assert!(fit.adj_r_squared <= fit.r_squared);
        assert!((0.0..=1.0).contains(&fit.r_squared));
    }

    #[test]
    fn f_test_requires_nesting() {
        let x = [1.0, 2.0, 4.0, 3.0, 7.0, 6.0];
        let y = [1.0, 3.0, 2.0, 5.0, 4.0, 8.0];
        let a = ols_fit(&design(&[("x", &x)]), &y).unwrap();
        assert!(matches!(
            nested_f_test(&a, &a),
            Err(StatsError::NotNested(_))
        ));
        let z = [0.0, 1.0, 0.0, 1.0, 1.0, 0.0];
        let b = ols_fit(&design(&[("z", &z)]), &y).unwrap();
        let ab = ols_fit(&design(&[("x", &x), ("z", &z)]), &y).unwrap();
        assert!(matches!(
            nested_f_test(&a, &b),
            Err(StatsError::NotNested(_))
        ));
        let t = nested_f_test(&a, &ab).unwrap();
        assert_eq!((t.df1, t.df2), (1, 3));
        assert!((0.0..=1.0).contains(&t.p_value));
    }

    #[test]
    fn f_survival_edges() {
        assert_eq!(f_survival(0.0, 2.0, 10.0), 1.0);
        assert_eq!(f_survival(f64::INFINITY, 2.0, 10.0), 0.0);
        // F(2, d2) has a closed form: (1 + 2f/d2)^(-d2/2).
        let f = 3.7;
        let d2 = 17.0;
        let exact = libm::pow(1.0 + 2.0 * f / d2, -d2 / 2.0);
        assert!((f_survival(f, 2.0, d2) - exact).abs() < 1e-14);
    }
}
