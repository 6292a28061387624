//! Estimation on user data files.

use std::fmt::Write as _;

use meanlik_core::binomial::{bayes_p, mele_p, mle_p, BinomialData};
use meanlik_core::exponential::{bayes_mu, mele_mu, mle_mu, ExponentialData};
use meanlik_core::ma1::Ma1Estimator;
use meanlik_core::{EstimateTriple, PriorSpec};

use crate::output::fmt_float;
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitModel {
    Binomial,
    Exponential,
    Ma1,
}

impl FitModel {
    pub fn as_str(self) -> &'static str {
        match self {
            FitModel::Binomial => "binomial",
            FitModel::Exponential => "exponential",
            FitModel::Ma1 => "ma1",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub model: FitModel,
    /// Number of trials or observations.
    pub n: u64,
    pub estimates: EstimateTriple,
}

/// Numbers in the file with their 1-based line numbers. Blank lines and
/// anything after `#` are ignored; values may be separated by whitespace or
/// commas.
pub fn parse_numbers(text: &str) -> Result<Vec<(usize, f64)>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or_default();
        for token in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: f64 = token
                .parse()
                .map_err(|_| CliError::Data(format!("line {}: cannot parse {token:?} as a number", i + 1)))?;
            if !v.is_finite() {
                return Err(CliError::Data(format!("line {}: value {token:?} is not finite", i + 1)));
            }
            values.push((i + 1, v));
        }
    }
    Ok(values)
}

fn count(line: usize, v: f64) -> Result<u64> {
    if v < 0.0 || v.fract() != 0.0 {
        return Err(CliError::Data(format!("line {line}: expected a nonnegative integer, got {v}")));
    }
    Ok(v as u64)
}

pub fn fit(text: &str, model: FitModel, prior: PriorSpec) -> Result<FitReport> {
    let values = parse_numbers(text)?;
    match model {
        FitModel::Binomial => {
            let [(lx, x), (ln, n)] = values[..] else {
                return Err(CliError::Data(format!(
                    "binomial input needs exactly two numbers (successes and trials), found {}",
                    values.len()
                )));
            };
            let d = BinomialData::new(count(lx, x)?, count(ln, n)?)?;
            Ok(FitReport {
                model,
                n: d.trials(),
                estimates: EstimateTriple {
                    mle: mle_p(d),
                    mele: mele_p(d),
                    bayes: bayes_p(d),
                    mle_on_boundary: d.successes() == 0 || d.successes() == d.trials(),
                },
            })
        }
        FitModel::Exponential => {
            if let Some((line, v)) = values.iter().find(|(_, v)| *v <= 0.0) {
                return Err(CliError::Data(format!("line {line}: lifetimes must be positive, got {v}")));
            }
            let xs: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
            let d = ExponentialData::from_observations(&xs)?;
            Ok(FitReport {
                model,
                n: d.size(),
                estimates: EstimateTriple {
                    mle: mle_mu(d),
                    mele: mele_mu(d)?,
                    bayes: bayes_mu(d)?,
                    mle_on_boundary: false,
                },
            })
        }
        FitModel::Ma1 => {
            let z: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
            if z.len() < 2 {
                return Err(CliError::Data(format!("MA(1) estimation needs at least two observations, found {}", z.len())));
            }
            let prior = if prior == PriorSpec::UNIFORM { prior } else { PriorSpec::JEFFREYS_MA1 };
            let estimates = Ma1Estimator::with_default_rule(prior).estimate(&z)?;
            Ok(FitReport { model, n: z.len() as u64, estimates })
        }
    }
}

impl FitReport {
    pub fn to_text(&self) -> String {
        let e = &self.estimates;
        let mut s = String::new();
        let mut line = |k: &str, v: String| writeln!(s, "{k:<16}{v}").expect("string write");
        line("model", self.model.as_str().to_owned());
        line("n", self.n.to_string());
        line("mle", fmt_float(e.mle));
        line("mele", fmt_float(e.mele));
        line("bayes", fmt_float(e.bayes));
        if self.model == FitModel::Ma1 {
            line("mle_on_boundary", e.mle_on_boundary.to_string());
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let e = &self.estimates;
        format!(
            "model,n,mle,mele,bayes,mle_on_boundary\n{},{},{},{},{},{}\n",
            self.model.as_str(),
            self.n,
            fmt_float(e.mle),
            fmt_float(e.mele),
            fmt_float(e.bayes),
            e.mle_on_boundary
        )
    }
}
