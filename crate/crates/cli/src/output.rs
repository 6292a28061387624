//! The CSV schema shared by every figure command.
//!
//! One header for all commands; columns that do not apply to a model are
//! left empty. Floats carry 12 significant digits.

use std::io::Write;

use meanlik_core::compare::{Comparison, ComparisonPoint};

use crate::Result;

pub const HEADER: [&str; 16] = [
    "model",
    "comparison",
    "x",
    "n",
    "n_rep",
    "seed",
    "mse_mle",
    "mse_alt",
    "r",
    "r_lo",
    "r_hi",
    "pmc",
    "pmc_lo",
    "pmc_hi",
    "pileup_pos",
    "pileup_neg",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Binomial,
    Exponential,
    Ma1Exact2,
    Ma1Sim,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Binomial => "binomial",
            Model::Exponential => "exponential",
            Model::Ma1Exact2 => "ma1_exact2",
            Model::Ma1Sim => "ma1_sim",
        }
    }
}

/// One CSV line. `x` is `p`, `n` or `theta` depending on the model.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRow {
    pub model: Model,
    pub comparison: Comparison,
    pub x: f64,
    pub n: Option<u64>,
    pub n_rep: Option<usize>,
    pub seed: Option<u64>,
    pub mse_mle: f64,
    pub mse_alt: f64,
    pub r: f64,
    pub r_ci: Option<(f64, f64)>,
    pub pmc: f64,
    pub pmc_ci: Option<(f64, f64)>,
    pub pileup: Option<(f64, f64)>,
}

impl OutputRow {
    /// An exact (interval-free) row.
    pub fn exact(model: Model, comparison: Comparison, x: f64, n: u64, mse_mle: f64, mse_alt: f64, pmc: f64) -> Self {
        Self {
            model,
            comparison,
            x,
            n: Some(n),
            n_rep: None,
            seed: None,
            mse_mle,
            mse_alt,
            r: mse_mle / mse_alt,
            r_ci: None,
            pmc,
            pmc_ci: None,
            pileup: None,
        }
    }

    pub fn simulated(n: u64, point: &ComparisonPoint, pileup: (f64, f64)) -> Self {
        Self {
            model: Model::Ma1Sim,
            comparison: point.comparison,
            x: point.theta,
            n: Some(n),
            n_rep: Some(point.n_rep),
            seed: Some(point.seed),
            mse_mle: point.mse_mle,
            mse_alt: point.mse_alt,
            r: point.r,
            r_ci: Some((point.r_lo, point.r_hi)),
            pmc: point.pmc,
            pmc_ci: Some((point.pmc_lo, point.pmc_hi)),
            pileup: Some(pileup),
        }
    }

    pub fn fields(&self) -> [String; 16] {
        let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
        [
            self.model.as_str().to_owned(),
            self.comparison.as_str().to_owned(),
            fmt_float(self.x),
            self.n.map(|v| v.to_string()).unwrap_or_default(),
            self.n_rep.map(|v| v.to_string()).unwrap_or_default(),
            self.seed.map(|v| v.to_string()).unwrap_or_default(),
            fmt_float(self.mse_mle),
            fmt_float(self.mse_alt),
            fmt_float(self.r),
            opt(self.r_ci.map(|c| c.0)),
            opt(self.r_ci.map(|c| c.1)),
            fmt_float(self.pmc),
            opt(self.pmc_ci.map(|c| c.0)),
            opt(self.pmc_ci.map(|c| c.1)),
            opt(self.pileup.map(|c| c.0)),
            opt(self.pileup.map(|c| c.1)),
        ]
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-5, 1e12)`.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".to_owned() } else if x > 0.0 { "inf".to_owned() } else { "-inf".to_owned() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_owned()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// Writes the header and rows, then `#`-prefixed footer lines.
pub fn write_csv<W: Write>(out: W, rows: &[OutputRow], footer: &[String]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    let mut out = w.into_inner().map_err(|e| e.into_error())?;
    for line in footer {
        writeln!(out, "# {line}")?;
    }
    out.flush()?;
    Ok(())
}
