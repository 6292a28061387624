//! Parallel version of `meanlik_core::compare::sweep`.
//!
//! Replications of a grid point are farmed out to a rayon pool; each one
//! draws from its own stream and results are collected in replication order,
//! so the output is identical to the sequential sweep for any thread count.

use meanlik_core::compare::{replicate, summarize, GridResult, SimConfig};
use rayon::prelude::*;

use crate::{CliError, Result};

/// `threads = 0` uses rayon's default pool size.
pub fn parallel_sweep(cfg: &SimConfig, threads: usize) -> Result<Vec<GridResult>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    pool.install(|| {
        (0..cfg.thetas.len())
            .map(|point| {
                let fits = (0..cfg.n_rep)
                    .into_par_iter()
                    .map_init(
                        || cfg.estimator(),
                        |est, rep| match est {
                            Ok(est) => replicate(cfg, est, point, rep),
                            Err(e) => Err(e.clone()),
                        },
                    )
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(summarize(cfg, point, &fits)?)
            })
            .collect()
    })
}
