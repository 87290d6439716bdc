//! Seeded experiments over `Gamma = D * M'` with random unimodular `M'`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{analyze_quotient, InvariantReport};
use crate::error::Error;
use crate::linalg::Matrix;
use crate::FiniteQuotient;

const OPERATIONS: usize = 12;

#[derive(Clone, Debug)]
pub struct BatchConfig {
    pub seed: u64,
    pub count: usize,
    pub diag: [u64; 3],
    /// Largest `|c|` in a row operation `row_j += c * row_i`.
    pub bound: i64,
    pub out: PathBuf,
}

impl BatchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.count == 0 {
            return Err(Error::InvalidParameter("count must be at least 1".into()));
        }
        if self.bound < 1 {
            return Err(Error::InvalidParameter("bound must be at least 1".into()));
        }
        if self.diag.contains(&0) {
            return Err(Error::InvalidParameter("diagonal entries must be positive".into()));
        }
        Ok(())
    }
}

/// Product of random elementary row operations applied to the identity.
pub fn random_unimodular<R: Rng>(rng: &mut R, bound: i64) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..OPERATIONS {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        match rng.gen_range(0..4) {
            0 | 1 => {
                let c = rng.gen_range(-bound..=bound);
                let src = m[i];
                for (x, y) in m[j].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
            2 => m.swap(i, j),
            _ => m[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    m
}

/// Hypothesis counters over the reports with trivial `pi_1`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Monitor {
    pub checked: usize,
    pub violations: Vec<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BatchSummary {
    pub count: usize,
    pub seed: u64,
    pub diag: [u64; 3],
    pub bound: i64,
    /// `(index, message)` for every quotient whose analysis failed.
    pub failures: Vec<(usize, String)>,
    /// Invariant factors of `T` (as printed) to number of occurrences.
    pub torsion_frequency: BTreeMap<String, usize>,
    pub pi1_frequency: BTreeMap<u64, usize>,
    pub bprime_differs: Vec<usize>,
    pub length_le_3_plus_delta: Monitor,
    pub exponent_divides_height: Monitor,
}

impl BatchSummary {
    fn record(&mut self, index: usize, r: &InvariantReport) {
        *self.torsion_frequency.entry(format!("{:?}", r.torsion_t.torsion_factors)).or_default() += 1;
        *self.pi1_frequency.entry(r.pi1.order).or_default() += 1;
        if !r.bprime_equals_b {
            self.bprime_differs.push(index);
        }
        if r.monitors.pi1_trivial {
            for (m, ok) in [
                (&mut self.length_le_3_plus_delta, r.monitors.length_le_3_plus_delta),
                (&mut self.exponent_divides_height, r.monitors.exponent_divides_height),
            ] {
                m.checked += 1;
                if !ok {
                    m.violations.push(index);
                }
            }
        }
    }
}

/// The `count` kernel matrices of a run, in generation order.
pub fn batch_matrices(config: &BatchConfig) -> Vec<[[i64; 3]; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| {
            let mut m = random_unimodular(&mut rng, config.bound);
            for (row, &d) in m.iter_mut().zip(&config.diag) {
                row.iter_mut().for_each(|x| *x *= d as i64);
            }
            m
        })
        .collect()
}

/// JSONL lines (reports then a summary) without touching the file system.
pub fn batch_lines(config: &BatchConfig) -> Result<(Vec<String>, BatchSummary), Error> {
    config.validate()?;
    let results: Vec<Result<InvariantReport, Error>> = batch_matrices(config)
        .par_iter()
        .map(|m| {
            let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
            FiniteQuotient::from_kernel_matrix(&Matrix::from_i64_rows(&rows))
                .and_then(|q| analyze_quotient(&q, false))
        })
        .collect();
    let mut summary = BatchSummary {
        count: config.count,
        seed: config.seed,
        diag: config.diag,
        bound: config.bound,
        ..Default::default()
    };
    let mut lines = Vec::with_capacity(results.len() + 1);
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(r) => {
                summary.record(i, r);
                lines.push(r.to_json().to_string());
            }
            Err(e) => {
                summary.failures.push((i, e.to_string()));
                lines.push(json!({ "index": i, "error": e.to_string() }).to_string());
            }
        }
    }
    lines.push(json!({ "summary": summary }).to_string());
    Ok((lines, summary))
}

/// Writes the run to `config.out`, one JSON object per line.
pub fn batch_run(config: &BatchConfig) -> Result<BatchSummary, Error> {
    let (lines, summary) = batch_lines(config)?;
    let mut w = BufWriter::new(File::create(&config.out)?);
    for l in lines {
        w.write_all(l.as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(summary)
}
