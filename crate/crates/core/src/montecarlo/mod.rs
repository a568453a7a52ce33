//! Monte Carlo draws of the scaled largest eigenvalue and goodness-of-fit
//! against the exact law.
//!
//! Each partition of the sample index space draws from its own ChaCha20
//! stream (`seed`, stream = partition index), so results depend only on the
//! seed, the sample count and the partition count, not on thread scheduling.

pub mod eigen;

use std::io::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::validate_dimensions;
use crate::distributions::SleDistribution;
use crate::error::{Error, Result};
use eigen::hermitian_eigenvalues;

pub const GENERATOR_NAME: &str = "ChaCha20 (rand_chacha 0.9, one stream per partition); \
     normals: rand_distr 0.5 StandardNormal ziggurat";

pub const DEFAULT_PARTITIONS: u32 = 8;

/// Acceptance threshold on the KS distance for `10^5` samples.
pub const KS_THRESHOLD: f64 = 0.01;

/// Upper 0.1% point of the Kolmogorov distribution, `sqrt(n) D_n`.
pub const KOLMOGOROV_999: f64 = 1.95;

/// KS threshold for `n` draws: [`KS_THRESHOLD`], loosened to the 0.1%
/// Kolmogorov quantile `1.95 / sqrt(n)` when that is larger (below about
/// 38 000 draws).
pub fn ks_threshold(n: usize) -> f64 {
    KS_THRESHOLD.max(KOLMOGOROV_999 / (n as f64).sqrt())
}

/// Acceptance threshold on `|empirical mean - exact mean|` in standard errors.
pub const MEAN_Z_THRESHOLD: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationConfig {
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    pub partitions: u32,
}

impl SimulationConfig {
    pub fn new(k: u32, n: u32, samples: usize, seed: u64) -> Result<Self> {
        let config = SimulationConfig {
            k,
            n,
            samples,
            seed,
            partitions: DEFAULT_PARTITIONS,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_partitions(mut self, partitions: u32) -> Result<Self> {
        self.partitions = partitions;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        validate_dimensions(self.k, self.n)?;
        if self.k > 16 {
            return Err(Error::Domain(format!(
                "simulation supports K <= 16, got {}",
                self.k
            )));
        }
        if self.samples == 0 {
            return Err(Error::Domain("need at least one sample".into()));
        }
        if self.partitions == 0 {
            return Err(Error::Domain("need at least one partition".into()));
        }
        Ok(())
    }

    /// Number of draws made by partition `p`.
    fn partition_len(&self, p: u32) -> usize {
        let parts = self.partitions as usize;
        self.samples / parts + usize::from((p as usize) < self.samples % parts)
    }
}

/// Sorted draws of the statistic.
#[derive(Clone, Debug)]
pub struct EmpiricalSample {
    values: Vec<f64>,
    config: SimulationConfig,
}

impl EmpiricalSample {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sample mean and its standard error.
    pub fn mean_and_standard_error(&self) -> (f64, f64) {
        let n = self.values.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        let var = self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        (mean, (var / n).sqrt())
    }

    /// CSV with header `x`, one draw per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x")?;
        for v in &self.values {
            writeln!(out, "{v:?}")?;
        }
        Ok(())
    }

    pub fn metadata_json(&self) -> String {
        #[derive(Serialize)]
        struct Metadata<'a> {
            #[serde(flatten)]
            config: &'a SimulationConfig,
            generator: &'a str,
        }
        serde_json::to_string_pretty(&Metadata {
            config: &self.config,
            generator: GENERATOR_NAME,
        })
        .expect("serializable")
    }
}

/// Fills a `K × N` matrix with complex Gaussians whose real and imaginary
/// parts are independent with variance 1/2.
fn draw_matrix<R: rand::Rng>(rng: &mut R, k: usize, n: usize, out: &mut [Complex64]) {
    let sd = std::f64::consts::FRAC_1_SQRT_2;
    for z in out.iter_mut().take(k * n) {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *z = Complex64::new(sd * re, sd * im);
    }
}

/// `R = X X†` for row-major `X` of shape `K × N`.
pub fn gram(x: &[Complex64], k: usize, n: usize) -> Vec<Complex64> {
    let mut r = vec![Complex64::new(0.0, 0.0); k * k];
    for a in 0..k {
        for b in a..k {
            let s: Complex64 = (0..n).map(|t| x[a * n + t] * x[b * n + t].conj()).sum();
            r[a * k + b] = s;
            r[b * k + a] = s.conj();
        }
    }
    r
}

/// `λ_max K / tr(R)` for the Gram matrix of a row-major `K × N` data matrix.
pub fn sle_statistic(x: &[Complex64], k: usize, n: usize) -> Result<f64> {
    let r = gram(x, k, n);
    let trace: f64 = (0..k).map(|a| r[a * k + a].re).sum();
    let largest = hermitian_eigenvalues(&r, k)?[0];
    Ok(largest * k as f64 / trace)
}

/// Draws `config.samples` values of the statistic, in parallel over
/// partitions, and returns them sorted.
pub fn sample_sle(config: &SimulationConfig) -> Result<EmpiricalSample> {
    config.validate()?;
    let (k, n) = (config.k as usize, config.n as usize);
    let chunks: Vec<Vec<f64>> = (0..config.partitions)
        .into_par_iter()
        .map(|p| {
            let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
            rng.set_stream(p as u64);
            let mut x = vec![Complex64::new(0.0, 0.0); k * n];
            (0..config.partition_len(p))
                .map(|_| {
                    draw_matrix(&mut rng, k, n, &mut x);
                    sle_statistic(&x, k, n)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut values: Vec<f64> = chunks.into_iter().flatten().collect();
    values.sort_by(f64::total_cmp);
    Ok(EmpiricalSample {
        values,
        config: *config,
    })
}

/// `sup_y |F_n(y) - F(y)|`, taking both one-sided gaps at every draw.
pub fn ks_distance(sample: &EmpiricalSample, d: &SleDistribution) -> Result<f64> {
    ks_distance_sorted(&sample.values, d)
}

fn ks_distance_sorted(values: &[f64], d: &SleDistribution) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Domain("KS distance of an empty sample".into()));
    }
    let n = values.len() as f64;
    values
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = d.cdf(x)?;
            Ok(((i + 1) as f64 / n - f).max(f - i as f64 / n))
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub samples: usize,
    pub ks_distance: f64,
    pub exact_mean: f64,
    pub empirical_mean: f64,
    pub standard_error: f64,
}

impl ValidationReport {
    pub fn mean_z_score(&self) -> f64 {
        (self.empirical_mean - self.exact_mean).abs() / self.standard_error
    }

    pub fn ks_threshold(&self) -> f64 {
        ks_threshold(self.samples)
    }

    pub fn ks_passes(&self) -> bool {
        self.ks_distance < self.ks_threshold()
    }

    pub fn mean_passes(&self) -> bool {
        self.mean_z_score() <= MEAN_Z_THRESHOLD
    }

    pub fn passes(&self) -> bool {
        self.ks_passes() && self.mean_passes()
    }
}

pub fn validate(sample: &EmpiricalSample, d: &SleDistribution) -> Result<ValidationReport> {
    let (empirical_mean, standard_error) = sample.mean_and_standard_error();
    Ok(ValidationReport {
        samples: sample.len(),
        ks_distance: ks_distance(sample, d)?,
        exact_mean: crate::exact::rational::to_f64(&d.moment(1)),
        empirical_mean,
        standard_error,
    })
}
