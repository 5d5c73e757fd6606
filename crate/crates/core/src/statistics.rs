//! Distribution of the Rademacher symbol over modular knots: residues of
//! `Psi` modulo `m` by trace bound, and `Psi / length` against the Cauchy law
//! with scale `3/pi`.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{classes_by_length, enumerate_classes, ClassRecord, EnumerationParams};
use crate::error::{Error, Result};
use crate::symbols::psi;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub modulus: u64,
    pub nu: u64,
    pub total: u64,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
    pub max_deviation: f64,
}

impl DensityReport {
    /// Tally `Psi mod m` from symbol values.
    pub fn from_psi(nu: u64, modulus: u64, psis: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidParams(format!("modulus {modulus} < 2")));
        }
        let mut counts = vec![0u64; modulus as usize];
        for p in psis {
            counts[p.rem_euclid(modulus as i64) as usize] += 1;
        }
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::EmptySample);
        }
        let densities: Vec<f64> = counts.iter().map(|&c| c as f64 / total as f64).collect();
        let target = 1.0 / modulus as f64;
        let max_deviation = densities.iter().fold(0.0f64, |acc, d| acc.max((d - target).abs()));
        Ok(DensityReport { modulus, nu, total, counts, densities, max_deviation })
    }

    /// `counts[k] == counts[-k mod m]` for every residue.
    pub fn mirror_symmetric(&self) -> bool {
        let m = self.counts.len();
        (0..m).all(|k| self.counts[k] == self.counts[(m - k) % m])
    }
}

/// `Psi` of every record through the Dedekind-sum route.
pub fn psi_values(records: &[ClassRecord]) -> Result<Vec<i64>> {
    records
        .par_iter()
        .map(|r| {
            let p = psi(&r.rep)?;
            p.to_i64().ok_or_else(|| Error::InvalidParams(format!("Psi = {p} exceeds i64")))
        })
        .collect()
}

/// Residues of `Psi` modulo `m` over the classes with trace `< nu`.
pub fn density_mod_m(nu: u64, modulus: u64, worker_count: usize) -> Result<DensityReport> {
    if nu < 4 {
        return Err(Error::InvalidParams(format!("trace bound {nu} < 4")));
    }
    let records = enumerate_classes(&EnumerationParams::new(nu, worker_count)?)?;
    DensityReport::from_psi(nu, modulus, psi_values(&records)?)
}

/// `max_deviation` at each bound in `nu_list`, from one enumeration at the largest bound.
pub fn convergence_trend(nu_list: &[u64], modulus: u64, worker_count: usize) -> Result<Vec<(u64, f64)>> {
    if nu_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("bounds must be increasing".into()));
    }
    let Some(&top) = nu_list.last() else {
        return Ok(Vec::new());
    };
    let records = enumerate_classes(&EnumerationParams::new(top, worker_count)?)?;
    let psis = psi_values(&records)?;
    nu_list
        .iter()
        .map(|&nu| {
            let below = records
                .iter()
                .zip(&psis)
                .filter(|(r, _)| r.trace() < &nu.into())
                .map(|(_, &p)| p);
            DensityReport::from_psi(nu, modulus, below).map(|rep| (nu, rep.max_deviation))
        })
        .collect()
}

/// CDF of the Cauchy law with scale `3/pi`: `1/2 + arctan(pi x / 3) / pi`.
pub fn cauchy_cdf(x: f64) -> f64 {
    0.5 + (std::f64::consts::PI * x / 3.0).atan() / std::f64::consts::PI
}

/// Cauchy mass of `[a, b]`: `(arctan(pi b / 3) - arctan(pi a / 3)) / pi`.
pub fn cauchy_mass(a: f64, b: f64) -> f64 {
    let pi = std::f64::consts::PI;
    ((pi * b / 3.0).atan() - (pi * a / 3.0).atan()) / pi
}

/// Right-continuous empirical CDF.
#[derive(Clone, Debug)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidParams("NaN sample".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&s| s <= x) as f64 / self.sorted.len() as f64
    }

    /// `sup_x |F_n(x) - F(x)|` for a continuous `F`; checked on both sides of
    /// every jump, ties grouped.
    pub fn ks_distance(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let n = self.sorted.len() as f64;
        let mut d = 0.0f64;
        let mut i = 0;
        while i < self.sorted.len() {
            let x = self.sorted[i];
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == x {
                j += 1;
            }
            let f = cdf(x);
            d = d.max((f - i as f64 / n).abs()).max((j as f64 / n - f).abs());
            i = j;
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyBin {
    pub a: f64,
    pub b: f64,
    pub empirical: f64,
    pub theoretical: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyReport {
    pub length_bound: f64,
    pub sample_count: u64,
    pub bins: Vec<CauchyBin>,
    pub ks_distance: f64,
}

impl CauchyReport {
    /// Bins are `[a, b)`, the last one closed. Edges may be infinite.
    pub fn from_samples(length_bound: f64, samples: Vec<f64>, edges: &[f64]) -> Result<Self> {
        if edges.len() < 2 || edges.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParams("bin edges must be strictly increasing".into()));
        }
        let ecdf = EmpiricalCdf::new(samples)?;
        let n = ecdf.len() as f64;
        let last = edges.len() - 2;
        let bins = edges
            .windows(2)
            .enumerate()
            .map(|(k, w)| {
                let (a, b) = (w[0], w[1]);
                let count = ecdf
                    .sorted
                    .iter()
                    .filter(|&&x| x >= a && (x < b || (k == last && x <= b)))
                    .count();
                CauchyBin { a, b, empirical: count as f64 / n, theoretical: cauchy_mass(a, b) }
            })
            .collect();
        Ok(CauchyReport {
            length_bound,
            sample_count: ecdf.len() as u64,
            bins,
            ks_distance: ecdf.ks_distance(cauchy_cdf),
        })
    }
}

/// `Psi / length` over the classes with length `< length_bound`, binned and
/// compared with the Cauchy law.
pub fn cauchy_cdf_compare(length_bound: f64, edges: &[f64], worker_count: usize) -> Result<CauchyReport> {
    let records = classes_by_length(length_bound, worker_count)?;
    let psis = psi_values(&records)?;
    let ratios = records.iter().zip(psis).map(|(r, p)| p as f64 / r.length()).collect();
    CauchyReport::from_samples(length_bound, ratios, edges)
}
