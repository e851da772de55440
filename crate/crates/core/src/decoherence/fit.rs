// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Weighted least-squares fits of the decoherence strength to asymmetry data.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{KaonError, Result};
use crate::meson::MesonParams;

use super::observables::{asymmetry_lambda, asymmetry_zeta};

/// Published mean decoherence strength from the CPLEAR asymmetry fit, in MeV.
pub const LAMBDA_BAR_MEV: f64 = 1.84e-12;
/// Its upper one-sigma bound, in MeV.
pub const LAMBDA_BAR_UPPER_MEV: f64 = 4.34e-12;
/// The same mean in units of `Γ_S`.
pub const LAMBDA_BAR_REFERENCE: f64 = 0.25;
/// Published effective decoherence parameter averaged over both setups.
pub const ZETA_BAR_REFERENCE: f64 = 0.13;

const LAMBDA_SCAN_MAX: f64 = 5.0;
const SCAN_STEPS: usize = 200;
const GOLDEN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryRow {
    pub t_l: f64,
    pub t_r: f64,
    pub asym: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryDataset {
    pub rows: Vec<AsymmetryRow>,
    pub source: String,
}

impl AsymmetryDataset {
    /// Validates every row: finite values, times `≥ 0`, `sigma > 0`.
    pub fn new(rows: Vec<AsymmetryRow>, source: impl Into<String>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if !(r.t_l.is_finite() && r.t_l >= 0.0 && r.t_r.is_finite() && r.t_r >= 0.0) {
                return Err(KaonError::InvalidData(format!(
                    "row {i}: times must be finite and >= 0"
                )));
            }
            if !r.asym.is_finite() {
                return Err(KaonError::InvalidData(format!(
                    "row {i}: asymmetry is not finite"
                )));
            }
            if !(r.sigma.is_finite() && r.sigma > 0.0) {
                return Err(KaonError::InvalidData(format!(
                    "row {i}: sigma must be > 0, got {}",
                    r.sigma
                )));
            }
        }
        Ok(AsymmetryDataset {
            rows,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `A = A^QM·e^{−λ min{t_l,t_r}}`, fitting `λ ≥ 0`.
    Lambda,
    /// `A = A^QM·(1 − ζ)` with one constant `ζ ∈ [0, 1]`.
    ZetaConst,
}

impl FitModel {
    fn range(self) -> (f64, f64) {
        match self {
            FitModel::Lambda => (0.0, LAMBDA_SCAN_MAX),
            FitModel::ZetaConst => (0.0, 1.0),
        }
    }

    fn predict(self, row: &AsymmetryRow, theta: f64, params: &MesonParams) -> Result<f64> {
        match self {
            FitModel::Lambda => asymmetry_lambda(row.t_l, row.t_r, theta, params),
            FitModel::ZetaConst => asymmetry_zeta(row.t_l, row.t_r, theta, params),
        }
    }
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitModel::Lambda => "lambda",
            FitModel::ZetaConst => "zeta",
        })
    }
}

impl FromStr for FitModel {
    type Err = KaonError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(FitModel::Lambda),
            "zeta" | "zeta_const" => Ok(FitModel::ZetaConst),
            other => Err(KaonError::InvalidParameter(format!(
                "unknown fit model '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    /// `λ̂` in units of `Γ_S` for [`FitModel::Lambda`], `ζ̂` for [`FitModel::ZetaConst`].
    pub estimate: f64,
    /// `Δχ² = 1` interval, clamped to the parameter's allowed range.
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub chi2: f64,
    pub ndf: usize,
    /// The minimum sits on the edge of the allowed range.
    pub at_boundary: bool,
}

impl FitResult {
    /// The effective `ζ(t_l, t_r)` implied by the fit.
    pub fn zeta_equivalent(&self, t_l: f64, t_r: f64) -> f64 {
        match self.model {
            FitModel::Lambda => -(-self.estimate * t_l.min(t_r)).exp_m1(),
            FitModel::ZetaConst => self.estimate,
        }
    }

    /// Half-width of the interval, used as a symmetric error.
    pub fn sigma(&self) -> f64 {
        0.5 * (self.ci_hi - self.ci_lo)
    }

    pub fn contains(&self, value: f64) -> bool {
        (self.ci_lo..=self.ci_hi).contains(&value)
    }
}

fn chi2(data: &AsymmetryDataset, model: FitModel, theta: f64, params: &MesonParams) -> Result<f64> {
    data.rows.iter().try_fold(0.0, |acc, row| {
        let r = (model.predict(row, theta, params)? - row.asym) / row.sigma;
        Ok(acc + r * r)
    })
}

fn golden_section<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Point between `inside` (below `target`) and `outside` (at or above it) where `f = target`.
fn crossing<F>(f: &F, mut inside: f64, mut outside: f64, target: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..200 {
        if (outside - inside).abs() <= 1e-10 {
            break;
        }
        let mid = 0.5 * (inside + outside);
        if f(mid)? < target {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(0.5 * (inside + outside))
}

/// Minimizes `χ² = Σ((A_model − A_obs)/σ)²` over the model parameter.
///
/// A coarse scan of 200 steps brackets the minimum, golden-section search
/// refines it to `1e−6`, and the interval comes from `χ² = χ²_min + 1`.
pub fn fit_decoherence(
    data: &AsymmetryDataset,
    model: FitModel,
    params: &MesonParams,
) -> Result<FitResult> {
    if data.is_empty() {
        return Err(KaonError::EmptyData);
    }
    if data.len() < 2 {
        return Err(KaonError::InvalidData(format!(
            "need at least 2 rows to fit, got {}",
            data.len()
        )));
    }
    let f = |theta: f64| chi2(data, model, theta, params);
    let (lo, hi) = model.range();
    let h = (hi - lo) / SCAN_STEPS as f64;
    let mut best = (0, f64::INFINITY);
    for i in 0..=SCAN_STEPS {
        let v = f(lo + i as f64 * h)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let a = lo + best.0.saturating_sub(1) as f64 * h;
    let b = (lo + (best.0 + 1) as f64 * h).min(hi);
    let mut estimate = golden_section(f, a, b, GOLDEN_TOL)?;
    let mut chi2_min = f(estimate)?;
    for edge in [lo, hi] {
        let v = f(edge)?;
        if v <= chi2_min {
            estimate = edge;
            chi2_min = v;
        }
    }
    let at_boundary = estimate - lo <= GOLDEN_TOL || hi - estimate <= GOLDEN_TOL;

    let target = chi2_min + 1.0;
    let ci_lo = if f(lo)? < target {
        lo
    } else {
        crossing(&f, estimate, lo, target)?
    };
    let ci_hi = match model {
        FitModel::ZetaConst => {
            if f(hi)? < target {
                hi
            } else {
                crossing(&f, estimate, hi, target)?
            }
        }
        FitModel::Lambda => {
            let mut outer = hi.max(2.0 * estimate);
            while f(outer)? < target && outer < 1e3 {
                outer *= 2.0;
            }
            if f(outer)? < target {
                outer
            } else {
                crossing(&f, estimate, outer, target)?
            }
        }
    };

    Ok(FitResult {
        model,
        estimate,
        ci_lo,
        ci_hi,
        chi2: chi2_min,
        ndf: data.len() - 1,
        at_boundary,
    })
}

/// Time pairs with the first measurement spread over `(0, 5]` and
/// `Δt` cycling through `0, 0.6, 1.2`.
pub fn default_time_pairs(n: usize) -> Vec<(f64, f64)> {
    const DT: [f64; 3] = [0.0, 0.6, 1.2];
    (0..n)
        .map(|i| {
            let first = 5.0 * (i + 1) as f64 / n as f64;
            (first + DT[i % 3], first)
        })
        .collect()
}

/// Asymmetries from the λ model plus Gaussian noise of width `noise_sigma`.
///
/// Each row records `sigma = noise_sigma`, or `1` when no noise is added.
pub fn synth_dataset(
    lambda_true: f64,
    time_pairs: &[(f64, f64)],
    noise_sigma: f64,
    seed: u64,
    params: &MesonParams,
) -> Result<AsymmetryDataset> {
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(KaonError::InvalidParameter(format!(
            "noise sigma must be >= 0, got {noise_sigma}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal =
        Normal::new(0.0, noise_sigma).map_err(|e| KaonError::InvalidParameter(e.to_string()))?;
    let sigma = if noise_sigma > 0.0 { noise_sigma } else { 1.0 };
    let rows = time_pairs
        .iter()
        .map(|&(t_l, t_r)| {
            let exact = asymmetry_lambda(t_l, t_r, lambda_true, params)?;
            let noise = if noise_sigma > 0.0 {
                normal.sample(&mut rng)
            } else {
                0.0
            };
            Ok(AsymmetryRow {
                t_l,
                t_r,
                asym: exact + noise,
                sigma,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AsymmetryDataset::new(rows, format!("synthetic lambda={lambda_true} seed={seed}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedAverage {
    pub mean: f64,
    pub sigma: f64,
}

/// Inverse-variance average of several fits of the same model.
pub fn weighted_average(fits: &[FitResult]) -> Result<WeightedAverage> {
    if fits.is_empty() {
        return Err(KaonError::EmptyData);
    }
    let mut wsum = 0.0;
    let mut acc = 0.0;
    for f in fits {
        let s = f.sigma();
        if s.is_nan() || s <= 0.0 {
            return Err(KaonError::InvalidData(
                "fit with zero-width interval cannot be weighted".into(),
            ));
        }
        let w = 1.0 / (s * s);
        wsum += w;
        acc += w * f.estimate;
    }
    Ok(WeightedAverage {
        mean: acc / wsum,
        sigma: wsum.sqrt().recip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meson::mev_to_internal_rate;
    use crate::meson::params::KAON_TAU_S_SECONDS;
    use approx::assert_abs_diff_eq;

    fn params() -> MesonParams {
        MesonParams::kaon_cp_conserving()
    }

    #[test]
    fn noiseless_synthesis_is_exact() {
        let p = params();
        let pairs = default_time_pairs(20);
        let d = synth_dataset(0.25, &pairs, 0.0, 1, &p).unwrap();
        for (row, &(tl, tr)) in d.rows.iter().zip(&pairs) {
            assert_eq!(row.asym, asymmetry_lambda(tl, tr, 0.25, &p).unwrap());
        }
        let fit = fit_decoherence(&d, FitModel::Lambda, &p).unwrap();
        assert_abs_diff_eq!(fit.estimate, 0.25, epsilon = 1e-5);
        assert!(fit.chi2 < 1e-9);
    }

    #[test]
    fn synthesis_is_deterministic() {
        let p = params();
        let pairs = default_time_pairs(20);
        let a = synth_dataset(0.25, &pairs, 0.02, 9, &p).unwrap();
        let b = synth_dataset(0.25, &pairs, 0.02, 9, &p).unwrap();
        assert_eq!(a, b);
        let c = synth_dataset(0.25, &pairs, 0.02, 10, &p).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn noise_has_zero_mean() {
        let p = params();
        let pairs: Vec<(f64, f64)> = (0..10_000).map(|i| (1.0 + (i % 7) as f64, 1.0)).collect();
        let sigma = 0.02;
        let d = synth_dataset(0.25, &pairs, sigma, 3, &p).unwrap();
        let mean: f64 = d
            .rows
            .iter()
            .map(|r| r.asym - asymmetry_lambda(r.t_l, r.t_r, 0.25, &p).unwrap())
            .sum::<f64>()
            / pairs.len() as f64;
        assert!(mean.abs() < 3.0 * sigma / (pairs.len() as f64).sqrt());
    }

    #[test]
    fn null_data_interval_contains_zero() {
        let p = params();
        let d = synth_dataset(0.0, &default_time_pairs(20), 0.02, 5, &p).unwrap();
        let fit = fit_decoherence(&d, FitModel::Lambda, &p).unwrap();
        assert!(fit.contains(0.0));
        assert_eq!(fit.ci_lo, 0.0);
        assert!(fit.ci_lo <= fit.estimate && fit.estimate <= fit.ci_hi);
    }

    #[test]
    fn boundary_solution_is_flagged() {
        let p = params();
        // Asymmetries above the pure-QM curve pull λ below zero.
        let rows = default_time_pairs(10)
            .into_iter()
            .map(|(t_l, t_r)| AsymmetryRow {
                t_l,
                t_r,
                asym: asymmetry_lambda(t_l, t_r, 0.0, &p).unwrap() + 0.05,
                sigma: 0.02,
            })
            .collect();
        let d = AsymmetryDataset::new(rows, "biased").unwrap();
        let fit = fit_decoherence(&d, FitModel::Lambda, &p).unwrap();
        assert!(fit.at_boundary);
        assert_eq!(fit.estimate, 0.0);
    }

    #[test]
    fn zeta_fit_recovers_constant() {
        let p = params();
        let rows = default_time_pairs(20)
            .into_iter()
            .map(|(t_l, t_r)| AsymmetryRow {
                t_l,
                t_r,
                asym: asymmetry_zeta(t_l, t_r, 0.13, &p).unwrap(),
                sigma: 0.02,
            })
            .collect();
        let d = AsymmetryDataset::new(rows, "zeta").unwrap();
        let fit = fit_decoherence(&d, FitModel::ZetaConst, &p).unwrap();
        assert_abs_diff_eq!(fit.estimate, 0.13, epsilon = 1e-5);
        assert_eq!(fit.zeta_equivalent(1.0, 3.0), fit.estimate);
        assert!(fit.ci_lo < 0.13 && 0.13 < fit.ci_hi);
    }

    #[test]
    fn rejects_small_or_bad_data() {
        let p = params();
        let empty = AsymmetryDataset::new(vec![], "empty").unwrap();
        assert!(matches!(
            fit_decoherence(&empty, FitModel::Lambda, &p),
            Err(KaonError::EmptyData)
        ));
        let row = AsymmetryRow {
            t_l: 1.0,
            t_r: 1.0,
            asym: 0.5,
            sigma: 0.1,
        };
        let one = AsymmetryDataset::new(vec![row], "one").unwrap();
        assert!(fit_decoherence(&one, FitModel::Lambda, &p).is_err());
        let bad = AsymmetryRow { sigma: 0.0, ..row };
        assert!(AsymmetryDataset::new(vec![row, bad], "bad").is_err());
    }

    #[test]
    fn weighted_average_of_equal_fits() {
        let f = FitResult {
            model: FitModel::ZetaConst,
            estimate: 0.1,
            ci_lo: 0.0,
            ci_hi: 0.2,
            chi2: 1.0,
            ndf: 5,
            at_boundary: false,
        };
        let g = FitResult {
            estimate: 0.2,
            ci_lo: 0.1,
            ci_hi: 0.3,
            ..f
        };
        let w = weighted_average(&[f, g]).unwrap();
        assert_abs_diff_eq!(w.mean, 0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(w.sigma, 0.1 / 2f64.sqrt(), epsilon = 1e-15);
        assert!(weighted_average(&[]).is_err());
    }

    #[test]
    fn published_lambda_units_are_consistent() {
        let lambda = mev_to_internal_rate(LAMBDA_BAR_MEV, KAON_TAU_S_SECONDS);
        assert!((lambda - LAMBDA_BAR_REFERENCE).abs() / LAMBDA_BAR_REFERENCE < 0.01);
        let upper = mev_to_internal_rate(LAMBDA_BAR_UPPER_MEV, KAON_TAU_S_SECONDS);
        assert!((upper - 0.587).abs() < 0.002);
    }
}
