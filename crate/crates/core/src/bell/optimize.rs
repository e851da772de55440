// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Maximizing the meson CHSH value over the four measurement times.
//!
//! A coarse grid over `[0, T_max]⁴` picks the seeds; each of the best seeds
//! is refined with Nelder–Mead. The box is handled by folding: the simplex
//! moves freely in `u` and the times are `fold(u)`, a triangle wave onto
//! `[0, T_max]`. Maxima sitting on a face of the box, which are common here
//! because a zero time is often optimal, become interior points of the
//! folded objective.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kaon::{chsh_kaon, ChshTimes, ExpectationModel};
use crate::error::{KaonError, Result};
use crate::meson::MesonParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Grid nodes per axis, including both ends.
    pub grid_points: usize,
    pub t_max: f64,
    pub top_seeds: usize,
    pub max_iter: usize,
    /// Fresh simplices started from each converged point.
    pub restarts: usize,
    /// `S` must exceed `2 + violation_tol` to count as a violation.
    pub violation_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_points: 8,
            t_max: 8.0,
            top_seeds: 16,
            max_iter: 4000,
            restarts: 3,
            violation_tol: 1e-6,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(KaonError::InvalidParameter(
                "grid_points must be at least 2".into(),
            ));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(KaonError::InvalidParameter(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        if self.top_seeds == 0 {
            return Err(KaonError::InvalidParameter(
                "top_seeds must be at least 1".into(),
            ));
        }
        if !(self.violation_tol.is_finite() && self.violation_tol >= 0.0) {
            return Err(KaonError::InvalidParameter(format!(
                "violation_tol must be >= 0, got {}",
                self.violation_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub x: f64,
    pub s_max: f64,
    pub argmax: ChshTimes,
    pub evaluations: u64,
}

impl ScanResult {
    pub fn violates(&self, cfg: &OptimizerConfig) -> bool {
        self.s_max > 2.0 + cfg.violation_tol
    }
}

fn fold(u: f64, t_max: f64) -> f64 {
    let period = 2.0 * t_max;
    let r = u.rem_euclid(period);
    if r <= t_max {
        r
    } else {
        period - r
    }
}

fn fold_all(u: &[f64; 4], t_max: f64) -> [f64; 4] {
    u.map(|v| fold(v, t_max))
}

struct Simplex {
    best: [f64; 4],
    value: f64,
    evaluations: u64,
}

/// Nelder–Mead minimization of `f` from `start` with initial edge `step`.
fn nelder_mead<F>(f: &F, start: [f64; 4], step: f64, max_iter: usize) -> Simplex
where
    F: Fn(&[f64; 4]) -> f64,
{
    let mut pts: Vec<[f64; 4]> = Vec::with_capacity(5);
    pts.push(start);
    for i in 0..4 {
        let mut p = start;
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(f).collect();
    let mut evaluations = 5u64;

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..5).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i]).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[4] - vals[0];
        let size = pts[1..]
            .iter()
            .flat_map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= 1e-15 && size <= 1e-11 {
            break;
        }

        let mut centroid = [0.0; 4];
        for p in &pts[..4] {
            for k in 0..4 {
                centroid[k] += p[k] / 4.0;
            }
        }
        let along = |coef: f64| -> [f64; 4] {
            std::array::from_fn(|k| centroid[k] + coef * (pts[4][k] - centroid[k]))
        };

        let reflected = along(-1.0);
        let fr = f(&reflected);
        evaluations += 1;
        if fr < vals[0] {
            let expanded = along(-2.0);
            let fe = f(&expanded);
            evaluations += 1;
            if fe < fr {
                pts[4] = expanded;
                vals[4] = fe;
            } else {
                pts[4] = reflected;
                vals[4] = fr;
            }
            continue;
        }
        if fr < vals[3] {
            pts[4] = reflected;
            vals[4] = fr;
            continue;
        }
        let (contracted, fc) = if fr < vals[4] {
            let c = along(-0.5);
            (c, f(&c))
        } else {
            let c = along(0.5);
            (c, f(&c))
        };
        evaluations += 1;
        if fc < vals[4].min(fr) {
            pts[4] = contracted;
            vals[4] = fc;
            continue;
        }
        let best = pts[0];
        for i in 1..5 {
            pts[i] = std::array::from_fn(|k| best[k] + 0.5 * (pts[i][k] - best[k]));
            vals[i] = f(&pts[i]);
        }
        evaluations += 4;
    }

    let i = (0..5)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap_or(0);
    Simplex {
        best: pts[i],
        value: vals[i],
        evaluations,
    }
}

/// Largest CHSH value found over `[0, T_max]⁴` for the given `x`.
///
/// The reported `s_max` is `S` evaluated at the returned `argmax`, so it is
/// a certified lower bound on the true maximum. Since all-zero times give
/// `S = 2`, `s_max ≥ 2` always.
pub fn maximize_chsh(x: f64, model: ExpectationModel, cfg: &OptimizerConfig) -> Result<ScanResult> {
    if !(x.is_finite() && x > 0.0) {
        return Err(KaonError::Domain(format!("x must be positive, got {x}")));
    }
    cfg.validate()?;
    let params = model.params_for(x)?;
    maximize_with_params(x, model, &params, cfg)
}

fn maximize_with_params(
    x: f64,
    model: ExpectationModel,
    params: &MesonParams,
    cfg: &OptimizerConfig,
) -> Result<ScanResult> {
    let s_at = |t: &[f64; 4]| chsh_kaon(&ChshTimes::from_array(*t), model, params);
    // Any error surfaces from the grid pass below, so the refinement closure
    // can treat an impossible failure as the worst value.
    let objective = |u: &[f64; 4]| -s_at(&fold_all(u, cfg.t_max)).unwrap_or(f64::NEG_INFINITY);

    let n = cfg.grid_points;
    let h = cfg.t_max / (n - 1) as f64;
    let total = n.pow(4);
    let grid: Vec<(f64, [f64; 4])> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let t: [f64; 4] = std::array::from_fn(|k| ((idx / n.pow(k as u32)) % n) as f64 * h);
            s_at(&t).map(|s| (s, t))
        })
        .collect::<Result<_>>()?;

    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by(|&a, &b| grid[b].0.total_cmp(&grid[a].0).then(a.cmp(&b)));
    let seeds: Vec<[f64; 4]> = order
        .iter()
        .take(cfg.top_seeds)
        .map(|&i| grid[i].1)
        .collect();

    let refined: Vec<(f64, [f64; 4], u64)> = seeds
        .par_iter()
        .map(|seed| {
            let mut run = nelder_mead(&objective, *seed, 0.5 * h, cfg.max_iter);
            let mut evals = run.evaluations;
            let mut step = 0.25 * h;
            for _ in 0..cfg.restarts {
                let next = nelder_mead(&objective, run.best, step, cfg.max_iter);
                evals += next.evaluations;
                if next.value <= run.value {
                    run = next;
                }
                step *= 0.25;
            }
            let t = fold_all(&run.best, cfg.t_max);
            (-run.value, t, evals)
        })
        .collect();

    let mut best_s = grid[order[0]].0;
    let mut best_t = grid[order[0]].1;
    let mut evaluations = total as u64;
    for (s, t, e) in &refined {
        evaluations += e;
        if *s > best_s {
            best_s = *s;
            best_t = *t;
        }
    }
    let argmax = ChshTimes::from_array(best_t);
    let s_max = chsh_kaon(&argmax, model, params)?;
    Ok(ScanResult {
        x,
        s_max,
        argmax,
        evaluations: evaluations + 1,
    })
}

/// Bisects on `x` for the onset of CHSH violation.
///
/// Requires no violation at `x_lo` and a violation at `x_hi`, where a
/// violation means `s_max > 2 + cfg.violation_tol`.
pub fn violation_boundary(
    model: ExpectationModel,
    x_lo: f64,
    x_hi: f64,
    tol: f64,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(KaonError::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if x_lo.is_nan() || x_hi.is_nan() || x_lo >= x_hi {
        return Err(KaonError::InvalidParameter(format!(
            "need x_lo < x_hi, got [{x_lo}, {x_hi}]"
        )));
    }
    let lo = maximize_chsh(x_lo, model, cfg)?;
    let hi = maximize_chsh(x_hi, model, cfg)?;
    if lo.violates(cfg) || !hi.violates(cfg) {
        return Err(KaonError::Bracket {
            x_lo,
            x_hi,
            s_lo: lo.s_max,
            s_hi: hi.s_max,
        });
    }
    let (mut a, mut b) = (x_lo, x_hi);
    while b - a >= tol {
        let mid = 0.5 * (a + b);
        if maximize_chsh(mid, model, cfg)?.violates(cfg) {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}
