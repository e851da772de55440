// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

use kaonlab::bell::{
    chsh_kaon, chsh_spin, maximize_chsh, violation_boundary, ChshTimes, ExpectationModel,
    OptimizerConfig,
};
use kaonlab::meson::MesonParams;
use kaonlab::KaonError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, SQRT_2};

const TOL: f64 = 1e-6;

fn random_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn angle(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
        .clamp(-1.0, 1.0)
        .acos()
}

#[test]
fn tsirelson_bound_over_a_million_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut best: f64 = 0.0;
    for _ in 0..1_000_000 {
        let [n, n2, m, m2] = std::array::from_fn(|_| random_direction(&mut rng));
        let s = chsh_spin(
            angle(&n, &m),
            angle(&n, &m2),
            angle(&n2, &m2),
            angle(&n2, &m),
        );
        assert!(s <= 2.0 * SQRT_2 + 1e-9);
        best = best.max(s);
    }
    assert!(best > 2.7);
}

#[test]
fn kaon_model_has_no_violation_below_two() {
    let cfg = OptimizerConfig::default();
    for x in [0.5, 0.95, 1.5] {
        let r = maximize_chsh(x, ExpectationModel::Approx, &cfg).unwrap();
        assert!(r.s_max <= 2.0 + TOL, "x = {x}: {r:?}");
        assert!(r.s_max >= 2.0);
    }
}

#[test]
fn small_x_tends_to_two() {
    let r = maximize_chsh(0.01, ExpectationModel::Approx, &OptimizerConfig::default()).unwrap();
    assert!((2.0..=2.0 + TOL).contains(&r.s_max));
}

#[test]
fn bmeson_no_violation_at_measured_x() {
    let r = maximize_chsh(0.77, ExpectationModel::Bmeson, &OptimizerConfig::default()).unwrap();
    assert!(r.s_max <= 2.0 + TOL, "{r:?}");
}

#[test]
fn bmeson_violation_at_x_two_is_real() {
    // A configuration with two zero times already exceeds 2 at x = 2 when
    // the decay-product term is kept, so the optimizer result is not an artefact.
    let p = MesonParams::bmeson(2.0).unwrap();
    let t = ChshTimes::new(2.469, 0.0245, 0.0, 0.0);
    let s = chsh_kaon(&t, ExpectationModel::Bmeson, &p).unwrap();
    assert!(s > 2.0 + 1e-3, "S = {s}");
    let r = maximize_chsh(2.0, ExpectationModel::Bmeson, &OptimizerConfig::default()).unwrap();
    assert!(r.s_max >= s);
}

#[test]
fn dense_grid_confirms_violation_at_x_four() {
    let p = MesonParams::kaon_with_x(4.0).unwrap();
    let n: usize = 30;
    let h = 8.0 / (n - 1) as f64;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n * n * n * n {
        let t: [f64; 4] = std::array::from_fn(|k| ((i / n.pow(k as u32)) % n) as f64 * h);
        best =
            best.max(chsh_kaon(&ChshTimes::from_array(t), ExpectationModel::Approx, &p).unwrap());
    }
    assert!(best > 2.0, "grid maximum {best}");
    let r = maximize_chsh(4.0, ExpectationModel::Approx, &OptimizerConfig::default()).unwrap();
    assert!(r.s_max >= best);
}

#[test]
fn refining_the_seed_grid_does_not_lower_the_maximum() {
    for x in [2.2, 3.0, 4.0] {
        let mut last = f64::NEG_INFINITY;
        for grid_points in [4, 8, 12, 16] {
            let cfg = OptimizerConfig {
                grid_points,
                ..OptimizerConfig::default()
            };
            let r = maximize_chsh(x, ExpectationModel::Approx, &cfg).unwrap();
            assert!(
                r.s_max >= last - 1e-9,
                "x = {x}, grid {grid_points}: {} < {last}",
                r.s_max
            );
            last = last.max(r.s_max);
        }
    }
}

#[test]
fn approx_boundary_brackets_onset() {
    let cfg = OptimizerConfig::default();
    let x = violation_boundary(ExpectationModel::Approx, 1.0, 4.0, 1e-2, &cfg).unwrap();
    assert!((2.0..2.3).contains(&x), "x* = {x}");
    let below = maximize_chsh(x - 0.2, ExpectationModel::Approx, &cfg).unwrap();
    let above = maximize_chsh(x + 0.2, ExpectationModel::Approx, &cfg).unwrap();
    assert!(below.s_max <= 2.0 + TOL);
    assert!(above.s_max > 2.0 + TOL);
}

#[test]
fn unitary_kaon_boundary_is_reported() {
    let cfg = OptimizerConfig::default();
    let x = violation_boundary(ExpectationModel::Unitary, 1.0, 4.0, 1e-2, &cfg).unwrap();
    assert!((1.0..4.0).contains(&x));
}

#[test]
fn bmeson_bracket_from_one_is_invalid() {
    // S_max − 2 already exceeds the threshold at x = 1 for equal widths.
    let cfg = OptimizerConfig::default();
    let r = violation_boundary(ExpectationModel::Bmeson, 1.0, 5.0, 1e-2, &cfg);
    assert!(matches!(r, Err(KaonError::Bracket { .. })), "{r:?}");
}
