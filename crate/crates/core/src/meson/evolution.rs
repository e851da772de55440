// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Free time evolution of a single neutral meson.
//!
//! Gauge: the common mass is dropped, i.e. `m_S = 0` and `m_L = Δm`. The
//! complex eigenvalues are `λ_S = −iΓ_S/2` and `λ_L = Δm − iΓ_L/2`. Every
//! observable depends only on `Δm`, so the dropped phase never shows up.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::MesonParams;
use super::state::{to_basis, Basis, QuasiSpinState};
use crate::error::{ensure_time, Result};

/// Strangeness eigenstate used as the initial or final state of a beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strangeness {
    /// `K⁰`, strangeness `+1`.
    K0,
    /// `K̄⁰`, strangeness `−1`.
    K0Bar,
}

impl Strangeness {
    pub fn state(self) -> QuasiSpinState {
        match self {
            Strangeness::K0 => QuasiSpinState::k0(),
            Strangeness::K0Bar => QuasiSpinState::k0bar(),
        }
    }
}

/// Inner products of the decay-product states `|Ω_S(t)⟩`, `|Ω_L(t)⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaRecord {
    /// `⟨Ω_S|Ω_S⟩`
    pub norm_ss: f64,
    /// `⟨Ω_L|Ω_L⟩`
    pub norm_ll: f64,
    /// `⟨Ω_L|Ω_S⟩`
    pub overlap_ls: Complex64,
}

impl OmegaRecord {
    /// Gram matrix over `(Ω_S, Ω_L)`: entry `[i][j] = ⟨Ω_i|Ω_j⟩`.
    pub fn gram(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.norm_ss, 0.0), self.overlap_ls.conj()],
            [self.overlap_ls, Complex64::new(self.norm_ll, 0.0)],
        ]
    }
}

/// `e^{−iλ_S t}` and `e^{−iλ_L t}` in the `m_S = 0` gauge.
pub fn mass_phases(t: f64, params: &MesonParams) -> [Complex64; 2] {
    let s = Complex64::new(-0.5 * params.gamma_s * t, 0.0).exp();
    let l = Complex64::new(-0.5 * params.gamma_l * t, -params.delta_m * t).exp();
    [s, l]
}

/// The evolution functions `(g₊, g₋)`.
pub fn g_pm(t: f64, params: &MesonParams) -> Result<(Complex64, Complex64)> {
    ensure_time("t", t)?;
    let [es, el] = mass_phases(t, params);
    Ok((0.5 * (es + el), 0.5 * (el - es)))
}

/// Evolves the surviving-meson component of `state` to time `t`.
///
/// The result is returned in the basis of the input; its norm shrinks as
/// the meson decays.
pub fn evolve(state: &QuasiSpinState, t: f64, params: &MesonParams) -> Result<QuasiSpinState> {
    ensure_time("t", t)?;
    let m = to_basis(state, Basis::Mass, params);
    let [es, el] = mass_phases(t, params);
    let evolved = QuasiSpinState::new(Basis::Mass, [m.amp[0] * es, m.amp[1] * el]);
    Ok(to_basis(&evolved, state.basis, params))
}

/// `|⟨final|initial(t)⟩|²` for a beam prepared as a strangeness eigenstate.
pub fn oscillation_probability(
    initial: Strangeness,
    finale: Strangeness,
    t: f64,
    params: &MesonParams,
) -> Result<f64> {
    let (gp, gm) = g_pm(t, params)?;
    let amp = match (initial, finale) {
        (Strangeness::K0, Strangeness::K0) | (Strangeness::K0Bar, Strangeness::K0Bar) => gp,
        (Strangeness::K0, Strangeness::K0Bar) => params.q / params.p * gm,
        (Strangeness::K0Bar, Strangeness::K0) => params.p / params.q * gm,
    };
    Ok(amp.norm_sqr())
}

/// `⟨K_L|K_S⟩ = 2 Re ε / (1 + |ε|²)`.
pub fn kl_ks_overlap(params: &MesonParams) -> f64 {
    2.0 * params.epsilon.re / (1.0 + params.epsilon.norm_sqr())
}

/// Decay-product overlaps from the Bell–Steinberger unitarity relations.
pub fn omega_overlaps(t: f64, params: &MesonParams) -> Result<OmegaRecord> {
    ensure_time("t", t)?;
    let delta = kl_ks_overlap(params);
    let interference = Complex64::new(-params.gamma_bar * t, params.delta_m * t).exp();
    Ok(OmegaRecord {
        norm_ss: -(-params.gamma_s * t).exp_m1(),
        norm_ll: -(-params.gamma_l * t).exp_m1(),
        overlap_ls: delta * (Complex64::new(1.0, 0.0) - interference),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meson::params::{epsilon_from_polar, make_params};
    use approx::assert_abs_diff_eq;

    fn zero() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    #[test]
    fn g_pm_at_zero_and_infinity() {
        let p = MesonParams::kaon();
        let (gp, gm) = g_pm(0.0, &p).unwrap();
        assert_eq!(gp, Complex64::new(1.0, 0.0));
        assert_eq!(gm, zero());
        let (gp, gm) = g_pm(1e5, &p).unwrap();
        assert!(gp.norm() < 1e-30 && gm.norm() < 1e-30);
        assert!(g_pm(-1.0, &p).is_err());
    }

    #[test]
    fn g_pm_modulus_sum() {
        let p = MesonParams::kaon();
        for t in [0.5, 1.0, 2.0] {
            let (gp, gm) = g_pm(t, &p).unwrap();
            let expected = 0.5 * ((-p.gamma_s * t).exp() + (-p.gamma_l * t).exp());
            assert_abs_diff_eq!(gp.norm_sqr() + gm.norm_sqr(), expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn g_pm_combinations_are_mass_phases() {
        let p = MesonParams::kaon();
        for i in 0..50 {
            let t = 0.2 * i as f64;
            let (gp, gm) = g_pm(t, &p).unwrap();
            let lambda_s = Complex64::new(0.0, -0.5 * p.gamma_s);
            let lambda_l = Complex64::new(p.delta_m, -0.5 * p.gamma_l);
            let i_unit = Complex64::new(0.0, 1.0);
            assert!((gp - gm - (-i_unit * lambda_s * t).exp()).norm() < 1e-12);
            assert!((gp + gm - (-i_unit * lambda_l * t).exp()).norm() < 1e-12);
        }
    }

    #[test]
    fn oscillation_endpoints() {
        let p = MesonParams::kaon();
        let k0 = Strangeness::K0;
        let kb = Strangeness::K0Bar;
        assert_abs_diff_eq!(oscillation_probability(k0, k0, 0.0, &p).unwrap(), 1.0);
        assert_abs_diff_eq!(oscillation_probability(k0, kb, 0.0, &p).unwrap(), 0.0);
    }

    #[test]
    fn oscillation_matches_closed_form() {
        let p = MesonParams::kaon();
        let ratio = p.q.norm_sqr() / p.p.norm_sqr();
        for i in 0..200 {
            let t = 0.05 * i as f64;
            let es = (-p.gamma_s * t).exp();
            let el = (-p.gamma_l * t).exp();
            let interf = 2.0 * (-p.gamma_bar * t).exp() * (p.delta_m * t).cos();
            let same = 0.25 * (es + el + interf);
            let flip = 0.25 * ratio * (es + el - interf);
            let k0 = Strangeness::K0;
            let kb = Strangeness::K0Bar;
            assert_abs_diff_eq!(
                oscillation_probability(k0, k0, t, &p).unwrap(),
                same,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                oscillation_probability(k0, kb, t, &p).unwrap(),
                flip,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn unitarity_without_cp_violation() {
        let p = MesonParams::kaon_cp_conserving();
        for t in [0.0, 0.3, 1.0, 3.0] {
            let k0 = Strangeness::K0;
            let total = oscillation_probability(k0, k0, t, &p).unwrap()
                + oscillation_probability(k0, Strangeness::K0Bar, t, &p).unwrap()
                + 0.5 * (1.0 - (-p.gamma_s * t).exp())
                + 0.5 * (1.0 - (-p.gamma_l * t).exp());
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn oscillation_stays_in_unit_interval() {
        let kaon = MesonParams::kaon();
        let b = MesonParams::bmeson(0.77).unwrap();
        for p in [kaon, b] {
            for i in 0..=2000 {
                let t = 0.01 * i as f64;
                for a in [Strangeness::K0, Strangeness::K0Bar] {
                    for f in [Strangeness::K0, Strangeness::K0Bar] {
                        let v = oscillation_probability(a, f, t, &p).unwrap();
                        assert!((0.0..=1.0).contains(&v), "P={v} at t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn evolve_agrees_with_g_functions() {
        let p = MesonParams::kaon();
        let t = 1.7;
        let (gp, gm) = g_pm(t, &p).unwrap();
        let s = evolve(&QuasiSpinState::k0(), t, &p).unwrap();
        let s = to_basis(&s, Basis::Strangeness, &p);
        assert!((s.amp[0] - gp).norm() < 1e-14);
        assert!((s.amp[1] - p.q / p.p * gm).norm() < 1e-14);
    }

    #[test]
    fn omega_limits() {
        let p = MesonParams::kaon();
        let o = omega_overlaps(0.0, &p).unwrap();
        assert_eq!((o.norm_ss, o.norm_ll), (0.0, 0.0));
        assert!(o.overlap_ls.norm() < 1e-18);
        let o = omega_overlaps(1e6, &p).unwrap();
        assert_abs_diff_eq!(o.norm_ss, 1.0);
        assert_abs_diff_eq!(o.norm_ll, 1.0, epsilon = 1e-12);
        assert!((o.overlap_ls - kl_ks_overlap(&p)).norm() < 1e-15);
    }

    #[test]
    fn omega_norms_monotone() {
        let p = MesonParams::kaon();
        let mut prev = omega_overlaps(0.0, &p).unwrap();
        for i in 1..500 {
            let o = omega_overlaps(0.05 * i as f64, &p).unwrap();
            assert!(o.norm_ss >= prev.norm_ss && o.norm_ll >= prev.norm_ll);
            prev = o;
        }
    }

    #[test]
    fn omega_overlap_vanishes_without_cp_violation() {
        let p = MesonParams::kaon_cp_conserving();
        for i in 0..100 {
            let o = omega_overlaps(0.1 * i as f64, &p).unwrap();
            assert_eq!(o.overlap_ls, zero());
        }
    }

    #[test]
    fn unitarity_of_mass_states_with_decay_products() {
        // ⟨K_L(t)|K_S(t)⟩ + ⟨Ω_L|Ω_S⟩ must stay equal to ⟨K_L|K_S⟩.
        let p = MesonParams::kaon();
        for t in [0.0, 0.4, 2.5, 9.0] {
            let ks = evolve(&QuasiSpinState::ks(), t, &p).unwrap();
            let kl = evolve(&QuasiSpinState::kl(), t, &p).unwrap();
            let total = kl.inner(&ks, &p) + omega_overlaps(t, &p).unwrap().overlap_ls;
            let overlap = QuasiSpinState::kl().inner(&QuasiSpinState::ks(), &p);
            assert!((total - overlap).norm() < 1e-15);
            let norm_s = ks.norm_sqr(&p) + omega_overlaps(t, &p).unwrap().norm_ss;
            assert_abs_diff_eq!(norm_s, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn kl_ks_overlap_values() {
        let zero_eps = MesonParams::kaon_cp_conserving();
        assert_eq!(kl_ks_overlap(&zero_eps), 0.0);
        let p = make_params(0.47, 581.0, Complex64::new(1.577e-3, 1.577e-3)).unwrap();
        let expected = 2.0 * 1.577e-3 / (1.0 + 2.0 * 1.577e-3 * 1.577e-3);
        assert_abs_diff_eq!(kl_ks_overlap(&p), expected, epsilon = 1e-18);
        assert!((kl_ks_overlap(&p) - 3.15e-3).abs() < 0.01e-3);
        let imag = make_params(0.47, 581.0, Complex64::new(0.0, 2e-3)).unwrap();
        assert_eq!(kl_ks_overlap(&imag), 0.0);
        // and it is the inner product of the mass states
        let k = make_params(0.47, 581.0, epsilon_from_polar(0.05, 30.0)).unwrap();
        let ip = QuasiSpinState::kl().inner(&QuasiSpinState::ks(), &k);
        assert!((ip - kl_ks_overlap(&k)).norm() < 1e-15);
    }
}
