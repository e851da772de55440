// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entangled meson pairs and joint Yes/No measurements.
//!
//! A measurement asks one meson "are you `|k⟩`?". *Yes* projects the
//! surviving-meson component onto `|k⟩`. *No* keeps everything else: the
//! orthogonal meson component **and** the decay products `|Ω(t)⟩`, so a
//! meson that has already decayed always answers No.
//!
//! Probabilities use the factorized evolution `U_l(t_l,0) ⊗ U_r(t_r,0)`,
//! each side carrying its own proper time. Writing the evolved pair as
//! `Σ M_ij (a_i + Ω_i) ⊗ (b_j + Ω_j)` over mass eigenstates, every outcome
//! probability is `Σ M̄_ij M_i'j' G^l_ii' G^r_jj'` with one 2×2 Gram matrix
//! per side. For Yes the Gram matrix is `⟨a_i|P|a_i'⟩`; for No it is
//! `⟨a_i|Q|a_i'⟩ + ⟨Ω_i|Ω_i'⟩`, the decay-product overlaps coming from the
//! unitarity relations in [`crate::meson::omega_overlaps`].

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_time, KaonError, Result};
use crate::meson::{mass_phases, omega_overlaps, Basis, MesonParams, QuasiSpinState};

type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Yes,
    No,
}

/// One side's measurement: which quasi-spin is asked for, when, and the answer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSpec {
    pub side: Side,
    pub quasi_spin: QuasiSpinState,
    pub time: f64,
    pub outcome: Outcome,
}

impl MeasurementSpec {
    pub fn left(quasi_spin: QuasiSpinState, time: f64, outcome: Outcome) -> Self {
        MeasurementSpec {
            side: Side::Left,
            quasi_spin,
            time,
            outcome,
        }
    }

    pub fn right(quasi_spin: QuasiSpinState, time: f64, outcome: Outcome) -> Self {
        MeasurementSpec {
            side: Side::Right,
            quasi_spin,
            time,
            outcome,
        }
    }

    fn validate(&self, expected: Side, params: &MesonParams) -> Result<()> {
        if self.side != expected {
            return Err(KaonError::InvalidSpec(format!(
                "expected a {expected:?} measurement, got {:?}",
                self.side
            )));
        }
        if !(self.time.is_finite() && self.time >= 0.0) {
            return Err(KaonError::InvalidSpec(format!(
                "measurement time must be finite and >= 0, got {}",
                self.time
            )));
        }
        if !self.quasi_spin.is_normalized(params) {
            return Err(KaonError::InvalidSpec(format!(
                "quasi-spin state is not normalized (|k|² = {})",
                self.quasi_spin.norm_sqr(params)
            )));
        }
        Ok(())
    }
}

/// Two-meson state `Σ c_ij |b_i⟩_l ⊗ |b_j⟩_r` over a declared single-meson basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairState {
    pub basis: Basis,
    pub coeffs: Mat2,
}

/// Columns are the strangeness components of the basis vectors.
fn basis_matrix(basis: Basis, params: &MesonParams) -> Mat2 {
    let one = Complex64::new(1.0, 0.0);
    let e0 = QuasiSpinState::new(basis, [one, ZERO]).strangeness_components(params);
    let e1 = QuasiSpinState::new(basis, [ZERO, one]).strangeness_components(params);
    [[e0[0], e1[0]], [e0[1], e1[1]]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn inverse(a: &Mat2) -> Mat2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [
        [a[1][1] / det, -a[0][1] / det],
        [-a[1][0] / det, a[0][0] / det],
    ]
}

/// The `J^{PC} = 1^{−−}` singlet at `t = 0`.
///
/// In the strangeness basis it is `(|K⁰K̄⁰⟩ − |K̄⁰K⁰⟩)/√2`; in the mass
/// basis `N²/(2√2 pq)·(|K_S K_L⟩ − |K_L K_S⟩)`.
pub fn initial_singlet(basis: Basis, params: &MesonParams) -> PairState {
    let antisym = |c: Complex64| [[ZERO, c], [-c, ZERO]];
    match basis {
        Basis::Strangeness => PairState {
            basis,
            coeffs: antisym(Complex64::new(FRAC_1_SQRT_2, 0.0)),
        },
        Basis::Mass => {
            let c = params.norm_n * params.norm_n * FRAC_1_SQRT_2 / (2.0 * params.p * params.q);
            PairState {
                basis,
                coeffs: antisym(c),
            }
        }
        Basis::Cp => initial_singlet(Basis::Strangeness, params).to_basis(Basis::Cp, params),
    }
}

impl PairState {
    /// Coefficients over `(K⁰, K̄⁰) ⊗ (K⁰, K̄⁰)`.
    pub fn strangeness_coeffs(&self, params: &MesonParams) -> Mat2 {
        let t = basis_matrix(self.basis, params);
        mat_mul(&mat_mul(&t, &self.coeffs), &transpose(&t))
    }

    pub fn to_basis(&self, target: Basis, params: &MesonParams) -> PairState {
        if target == self.basis {
            return *self;
        }
        let s = self.strangeness_coeffs(params);
        let tinv = inverse(&basis_matrix(target, params));
        PairState {
            basis: target,
            coeffs: mat_mul(&mat_mul(&tinv, &s), &transpose(&tinv)),
        }
    }

    /// Exchanges the left and right mesons.
    pub fn swapped(&self) -> PairState {
        PairState {
            basis: self.basis,
            coeffs: transpose(&self.coeffs),
        }
    }

    /// `(⟨left| ⊗ ⟨right|)|ψ⟩`.
    pub fn amplitude(
        &self,
        left: &QuasiSpinState,
        right: &QuasiSpinState,
        params: &MesonParams,
    ) -> Complex64 {
        let s = self.strangeness_coeffs(params);
        let l = left.strangeness_components(params);
        let r = right.strangeness_components(params);
        let mut acc = ZERO;
        for a in 0..2 {
            for b in 0..2 {
                acc += l[a].conj() * r[b].conj() * s[a][b];
            }
        }
        acc
    }
}

/// Gram matrix over the mass index for one side's outcome.
fn side_gram(spec: &MeasurementSpec, params: &MesonParams) -> Result<Mat2> {
    let t = spec.time;
    let phases = mass_phases(t, params);
    let k = spec.quasi_spin.strangeness_components(params);
    let ks = QuasiSpinState::ks().strangeness_components(params);
    let kl = QuasiSpinState::kl().strangeness_components(params);
    let evolved = [
        [ks[0] * phases[0], ks[1] * phases[0]],
        [kl[0] * phases[1], kl[1] * phases[1]],
    ];
    let proj: Vec<Complex64> = evolved
        .iter()
        .map(|a| k[0].conj() * a[0] + k[1].conj() * a[1])
        .collect();
    let mut gram = [[ZERO; 2]; 2];
    match spec.outcome {
        Outcome::Yes => {
            for i in 0..2 {
                for j in 0..2 {
                    gram[i][j] = proj[i].conj() * proj[j];
                }
            }
        }
        Outcome::No => {
            let omega = omega_overlaps(t, params)?.gram();
            for i in 0..2 {
                for j in 0..2 {
                    let full =
                        evolved[i][0].conj() * evolved[j][0] + evolved[i][1].conj() * evolved[j][1];
                    gram[i][j] = full - proj[i].conj() * proj[j] + omega[i][j];
                }
            }
        }
    }
    Ok(gram)
}

/// Probability of the joint outcome `(spec_l, spec_r)` for the initial singlet.
pub fn joint_probability(
    spec_l: &MeasurementSpec,
    spec_r: &MeasurementSpec,
    params: &MesonParams,
) -> Result<f64> {
    spec_l.validate(Side::Left, params)?;
    spec_r.validate(Side::Right, params)?;
    let m = initial_singlet(Basis::Mass, params).coeffs;
    let gl = side_gram(spec_l, params)?;
    let gr = side_gram(spec_r, params)?;
    let mut acc = ZERO;
    for i in 0..2 {
        for j in 0..2 {
            for ip in 0..2 {
                for jp in 0..2 {
                    acc += m[i][j].conj() * m[ip][jp] * gl[i][ip] * gr[j][jp];
                }
            }
        }
    }
    Ok(acc.re)
}

/// The four Yes/No probabilities of one measurement setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbabilities {
    pub yy: f64,
    pub nn: f64,
    pub yn: f64,
    pub ny: f64,
}

impl OutcomeProbabilities {
    pub fn total(&self) -> f64 {
        self.yy + self.nn + self.yn + self.ny
    }

    /// `−1 + 2(P_YY + P_NN)`.
    pub fn expectation(&self) -> f64 {
        -1.0 + 2.0 * (self.yy + self.nn)
    }
}

/// All four outcome probabilities for `k_n` at `t_a` (left) and `k_m` at `t_b` (right).
pub fn outcome_probabilities(
    k_n: &QuasiSpinState,
    t_a: f64,
    k_m: &QuasiSpinState,
    t_b: f64,
    params: &MesonParams,
) -> Result<OutcomeProbabilities> {
    let p = |ol, or| {
        joint_probability(
            &MeasurementSpec::left(*k_n, t_a, ol),
            &MeasurementSpec::right(*k_m, t_b, or),
            params,
        )
    };
    Ok(OutcomeProbabilities {
        yy: p(Outcome::Yes, Outcome::Yes)?,
        nn: p(Outcome::No, Outcome::No)?,
        yn: p(Outcome::Yes, Outcome::No)?,
        ny: p(Outcome::No, Outcome::Yes)?,
    })
}

/// `E(k_n,t_a;k_m,t_b) = −1 + 2(P_YY + P_NN)`.
pub fn expectation_general(
    k_n: &QuasiSpinState,
    t_a: f64,
    k_m: &QuasiSpinState,
    t_b: f64,
    params: &MesonParams,
) -> Result<f64> {
    let yy = joint_probability(
        &MeasurementSpec::left(*k_n, t_a, Outcome::Yes),
        &MeasurementSpec::right(*k_m, t_b, Outcome::Yes),
        params,
    )?;
    let nn = joint_probability(
        &MeasurementSpec::left(*k_n, t_a, Outcome::No),
        &MeasurementSpec::right(*k_m, t_b, Outcome::No),
        params,
    )?;
    Ok(-1.0 + 2.0 * (yy + nn))
}

/// Strangeness-strangeness expectation value under unitary evolution,
/// decay products included and `ε` neglected.
pub fn expectation_unitary(t_l: f64, t_r: f64, params: &MesonParams) -> Result<f64> {
    ensure_time("t_l", t_l)?;
    ensure_time("t_r", t_r)?;
    let gs = params.gamma_s;
    let gl = params.gamma_l;
    let meson = expectation_approx(t_l, t_r, params)?;
    let decayed = 0.5 * (-(-gl * t_l).exp_m1()) * (-(-gs * t_r).exp_m1())
        + 0.5 * (-(-gs * t_l).exp_m1()) * (-(-gl * t_r).exp_m1());
    Ok(meson + decayed)
}

/// `−cos(Δm Δt) e^{−Γ(t_l+t_r)}`: the expectation value with all decay
/// products ignored, adequate when `Γ_L ≪ Γ_S`.
pub fn expectation_approx(t_l: f64, t_r: f64, params: &MesonParams) -> Result<f64> {
    ensure_time("t_l", t_l)?;
    ensure_time("t_r", t_r)?;
    Ok(-(params.delta_m * (t_l - t_r)).cos() * (-params.gamma_bar * (t_l + t_r)).exp())
}

/// Equal-width systems, where the decay-product term cannot be dropped.
pub fn expectation_bmeson(t_l: f64, t_r: f64, params: &MesonParams) -> Result<f64> {
    if !params.has_equal_widths() {
        return Err(KaonError::InvalidParameter(format!(
            "B-meson expectation needs equal widths, got Γ_S = {}, Γ_L = {}",
            params.gamma_s, params.gamma_l
        )));
    }
    ensure_time("t_l", t_l)?;
    ensure_time("t_r", t_r)?;
    let g = params.gamma_s;
    let meson = -(params.delta_m * (t_l - t_r)).cos() * (-g * (t_l + t_r)).exp();
    Ok(meson + (-(-g * t_l).exp_m1()) * (-(-g * t_r).exp_m1()))
}
