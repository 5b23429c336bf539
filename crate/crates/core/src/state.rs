//! Pure polarization-frequency biphoton states.
//!
//! A single photon lives in a four-dimensional space spanned by the modes
//! `Hh, Hl, Vh, Vl` (polarization × frequency), indexed `m = 2·pol + freq`.
//! Two-photon amplitudes are stored photon-1-major, flat index `4·m1 + m2`.
//! Ququart states only populate pairs with one high and one low photon and
//! are symmetric under photon exchange.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::ZERO;

/// Complex probability amplitude.
pub type ComplexAmplitude = Complex64;

/// Deviation of `Σ|c|²` from one that is silently rescaled away.
pub const AUTO_NORMALIZE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frequency {
    High,
    Low,
}

/// One of the four single-photon modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolFreqMode {
    pub polarization: Polarization,
    pub frequency: Frequency,
}

impl PolFreqMode {
    pub const ALL: [PolFreqMode; 4] = [
        PolFreqMode::new(Polarization::H, Frequency::High),
        PolFreqMode::new(Polarization::H, Frequency::Low),
        PolFreqMode::new(Polarization::V, Frequency::High),
        PolFreqMode::new(Polarization::V, Frequency::Low),
    ];

    pub const fn new(polarization: Polarization, frequency: Frequency) -> Self {
        Self {
            polarization,
            frequency,
        }
    }

    /// Canonical index: Hh→0, Hl→1, Vh→2, Vl→3.
    pub const fn index(self) -> usize {
        let pol = match self.polarization {
            Polarization::H => 0,
            Polarization::V => 1,
        };
        let freq = match self.frequency {
            Frequency::High => 0,
            Frequency::Low => 1,
        };
        2 * pol + freq
    }

    pub fn from_index(m: usize) -> Option<Self> {
        Self::ALL.get(m).copied()
    }

    pub fn label(self) -> &'static str {
        ["Hh", "Hl", "Vh", "Vl"][self.index()]
    }
}

/// The four ququart basis states, named by the polarizations of the
/// high- and low-frequency photon respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    HH,
    HV,
    VH,
    VV,
}

impl BasisLabel {
    pub const ALL: [BasisLabel; 4] = [BasisLabel::HH, BasisLabel::HV, BasisLabel::VH, BasisLabel::VV];

    fn polarizations(self) -> (usize, usize) {
        match self {
            BasisLabel::HH => (0, 0),
            BasisLabel::HV => (0, 1),
            BasisLabel::VH => (1, 0),
            BasisLabel::VV => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoubleBell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

fn check_finite(c: &[Complex64]) -> Result<()> {
    if c.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn norm_sq(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum()
}

/// Ququart amplitudes `(C1, C2, C3, C4)` of `Ψ_HH, Ψ_HV, Ψ_VH, Ψ_VV`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuquartCoeffs {
    c: [Complex64; 4],
}

impl QuquartCoeffs {
    /// Accepts coefficients whose squared norm is within
    /// [`AUTO_NORMALIZE_TOLERANCE`] of one and rescales them exactly onto the
    /// unit sphere.
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64, c4: Complex64) -> Result<Self> {
        Self::from_array([c1, c2, c3, c4])
    }

    pub fn from_array(c: [Complex64; 4]) -> Result<Self> {
        check_finite(&c)?;
        let n = norm_sq(&c);
        if (n - 1.0).abs() > AUTO_NORMALIZE_TOLERANCE {
            return Err(Error::Normalization {
                norm_sq: n,
                tolerance: AUTO_NORMALIZE_TOLERANCE,
            });
        }
        Ok(Self::rescaled(c, n))
    }

    /// Rescales any finite, nonzero coefficient vector onto the unit sphere.
    pub fn normalizing(c: [Complex64; 4]) -> Result<Self> {
        check_finite(&c)?;
        let n = norm_sq(&c);
        if n == 0.0 {
            return Err(Error::Normalization {
                norm_sq: 0.0,
                tolerance: AUTO_NORMALIZE_TOLERANCE,
            });
        }
        Ok(Self::rescaled(c, n))
    }

    fn rescaled(c: [Complex64; 4], n: f64) -> Self {
        if n == 1.0 {
            return Self { c };
        }
        let s = 1.0 / n.sqrt();
        Self { c: c.map(|z| z * s) }
    }

    /// Builds from the mixed-basis expansion `C1 Ψ_HH + B+ Ψ+ + C4 Ψ_VV + B− Ψ−`.
    pub fn from_mixed(c1: Complex64, b_plus: Complex64, c4: Complex64, b_minus: Complex64) -> Result<Self> {
        check_finite(&[c1, b_plus, c4, b_minus])?;
        Self::new(
            c1,
            (b_plus + b_minus) * FRAC_1_SQRT_2,
            (b_plus - b_minus) * FRAC_1_SQRT_2,
            c4,
        )
    }

    pub fn basis(label: BasisLabel) -> Self {
        let mut c = [ZERO; 4];
        c[label as usize] = Complex64::new(1.0, 0.0);
        Self { c }
    }

    /// Draws a Haar-random coefficient vector (normalized complex Gaussian).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let c: [Complex64; 4] = std::array::from_fn(|_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            let n = norm_sq(&c);
            if n > 1e-6 {
                return Self::rescaled(c, n);
            }
        }
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        self.c
    }

    pub fn c1(&self) -> Complex64 {
        self.c[0]
    }
    pub fn c2(&self) -> Complex64 {
        self.c[1]
    }
    pub fn c3(&self) -> Complex64 {
        self.c[2]
    }
    pub fn c4(&self) -> Complex64 {
        self.c[3]
    }

    pub fn b_plus(&self) -> Complex64 {
        (self.c[1] + self.c[2]) * FRAC_1_SQRT_2
    }

    pub fn b_minus(&self) -> Complex64 {
        (self.c[1] - self.c[2]) * FRAC_1_SQRT_2
    }

    /// `(C1, B+, C4, B−)`, the ordering of the mixed basis
    /// `{Ψ_HH, Ψ+, Ψ_VV, Ψ−}`.
    pub fn mixed(&self) -> [Complex64; 4] {
        [self.c1(), self.b_plus(), self.c4(), self.b_minus()]
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.c)
    }

    pub fn to_bell(&self) -> BellCoeffs {
        to_bell_coeffs(self)
    }
}

/// Coefficients over the double-Bell basis `{Φ+, Ψ+, Ψ−, Φ−}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellCoeffs {
    pub c_plus: Complex64,
    pub b_plus: Complex64,
    pub b_minus: Complex64,
    pub c_minus: Complex64,
}

impl BellCoeffs {
    pub fn norm_sq(&self) -> f64 {
        norm_sq(&[self.c_plus, self.b_plus, self.b_minus, self.c_minus])
    }

    /// Inverse of [`to_bell_coeffs`]. Does not re-validate the norm.
    pub fn to_ququart(&self) -> QuquartCoeffs {
        from_bell_coeffs(self)
    }
}

/// `C± = (C1 ± C4)/√2`, `B± = (C2 ± C3)/√2`.
pub fn to_bell_coeffs(coeffs: &QuquartCoeffs) -> BellCoeffs {
    let [c1, c2, c3, c4] = coeffs.c;
    BellCoeffs {
        c_plus: (c1 + c4) * FRAC_1_SQRT_2,
        b_plus: (c2 + c3) * FRAC_1_SQRT_2,
        b_minus: (c2 - c3) * FRAC_1_SQRT_2,
        c_minus: (c1 - c4) * FRAC_1_SQRT_2,
    }
}

pub fn from_bell_coeffs(bell: &BellCoeffs) -> QuquartCoeffs {
    QuquartCoeffs {
        c: [
            (bell.c_plus + bell.c_minus) * FRAC_1_SQRT_2,
            (bell.b_plus + bell.b_minus) * FRAC_1_SQRT_2,
            (bell.b_plus - bell.b_minus) * FRAC_1_SQRT_2,
            (bell.c_plus - bell.c_minus) * FRAC_1_SQRT_2,
        ],
    }
}

/// Pure two-photon state over `(σ1,ω1) ⊗ (σ2,ω2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureBiphotonState {
    amps: [Complex64; 16],
}

pub const fn flat_index(m1: usize, m2: usize) -> usize {
    4 * m1 + m2
}

impl PureBiphotonState {
    /// Wraps raw amplitudes. Only the norm is checked, so artificial
    /// non-symmetric vectors are representable for testing decompositions.
    pub fn from_amplitudes(amps: [Complex64; 16]) -> Result<Self> {
        check_finite(&amps)?;
        let n = norm_sq(&amps);
        if (n - 1.0).abs() > AUTO_NORMALIZE_TOLERANCE {
            return Err(Error::Normalization {
                norm_sq: n,
                tolerance: AUTO_NORMALIZE_TOLERANCE,
            });
        }
        let s = 1.0 / n.sqrt();
        Ok(Self { amps: amps.map(|z| z * s) })
    }

    /// Product of a two-photon polarization wave function (over `σ1σ2`,
    /// index `2·σ1+σ2`) and a two-photon frequency wave function (over
    /// `ω1ω2`), regrouped into per-photon modes.
    pub fn from_pol_freq_product(pol: &[Complex64; 4], freq: &[Complex64; 4]) -> Result<Self> {
        let mut amps = [ZERO; 16];
        for p1 in 0..2 {
            for p2 in 0..2 {
                for f1 in 0..2 {
                    for f2 in 0..2 {
                        let m1 = 2 * p1 + f1;
                        let m2 = 2 * p2 + f2;
                        amps[flat_index(m1, m2)] = pol[2 * p1 + p2] * freq[2 * f1 + f2];
                    }
                }
            }
        }
        Self::from_amplitudes(amps)
    }

    pub fn amplitudes(&self) -> &[Complex64; 16] {
        &self.amps
    }

    pub fn amplitude(&self, m1: usize, m2: usize) -> Complex64 {
        self.amps[flat_index(m1, m2)]
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.amps)
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Largest `|ψ(m1,m2) − ψ(m2,m1)|`.
    pub fn exchange_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for m1 in 0..4 {
            for m2 in (m1 + 1)..4 {
                worst = worst.max((self.amplitude(m1, m2) - self.amplitude(m2, m1)).norm());
            }
        }
        worst
    }

    /// Largest modulus among amplitudes where both photons share a frequency.
    pub fn same_frequency_weight(&self) -> f64 {
        let mut worst = 0.0_f64;
        for m1 in 0..4 {
            for m2 in 0..4 {
                if m1 % 2 == m2 % 2 {
                    worst = worst.max(self.amplitude(m1, m2).norm());
                }
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// One of the four symmetric two-term ququart basis states.
pub fn basis_state(label: BasisLabel) -> PureBiphotonState {
    let (p_high, p_low) = label.polarizations();
    let high = 2 * p_high; // (p, h)
    let low = 2 * p_low + 1; // (p, l)
    let mut amps = [ZERO; 16];
    amps[flat_index(high, low)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[flat_index(low, high)] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    PureBiphotonState { amps }
}

/// `C1 Ψ_HH + C2 Ψ_HV + C3 Ψ_VH + C4 Ψ_VV`.
pub fn ququart_state(coeffs: &QuquartCoeffs) -> PureBiphotonState {
    let mut amps = [ZERO; 16];
    for (label, c) in BasisLabel::ALL.iter().zip(coeffs.c) {
        for (acc, b) in amps.iter_mut().zip(basis_state(*label).amps) {
            *acc += c * b;
        }
    }
    PureBiphotonState { amps }
}

pub fn double_bell_state(which: DoubleBell) -> PureBiphotonState {
    let (a, b, sign) = match which {
        DoubleBell::PhiPlus => (BasisLabel::HH, BasisLabel::VV, 1.0),
        DoubleBell::PhiMinus => (BasisLabel::HH, BasisLabel::VV, -1.0),
        DoubleBell::PsiPlus => (BasisLabel::HV, BasisLabel::VH, 1.0),
        DoubleBell::PsiMinus => (BasisLabel::HV, BasisLabel::VH, -1.0),
    };
    let mut c = [ZERO; 4];
    c[a as usize] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    c[b as usize] = Complex64::new(sign * FRAC_1_SQRT_2, 0.0);
    ququart_state(&QuquartCoeffs { c })
}

/// Exchanges the variables of the two photons.
pub fn swap_photons(state: &PureBiphotonState) -> PureBiphotonState {
    let mut amps = [ZERO; 16];
    for m1 in 0..4 {
        for m2 in 0..4 {
            amps[flat_index(m2, m1)] = state.amplitude(m1, m2);
        }
    }
    PureBiphotonState { amps }
}

/// Single-photon change of polarization basis to `H' = cos α H + sin α V`,
/// `V' = −sin α H + cos α V`: the matrix of overlaps `⟨σ'|σ⟩`.
pub fn polarization_rotation(alpha: f64) -> [[f64; 2]; 2] {
    let (s, c) = alpha.sin_cos();
    [[c, s], [-s, c]]
}

/// Re-expresses the state in a polarization basis turned by `alpha`
/// (radians), the same local rotation for both photons.
pub fn rotate_polarization_basis(state: &PureBiphotonState, alpha: f64) -> PureBiphotonState {
    let r = polarization_rotation(alpha);
    let mut u = [[0.0; 4]; 4];
    for (p_new, row) in r.iter().enumerate() {
        for (p_old, &x) in row.iter().enumerate() {
            for f in 0..2 {
                u[2 * p_new + f][2 * p_old + f] = x;
            }
        }
    }
    let mut amps = [ZERO; 16];
    for n1 in 0..4 {
        for n2 in 0..4 {
            let mut acc = ZERO;
            for m1 in 0..4 {
                if u[n1][m1] == 0.0 {
                    continue;
                }
                for m2 in 0..4 {
                    acc += state.amplitude(m1, m2) * (u[n1][m1] * u[n2][m2]);
                }
            }
            amps[flat_index(n1, n2)] = acc;
        }
    }
    PureBiphotonState { amps }
}
