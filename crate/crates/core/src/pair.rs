//! Closed-form thermodynamics of one SU(2)-invariant (S, 1/2) pair.
//!
//! The pair Hamiltonian `J S·s` has two levels: total spin `S + 1/2` at
//! energy `J S / 2` (degeneracy `2S + 2`) and total spin `S - 1/2` at
//! `-J (S + 1) / 2` (degeneracy `2S`). Every thermal quantity below is a
//! function of `x = exp(-gap / T)` with `gap = J (2S + 1) / 2`, so for
//! `J > 0` no growing exponential is ever evaluated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots;
use crate::spin::SpinQuantum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSpectrum {
    pub spin: SpinQuantum,
    pub coupling_kelvin: f64,
    pub upper_energy: f64,
    pub lower_energy: f64,
    pub upper_degeneracy: usize,
    pub lower_degeneracy: usize,
}

impl PairSpectrum {
    pub fn new(spin: SpinQuantum, coupling_kelvin: f64) -> Self {
        let s = spin.value();
        let twice = spin.twice_spin() as usize;
        Self {
            spin,
            coupling_kelvin,
            upper_energy: coupling_kelvin * s / 2.0,
            lower_energy: -coupling_kelvin * (s + 1.0) / 2.0,
            upper_degeneracy: twice + 2,
            lower_degeneracy: twice,
        }
    }

    pub fn gap(&self) -> f64 {
        self.upper_energy - self.lower_energy
    }

    /// All `2(2S+1)` eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (lo, lo_deg, hi, hi_deg) = if self.lower_energy <= self.upper_energy {
            (self.lower_energy, self.lower_degeneracy, self.upper_energy, self.upper_degeneracy)
        } else {
            (self.upper_energy, self.upper_degeneracy, self.lower_energy, self.lower_degeneracy)
        };
        let mut v = vec![lo; lo_deg];
        v.extend(std::iter::repeat_n(hi, hi_deg));
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairThermalResult {
    pub temperature_kelvin: f64,
    pub correlator_g1: f64,
    pub negativity: f64,
}

fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTemperature(t))
    }
}

/// Thermal `<S·s>` of the pair.
pub fn pair_correlator(spin: SpinQuantum, coupling_kelvin: f64, temperature_kelvin: f64) -> Result<f64> {
    check_temperature(temperature_kelvin)?;
    let s = spin.value();
    let c = spin.casimir();
    let gap = coupling_kelvin * (2.0 * s + 1.0) / 2.0;
    if gap >= 0.0 {
        let x = (-gap / temperature_kelvin).exp();
        Ok(c * (x - 1.0) / (2.0 * ((s + 1.0) * x + s)))
    } else {
        // ferromagnetic: y = exp(gap / T) < 1 weights the lower multiplet
        let y = (gap / temperature_kelvin).exp();
        Ok(c * (1.0 - y) / (2.0 * ((s + 1.0) + s * y)))
    }
}

/// `T -> 0+` limit of [`pair_correlator`] for `J > 0`: the `S - 1/2` multiplet value.
pub fn pair_correlator_ground_limit(spin: SpinQuantum) -> f64 {
    -(spin.value() + 1.0) / 2.0
}

/// The literal correlator expressions printed for (1/2, 1/2) and (1, 1/2) pairs.
///
/// For `S = 1` this is `5/6` of the exact thermal average.
pub fn pair_correlator_printed(spin: SpinQuantum, coupling_kelvin: f64, temperature_kelvin: f64) -> Result<f64> {
    check_temperature(temperature_kelvin)?;
    let beta_j = coupling_kelvin / temperature_kelvin;
    match spin.twice_spin() {
        1 => {
            let e = (-beta_j).exp();
            Ok(-3.0 * (1.0 - e) / (4.0 * (1.0 + 3.0 * e)))
        }
        2 => {
            let e = (-1.5 * beta_j).exp();
            Ok(-5.0 * (1.0 - e) / (6.0 * (1.0 + 2.0 * e)))
        }
        _ => Err(Error::UnsupportedPrintedSpin(spin.to_string())),
    }
}

/// The candidate negative eigenvalue of the partially transposed pair state,
/// `tau = (S + 2 G1) / (D (D - 1))`, which has degeneracy `2S`.
pub fn partial_transpose_candidate(spin: SpinQuantum, g1: f64) -> f64 {
    let d = spin.dimension() as f64;
    (spin.value() + 2.0 * g1) / (d * (d - 1.0))
}

/// Negativity of an SU(2)-invariant (S, 1/2) state with correlator `g1`.
pub fn negativity_from_correlator(spin: SpinQuantum, g1: f64) -> f64 {
    let tau = partial_transpose_candidate(spin, g1);
    f64::from(spin.twice_spin()) * (-tau).max(0.0)
}

pub fn pair_negativity(spin: SpinQuantum, coupling_kelvin: f64, temperature_kelvin: f64) -> Result<f64> {
    let g1 = pair_correlator(spin, coupling_kelvin, temperature_kelvin)?;
    Ok(negativity_from_correlator(spin, g1))
}

/// `T -> 0+` limit of [`pair_negativity`]: `1 / (2S + 1)`.
pub fn pair_negativity_ground_limit(spin: SpinQuantum) -> f64 {
    1.0 / spin.dimension() as f64
}

pub fn pair_thermal(spin: SpinQuantum, coupling_kelvin: f64, temperature_kelvin: f64) -> Result<PairThermalResult> {
    let g1 = pair_correlator(spin, coupling_kelvin, temperature_kelvin)?;
    Ok(PairThermalResult {
        temperature_kelvin,
        correlator_g1: g1,
        negativity: negativity_from_correlator(spin, g1),
    })
}

/// Closed-form `T_c = J (2S+1) / (2 ln(2S+2))`, where `G1(T_c) = -S/2`.
pub fn characteristic_temperature_closed_form(spin: SpinQuantum, coupling_kelvin: f64) -> Result<f64> {
    if !(coupling_kelvin > 0.0) {
        return Err(Error::NonPositiveCoupling(coupling_kelvin));
    }
    let s = spin.value();
    Ok(coupling_kelvin * (2.0 * s + 1.0) / (2.0 * (2.0 * s + 2.0).ln()))
}

/// Closed-form characteristic temperature, cross-checked against bisection on
/// [`pair_correlator`]. Disagreement beyond `1e-8` relative is reported as an error.
pub fn characteristic_temperature(spin: SpinQuantum, coupling_kelvin: f64) -> Result<f64> {
    let tc = characteristic_temperature_closed_form(spin, coupling_kelvin)?;
    let half_s = spin.value() / 2.0;
    let root = roots::bisect_expanding(
        |t| Ok(pair_correlator(spin, coupling_kelvin, t)? + half_s),
        1e-3 * coupling_kelvin,
        1e3 * coupling_kelvin,
        1e-10 * coupling_kelvin,
        4,
    )?;
    if ((root - tc) / tc).abs() > 1e-8 {
        return Err(Error::InvalidArgument(format!(
            "closed-form T_c {tc} disagrees with bisection {root}"
        )));
    }
    Ok(tc)
}
