//! Physical constants and unit conversions.
//!
//! Everything inside the numerical core works with couplings and
//! temperatures in Kelvin and with the reduced susceptibility
//! `chi * k_B * T / (g^2 * mu_B^2)`. Conversions happen at the edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 exact/recommended values in CGS, used to derive the compiled-in constants.
pub mod codata {
    /// Planck constant, erg s.
    pub const PLANCK: f64 = 6.626_070_15e-27;
    /// Speed of light, cm/s.
    pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;
    /// Boltzmann constant, erg/K.
    pub const BOLTZMANN: f64 = 1.380_649e-16;
    /// Avogadro constant, 1/mol.
    pub const AVOGADRO: f64 = 6.022_140_76e23;
    /// Bohr magneton, erg/G (emu).
    pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-21;
}

/// hc/k_B in K·cm: multiply a wavenumber in cm^-1 by this to get Kelvin.
pub const KELVIN_PER_WAVENUMBER: f64 = 1.438_776_877;

/// N_A mu_B^2 / k_B in emu·K/mol.
pub const CURIE_FACTOR: f64 = 0.375_148_096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitConstants {
    pub kelvin_per_wavenumber: f64,
    pub curie_factor: f64,
}

impl UnitConstants {
    pub const CODATA: UnitConstants = UnitConstants {
        kelvin_per_wavenumber: KELVIN_PER_WAVENUMBER,
        curie_factor: CURIE_FACTOR,
    };
}

impl Default for UnitConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    /// Energy in Kelvin (J/k_B).
    Kelvin,
    /// Energy in cm^-1.
    Wavenumber,
    /// Molar susceptibility in emu/mol (per mole of formula units).
    EmuPerMol,
    /// chi k_B T / (g^2 mu_B^2), summed over the `sites` of the sample.
    Reduced,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::Kelvin => "K",
            Unit::Wavenumber => "cm-1",
            Unit::EmuPerMol => "emu/mol",
            Unit::Reduced => "reduced",
        };
        f.write_str(s)
    }
}

/// What a susceptibility conversion needs besides the value itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MolarContext {
    pub g_factor: f64,
    pub temperature_kelvin: f64,
    /// Number of sites the reduced value is summed over.
    pub sites: f64,
    /// Spins per formula unit (one (S, 1/2) cell = 2).
    pub spins_per_formula_unit: f64,
}

impl MolarContext {
    /// One (S, 1/2) cell per formula unit, reduced value summed over that cell.
    pub fn per_cell(g_factor: f64, temperature_kelvin: f64) -> Self {
        Self {
            g_factor,
            temperature_kelvin,
            sites: 2.0,
            spins_per_formula_unit: 2.0,
        }
    }

    fn emu_per_reduced(&self) -> Result<f64> {
        if !(self.temperature_kelvin > 0.0) {
            return Err(Error::NonPositiveTemperature(self.temperature_kelvin));
        }
        if !(self.sites > 0.0) || !(self.spins_per_formula_unit > 0.0) || !self.g_factor.is_finite() {
            return Err(Error::MissingContext);
        }
        let g2 = self.g_factor * self.g_factor;
        Ok(CURIE_FACTOR * g2 / self.temperature_kelvin * self.spins_per_formula_unit / self.sites)
    }
}

pub fn wavenumber_to_kelvin(cm: f64) -> f64 {
    cm * KELVIN_PER_WAVENUMBER
}

pub fn kelvin_to_wavenumber(k: f64) -> f64 {
    k / KELVIN_PER_WAVENUMBER
}

/// Convert `value` between units. Susceptibility pairs require `ctx`.
pub fn convert_units(value: f64, from: Unit, to: Unit, ctx: Option<&MolarContext>) -> Result<f64> {
    use Unit::*;
    match (from, to) {
        (a, b) if a == b => Ok(value),
        (Wavenumber, Kelvin) => Ok(wavenumber_to_kelvin(value)),
        (Kelvin, Wavenumber) => Ok(kelvin_to_wavenumber(value)),
        (Reduced, EmuPerMol) => {
            let ctx = ctx.ok_or(Error::MissingContext)?;
            Ok(value * ctx.emu_per_reduced()?)
        }
        (EmuPerMol, Reduced) => {
            let ctx = ctx.ok_or(Error::MissingContext)?;
            Ok(value / ctx.emu_per_reduced()?)
        }
        (a, b) => Err(Error::UnsupportedConversion {
            from: a.to_string(),
            to: b.to_string(),
        }),
    }
}

/// A coupling with its unit, e.g. `81.4cm-1` or `5.12K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    pub value: f64,
    pub unit: Unit,
}

impl Coupling {
    pub fn kelvin(value: f64) -> Self {
        Self { value, unit: Unit::Kelvin }
    }

    pub fn wavenumber(value: f64) -> Self {
        Self { value, unit: Unit::Wavenumber }
    }

    pub fn to_kelvin(&self) -> f64 {
        match self.unit {
            Unit::Wavenumber => wavenumber_to_kelvin(self.value),
            _ => self.value,
        }
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.unit)
    }
}

impl std::str::FromStr for Coupling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let (num, unit) = if let Some(v) = lower.strip_suffix("cm-1").or_else(|| lower.strip_suffix("cm^-1")) {
            (v, Unit::Wavenumber)
        } else if let Some(v) = lower.strip_suffix('k') {
            (v, Unit::Kelvin)
        } else {
            return Err(Error::InvalidArgument(format!(
                "coupling {t:?} needs a unit suffix K or cm-1"
            )));
        };
        let value: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad coupling value in {t:?}")))?;
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("bad coupling value in {t:?}")));
        }
        Ok(Coupling { value, unit })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constants_match_codata() {
        let hc_over_k = codata::PLANCK * codata::SPEED_OF_LIGHT / codata::BOLTZMANN;
        assert_relative_eq!(KELVIN_PER_WAVENUMBER, hc_over_k, max_relative = 1e-9);
        assert!((KELVIN_PER_WAVENUMBER - 1.438777).abs() < 5e-7);

        let curie = codata::AVOGADRO * codata::BOHR_MAGNETON.powi(2) / codata::BOLTZMANN;
        assert_relative_eq!(CURIE_FACTOR, curie, max_relative = 1e-8);
        // five significant figures
        assert!((CURIE_FACTOR - 0.37515).abs() < 5e-6);
    }

    #[test]
    fn wavenumber_examples() {
        let k = convert_units(81.4, Unit::Wavenumber, Unit::Kelvin, None).unwrap();
        assert!((k - 117.12).abs() < 5e-3, "{k}");
        let k = convert_units(23.44, Unit::Wavenumber, Unit::Kelvin, None).unwrap();
        assert!((k - 33.73).abs() < 1e-2, "{k}");
        for (a, b) in [(Unit::Kelvin, Unit::Wavenumber), (Unit::Wavenumber, Unit::Kelvin)] {
            assert_eq!(convert_units(0.0, a, b, None).unwrap(), 0.0);
        }
        let ctx = MolarContext::per_cell(2.0, 10.0);
        assert_eq!(convert_units(0.0, Unit::EmuPerMol, Unit::Reduced, Some(&ctx)).unwrap(), 0.0);
    }

    #[test]
    fn unknown_pairs_rejected() {
        assert!(matches!(
            convert_units(1.0, Unit::Kelvin, Unit::EmuPerMol, None),
            Err(Error::UnsupportedConversion { .. })
        ));
        assert_eq!(
            convert_units(1.0, Unit::Reduced, Unit::EmuPerMol, None),
            Err(Error::MissingContext)
        );
        let bad = MolarContext::per_cell(2.0, 0.0);
        assert!(convert_units(1.0, Unit::Reduced, Unit::EmuPerMol, Some(&bad)).is_err());
    }

    #[test]
    fn parse_coupling() {
        let c: Coupling = "81.4cm-1".parse().unwrap();
        assert_eq!(c.unit, Unit::Wavenumber);
        assert!((c.to_kelvin() - 117.116).abs() < 1e-3);
        let c: Coupling = "5.12K".parse().unwrap();
        assert_eq!(c.to_kelvin(), 5.12);
        assert!("5.12".parse::<Coupling>().is_err());
        assert!("xK".parse::<Coupling>().is_err());
    }

    proptest::proptest! {
        #[test]
        fn round_trip_identity(v in -1e6f64..1e6, g in 1.5f64..2.5, t in 0.1f64..500.0, sites in 1u32..20) {
            let back = convert_units(convert_units(v, Unit::Wavenumber, Unit::Kelvin, None).unwrap(),
                Unit::Kelvin, Unit::Wavenumber, None).unwrap();
            proptest::prop_assert!((back - v).abs() <= 1e-12 * v.abs().max(1e-300));
            let ctx = MolarContext { g_factor: g, temperature_kelvin: t, sites: sites as f64, spins_per_formula_unit: 2.0 };
            let emu = convert_units(v, Unit::Reduced, Unit::EmuPerMol, Some(&ctx)).unwrap();
            let back = convert_units(emu, Unit::EmuPerMol, Unit::Reduced, Some(&ctx)).unwrap();
            proptest::prop_assert!((back - v).abs() <= 1e-12 * v.abs().max(1e-300));
        }
    }
}
