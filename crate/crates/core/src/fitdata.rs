//! Measured susceptibility series: CSV ingestion, model curves, least-squares
//! fits of (J, g), and the per-point negativity bound.
//!
//! Molar susceptibilities are per mole of formula units, one (S, 1/2) cell
//! (two spins) per formula unit.

use std::io::{Read, Write};

use serde::Serialize;

use crate::chain::{self, Boundary, ChainSpec};
use crate::error::{Error, Result};
use crate::fmt::sig;
use crate::pair;
use crate::simplex::{self, SimplexOptions};
use crate::spin::SpinQuantum;
use crate::units::{convert_units, MolarContext, Unit, CURIE_FACTOR};
use crate::witness::{self, Measurement};

/// Spins per formula unit in molar data.
pub const SPINS_PER_FORMULA_UNIT: usize = 2;

/// Fewest points accepted by [`fit`].
pub const MIN_FIT_POINTS: usize = 4;

pub const HEADER_TEMPERATURE: &str = "temperature_kelvin";
pub const HEADER_CHI_MOLAR: &str = "chi_emu_per_mol";
pub const HEADER_CHI_REDUCED: &str = "chi_reduced";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementPoint {
    pub temperature_kelvin: f64,
    pub chi: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SeriesMetadata {
    pub compound: Option<String>,
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementSeries {
    pub points: Vec<MeasurementPoint>,
    /// [`Unit::EmuPerMol`] or [`Unit::Reduced`] (reduced per cell).
    pub unit: Unit,
    pub metadata: SeriesMetadata,
}

impl MeasurementSeries {
    pub fn new(points: Vec<MeasurementPoint>, unit: Unit) -> Result<Self> {
        if !matches!(unit, Unit::EmuPerMol | Unit::Reduced) {
            return Err(Error::InvalidArgument(format!("{unit} is not a susceptibility unit")));
        }
        validate(&points)?;
        Ok(Self {
            points,
            unit,
            metadata: SeriesMetadata::default(),
        })
    }

    pub fn temperatures(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.temperature_kelvin).collect()
    }

    /// Points with `lo <= T <= hi`.
    pub fn windowed(&self, window: Option<(f64, f64)>) -> Vec<MeasurementPoint> {
        match window {
            None => self.points.clone(),
            Some((lo, hi)) => self
                .points
                .iter()
                .copied()
                .filter(|p| p.temperature_kelvin >= lo && p.temperature_kelvin <= hi)
                .collect(),
        }
    }

    /// Writes the series in the input dialect, with `# compound:` / `# source:` comment lines.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
        if let Some(c) = &self.metadata.compound {
            writeln!(out, "# compound: {c}").map_err(io)?;
        }
        if let Some(s) = &self.metadata.source {
            writeln!(out, "# source: {s}").map_err(io)?;
        }
        let chi_header = if self.unit == Unit::Reduced { HEADER_CHI_REDUCED } else { HEADER_CHI_MOLAR };
        writeln!(out, "{HEADER_TEMPERATURE},{chi_header}").map_err(io)?;
        for p in &self.points {
            writeln!(out, "{},{}", sig(p.temperature_kelvin), sig(p.chi)).map_err(io)?;
        }
        Ok(())
    }
}

fn validate(points: &[MeasurementPoint]) -> Result<()> {
    for p in points {
        if !(p.temperature_kelvin > 0.0) || !p.temperature_kelvin.is_finite() {
            return Err(Error::NonPositiveTemperature(p.temperature_kelvin));
        }
        if !p.chi.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite susceptibility at T = {}", p.temperature_kelvin)));
        }
    }
    for w in points.windows(2) {
        if w[1].temperature_kelvin <= w[0].temperature_kelvin {
            return Err(Error::Unordered {
                prev: w[0].temperature_kelvin,
                next: w[1].temperature_kelvin,
            });
        }
    }
    Ok(())
}

/// Parses `temperature_kelvin,chi_emu_per_mol` (or `chi_reduced`) CSV.
/// Lines starting with `#` are comments; `# compound: X` and `# source: Y`
/// fill the metadata. Line numbers in errors are 1-based and count comments.
pub fn load_measurements<R: Read>(mut source: R) -> Result<MeasurementSeries> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;

    let mut metadata = SeriesMetadata::default();
    for line in text.lines() {
        let Some(comment) = line.trim_start().strip_prefix('#') else { continue };
        if let Some((key, value)) = comment.split_once(':') {
            let value = value.trim().to_string();
            match key.trim().to_ascii_lowercase().as_str() {
                "compound" => metadata.compound = Some(value),
                "source" => metadata.source = Some(value),
                _ => {}
            }
        }
    }

    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
        .clone();
    let header_line = text
        .lines()
        .position(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map_or(1, |i| i as u64 + 1);
    let cols: Vec<&str> = headers.iter().collect();
    let unit = match cols.as_slice() {
        [t, c] if *t == HEADER_TEMPERATURE && *c == HEADER_CHI_MOLAR => Unit::EmuPerMol,
        [t, c] if *t == HEADER_TEMPERATURE && *c == HEADER_CHI_REDUCED => Unit::Reduced,
        _ => {
            return Err(Error::Parse {
                line: header_line,
                message: format!(
                    "expected header `{HEADER_TEMPERATURE},{HEADER_CHI_MOLAR}` or `{HEADER_TEMPERATURE},{HEADER_CHI_REDUCED}`, got `{}`",
                    cols.join(",")
                ),
            })
        }
    };

    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        let num = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                line,
                message: format!("cannot parse {what} {s:?}"),
            })
        };
        let t = num(&rec[0], "temperature")?;
        let chi = num(&rec[1], "susceptibility")?;
        if t <= 0.0 {
            return Err(Error::Parse {
                line,
                message: format!("temperature must be positive, got {t}"),
            });
        }
        if let Some(prev) = points.last().map(|p: &MeasurementPoint| p.temperature_kelvin) {
            if t == prev {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate temperature {t}"),
                });
            }
            if t < prev {
                return Err(Error::Unordered { prev, next: t });
            }
        }
        points.push(MeasurementPoint {
            temperature_kelvin: t,
            chi,
        });
    }
    let mut series = MeasurementSeries::new(points, unit)?;
    series.metadata = metadata;
    Ok(series)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiModel {
    /// Nearest-neighbour susceptibility with the isolated-pair correlator.
    Pair,
    /// Exact susceptibility of a finite chain, per (S, 1/2) cell.
    Chain { sites: usize, boundary: Boundary },
}

/// A susceptibility model ready for repeated evaluation at varying `J`.
///
/// For the chain model the spectrum is computed once at `J = 1 K`; since the
/// energies scale linearly with `J`, `chi(T; J) = chi(T / J; 1)`.
#[derive(Debug, Clone)]
pub struct PreparedModel {
    spin: SpinQuantum,
    kind: PreparedKind,
}

#[derive(Debug, Clone)]
enum PreparedKind {
    Pair,
    Chain {
        cells: f64,
        /// `(E at J = 1, M^2)` for every eigenstate.
        levels: Vec<(f64, f64)>,
        ground: f64,
    },
}

impl PreparedModel {
    pub fn new(model: ChiModel, spin: SpinQuantum) -> Result<Self> {
        Self::with_dimension_cap(model, spin, chain::DEFAULT_DIMENSION_CAP)
    }

    pub fn with_dimension_cap(model: ChiModel, spin: SpinQuantum, cap: usize) -> Result<Self> {
        let kind = match model {
            ChiModel::Pair => PreparedKind::Pair,
            ChiModel::Chain { sites, boundary } => {
                let spec = ChainSpec::new(sites, spin, 1.0, boundary)?.with_dimension_cap(cap);
                let sd = chain::diagonalize(&spec)?;
                let levels: Vec<(f64, f64)> = sd
                    .sectors
                    .iter()
                    .flat_map(|s| {
                        let m2 = s.total_sz().powi(2);
                        s.eigenvalues.iter().map(move |&e| (e, m2))
                    })
                    .collect();
                PreparedKind::Chain {
                    cells: sites as f64 / 2.0,
                    ground: sd.ground_energy(),
                    levels,
                }
            }
        };
        Ok(Self { spin, kind })
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    /// Reduced susceptibility of one (S, 1/2) cell.
    pub fn chi_reduced(&self, coupling_kelvin: f64, temperature_kelvin: f64) -> Result<f64> {
        if !(temperature_kelvin > 0.0) {
            return Err(Error::NonPositiveTemperature(temperature_kelvin));
        }
        match &self.kind {
            PreparedKind::Pair => {
                let g1 = pair::pair_correlator(self.spin, coupling_kelvin, temperature_kelvin)?;
                chain::susceptibility_nn_approx(SPINS_PER_FORMULA_UNIT, self.spin, temperature_kelvin, g1)
            }
            PreparedKind::Chain { cells, levels, ground } => {
                if !(coupling_kelvin > 0.0) {
                    return Err(Error::NonPositiveCoupling(coupling_kelvin));
                }
                let t = temperature_kelvin / coupling_kelvin;
                let (mut z, mut m2) = (0.0, 0.0);
                for &(e, m) in levels {
                    let w = (-(e - ground) / t).exp();
                    z += w;
                    m2 += w * m;
                }
                Ok(m2 / z / cells)
            }
        }
    }

    /// Molar susceptibility, emu/mol.
    pub fn chi_molar(&self, coupling_kelvin: f64, g_factor: f64, temperature_kelvin: f64) -> Result<f64> {
        let r = self.chi_reduced(coupling_kelvin, temperature_kelvin)?;
        Ok(CURIE_FACTOR * g_factor * g_factor / temperature_kelvin * r)
    }
}

/// One-off evaluation of the model susceptibility in emu/mol.
pub fn model_chi(model: ChiModel, spin: SpinQuantum, coupling_kelvin: f64, g_factor: f64, temperature_kelvin: f64) -> Result<f64> {
    PreparedModel::new(model, spin)?.chi_molar(coupling_kelvin, g_factor, temperature_kelvin)
}

/// Noiseless molar series generated from a model.
pub fn synthesize(
    model: &PreparedModel,
    coupling_kelvin: f64,
    g_factor: f64,
    temperatures: &[f64],
) -> Result<MeasurementSeries> {
    let points = temperatures
        .iter()
        .map(|&t| {
            Ok(MeasurementPoint {
                temperature_kelvin: t,
                chi: model.chi_molar(coupling_kelvin, g_factor, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MeasurementSeries::new(points, Unit::EmuPerMol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitInit {
    pub coupling_kelvin: f64,
    pub g_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub coupling_kelvin: f64,
    pub g_factor: f64,
    pub residual_rms: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Lowest and highest temperature that entered the residual.
    pub fit_window: (f64, f64),
    pub points_used: usize,
    /// Best sum of squared residuals after each iteration.
    #[serde(skip)]
    pub history: Vec<f64>,
}

/// Sum of squared residuals at `(J, g)` over `points`.
pub fn sum_squared_residuals(model: &PreparedModel, points: &[MeasurementPoint], coupling_kelvin: f64, g_factor: f64) -> Result<f64> {
    points.iter().try_fold(0.0, |acc, p| {
        let r = model.chi_molar(coupling_kelvin, g_factor, p.temperature_kelvin)? - p.chi;
        Ok(acc + r * r)
    })
}

/// Least-squares fit of `J` and `g` to a molar series by simplex descent over
/// `(ln J, g)`, starting from `init` with 5% steps.
pub fn fit(series: &MeasurementSeries, model: &PreparedModel, init: FitInit, window: Option<(f64, f64)>) -> Result<FitResult> {
    fit_with(series, model, init, window, &SimplexOptions::default())
}

pub fn fit_with(
    series: &MeasurementSeries,
    model: &PreparedModel,
    init: FitInit,
    window: Option<(f64, f64)>,
    options: &SimplexOptions,
) -> Result<FitResult> {
    if series.unit != Unit::EmuPerMol {
        return Err(Error::InvalidArgument(
            "fitting needs molar data; g cancels out of reduced susceptibilities".into(),
        ));
    }
    if !(init.coupling_kelvin > 0.0) {
        return Err(Error::NonPositiveCoupling(init.coupling_kelvin));
    }
    if !(init.g_factor > 0.0) {
        return Err(Error::InvalidArgument(format!("initial g-factor must be positive, got {}", init.g_factor)));
    }
    if let Some((lo, hi)) = window {
        if !(lo < hi) {
            return Err(Error::InvalidArgument(format!("empty fit window {lo}:{hi}")));
        }
    }
    let points = series.windowed(window);
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            have: points.len(),
        });
    }
    let objective = |x: &[f64]| -> f64 {
        sum_squared_residuals(model, &points, x[0].exp(), x[1]).unwrap_or(f64::INFINITY)
    };
    let x0 = [init.coupling_kelvin.ln(), init.g_factor];
    let steps = [1.05f64.ln(), 0.05 * init.g_factor];
    let out = simplex::minimize(objective, &x0, &steps, options);
    Ok(FitResult {
        coupling_kelvin: out.x[0].exp(),
        g_factor: out.x[1],
        residual_rms: (out.value / points.len() as f64).sqrt(),
        iterations: out.iterations,
        converged: out.converged && out.value.is_finite(),
        fit_window: (points[0].temperature_kelvin, points[points.len() - 1].temperature_kelvin),
        points_used: points.len(),
        history: out.history,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundPoint {
    pub temperature_kelvin: f64,
    pub chi_reduced: f64,
    /// Reduced units.
    pub witness_value: f64,
    pub negativity_bound: f64,
    pub entangled: bool,
}

/// Witness and negativity bound at every point of a series.
pub fn bound_series(
    series: &MeasurementSeries,
    spin: SpinQuantum,
    g_factor: f64,
    sites_per_mole: usize,
    correction_coupling_kelvin: Option<f64>,
) -> Result<Vec<BoundPoint>> {
    series
        .points
        .iter()
        .map(|p| {
            let ctx = MolarContext {
                g_factor,
                temperature_kelvin: p.temperature_kelvin,
                sites: sites_per_mole as f64,
                spins_per_formula_unit: SPINS_PER_FORMULA_UNIT as f64,
            };
            let r = witness::witness_report(
                &Measurement {
                    chi: p.chi,
                    unit: series.unit,
                    temperature_kelvin: p.temperature_kelvin,
                    g_factor,
                    sites: sites_per_mole,
                    spin,
                },
                correction_coupling_kelvin,
            )?;
            Ok(BoundPoint {
                temperature_kelvin: p.temperature_kelvin,
                chi_reduced: r.chi_reduced,
                witness_value: convert_units(r.witness_value, series.unit, Unit::Reduced, Some(&ctx))?,
                negativity_bound: r.negativity_lower_bound,
                entangled: r.entangled,
            })
        })
        .collect()
}
