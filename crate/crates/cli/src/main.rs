//! `mixspin`: characteristic temperatures, susceptibility witnesses,
//! negativity bounds, chain exact diagonalization and susceptibility fits
//! for alternating (S, 1/2) Heisenberg chains.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 computational failure.

// NaN must fail range checks, so `!(x > 0.0)` is used on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixspin::chain::{self, Boundary, ChainSpec, DEFAULT_DIMENSION_CAP};
use mixspin::fitdata::{self, ChiModel, FitInit, MeasurementSeries, PreparedModel};
use mixspin::units::{kelvin_to_wavenumber, Coupling, Unit};
use mixspin::witness::{self, ChainModel, CompoundRecord, CorrelatorModel, Measurement, PairModel, PrintedPairModel};
use mixspin::{Error, SpinQuantum};

use output::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "mixspin", version, about = "Thermal entanglement in mixed-spin (S, 1/2) Heisenberg chains")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Hilbert-space dimension cap for exact diagonalization.
    #[arg(long, global = true, env = "MIXSPIN_MAX_DIM", default_value_t = DEFAULT_DIMENSION_CAP)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Characteristic temperature below which the thermal state is entangled.
    Tc(TcArgs),
    /// Characteristic temperatures over a spin/coupling grid with a linear fit of T_c/J vs S.
    Sweep(SweepArgs),
    /// Computed against published characteristic temperatures for the built-in compounds.
    Compounds,
    /// Susceptibility witness for a single measurement.
    Witness(MeasurementArgs),
    /// Witness and negativity lower bound for a single measurement.
    Bound(MeasurementArgs),
    /// Witness and negativity bound for every point of a susceptibility CSV.
    Bounds(BoundsArgs),
    /// Exact-diagonalization thermodynamics of a finite chain.
    Chain(ChainArgs),
    /// Fit coupling and g-factor to a molar susceptibility CSV.
    Fit(FitArgs),
    /// Generate a noiseless molar susceptibility series from a model.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Args)]
struct SpinArg {
    /// Spin S of the odd sites, e.g. 1/2, 1, 3/2.
    #[arg(long)]
    spin: Option<SpinQuantum>,
    /// Twice the spin, e.g. 3 for S = 3/2.
    #[arg(long, conflicts_with = "spin")]
    twice_spin: Option<u32>,
}

impl SpinArg {
    fn get(&self) -> Result<SpinQuantum, Failure> {
        match (self.spin, self.twice_spin) {
            (Some(s), _) => Ok(s),
            (None, Some(t)) => Ok(SpinQuantum::from_twice(t)?),
            (None, None) => Err(Failure::Usage("one of --spin or --twice-spin is required".into())),
        }
    }

    fn get_opt(&self) -> Result<Option<SpinQuantum>, Failure> {
        if self.spin.is_none() && self.twice_spin.is_none() {
            Ok(None)
        } else {
            self.get().map(Some)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TcModel {
    /// Exact isolated-pair correlator.
    Pair,
    /// The literal (1/2, 1/2) and (1, 1/2) correlator expressions.
    Printed,
    /// Bond-averaged correlator of a finite chain.
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FitModel {
    Pair,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryArg {
    Periodic,
    Open,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Periodic => Boundary::Periodic,
            BoundaryArg::Open => Boundary::Open,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChiUnit {
    /// Molar susceptibility, emu/mol of formula units.
    #[value(name = "emu", alias = "emu/mol")]
    Emu,
    /// chi k_B T / (g^2 mu_B^2) summed over the sites.
    Reduced,
}

impl From<ChiUnit> for Unit {
    fn from(u: ChiUnit) -> Self {
        match u {
            ChiUnit::Emu => Unit::EmuPerMol,
            ChiUnit::Reduced => Unit::Reduced,
        }
    }
}

#[derive(Debug, Args)]
struct TcArgs {
    #[command(flatten)]
    spin: SpinArg,
    /// Exchange coupling with unit, e.g. 5.12K or 81.4cm-1.
    #[arg(long, allow_hyphen_values = true)]
    coupling: Option<Coupling>,
    /// Built-in compound (CN, NiCu, CoCu, FeCu, MnCu, Cu-HTS); supplies spin and coupling.
    #[arg(long, conflicts_with_all = ["spin", "twice_spin", "coupling"])]
    compound: Option<String>,
    #[arg(long, value_enum, default_value_t = TcModel::Pair)]
    model: TcModel,
    /// Chain length for --model chain.
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    boundary: BoundaryArg,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated spins.
    #[arg(long, value_delimiter = ',', default_value = "1/2,1,3/2,2,5/2")]
    spins: Vec<String>,
    /// Comma-separated couplings with units.
    #[arg(long, value_delimiter = ',', default_value = "1K")]
    couplings: Vec<String>,
}

#[derive(Debug, Args)]
struct MeasurementArgs {
    /// Measured susceptibility.
    #[arg(long, allow_hyphen_values = true)]
    chi: f64,
    #[arg(long, value_enum, default_value_t = ChiUnit::Emu)]
    unit: ChiUnit,
    /// Temperature in Kelvin.
    #[arg(long, allow_hyphen_values = true)]
    temp: f64,
    #[arg(long, default_value_t = 2.0)]
    g: f64,
    /// Number of sites the susceptibility refers to (sites per mole of formula units for emu).
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[command(flatten)]
    spin: SpinArg,
    /// Apply the polynomial correction to the bound using this coupling.
    #[arg(long, allow_hyphen_values = true)]
    correction_j: Option<Coupling>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Susceptibility CSV.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    spin: SpinArg,
    #[arg(long, default_value_t = 2.0)]
    g: f64,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    correction_j: Option<Coupling>,
}

#[derive(Debug, Args)]
struct ChainArgs {
    #[command(flatten)]
    spin: SpinArg,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, allow_hyphen_values = true)]
    coupling: Coupling,
    /// Temperatures in Kelvin: a list `1,2,5` or a range `lo:hi:count`.
    #[arg(long)]
    temps: String,
    /// Space a `lo:hi:count` range logarithmically.
    #[arg(long)]
    log: bool,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    boundary: BoundaryArg,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Susceptibility CSV in emu/mol.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    spin: SpinArg,
    #[arg(long, value_enum, default_value_t = FitModel::Pair)]
    model: FitModel,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    boundary: BoundaryArg,
    /// Initial coupling with unit.
    #[arg(long, allow_hyphen_values = true)]
    init_j: Coupling,
    #[arg(long, default_value_t = 2.0)]
    init_g: f64,
    /// Fit window in Kelvin, `lo:hi`.
    #[arg(long)]
    window: Option<String>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    spin: SpinArg,
    #[arg(long, value_enum, default_value_t = FitModel::Pair)]
    model: FitModel,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    boundary: BoundaryArg,
    /// Coupling with unit.
    #[arg(long, allow_hyphen_values = true)]
    j: Coupling,
    #[arg(long)]
    g: f64,
    /// Temperatures in Kelvin: a list `1,2,5` or a range `lo:hi:count`.
    #[arg(long)]
    temps: String,
    #[arg(long)]
    log: bool,
    /// Output file (same as --output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionCap { .. }
            | Error::NoCrossing { .. }
            | Error::NonFinite
            | Error::NotSymmetric { .. }
            | Error::DimensionMismatch { .. } => Failure::Compute(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a subcommand produced.
enum Report {
    Table(Table),
    Series(MeasurementSeries),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let (report, path) = match &cli.command {
        Command::Tc(a) => (cmd_tc(a, cli.max_dim)?, None),
        Command::Sweep(a) => (cmd_sweep(a)?, None),
        Command::Compounds => (cmd_compounds()?, None),
        Command::Witness(a) => (cmd_measurement(a, false)?, None),
        Command::Bound(a) => (cmd_measurement(a, true)?, None),
        Command::Bounds(a) => (cmd_bounds(a)?, None),
        Command::Chain(a) => (cmd_chain(a, cli.max_dim)?, None),
        Command::Fit(a) => (cmd_fit(a, cli.max_dim)?, None),
        Command::Synth(a) => (cmd_synth(a, cli.max_dim)?, a.out.clone()),
    };
    let path = path.or_else(|| cli.output.clone());
    let sink: Box<dyn Write> = match &path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Compute(format!("cannot write {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let written = match report {
        Report::Table(t) => t.write(cli.format, sink),
        Report::Series(s) => match cli.format {
            Format::Csv => s.write_csv(sink).map_err(|e| io::Error::other(e.to_string())),
            Format::Json => series_table(&s).write(Format::Json, sink),
        },
    };
    written.map_err(|e| Failure::Compute(format!("write failed: {e}")))
}

fn positive(name: &str, x: f64) -> Result<f64, Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Usage(format!("--{name} must be positive, got {x}")))
    }
}

fn coupling_kelvin(name: &str, c: &Coupling) -> Result<f64, Failure> {
    positive(name, c.to_kelvin())
}

/// `1,2,5` or `lo:hi:count`, linear or logarithmic.
fn parse_temperatures(s: &str, log: bool) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("bad temperature list {s:?}"));
    let temps: Vec<f64> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if count == 0 || !(lo > 0.0) || !(hi >= lo) || (count == 1 && hi != lo) {
            return Err(bad());
        }
        (0..count)
            .map(|k| {
                let f = if count == 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
                if log {
                    (lo.ln() + f * (hi.ln() - lo.ln())).exp()
                } else {
                    lo + f * (hi - lo)
                }
            })
            .collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if temps.is_empty() {
        return Err(bad());
    }
    for &t in &temps {
        positive("temps", t)?;
    }
    if temps.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Failure::Usage(format!("temperatures in {s:?} must be strictly increasing")));
    }
    Ok(temps)
}

fn parse_window(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Usage(format!("bad window {s:?}, expected lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo < hi) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn chi_model(model: FitModel, sites: usize, boundary: BoundaryArg) -> ChiModel {
    match model {
        FitModel::Pair => ChiModel::Pair,
        FitModel::Chain => ChiModel::Chain {
            sites,
            boundary: boundary.into(),
        },
    }
}

fn cmd_tc(a: &TcArgs, max_dim: usize) -> Result<Report, Failure> {
    let compound: Option<CompoundRecord> = match &a.compound {
        Some(key) => Some(
            witness::find_compound(key).ok_or_else(|| Failure::Usage(format!("unknown compound {key:?}")))?,
        ),
        None => None,
    };
    let (spin, j) = match &compound {
        Some(c) => (c.spin, c.coupling_kelvin()),
        None => {
            let spin = a.spin.get()?;
            let c = a
                .coupling
                .as_ref()
                .ok_or_else(|| Failure::Usage("--coupling is required without --compound".into()))?;
            (spin, coupling_kelvin("coupling", c)?)
        }
    };
    let model: Box<dyn CorrelatorModel> = match a.model {
        TcModel::Pair => Box::new(PairModel { spin, coupling_kelvin: j }),
        TcModel::Printed => {
            if !matches!(spin.twice_spin(), 1 | 2) {
                return Err(Error::UnsupportedPrintedSpin(spin.to_string()).into());
            }
            Box::new(PrintedPairModel { spin, coupling_kelvin: j })
        }
        TcModel::Chain => {
            let spec = ChainSpec::new(a.sites, spin, j, a.boundary.into())?.with_dimension_cap(max_dim);
            Box::new(ChainModel::new(&spec)?)
        }
    };
    let tc = match a.model {
        TcModel::Pair => mixspin::pair::characteristic_temperature(spin, j)?,
        _ => witness::solve_tc(model.as_ref())?,
    };
    let mut cols = vec!["model", "spin", "coupling_kelvin", "tc_kelvin", "tc_over_j"];
    let mut row: Vec<Cell> = vec![
        model.label().into(),
        spin.to_string().into(),
        j.into(),
        tc.into(),
        (tc / j).into(),
    ];
    if let Some(c) = &compound {
        let published = c.published_tc_kelvin;
        let deviation = published.map(|p| (tc - p) / p);
        cols.extend(["compound", "published_tc_kelvin", "relative_deviation", "flagged"]);
        row.extend([
            c.name.into(),
            published.into(),
            deviation.into(),
            deviation.is_some_and(|d| d.abs() > witness::DEVIATION_FLAG).into(),
        ]);
    }
    let mut t = Table::new(&cols);
    t.push(row);
    Ok(Report::Table(t))
}

fn cmd_sweep(a: &SweepArgs) -> Result<Report, Failure> {
    let spins: Vec<SpinQuantum> = a
        .spins
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<SpinQuantum>())
        .collect::<Result<_, _>>()?;
    let couplings: Vec<f64> = a
        .couplings
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| coupling_kelvin("couplings", &s.parse::<Coupling>()?))
        .collect::<Result<_, _>>()?;
    if spins.is_empty() || couplings.is_empty() {
        return Err(Failure::Usage("--spins and --couplings must be non-empty".into()));
    }
    let sweep = witness::sweep_tc(&spins, &couplings)?;
    let mut t = Table::new(&["spin", "coupling_kelvin", "tc_kelvin", "tc_over_j"]);
    for p in &sweep.grid {
        t.push(vec![
            p.spin.to_string().into(),
            p.coupling_kelvin.into(),
            p.tc_kelvin.into(),
            (p.tc_kelvin / p.coupling_kelvin).into(),
        ]);
    }
    let fit = sweep.linear_fit;
    t.summarize("a0", fit.a0);
    t.summarize("b0", fit.b0);
    t.summarize("r_squared", fit.r_squared);
    t.summarize("degenerate", fit.degenerate);
    Ok(Report::Table(t))
}

fn cmd_compounds() -> Result<Report, Failure> {
    let mut t = Table::new(&[
        "compound",
        "spin",
        "coupling_kelvin",
        "tc_pair_kelvin",
        "crossing_residual",
        "tc_printed_kelvin",
        "published_tc_kelvin",
        "relative_deviation",
        "flagged",
        "note",
    ]);
    for r in witness::discrepancy_report()? {
        t.push(vec![
            r.compound.into(),
            r.spin.to_string().into(),
            r.coupling_kelvin.into(),
            r.tc_pair_kelvin.into(),
            r.crossing_residual.into(),
            r.tc_printed_kelvin.into(),
            r.published_tc_kelvin.into(),
            r.relative_deviation.into(),
            r.flagged.into(),
            r.note.into(),
        ]);
    }
    Ok(Report::Table(t))
}

fn cmd_measurement(a: &MeasurementArgs, with_bound: bool) -> Result<Report, Failure> {
    let spin = a.spin.get()?;
    let correction = a
        .correction_j
        .as_ref()
        .map(|c| coupling_kelvin("correction-j", c))
        .transpose()?;
    let r = witness::witness_report(
        &Measurement {
            chi: a.chi,
            unit: a.unit.into(),
            temperature_kelvin: positive("temp", a.temp)?,
            g_factor: positive("g", a.g)?,
            sites: a.n,
            spin,
        },
        correction,
    )?;
    let status = if r.witness_value == 0.0 {
        "separable boundary"
    } else if r.entangled {
        "entangled"
    } else {
        "not certified"
    };
    let mut cols = vec!["temperature_kelvin", "chi_input", "chi_unit", "chi_reduced", "witness_value", "entangled", "status"];
    let mut row: Vec<Cell> = vec![
        r.temperature_kelvin.into(),
        r.chi_input.into(),
        r.chi_unit.to_string().into(),
        r.chi_reduced.into(),
        r.witness_value.into(),
        r.entangled.into(),
        status.into(),
    ];
    if with_bound {
        cols.extend(["negativity_lower_bound", "correction_applied"]);
        row.extend([r.negativity_lower_bound.into(), r.correction_applied.into()]);
    }
    let mut t = Table::new(&cols);
    t.push(row);
    Ok(Report::Table(t))
}

fn load(path: &PathBuf) -> Result<MeasurementSeries, Failure> {
    let f = File::open(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(fitdata::load_measurements(f)?)
}

fn cmd_bounds(a: &BoundsArgs) -> Result<Report, Failure> {
    let spin = a.spin.get()?;
    let series = load(&a.input)?;
    let correction = a
        .correction_j
        .as_ref()
        .map(|c| coupling_kelvin("correction-j", c))
        .transpose()?;
    let points = fitdata::bound_series(&series, spin, positive("g", a.g)?, a.n, correction)?;
    let mut t = Table::new(&["temperature_kelvin", "chi_reduced", "witness_value", "negativity_bound", "entangled"]);
    for p in points {
        t.push(vec![
            p.temperature_kelvin.into(),
            p.chi_reduced.into(),
            p.witness_value.into(),
            p.negativity_bound.into(),
            p.entangled.into(),
        ]);
    }
    Ok(Report::Table(t))
}

fn cmd_chain(a: &ChainArgs, max_dim: usize) -> Result<Report, Failure> {
    let spin = a.spin.get()?;
    let j = coupling_kelvin("coupling", &a.coupling)?;
    let temps = parse_temperatures(&a.temps, a.log)?;
    let spec = ChainSpec::new(a.sites, spin, j, a.boundary.into())?.with_dimension_cap(max_dim);
    let sd = chain::diagonalize(&spec)?;
    let (da, db) = (spec.site_spin(1).dimension(), spec.site_spin(2).dimension());
    let mut t = Table::new(&["temperature_kelvin", "chi_exact", "chi_nn", "g1", "negativity"]);
    for &temp in &temps {
        let state = sd.thermal_state(temp)?;
        let g1 = state.correlator_matrix().mean_bond_correlator(&spec);
        let rho = state.reduced_pair_state((1, 2))?;
        t.push(vec![
            temp.into(),
            state.total_sz_squared().into(),
            chain::susceptibility_nn_approx(a.sites, spin, temp, g1)?.into(),
            g1.into(),
            chain::negativity_bruteforce(&rho, da, db)?.into(),
        ]);
    }
    t.summarize("sites", a.sites);
    t.summarize("boundary", format!("{:?}", spec.boundary()).to_lowercase());
    t.summarize("hilbert_dimension", spec.hilbert_dimension());
    t.summarize("ground_energy_kelvin", sd.ground_energy());
    Ok(Report::Table(t))
}

fn cmd_fit(a: &FitArgs, max_dim: usize) -> Result<Report, Failure> {
    let spin = a.spin.get()?;
    let init = FitInit {
        coupling_kelvin: coupling_kelvin("init-j", &a.init_j)?,
        g_factor: positive("init-g", a.init_g)?,
    };
    let window = a.window.as_deref().map(parse_window).transpose()?;
    let series = load(&a.input)?;
    if series.points.len() < fitdata::MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: fitdata::MIN_FIT_POINTS,
            have: series.points.len(),
        }
        .into());
    }
    let model = PreparedModel::with_dimension_cap(chi_model(a.model, a.sites, a.boundary), spin, max_dim)?;
    let r = fitdata::fit(&series, &model, init, window)?;
    if !r.converged {
        return Err(Failure::Compute(format!(
            "fit did not converge after {} iterations (J = {} K, g = {})",
            r.iterations, r.coupling_kelvin, r.g_factor
        )));
    }
    let mut t = Table::new(&[
        "coupling_kelvin",
        "coupling_wavenumber",
        "g_factor",
        "residual_rms",
        "iterations",
        "converged",
        "window_lo_kelvin",
        "window_hi_kelvin",
        "points_used",
    ]);
    t.push(vec![
        r.coupling_kelvin.into(),
        kelvin_to_wavenumber(r.coupling_kelvin).into(),
        r.g_factor.into(),
        r.residual_rms.into(),
        r.iterations.into(),
        r.converged.into(),
        r.fit_window.0.into(),
        r.fit_window.1.into(),
        r.points_used.into(),
    ]);
    Ok(Report::Table(t))
}

fn cmd_synth(a: &SynthArgs, max_dim: usize) -> Result<Report, Failure> {
    let spin = a.spin.get_opt()?.ok_or_else(|| Failure::Usage("one of --spin or --twice-spin is required".into()))?;
    let j = coupling_kelvin("j", &a.j)?;
    let g = positive("g", a.g)?;
    let temps = parse_temperatures(&a.temps, a.log)?;
    let model = PreparedModel::with_dimension_cap(chi_model(a.model, a.sites, a.boundary), spin, max_dim)?;
    let mut series = fitdata::synthesize(&model, j, g, &temps)?;
    series.metadata.source = Some(format!("synthetic {:?} model, S = {spin}, J = {j} K, g = {g}", a.model).to_lowercase());
    Ok(Report::Series(series))
}

fn series_table(s: &MeasurementSeries) -> Table {
    let chi = if s.unit == Unit::Reduced {
        fitdata::HEADER_CHI_REDUCED
    } else {
        fitdata::HEADER_CHI_MOLAR
    };
    let mut t = Table::new(&[fitdata::HEADER_TEMPERATURE, chi]);
    for p in &s.points {
        t.push(vec![p.temperature_kelvin.into(), p.chi.into()]);
    }
    t
}
