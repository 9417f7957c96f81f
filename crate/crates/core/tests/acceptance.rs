//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mixspin::chain::{self, Boundary, ChainSpec};
use mixspin::fitdata::{self, ChiModel, FitInit, PreparedModel};
use mixspin::linalg::eigvals_sym;
use mixspin::negativity::negativity_bruteforce;
use mixspin::pair::{self, PairSpectrum};
use mixspin::units::wavenumber_to_kelvin;
use mixspin::witness::{self, ChainModel, PairModel};
use mixspin::SpinQuantum;

struct Verdict {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn verdict(id: &'static str, pass: bool, detail: String) -> Verdict {
    Verdict { id, pass, detail }
}

fn spins() -> Vec<SpinQuantum> {
    (1..=5).map(|t| SpinQuantum::from_twice(t).unwrap()).collect()
}

/// 20 log-spaced temperatures from 0.01 J to 100 J.
fn log_grid(j: f64) -> Vec<f64> {
    (0..20).map(|k| j * 10f64.powf(-2.0 + 4.0 * k as f64 / 19.0)).collect()
}

fn dimer(spin: SpinQuantum, j: f64) -> chain::SectorSpectralData {
    chain::diagonalize(&ChainSpec::new(2, spin, j, Boundary::Open).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ac1() -> Verdict {
    let j = 5.12;
    let tc = pair::characteristic_temperature(SpinQuantum::HALF, j).unwrap();
    let closed = j / 3f64.ln();
    let pass = rel(tc, closed) <= 1e-10 && (tc - 4.661).abs() <= 1e-3 && rel(tc, 4.7) <= 0.02;
    verdict(
        "AC1",
        pass,
        format!("CN T_c = {tc:.6} K, J/ln3 = {closed:.6} K, vs 4.7 K: {:+.2}%", 100.0 * (tc / 4.7 - 1.0)),
    )
}

fn ac2() -> Verdict {
    let j = wavenumber_to_kelvin(81.4);
    let tc = pair::characteristic_temperature(SpinQuantum::ONE, j).unwrap();
    let closed = 3.0 * j / (2.0 * 4f64.ln());
    let pass = rel(tc, closed) <= 1e-10 && (tc - 126.7).abs() <= 0.05 && rel(tc, 125.0) <= 0.03;
    verdict(
        "AC2",
        pass,
        format!("NiCu T_c = {tc:.4} K, 3J/(2 ln4) = {closed:.4} K, vs 125 K: {:+.2}%", 100.0 * (tc / 125.0 - 1.0)),
    )
}

fn ac3() -> Verdict {
    let report = witness::discrepancy_report().unwrap();
    let mut pass = !report.is_empty();
    let mut parts = Vec::new();
    for (key, listed) in [("A=Co", 32.2), ("A=Fe", 40.2), ("A=Mn", 52.0)] {
        match report.iter().find(|r| r.compound.contains(key)) {
            Some(r) => {
                pass &= r.flagged
                    && r.crossing_residual.abs() <= 1e-8
                    && (r.tc_pair_kelvin - listed).abs() < 0.06
                    && r.note.contains("does not follow");
                parts.push(format!(
                    "{} {:.2} K vs {} K (G1+S/2 = {:.1e})",
                    r.compound,
                    r.tc_pair_kelvin,
                    r.published_tc_kelvin.unwrap_or(f64::NAN),
                    r.crossing_residual
                ));
            }
            None => pass = false,
        }
    }
    pass &= report.iter().all(|r| r.crossing_residual.abs() <= 1e-8);
    verdict("AC3", pass, parts.join("; "))
}

fn ac4() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in spins() {
        let j = 1.0;
        let sd = dimer(s, j);
        for t in log_grid(j) {
            let rho = chain::reduced_pair_state(&sd, t, (1, 2)).unwrap();
            let brute = negativity_bruteforce(&rho, s.dimension(), 2).unwrap();
            let closed = pair::pair_negativity(s, j, t).unwrap();
            worst = worst.max((brute - closed).abs());
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "AC4",
        worst <= 1e-10 && elapsed < Duration::from_secs(1),
        format!("max |closed - brute force| = {worst:.1e} over 100 points in {elapsed:.2?}"),
    )
}

/// Pair-model witness quantities on the shared grid: (N, bound, W).
fn witness_grid() -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for s in spins() {
        let j = 1.0;
        for t in log_grid(j) {
            let g1 = pair::pair_correlator(s, j, t).unwrap();
            let chi = chain::susceptibility_nn_approx(2, s, t, g1).unwrap();
            let w = witness::witness_value(chi, t, 2, s).unwrap();
            let bound = witness::negativity_lower_bound(w, t, 2, s).unwrap();
            out.push((pair::pair_negativity(s, j, t).unwrap(), bound, w));
        }
    }
    out
}

fn ac5a() -> Verdict {
    let start = Instant::now();
    let grid = witness_grid();
    let worst = grid.iter().map(|&(n, b, _)| b - n).fold(f64::NEG_INFINITY, f64::max);
    let elapsed = start.elapsed();
    verdict(
        "AC5a",
        worst <= 1e-9 && elapsed < Duration::from_secs(1),
        format!("inequality N >= bound: max(bound - N) = {worst:.1e} in {elapsed:.2?}"),
    )
}

fn ac5b() -> Verdict {
    let grid = witness_grid();
    let equal: Vec<&(f64, f64, f64)> = grid.iter().filter(|&&(n, b, _)| (n - b).abs() <= 1e-9).collect();
    let off_crossing = equal.iter().filter(|&&&(_, _, w)| w.abs() > 1e-9).count();
    verdict(
        "AC5b",
        off_crossing == 0,
        format!(
            "equality only at W = 0: {} of {} grid points have N = bound, {off_crossing} of them with |W| > 1e-9",
            equal.len(),
            grid.len()
        ),
    )
}

fn ac6() -> Verdict {
    let mut worst = 0.0f64;
    for s in spins() {
        let target = 1.0 / s.dimension() as f64;
        let cold = pair::pair_negativity(s, 1.0, 1e-3).unwrap();
        worst = worst.max((cold - target).abs());
        worst = worst.max((pair::pair_negativity_ground_limit(s) - target).abs());
    }
    let half = pair::pair_negativity(SpinQuantum::HALF, 1.0, 1e-3).unwrap();
    verdict(
        "AC6",
        worst <= 1e-9 && (half - 0.5).abs() <= 1e-9,
        format!("max |N(T = 1e-3 J) - 1/(2S+1)| = {worst:.1e}"),
    )
}

fn ac7() -> Verdict {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in spins() {
        let j = 2.5;
        let sd = dimer(s, j);
        let mut ed = sd.all_eigenvalues();
        ed.sort_by(f64::total_cmp);
        let mut closed = PairSpectrum::new(s, j).eigenvalues();
        closed.sort_by(f64::total_cmp);
        for (a, b) in ed.iter().zip(&closed) {
            worst = worst.max((a - b).abs() / j);
        }
        for t in log_grid(j) {
            let state = sd.thermal_state(t).unwrap();
            let g1_ed = state.correlator_matrix().g_dot[(0, 1)];
            let g1 = pair::pair_correlator(s, j, t).unwrap();
            worst = worst.max((g1_ed - g1).abs());
            let rho = state.reduced_pair_state((1, 2)).unwrap();
            let n_ed = negativity_bruteforce(&rho, s.dimension(), 2).unwrap();
            worst = worst.max((n_ed - pair::pair_negativity(s, j, t).unwrap()).abs());
            let chi = state.total_sz_squared();
            worst = worst.max((chi - chain::susceptibility_nn_exact_diagonal(2, s, t, g1).unwrap()).abs());
        }
        let tc_chain = witness::solve_tc(&ChainModel::new(&sd.spec).unwrap()).unwrap();
        let tc_pair = witness::solve_tc(&PairModel { spin: s, coupling_kelvin: j }).unwrap();
        worst = worst.max(rel(tc_chain, tc_pair));
    }
    for (n, twice) in [(4, 2), (6, 1)] {
        let spec = ChainSpec::new(n, SpinQuantum::from_twice(twice).unwrap(), 1.0, Boundary::Periodic).unwrap();
        let mut sector = chain::diagonalize(&spec).unwrap().all_eigenvalues();
        sector.sort_by(f64::total_cmp);
        let dense = eigvals_sym(&chain::dense_hamiltonian(&spec).unwrap()).unwrap();
        for (a, b) in sector.iter().zip(&dense) {
            worst = worst.max((a - b).abs());
        }
        if sector.len() != dense.len() {
            worst = f64::INFINITY;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "AC7",
        worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!("max deviation (spectrum, G1, N, chi, T_c; sector vs dense) = {worst:.1e} in {elapsed:.2?}"),
    )
}

fn ac8() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for s in [SpinQuantum::HALF, SpinQuantum::ONE] {
        let j = 1.0;
        let spec = ChainSpec::new(4, s, j, Boundary::Periodic).unwrap();
        let sd = chain::diagonalize(&spec).unwrap();
        let chi = chain::susceptibility_exact(&sd, 100.0 * j).unwrap();
        let curie = chain::curie_limit(4, s);
        let d = rel(chi, curie);
        pass &= d <= 5e-3;
        parts.push(format!("S={s}: chi = {chi:.6}, Curie = {curie:.6}, off by {:.3}%", 100.0 * d));
    }
    verdict("AC8", pass, parts.join("; "))
}

fn ac9() -> Verdict {
    let sweep = witness::sweep_tc(&spins(), &[1.0]).unwrap();
    let f = sweep.linear_fit;
    let r2 = f.r_squared > 0.99;
    let a0 = (f.a0 - 0.316).abs() <= 0.005;
    let b0 = (f.b0 - 0.752).abs() <= 0.005;
    verdict(
        "AC9",
        r2 && a0 && b0 && !f.degenerate,
        format!(
            "r2 = {:.6} ({}), a0 = {:.6} ({}), b0 = {:.6} ({})",
            f.r_squared,
            ok(r2),
            f.a0,
            ok(a0),
            f.b0,
            ok(b0)
        ),
    )
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "out of tolerance"
    }
}

fn round_trip(spin: SpinQuantum, j: f64, g: f64, temps: &[f64], init: FitInit, window: Option<(f64, f64)>) -> (f64, f64, Duration) {
    let start = Instant::now();
    let model = PreparedModel::new(ChiModel::Pair, spin).unwrap();
    let series = fitdata::synthesize(&model, j, g, temps).unwrap();
    let r = fitdata::fit(&series, &model, init, window).unwrap();
    (rel(r.coupling_kelvin, j), rel(r.g_factor, g), start.elapsed())
}

fn ac10() -> Verdict {
    let temps_a: Vec<f64> = (1..=150).map(|k| 2.0 * k as f64).collect();
    let (ja, ga, ta) = round_trip(
        SpinQuantum::HALF,
        wavenumber_to_kelvin(10.2),
        2.06,
        &temps_a,
        FitInit { coupling_kelvin: 20.0, g_factor: 2.0 },
        None,
    );
    let temps_b: Vec<f64> = (1..=60).map(|k| 5.0 * k as f64).collect();
    let (jb, gb, tb) = round_trip(
        SpinQuantum::ONE,
        wavenumber_to_kelvin(81.4),
        2.15,
        &temps_b,
        FitInit { coupling_kelvin: 100.0, g_factor: 2.0 },
        Some((25.0, 250.0)),
    );
    let limit = Duration::from_secs(5);
    verdict(
        "AC10",
        ja <= 1e-3 && ga <= 1e-3 && jb <= 1e-3 && gb <= 1e-3 && ta < limit && tb < limit,
        format!(
            "Cu-HTS: dJ {ja:.1e}, dg {ga:.1e} in {ta:.2?}; NiCu 25-250 K: dJ {jb:.1e}, dg {gb:.1e} in {tb:.2?}"
        ),
    )
}

fn ac11() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (spin, j, g, step) in [
        (SpinQuantum::HALF, wavenumber_to_kelvin(10.2), 2.06, 0.5),
        (SpinQuantum::ONE, wavenumber_to_kelvin(81.4), 2.15, 2.0),
    ] {
        let tc = pair::characteristic_temperature(spin, j).unwrap();
        let temps: Vec<f64> = (1..=200).map(|k| step * k as f64).collect();
        let model = PreparedModel::new(ChiModel::Pair, spin).unwrap();
        let series = fitdata::synthesize(&model, j, g, &temps).unwrap();
        let points = fitdata::bound_series(&series, spin, g, fitdata::SPINS_PER_FORMULA_UNIT, None).unwrap();
        let flips: Vec<usize> = points
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].entangled != w[1].entangled)
            .map(|(k, _)| k)
            .collect();
        let ok = flips.len() == 1 && {
            let (lo, hi) = (points[flips[0]].temperature_kelvin, points[flips[0] + 1].temperature_kelvin);
            lo <= tc && tc <= hi && points[flips[0]].entangled && points[flips[0]].negativity_bound > 0.0
        };
        pass &= ok;
        let at = flips.first().map_or(f64::NAN, |&k| points[k + 1].temperature_kelvin);
        parts.push(format!("S={spin}: sign change at {at} K, T_c = {tc:.3} K, step {step} K"));
    }
    verdict("AC11", pass, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Verdict; 12] = [ac1, ac2, ac3, ac4, ac5a, ac5b, ac6, ac7, ac8, ac9, ac10, ac11];
    let mut failed = 0;
    for c in criteria {
        let v = c();
        println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.id, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
