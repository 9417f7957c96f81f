//! Cross-module checks: exact diagonalization against the pair closed forms,
//! brute-force negativity against the degeneracy formula, and the witness
//! pipeline against the characteristic temperature.

use mixspin::chain::{self, Boundary, ChainSpec};
use mixspin::fitdata::{self, ChiModel, FitInit, PreparedModel};
use mixspin::linalg::eigvals_sym;
use mixspin::negativity::negativity_bruteforce;
use mixspin::pair;
use mixspin::witness::{self, ChainModel};
use mixspin::SpinQuantum;
use proptest::prelude::*;

fn spin(twice: u32) -> SpinQuantum {
    SpinQuantum::from_twice(twice).unwrap()
}

#[test]
fn dimer_ed_matches_closed_forms_on_log_grid() {
    for twice in 1..=5 {
        let s = spin(twice);
        let j = 3.7;
        let sd = chain::diagonalize(&ChainSpec::new(2, s, j, Boundary::Open).unwrap()).unwrap();
        for k in 0..30 {
            let t = j * 10f64.powf(-2.0 + 4.0 * k as f64 / 29.0);
            let state = sd.thermal_state(t).unwrap();
            let g1 = pair::pair_correlator(s, j, t).unwrap();
            assert!((state.correlator_matrix().g_dot[(0, 1)] - g1).abs() < 1e-10, "2S={twice} T={t}");
            let rho = state.reduced_pair_state((1, 2)).unwrap();
            let n = negativity_bruteforce(&rho, s.dimension(), 2).unwrap();
            assert!((n - pair::pair_negativity(s, j, t).unwrap()).abs() < 1e-10, "2S={twice} T={t}");
        }
    }
}

#[test]
fn periodic_dimer_doubles_the_bond() {
    // Two sites on a ring are joined by two bonds, so the coupling is effectively 2J.
    let s = spin(2);
    let ring = chain::diagonalize(&ChainSpec::new(2, s, 1.0, Boundary::Periodic).unwrap()).unwrap();
    let open = chain::diagonalize(&ChainSpec::new(2, s, 2.0, Boundary::Open).unwrap()).unwrap();
    let (mut a, mut b) = (ring.all_eigenvalues(), open.all_eigenvalues());
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn sector_spectra_match_dense_for_small_chains() {
    for (n, twice, boundary) in [(2, 5, Boundary::Open), (4, 1, Boundary::Open), (4, 3, Boundary::Periodic), (6, 2, Boundary::Open)] {
        let spec = ChainSpec::new(n, spin(twice), 1.3, boundary).unwrap();
        let mut sector = chain::diagonalize(&spec).unwrap().all_eigenvalues();
        sector.sort_by(f64::total_cmp);
        let dense = eigvals_sym(&chain::dense_hamiltonian(&spec).unwrap()).unwrap();
        assert_eq!(sector.len(), dense.len());
        for (a, b) in sector.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-10, "n={n} 2S={twice}");
        }
    }
}

#[test]
fn finite_chain_tc_is_below_pair_and_trend_is_reported() {
    let s = spin(1);
    let pair_tc = pair::characteristic_temperature(s, 1.0).unwrap();
    let tc4 = witness::solve_tc(&ChainModel::new(&ChainSpec::new(4, s, 1.0, Boundary::Periodic).unwrap()).unwrap()).unwrap();
    let tc6 = witness::solve_tc(&ChainModel::new(&ChainSpec::new(6, s, 1.0, Boundary::Periodic).unwrap()).unwrap()).unwrap();
    assert!(tc4 < pair_tc && tc6 < pair_tc, "{tc4} {tc6} {pair_tc}");
    let g = |n: usize| {
        let sd = chain::diagonalize(&ChainSpec::new(n, s, 1.0, Boundary::Periodic).unwrap()).unwrap();
        chain::correlator_matrix(&sd, 0.5).unwrap().mean_bond_correlator(&sd.spec)
    };
    let (g4, g6) = (g(4), g(6));
    println!("G1 at T = 0.5 J: n=4 {g4:.6}, n=6 {g6:.6}, relative difference {:.3}", (g4 - g6) / g6);
    assert!(g4 < 0.0 && g6 < 0.0);
}

#[test]
fn chain_model_fit_recovers_parameters() {
    let s = spin(2);
    let model = PreparedModel::new(
        ChiModel::Chain {
            sites: 4,
            boundary: Boundary::Periodic,
        },
        s,
    )
    .unwrap();
    let temps: Vec<f64> = (1..=40).map(|k| 4.0 * k as f64).collect();
    let series = fitdata::synthesize(&model, 30.0, 2.1, &temps).unwrap();
    let r = fitdata::fit(&series, &model, FitInit { coupling_kelvin: 20.0, g_factor: 2.0 }, None).unwrap();
    assert!(r.converged);
    assert!((r.coupling_kelvin / 30.0 - 1.0).abs() < 1e-4);
    assert!((r.g_factor / 2.1 - 1.0).abs() < 1e-4);
}

#[test]
fn csv_round_trip_preserves_fit() {
    let s = spin(1);
    let model = PreparedModel::new(ChiModel::Pair, s).unwrap();
    let temps: Vec<f64> = (1..=50).map(|k| 3.0 * k as f64).collect();
    let series = fitdata::synthesize(&model, 14.0, 2.05, &temps).unwrap();
    let mut buf = Vec::new();
    series.write_csv(&mut buf).unwrap();
    let back = fitdata::load_measurements(buf.as_slice()).unwrap();
    assert_eq!(back.points.len(), 50);
    let r = fitdata::fit(&back, &model, FitInit { coupling_kelvin: 10.0, g_factor: 2.0 }, None).unwrap();
    assert!((r.coupling_kelvin / 14.0 - 1.0).abs() < 1e-5);
    assert!((r.g_factor / 2.05 - 1.0).abs() < 1e-5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_sign_tracks_tc(twice in 1u32..=5, j in 0.1f64..200.0, ratio in 0.05f64..5.0) {
        let s = spin(twice);
        let tc = pair::characteristic_temperature(s, j).unwrap();
        let t = ratio * tc;
        prop_assume!((ratio - 1.0).abs() > 1e-6);
        let g1 = pair::pair_correlator(s, j, t).unwrap();
        let chi = chain::susceptibility_nn_approx(2, s, t, g1).unwrap();
        let w = witness::witness_value(chi, t, 2, s).unwrap();
        prop_assert_eq!(w < 0.0, t < tc);
        let bound = witness::negativity_lower_bound(w, t, 2, s).unwrap();
        let n = pair::pair_negativity(s, j, t).unwrap();
        prop_assert!(n >= bound - 1e-9);
        prop_assert_eq!(n > 0.0, t < tc);
    }

    #[test]
    fn closed_form_negativity_matches_brute_force(twice in 1u32..=5, j in 0.1f64..50.0, x in -2.0f64..2.0) {
        let s = spin(twice);
        let t = j * 10f64.powf(x);
        let sd = chain::diagonalize(&ChainSpec::new(2, s, j, Boundary::Open).unwrap()).unwrap();
        let rho = chain::reduced_pair_state(&sd, t, (1, 2)).unwrap();
        let brute = negativity_bruteforce(&rho, s.dimension(), 2).unwrap();
        prop_assert!((brute - pair::pair_negativity(s, j, t).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn tc_is_homogeneous_in_coupling(twice in 1u32..=5, j in 0.1f64..500.0, k in 0.1f64..10.0) {
        let s = spin(twice);
        let a = pair::characteristic_temperature(s, j).unwrap();
        let b = pair::characteristic_temperature(s, k * j).unwrap();
        prop_assert!((b / a - k).abs() < 1e-8 * k);
    }
}
