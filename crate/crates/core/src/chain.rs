//! Exact diagonalization of the alternating (S, 1/2) Heisenberg chain.
//!
//! Sites are numbered from 1. Odd sites carry spin `S`, even sites spin 1/2.
//! The Hamiltonian `J Σ_bonds S_i · S_j` conserves total `Sz`, so it is
//! assembled and diagonalized one magnetization sector at a time. Within a
//! sector, product states are kept in ascending product-basis order (site 1
//! most significant, local index 0 meaning `m = S`), which is the same
//! ordering the Kronecker embedding in [`crate::spin`] uses.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig_sym, DenseSymMatrix};
use crate::spin::{embed, ladder_coefficient, spin_matrices, SpinQuantum};

pub use crate::negativity::{negativity_bruteforce, partial_transpose};

pub const DEFAULT_DIMENSION_CAP: usize = 32_768;

/// Eigenvectors with a Boltzmann weight below this are dropped from thermal sums.
const WEIGHT_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "periodic" | "pbc" => Ok(Boundary::Periodic),
            "open" | "obc" => Ok(Boundary::Open),
            other => Err(Error::InvalidArgument(format!("unknown boundary {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainSpec {
    n: usize,
    spin: SpinQuantum,
    coupling_kelvin: f64,
    boundary: Boundary,
    dimension_cap: usize,
}

impl ChainSpec {
    pub fn new(n: usize, spin: SpinQuantum, coupling_kelvin: f64, boundary: Boundary) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidSiteCount(n));
        }
        if !coupling_kelvin.is_finite() {
            return Err(Error::InvalidArgument(format!("coupling {coupling_kelvin} is not finite")));
        }
        Ok(Self {
            n,
            spin,
            coupling_kelvin,
            boundary,
            dimension_cap: DEFAULT_DIMENSION_CAP,
        })
    }

    pub fn with_dimension_cap(mut self, cap: usize) -> Self {
        self.dimension_cap = cap;
        self
    }

    pub fn with_coupling(mut self, coupling_kelvin: f64) -> Self {
        self.coupling_kelvin = coupling_kelvin;
        self
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    pub fn coupling_kelvin(&self) -> f64 {
        self.coupling_kelvin
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn dimension_cap(&self) -> usize {
        self.dimension_cap
    }

    /// Spin carried by 1-based `site`.
    pub fn site_spin(&self, site: usize) -> SpinQuantum {
        if site % 2 == 1 {
            self.spin
        } else {
            SpinQuantum::HALF
        }
    }

    pub fn local_dims(&self) -> Vec<usize> {
        (1..=self.n).map(|i| self.site_spin(i).dimension()).collect()
    }

    /// `(2S+1)^(n/2) 2^(n/2)`, saturating on overflow.
    pub fn hilbert_dimension(&self) -> usize {
        let cell = self.spin.dimension().saturating_mul(2);
        (0..self.n / 2).fold(1usize, |acc, _| acc.saturating_mul(cell))
    }

    /// Nearest-neighbour bonds as 1-based site pairs. A periodic two-site
    /// chain has the bond (1, 2) twice.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let mut b: Vec<(usize, usize)> = (1..self.n).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Periodic {
            b.push((self.n, 1));
        }
        b
    }

    pub fn is_bond(&self, i: usize, j: usize) -> bool {
        self.bonds().iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    fn check_cap(&self) -> Result<()> {
        let dim = self.hilbert_dimension();
        if dim > self.dimension_cap {
            return Err(Error::DimensionCap {
                dim,
                cap: self.dimension_cap,
            });
        }
        Ok(())
    }
}

/// Product-basis bookkeeping shared by the Hamiltonian and the thermal sums.
#[derive(Debug, Clone)]
struct ProductBasis {
    spins: Vec<SpinQuantum>,
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl ProductBasis {
    fn new(spec: &ChainSpec) -> Self {
        let spins: Vec<SpinQuantum> = (1..=spec.n).map(|i| spec.site_spin(i)).collect();
        let dims: Vec<usize> = spins.iter().map(|s| s.dimension()).collect();
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Self { spins, dims, strides }
    }

    fn total(&self) -> usize {
        self.strides[0] * self.dims[0]
    }

    /// Local index at 0-based `site`.
    fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.strides[site]) % self.dims[site]
    }

    fn m(&self, index: usize, site: usize) -> f64 {
        self.spins[site].m_of_index(self.digit(index, site))
    }

    fn twice_total_m(&self, index: usize) -> i32 {
        (0..self.dims.len())
            .map(|s| self.spins[s].twice_m_of_index(self.digit(index, s)))
            .sum()
    }

    /// `S+_i S-_j` acting on product state `index` (0-based sites), as `(new_index, amplitude)`.
    fn raise_lower(&self, index: usize, i: usize, j: usize) -> Option<(usize, f64)> {
        let ki = self.digit(index, i);
        let kj = self.digit(index, j);
        if ki == 0 || kj + 1 == self.dims[j] {
            return None;
        }
        let mi = self.spins[i].m_of_index(ki);
        let mj = self.spins[j].m_of_index(kj);
        // S- |m> = sqrt(S(S+1) - m(m-1)) |m-1> and that equals the raising coefficient from m-1
        let amp = ladder_coefficient(self.spins[i], mi) * ladder_coefficient(self.spins[j], mj - 1.0);
        Some((index - self.strides[i] + self.strides[j], amp))
    }
}

/// One magnetization block of the Hamiltonian, before diagonalization.
#[derive(Debug, Clone)]
pub struct SectorBlock {
    pub twice_total_sz: i32,
    /// Product-basis indices, ascending.
    pub basis: Vec<usize>,
    pub hamiltonian: DenseSymMatrix,
}

#[derive(Debug, Clone)]
pub struct SectorHamiltonian {
    pub spec: ChainSpec,
    pub blocks: Vec<SectorBlock>,
}

/// Enumerates magnetization sectors and assembles `H` within each.
pub fn build_hamiltonian(spec: &ChainSpec) -> Result<SectorHamiltonian> {
    spec.check_cap()?;
    let pb = ProductBasis::new(spec);
    let total = pb.total();
    let mut by_sector: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for idx in 0..total {
        by_sector.entry(pb.twice_total_m(idx)).or_default().push(idx);
    }
    let bonds: Vec<(usize, usize)> = spec.bonds().iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    let j = spec.coupling_kelvin;

    let blocks = by_sector
        .into_iter()
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(twice_total_sz, basis)| {
            let dim = basis.len();
            let position: HashMap<usize, usize> = basis.iter().enumerate().map(|(p, &b)| (b, p)).collect();
            let mut h = DMatrix::<f64>::zeros(dim, dim);
            for (col, &idx) in basis.iter().enumerate() {
                for &(a, b) in &bonds {
                    h[(col, col)] += j * pb.m(idx, a) * pb.m(idx, b);
                    for (p, q) in [(a, b), (b, a)] {
                        if let Some((new, amp)) = pb.raise_lower(idx, p, q) {
                            h[(position[&new], col)] += 0.5 * j * amp;
                        }
                    }
                }
            }
            Ok(SectorBlock {
                twice_total_sz,
                basis,
                hamiltonian: DenseSymMatrix::symmetrize(&h)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SectorHamiltonian {
        spec: spec.clone(),
        blocks,
    })
}

impl SectorHamiltonian {
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.len()).sum()
    }

    /// Scatters the blocks into one dense matrix over the full product basis.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dimension();
        let mut out = DMatrix::zeros(n, n);
        for blk in &self.blocks {
            let h = blk.hamiltonian.as_matrix();
            for (p, &bp) in blk.basis.iter().enumerate() {
                for (q, &bq) in blk.basis.iter().enumerate() {
                    out[(bp, bq)] = h[(p, q)];
                }
            }
        }
        out
    }

    pub fn diagonalize(&self) -> Result<SectorSpectralData> {
        let sectors = self
            .blocks
            .par_iter()
            .map(|blk| {
                let eig = eig_sym(&blk.hamiltonian)?;
                Ok(Sector {
                    twice_total_sz: blk.twice_total_sz,
                    basis: blk.basis.clone(),
                    eigenvalues: eig.eigenvalues,
                    eigenvectors: eig.eigenvectors,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SectorSpectralData {
            spec: self.spec.clone(),
            sectors,
        })
    }
}

/// The full Hamiltonian built directly from Kronecker-embedded site operators.
/// Only practical for small chains; used as an oracle for the sector build.
pub fn dense_hamiltonian(spec: &ChainSpec) -> Result<DenseSymMatrix> {
    spec.check_cap()?;
    let dim = spec.hilbert_dimension();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for (a, b) in spec.bonds() {
        let ma = spin_matrices(spec.site_spin(a));
        let mb = spin_matrices(spec.site_spin(b));
        let zz = embed(&ma.sz, a, spec)? * embed(&mb.sz, b, spec)?;
        let pm = embed(&ma.sp, a, spec)? * embed(&mb.sm, b, spec)?;
        let mp = embed(&ma.sm, a, spec)? * embed(&mb.sp, b, spec)?;
        h += (zz + (pm + mp) * 0.5) * spec.coupling_kelvin;
    }
    DenseSymMatrix::symmetrize(&h)
}

#[derive(Debug, Clone)]
pub struct Sector {
    pub twice_total_sz: i32,
    pub basis: Vec<usize>,
    /// Kelvin, ascending.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl Sector {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn total_sz(&self) -> f64 {
        f64::from(self.twice_total_sz) / 2.0
    }
}

#[derive(Debug, Clone)]
pub struct SectorSpectralData {
    pub spec: ChainSpec,
    pub sectors: Vec<Sector>,
}

/// Builds and diagonalizes the sector-blocked Hamiltonian of `spec`.
pub fn diagonalize(spec: &ChainSpec) -> Result<SectorSpectralData> {
    build_hamiltonian(spec)?.diagonalize()
}

#[derive(Debug, Clone)]
pub struct ThermalWeights {
    /// Boltzmann weight of each eigenstate, per sector, normalized to 1 overall.
    pub weights: Vec<Vec<f64>>,
    /// `Σ exp(-(E - E0)/T)`.
    pub shifted_partition_function: f64,
    pub ground_energy: f64,
    pub temperature_kelvin: f64,
}

impl ThermalWeights {
    /// `ln Z` with the unshifted energies.
    pub fn log_partition_function(&self) -> f64 {
        self.shifted_partition_function.ln() - self.ground_energy / self.temperature_kelvin
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveTemperature(t))
    }
}

/// Boltzmann weights with the global ground energy subtracted before exponentiation.
pub fn thermal_weights(sd: &SectorSpectralData, temperature_kelvin: f64) -> Result<ThermalWeights> {
    check_temperature(temperature_kelvin)?;
    let e0 = sd.ground_energy();
    let mut weights: Vec<Vec<f64>> = sd
        .sectors
        .iter()
        .map(|s| s.eigenvalues.iter().map(|e| (-(e - e0) / temperature_kelvin).exp()).collect())
        .collect();
    let z: f64 = weights.iter().flatten().sum();
    for w in weights.iter_mut().flatten() {
        *w /= z;
    }
    Ok(ThermalWeights {
        weights,
        shifted_partition_function: z,
        ground_energy: e0,
        temperature_kelvin,
    })
}

impl SectorSpectralData {
    pub fn dimension(&self) -> usize {
        self.sectors.iter().map(|s| s.dimension()).sum()
    }

    pub fn ground_energy(&self) -> f64 {
        self.sectors
            .iter()
            .filter_map(|s| s.eigenvalues.first().copied())
            .fold(f64::INFINITY, f64::min)
    }

    /// Every eigenvalue, ascending.
    pub fn all_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.sectors.iter().flat_map(|s| s.eigenvalues.iter().copied()).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// `<H> = Σ_k w_k E_k`.
    pub fn mean_energy(&self, temperature_kelvin: f64) -> Result<f64> {
        let tw = thermal_weights(self, temperature_kelvin)?;
        Ok(self
            .sectors
            .iter()
            .zip(&tw.weights)
            .map(|(s, w)| s.eigenvalues.iter().zip(w).map(|(e, w)| e * w).sum::<f64>())
            .sum())
    }

    /// Thermal density matrix, one dense block per sector.
    pub fn thermal_state(&self, temperature_kelvin: f64) -> Result<ThermalState<'_>> {
        let tw = thermal_weights(self, temperature_kelvin)?;
        let blocks = self
            .sectors
            .par_iter()
            .zip(tw.weights.par_iter())
            .map(|(sector, w)| {
                let keep: Vec<usize> = (0..w.len()).filter(|&k| w[k] > WEIGHT_CUTOFF).collect();
                let d = sector.dimension();
                if keep.is_empty() {
                    return DMatrix::zeros(d, d);
                }
                let v = sector.eigenvectors.select_columns(&keep);
                let mut vw = v.clone();
                for (c, &k) in keep.iter().enumerate() {
                    vw.column_mut(c).scale_mut(w[k]);
                }
                let rho = vw * v.transpose();
                (&rho + rho.transpose()) * 0.5
            })
            .collect();
        Ok(ThermalState {
            data: self,
            basis: ProductBasis::new(&self.spec),
            temperature_kelvin,
            blocks,
            sector_weights: tw.weights.iter().map(|w| w.iter().sum()).collect(),
        })
    }
}

/// `ρ(T)` stored blockwise over magnetization sectors.
#[derive(Debug, Clone)]
pub struct ThermalState<'a> {
    data: &'a SectorSpectralData,
    basis: ProductBasis,
    pub temperature_kelvin: f64,
    blocks: Vec<DMatrix<f64>>,
    sector_weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatorMatrix {
    pub temperature_kelvin: f64,
    /// `<S_i^z S_j^z>`.
    pub g_zz: DMatrix<f64>,
    /// `<S_i^x S_j^x>`, from the ladder operators.
    pub g_xx: DMatrix<f64>,
    /// `<S_i · S_j>`, assembled as `g_zz + <(S+_i S-_j + S-_i S+_j)/2>`.
    pub g_dot: DMatrix<f64>,
}

impl CorrelatorMatrix {
    /// Mean `<S_i · S_j>` over the bonds of `spec`.
    pub fn mean_bond_correlator(&self, spec: &ChainSpec) -> f64 {
        let bonds = spec.bonds();
        bonds.iter().map(|&(a, b)| self.g_dot[(a - 1, b - 1)]).sum::<f64>() / bonds.len() as f64
    }
}

impl ThermalState<'_> {
    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    /// Diagonal of ρ over the full product basis.
    fn populations(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.basis.total()];
        for (sector, rho) in self.data.sectors.iter().zip(&self.blocks) {
            for (i, &b) in sector.basis.iter().enumerate() {
                p[b] = rho[(i, i)];
            }
        }
        p
    }

    /// `Σ_ij <S_i^z S_j^z> = <(S^z_total)^2>`.
    pub fn total_sz_squared(&self) -> f64 {
        self.data
            .sectors
            .iter()
            .zip(&self.sector_weights)
            .map(|(s, w)| s.total_sz().powi(2) * w)
            .sum()
    }

    pub fn correlator_matrix(&self) -> CorrelatorMatrix {
        let n = self.data.spec.n;
        let pb = &self.basis;
        let pop = self.populations();
        let mut g_zz = DMatrix::<f64>::zeros(n, n);
        let mut m = vec![0.0; n];
        for (idx, &p) in pop.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            for (s, ms) in m.iter_mut().enumerate() {
                *ms = pb.m(idx, s);
            }
            for i in 0..n {
                for j in i..n {
                    g_zz[(i, j)] += p * m[i] * m[j];
                }
            }
        }
        // <(S+_i S-_j + S-_i S+_j)/2> for i < j; the on-site value is S(S+1) - <Sz^2>
        let mut g_perp = DMatrix::<f64>::zeros(n, n);
        for (sector, rho) in self.data.sectors.iter().zip(&self.blocks) {
            let position: HashMap<usize, usize> =
                sector.basis.iter().enumerate().map(|(p, &b)| (b, p)).collect();
            for (col, &idx) in sector.basis.iter().enumerate() {
                for i in 0..n {
                    for j in (i + 1)..n {
                        for (p, q) in [(i, j), (j, i)] {
                            if let Some((new, amp)) = pb.raise_lower(idx, p, q) {
                                g_perp[(i, j)] += 0.5 * amp * rho[(col, position[&new])];
                            }
                        }
                    }
                }
            }
        }
        for i in 0..n {
            g_perp[(i, i)] = pb.spins[i].casimir() - g_zz[(i, i)];
            for j in (i + 1)..n {
                g_zz[(j, i)] = g_zz[(i, j)];
                g_perp[(j, i)] = g_perp[(i, j)];
            }
        }
        let g_xx = &g_perp * 0.5;
        let g_dot = &g_zz + &g_perp;
        CorrelatorMatrix {
            temperature_kelvin: self.temperature_kelvin,
            g_zz,
            g_xx,
            g_dot,
        }
    }

    /// Reduced density matrix of the two sites of `bond` (1-based), ordered
    /// `(first site) ⊗ (second site)`.
    pub fn reduced_pair_state(&self, bond: (usize, usize)) -> Result<DMatrix<f64>> {
        let spec = &self.data.spec;
        let (a, b) = bond;
        if a == 0 || b == 0 || a > spec.n || b > spec.n || !spec.is_bond(a, b) {
            return Err(Error::NotABond(a, b));
        }
        let (sa, sb) = (a - 1, b - 1);
        let pb = &self.basis;
        let (da, db) = (pb.dims[sa], pb.dims[sb]);
        let mut out = DMatrix::<f64>::zeros(da * db, da * db);
        for (sector, rho) in self.data.sectors.iter().zip(&self.blocks) {
            let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
            for (p, &idx) in sector.basis.iter().enumerate() {
                let ka = pb.digit(idx, sa);
                let kb = pb.digit(idx, sb);
                let rest = idx - ka * pb.strides[sa] - kb * pb.strides[sb];
                groups.entry(rest).or_default().push((p, ka * db + kb));
            }
            for members in groups.values() {
                for &(p, local_p) in members {
                    for &(q, local_q) in members {
                        out[(local_p, local_q)] += rho[(p, q)];
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Thermal spin-spin correlations at temperature `T`.
pub fn correlator_matrix(sd: &SectorSpectralData, temperature_kelvin: f64) -> Result<CorrelatorMatrix> {
    Ok(sd.thermal_state(temperature_kelvin)?.correlator_matrix())
}

/// Reduced two-site state of an adjacent pair.
pub fn reduced_pair_state(sd: &SectorSpectralData, temperature_kelvin: f64, bond: (usize, usize)) -> Result<DMatrix<f64>> {
    sd.thermal_state(temperature_kelvin)?.reduced_pair_state(bond)
}

/// Reduced zero-field susceptibility `Σ_ij <S_i^z S_j^z>` of the whole chain,
/// i.e. `chi k_B T / (g^2 mu_B^2)`.
pub fn susceptibility_exact(sd: &SectorSpectralData, temperature_kelvin: f64) -> Result<f64> {
    let tw = thermal_weights(sd, temperature_kelvin)?;
    Ok(sd
        .sectors
        .iter()
        .zip(&tw.weights)
        .map(|(s, w)| s.total_sz().powi(2) * w.iter().sum::<f64>())
        .sum())
}

/// Nearest-neighbour approximation `n (1/8 + S^2/2 + G1/3)` in reduced units.
pub fn susceptibility_nn_approx(n: usize, spin: SpinQuantum, temperature_kelvin: f64, g1: f64) -> Result<f64> {
    check_temperature(temperature_kelvin)?;
    let s = spin.value();
    Ok(n as f64 * (0.125 + s * s / 2.0 + g1 / 3.0))
}

/// Same as [`susceptibility_nn_approx`] but with the exact on-site term
/// `<(S^z)^2> = S(S+1)/3` on the spin-S sites. Not the printed formula.
pub fn susceptibility_nn_exact_diagonal(n: usize, spin: SpinQuantum, temperature_kelvin: f64, g1: f64) -> Result<f64> {
    check_temperature(temperature_kelvin)?;
    Ok(n as f64 * (0.125 + spin.casimir() / 6.0 + g1 / 3.0))
}

/// High-temperature (Curie) value of the reduced susceptibility: `(n/2)[S(S+1)/3 + 1/4]`.
pub fn curie_limit(n: usize, spin: SpinQuantum) -> f64 {
    n as f64 / 2.0 * (spin.casimir() / 3.0 + 0.25)
}
