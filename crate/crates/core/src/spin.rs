//! Spin quantum numbers, angular-momentum matrices and tensor-product embedding.
//!
//! Everything is real. The y component is never built: for two sites
//! `Sx Sx' + Sy Sy' = (S+ S-' + S- S+') / 2`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::chain::ChainSpec;
use crate::error::{Error, Result};

/// A spin magnitude stored as the integer `2S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinQuantum {
    twice_spin: u32,
}

impl SpinQuantum {
    pub const HALF: SpinQuantum = SpinQuantum { twice_spin: 1 };
    pub const ONE: SpinQuantum = SpinQuantum { twice_spin: 2 };

    pub fn from_twice(twice_spin: u32) -> Result<Self> {
        if twice_spin == 0 {
            return Err(Error::ZeroSpin);
        }
        Ok(Self { twice_spin })
    }

    pub fn twice_spin(self) -> u32 {
        self.twice_spin
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_spin) / 2.0
    }

    /// `2S + 1`.
    pub fn dimension(self) -> usize {
        self.twice_spin as usize + 1
    }

    /// `S (S + 1)`.
    pub fn casimir(self) -> f64 {
        let s = self.value();
        s * (s + 1.0)
    }

    /// `m` of local basis index `k` (index 0 is `m = S`).
    pub fn m_of_index(self, k: usize) -> f64 {
        self.value() - k as f64
    }

    /// `2m` of local basis index `k`.
    pub fn twice_m_of_index(self, k: usize) -> i32 {
        self.twice_spin as i32 - 2 * k as i32
    }
}

impl fmt::Display for SpinQuantum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_spin.is_multiple_of(2) {
            write!(f, "{}", self.twice_spin / 2)
        } else {
            write!(f, "{}/2", self.twice_spin)
        }
    }
}

impl Serialize for SpinQuantum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for SpinQuantum {
    type Err = Error;

    /// Accepts `"k/2"` or an integer `"k"`. Decimal forms such as `"2.5"` are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidSpin(s.to_string());
        let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
        let twice = match t.split_once('/') {
            Some((num, den)) => {
                if !digits(num) || den != "2" {
                    return Err(bad());
                }
                num.parse::<u32>().map_err(|_| bad())?
            }
            None => {
                if !digits(t) {
                    return Err(bad());
                }
                t.parse::<u32>().map_err(|_| bad())?.checked_mul(2).ok_or_else(bad)?
            }
        };
        if twice == 0 {
            return Err(bad());
        }
        SpinQuantum::from_twice(twice)
    }
}

/// `Sz`, `S+`, `S-`, `Sx` for a single spin in the basis `m = S, S-1, ..., -S`.
#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub sz: DMatrix<f64>,
    pub sp: DMatrix<f64>,
    pub sm: DMatrix<f64>,
    pub sx: DMatrix<f64>,
}

impl SpinMatrices {
    /// `Sz Sz + (S+ S- + S- S+) / 2`, which should equal `S(S+1) I`.
    pub fn casimir_matrix(&self) -> DMatrix<f64> {
        &self.sz * &self.sz + (&self.sp * &self.sm + &self.sm * &self.sp) * 0.5
    }
}

/// `<m+1| S+ |m> = sqrt(S(S+1) - m(m+1))`.
pub fn ladder_coefficient(spin: SpinQuantum, m: f64) -> f64 {
    (spin.casimir() - m * (m + 1.0)).max(0.0).sqrt()
}

pub fn spin_matrices(spin: SpinQuantum) -> SpinMatrices {
    let d = spin.dimension();
    let sz = DMatrix::from_fn(d, d, |i, j| if i == j { spin.m_of_index(i) } else { 0.0 });
    // index k-1 has m+1 relative to index k
    let sp = DMatrix::from_fn(d, d, |i, j| {
        if j == i + 1 {
            ladder_coefficient(spin, spin.m_of_index(j))
        } else {
            0.0
        }
    });
    let sm = sp.transpose();
    let sx = (&sp + &sm) * 0.5;
    SpinMatrices { sz, sp, sm, sx }
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` on 1-based `site` of a product space with local `dims`.
pub fn embed_in(op: &DMatrix<f64>, site: usize, dims: &[usize]) -> Result<DMatrix<f64>> {
    if site == 0 || site > dims.len() {
        return Err(Error::SiteOutOfRange { site, n: dims.len() });
    }
    let local = dims[site - 1];
    if op.nrows() != local || op.ncols() != local {
        return Err(Error::DimensionMismatch {
            expected: local,
            actual: op.nrows().max(op.ncols()),
        });
    }
    let left: usize = dims[..site - 1].iter().product();
    let right: usize = dims[site..].iter().product();
    let out = DMatrix::<f64>::identity(left, left).kronecker(op);
    Ok(out.kronecker(&DMatrix::<f64>::identity(right, right)))
}

/// Embeds a single-site operator into the full Hilbert space of `spec`.
pub fn embed(op: &DMatrix<f64>, site: usize, spec: &ChainSpec) -> Result<DMatrix<f64>> {
    embed_in(op, site, &spec.local_dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Boundary;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.amax()
    }

    #[test]
    fn parse_spins() {
        assert_eq!("1/2".parse::<SpinQuantum>().unwrap().twice_spin(), 1);
        assert_eq!("5/2".parse::<SpinQuantum>().unwrap().twice_spin(), 5);
        assert_eq!("2".parse::<SpinQuantum>().unwrap().twice_spin(), 4);
        assert_eq!(" 3/2 ".parse::<SpinQuantum>().unwrap().twice_spin(), 3);
        for bad in ["0", "0/2", "2.5", "1/3", "-1/2", "", "a/2", "1/", "0.5"] {
            assert!(bad.parse::<SpinQuantum>().is_err(), "{bad}");
        }
        assert_eq!(SpinQuantum::from_twice(0), Err(Error::ZeroSpin));
        assert_eq!(SpinQuantum::from_twice(5).unwrap().to_string(), "5/2");
        assert_eq!(SpinQuantum::from_twice(4).unwrap().to_string(), "2");
    }

    #[test]
    fn half_and_one() {
        let m = spin_matrices(SpinQuantum::HALF);
        assert_eq!(m.sz, DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]));
        let m = spin_matrices(SpinQuantum::ONE);
        let r2 = 2f64.sqrt();
        assert!((m.sp[(0, 1)] - r2).abs() < 1e-15);
        assert!((m.sp[(1, 2)] - r2).abs() < 1e-15);
        assert_eq!(m.sp.iter().filter(|v| **v != 0.0).count(), 2);
    }

    #[test]
    fn casimir_and_commutators() {
        for twice in 1..=5 {
            let s = SpinQuantum::from_twice(twice).unwrap();
            let m = spin_matrices(s);
            let d = s.dimension();
            let err = max_abs(&(m.casimir_matrix() - DMatrix::identity(d, d) * s.casimir()));
            assert!(err < 1e-12, "2S={twice}: {err}");
            // [Sz, [Sz, Sx]] = Sx
            let c1 = &m.sz * &m.sx - &m.sx * &m.sz;
            let c2 = &m.sz * &c1 - &c1 * &m.sz;
            assert!(max_abs(&(c2 - &m.sx)) < 1e-12);
            // [Sz, S+] = S+
            let c = &m.sz * &m.sp - &m.sp * &m.sz;
            assert!(max_abs(&(c - &m.sp)) < 1e-12);
        }
    }

    #[test]
    fn embed_two_half_spins() {
        let spec = ChainSpec::new(2, SpinQuantum::HALF, 1.0, Boundary::Open).unwrap();
        let e = embed(&spin_matrices(SpinQuantum::HALF).sz, 1, &spec).unwrap();
        let want = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.5, 0.5, -0.5, -0.5]));
        assert_eq!(e, want);
    }

    #[test]
    fn embed_trace_and_symmetry() {
        let spec = ChainSpec::new(4, SpinQuantum::ONE, 1.0, Boundary::Periodic).unwrap();
        let total = spec.hilbert_dimension();
        let m1 = spin_matrices(SpinQuantum::ONE);
        let casimir = m1.casimir_matrix();
        for site in [1, 3] {
            let e = embed(&casimir, site, &spec).unwrap();
            assert_eq!(e.nrows(), total);
            assert!((e.trace() - casimir.trace() * (total / 3) as f64).abs() < 1e-9);
            assert_eq!(e, e.transpose());
        }
        assert!(matches!(embed(&casimir, 2, &spec), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(embed(&casimir, 5, &spec), Err(Error::SiteOutOfRange { .. })));
    }

    #[test]
    fn disjoint_sites_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let spec = ChainSpec::new(4, SpinQuantum::from_twice(3).unwrap(), 1.0, Boundary::Open).unwrap();
        let dims = spec.local_dims();
        for (i, j) in [(1, 2), (1, 3), (2, 4), (3, 4)] {
            let a = DMatrix::from_fn(dims[i - 1], dims[i - 1], |_, _| rng.gen_range(-1.0..1.0));
            let b = DMatrix::from_fn(dims[j - 1], dims[j - 1], |_, _| rng.gen_range(-1.0..1.0));
            let ea = embed(&a, i, &spec).unwrap();
            let eb = embed(&b, j, &spec).unwrap();
            assert!(max_abs(&(&ea * &eb - &eb * &ea)) < 1e-12);
        }
    }
}
