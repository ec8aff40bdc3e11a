//! Random density matrices under the Hilbert-Schmidt and Bures measures.

pub mod cholesky;
pub mod histogram;
pub mod linalg;
pub mod mc;
pub mod rng;
pub mod stats;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use linalg::{
    determinant as complex_determinant, ginibre_complex, ginibre_real, haar, hermitian_eigenvalues,
    moore_determinant, normalized_gram, CMatrix,
};

pub use cholesky::{
    cholesky_jacobian, cholesky_map, dirichlet_monomial_expectation, dirichlet_monomial_mc,
    finite_difference_jacobian,
};
pub use histogram::{joint_histogram, Histogram2D};
pub use mc::{
    mc_moment, mc_moments, mc_separability_probability, nongeneric_separability_probability, Ensemble,
};
pub use rng::RngStream;
pub use stats::{Accumulator, SampleStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Real,
    Complex,
    Quaternion,
}

impl std::str::FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" => Ok(Self::Real),
            "complex" => Ok(Self::Complex),
            "quaternion" | "quaternionic" => Ok(Self::Quaternion),
            other => Err(Error::InvalidArgument(format!("unknown ring {other:?}"))),
        }
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Real => "real",
            Self::Complex => "complex",
            Self::Quaternion => "quaternion",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Hs,
    Bures,
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hs" | "hilbert-schmidt" => Ok(Self::Hs),
            "bures" => Ok(Self::Bures),
            other => Err(Error::InvalidArgument(format!("unknown measure {other:?}"))),
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Hs => "hs",
            Self::Bures => "bures",
        })
    }
}

/// A state on `C^{d1} x C^{d2}`. Quaternionic states are stored as their
/// `2d x 2d` complex adjoint representation.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrixSample {
    pub ring: Ring,
    pub dims: (usize, usize),
    pub entries: CMatrix,
}

impl DensityMatrixSample {
    pub fn new(ring: Ring, dims: (usize, usize), entries: CMatrix) -> Result<Self> {
        let d = dims.0 * dims.1 * block(ring);
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::InvalidArgument(format!(
                "expected a {d}x{d} matrix, found {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self { ring, dims, entries })
    }

    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    /// Trace of the underlying state.
    pub fn trace(&self) -> f64 {
        self.entries.trace().re / block(self.ring) as f64
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.entries - self.entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)[0]
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn is_state(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol && (self.trace() - 1.0).abs() <= tol && self.min_eigenvalue() >= -tol
    }
}

fn block(ring: Ring) -> usize {
    match ring {
        Ring::Quaternion => 2,
        _ => 1,
    }
}

fn dims_for(d: usize) -> Result<(usize, usize)> {
    match d {
        4 => Ok((2, 2)),
        6 => Ok((2, 3)),
        _ => Err(Error::InvalidArgument(format!(
            "dimension {d} not supported (use 4 or 6)"
        ))),
    }
}

/// Hilbert-Schmidt state. Real states use a `d x (d+1)` Ginibre matrix and
/// complex ones a square matrix, which makes the induced measure flat in both
/// cases. Quaternionic states come from the Cholesky parametrization.
pub fn sample_hs<R: Rng + ?Sized>(ring: Ring, d: usize, rng: &mut R) -> Result<DensityMatrixSample> {
    let dims = dims_for(d)?;
    let entries = match ring {
        Ring::Real => loop {
            if let Some(m) = normalized_gram(&ginibre_real(d, d + 1, rng)) {
                break m;
            }
        },
        Ring::Complex => loop {
            if let Some(m) = normalized_gram(&ginibre_complex(d, d, rng)) {
                break m;
            }
        },
        Ring::Quaternion => cholesky::quaternion_cholesky_sample(d, rng),
    };
    DensityMatrixSample::new(ring, dims, entries)
}

/// Bures state for `d = 4`. Complex: `(I + U) G G^dagger (I + U)^dagger`
/// normalized. Real: eigenvalues by rejection from a Dirichlet(1/2) proposal
/// with acceptance `prod_{i<j} |l_i - l_j| / sqrt(l_i + l_j)`, rotated by a Haar
/// orthogonal matrix.
pub fn sample_bures<R: Rng + ?Sized>(ring: Ring, d: usize, rng: &mut R) -> Result<DensityMatrixSample> {
    if d != 4 {
        return Err(Error::InvalidArgument("Bures sampling needs d = 4".into()));
    }
    let dims = dims_for(d)?;
    let entries = match ring {
        Ring::Complex => loop {
            let u = haar(d, false, rng);
            let a = CMatrix::identity(d, d) + u;
            if let Some(m) = normalized_gram(&(a * ginibre_complex(d, d, rng))) {
                break m;
            }
        },
        Ring::Real => {
            let half = Gamma::new(0.5, 1.0).expect("positive shape");
            let lambda = loop {
                let g: Vec<f64> = (0..d).map(|_| half.sample(rng)).collect();
                let s: f64 = g.iter().sum();
                let l: Vec<f64> = g.iter().map(|x| x / s).collect();
                let mut w = 1.0;
                for i in 0..d {
                    for j in (i + 1)..d {
                        w *= (l[i] - l[j]).abs() / (l[i] + l[j]).sqrt();
                    }
                }
                if rng.random::<f64>() < w {
                    break l;
                }
            };
            let o = haar(d, true, rng);
            let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                d,
                lambda.iter().map(|x| Complex64::new(*x, 0.0)),
            ));
            &o * diag * o.adjoint()
        }
        Ring::Quaternion => {
            return Err(Error::InvalidArgument(
                "Bures sampling is not defined for quaternions".into(),
            ))
        }
    };
    DensityMatrixSample::new(ring, dims, entries)
}

/// Transposes each `d2 x d2` block in place (second factor). Quaternion entries
/// move as units without being conjugated.
pub fn partial_transpose(rho: &DensityMatrixSample) -> DensityMatrixSample {
    let (d1, d2) = rho.dims;
    let s = block(rho.ring);
    let mut out = rho.entries.clone();
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d1 {
                for l in 0..d2 {
                    let (r, c) = ((i * d2 + j) * s, (k * d2 + l) * s);
                    let (r0, c0) = ((i * d2 + l) * s, (k * d2 + j) * s);
                    for a in 0..s {
                        for b in 0..s {
                            out[(r + a, c + b)] = rho.entries[(r0 + a, c0 + b)];
                        }
                    }
                }
            }
        }
    }
    DensityMatrixSample {
        ring: rho.ring,
        dims: rho.dims,
        entries: out,
    }
}

/// Determinant; the signed Moore determinant for quaternionic matrices.
pub fn determinant(rho: &DensityMatrixSample) -> f64 {
    match rho.ring {
        Ring::Quaternion => moore_determinant(&rho.entries),
        _ => complex_determinant(&rho.entries),
    }
}

/// The extremal real two-qubit state with `|rho| |rho^PT| = -1/110592`.
pub fn fixture_matrix() -> DensityMatrixSample {
    let s2 = 2f64.sqrt();
    let s3 = 3f64.sqrt();
    let a = 1.0 / (6.0 * s2);
    let p = (-1.0 + s3) / 12.0;
    let q = (-1.0 - s3) / 12.0;
    let rows = [
        [1.0 / 6.0, -a, a, p],
        [-a, 1.0 / 3.0, q, -a],
        [a, q, 1.0 / 3.0, a],
        [p, -a, a, 1.0 / 6.0],
    ];
    let m = CMatrix::from_fn(4, 4, |i, j| Complex64::new(rows[i][j], 0.0));
    DensityMatrixSample {
        ring: Ring::Real,
        dims: (2, 2),
        entries: m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_determinants() {
        let rho = fixture_matrix();
        let d = determinant(&rho);
        let dpt = determinant(&partial_transpose(&rho));
        assert!((d - (2.0 * 3f64.sqrt() - 3.0) / 576.0).abs() < 1e-15);
        assert!((dpt - (-3.0 - 2.0 * 3f64.sqrt()) / 576.0).abs() < 1e-15);
        assert!((d * dpt + 1.0 / 110592.0).abs() < 1e-16);
    }

    #[test]
    fn samples_are_states() {
        let mut rng = RngStream::new(11, 0).rng();
        for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
            let rho = sample_hs(ring, 4, &mut rng).unwrap();
            assert!(rho.is_state(1e-12), "{ring}");
            let pt = partial_transpose(&rho);
            assert_eq!(partial_transpose(&pt), rho);
        }
        for ring in [Ring::Real, Ring::Complex] {
            assert!(sample_bures(ring, 4, &mut rng).unwrap().is_state(1e-12));
        }
        assert!(sample_hs(Ring::Real, 5, &mut rng).is_err());
    }
}
