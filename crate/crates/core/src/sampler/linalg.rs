//! Random matrices and determinants over the reals, complexes and quaternions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;

pub fn ginibre_real<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.sample(StandardNormal), 0.0))
}

pub fn ginibre_complex<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar unitary (orthogonal when `real`) from the QR factorization of a Ginibre
/// matrix, with the phases of `diag(R)` moved into `Q`.
pub fn haar<R: Rng + ?Sized>(d: usize, real: bool, rng: &mut R) -> CMatrix {
    let g = if real {
        ginibre_real(d, d, rng)
    } else {
        ginibre_complex(d, d, rng)
    };
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `G G^dagger / Tr(G G^dagger)`.
pub fn normalized_gram(g: &CMatrix) -> Option<CMatrix> {
    let w = g * g.adjoint();
    let tr = w.trace().re;
    if tr > 0.0 && tr.is_finite() {
        Some(w / Complex64::new(tr, 0.0))
    } else {
        None
    }
}

/// Complex 2x2 block `[[a, b], [-conj b, conj a]]` of the quaternion `a + b j`.
pub fn quaternion_block(a: Complex64, b: Complex64) -> [[Complex64; 2]; 2] {
    [[a, b], [-b.conj(), a.conj()]]
}

pub fn determinant(m: &CMatrix) -> f64 {
    m.clone().determinant().re
}

/// Moore determinant of a Hermitian quaternion matrix given by its complex
/// adjoint representation: the product of its quaternion eigenvalues, each of
/// which appears twice in the spectrum of the representation.
pub fn moore_determinant(m: &CMatrix) -> f64 {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev.iter().step_by(2).product()
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::rng::RngStream;

    #[test]
    fn haar_is_unitary() {
        let mut rng = RngStream::new(3, 0).rng();
        for real in [true, false] {
            let u = haar(4, real, &mut rng);
            let e = &u * u.adjoint() - CMatrix::identity(4, 4);
            assert!(e.norm() < 1e-12);
            if real {
                assert!(u.iter().all(|z| z.im == 0.0));
            }
        }
    }

    #[test]
    fn moore_of_diagonal() {
        let mut m = CMatrix::zeros(4, 4);
        for (i, v) in [2.0, 2.0, -3.0, -3.0].iter().enumerate() {
            m[(i, i)] = Complex64::new(*v, 0.0);
        }
        assert!((moore_determinant(&m) + 6.0).abs() < 1e-12);
        assert!((determinant(&m) - 36.0).abs() < 1e-12);
    }
}
