use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::model::DensityMatrix3;

const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Eigenvalues of a real symmetric matrix, ascending, by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        let diag: f64 = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
        if off <= f64::EPSILON * f64::EPSILON * diag || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues of a 3×3 Hermitian matrix, ascending.
///
/// The matrix `H = X + iY` is embedded as the real symmetric 6×6 block matrix
/// `[[X, −Y], [Y, X]]`, whose spectrum is that of `H` with every eigenvalue
/// doubled.
pub fn hermitian3_eigenvalues(rho: &DensityMatrix3) -> Result<[f64; 3]> {
    let defect = rho.hermiticity_defect();
    if !defect.is_finite() {
        return Err(Error::NonFinite("density matrix"));
    }
    if defect > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(defect));
    }
    let mut embedded = DenseMatrix::zeros(6);
    for i in 0..3 {
        for j in 0..3 {
            let h = 0.5 * (rho.0[i][j] + rho.0[j][i].conj());
            embedded[(i, j)] = h.re;
            embedded[(i + 3, j + 3)] = h.re;
            embedded[(i, j + 3)] = -h.im;
            embedded[(i + 3, j)] = h.im;
        }
    }
    let doubled = symmetric_eigenvalues(&embedded);
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn real3(rows: [[f64; 3]; 3]) -> DensityMatrix3 {
        DensityMatrix3(rows.map(|r| r.map(|v| Complex64::new(v, 0.0))))
    }

    #[test]
    fn maximally_mixed() {
        let third = 1.0 / 3.0;
        let rho = real3([[third, 0.0, 0.0], [0.0, third, 0.0], [0.0, 0.0, third]]);
        let eig = hermitian3_eigenvalues(&rho).unwrap();
        for e in eig {
            assert!((e - third).abs() < 1e-15);
        }
    }

    #[test]
    fn ground_state() {
        let rho = real3([[0.0; 3], [0.0; 3], [0.0, 0.0, 1.0]]);
        assert_eq!(hermitian3_eigenvalues(&rho).unwrap(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn coherent_excited_pair() {
        // 2x2 block [[1/2, 1/2], [1/2, 1/2]] has eigenvalues 0 and 1.
        let rho = real3([[0.5, 0.5, 0.0], [0.5, 0.5, 0.0], [0.0, 0.0, 0.0]]);
        let eig = hermitian3_eigenvalues(&rho).unwrap();
        let expected = [0.0, 0.0, 1.0];
        for (e, x) in eig.iter().zip(expected) {
            assert!((e - x).abs() < 1e-14, "{eig:?}");
        }
    }

    #[test]
    fn complex_off_diagonal() {
        // [[1/2, i/2], [-i/2, 1/2]] also has eigenvalues 0 and 1.
        let mut rho = real3([[0.5, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.0]]);
        rho.0[0][1] = Complex64::new(0.0, 0.5);
        rho.0[1][0] = Complex64::new(0.0, -0.5);
        let eig = hermitian3_eigenvalues(&rho).unwrap();
        assert!(eig[0].abs() < 1e-14 && eig[1].abs() < 1e-14 && (eig[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut rho = real3([[0.5, 0.1, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 0.0]]);
        rho.0[1][0] = Complex64::new(0.3, 0.0);
        assert!(matches!(hermitian3_eigenvalues(&rho), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn symmetric_jacobi_known_spectrum() {
        let m = DenseMatrix::from_rows(&[[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]);
        let eig = symmetric_eigenvalues(&m);
        let s = std::f64::consts::SQRT_2;
        let expected = [2.0 - s, 2.0, 2.0 + s];
        for (e, x) in eig.iter().zip(expected) {
            assert!((e - x).abs() < 1e-14);
        }
    }
}
