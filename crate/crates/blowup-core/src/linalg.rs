//! Symmetric eigenvalues by cyclic Jacobi rotations. Matrices here are at
//! most (n-1) x (n-1) with n around 62, so nothing fancier is warranted.

/// All eigenvalues of a symmetric matrix (row-major, `dim * dim` entries),
/// ascending.
pub fn symmetric_eigenvalues(mat: &[f64], dim: usize) -> Vec<f64> {
    assert_eq!(mat.len(), dim * dim, "matrix size mismatch");
    let mut a = mat.to_vec();
    let idx = |i: usize, j: usize| i * dim + j;

    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = 1e-15 * frob.max(f64::MIN_POSITIVE);

    for _sweep in 0..100 {
        let mut off = 0.0_f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                off += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[idx(p, q)];
                if apq.abs() <= tol / (dim as f64) {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..dim {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..dim {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eigs: Vec<f64> = (0..dim).map(|i| a[idx(i, i)]).collect();
    eigs.sort_by(|x, y| x.total_cmp(y));
    eigs
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn symmetric_min_eigenvalue(mat: &[f64], dim: usize) -> f64 {
    symmetric_eigenvalues(mat, dim)[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let m = [3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0];
        let e = symmetric_eigenvalues(&m, 3);
        assert!((e[0] + 1.0).abs() < 1e-14);
        assert!((e[1] - 2.0).abs() < 1e-14);
        assert!((e[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn known_two_by_two() {
        // eigenvalues of [[2, 1], [1, 2]] are 1 and 3
        let m = [2.0, 1.0, 1.0, 2.0];
        let e = symmetric_eigenvalues(&m, 2);
        assert!((e[0] - 1.0).abs() < 1e-14);
        assert!((e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn invariants_of_random_symmetric() {
        use rand_core::{RngCore, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let dim = 12;
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..=i {
                let v = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                m[i * dim + j] = v;
                m[j * dim + i] = v;
            }
        }
        let e = symmetric_eigenvalues(&m, dim);
        let trace: f64 = (0..dim).map(|i| m[i * dim + i]).sum();
        let frob2: f64 = m.iter().map(|x| x * x).sum();
        assert!((e.iter().sum::<f64>() - trace).abs() < 1e-12);
        assert!((e.iter().map(|x| x * x).sum::<f64>() - frob2).abs() < 1e-12);
    }
}
