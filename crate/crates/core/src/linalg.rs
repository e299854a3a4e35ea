//! One-sided Jacobi SVD for tall, narrow design matrices.

use crate::scalar::Scalar;

/// Singular values and right singular vectors of the `rows.len() × N`
/// matrix, sorted by ascending singular value. `vectors[i]` pairs with
/// `values[i]`.
#[derive(Debug, Clone)]
pub struct RightSingular<T, const N: usize> {
    pub values: [T; N],
    pub vectors: [[T; N]; N],
}

/// Hestenes one-sided Jacobi: rotates column pairs until they are mutually
/// orthogonal. Works on the matrix itself, so the conditioning is that of
/// the matrix rather than of its normal equations.
pub fn right_singular<T: Scalar, const N: usize>(rows: &[[T; N]]) -> RightSingular<T, N> {
    let mut m: Vec<[T; N]> = rows.to_vec();
    let mut v = [[T::zero(); N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let eps = T::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..N {
            for q in p + 1..N {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for r in &m {
                    alpha = alpha + r[p] * r[p];
                    beta = beta + r[q] * r[q];
                    gamma = gamma + r[p] * r[q];
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                for r in m.iter_mut() {
                    let (a, b) = (r[p], r[q]);
                    r[p] = c * a - s * b;
                    r[q] = s * a + c * b;
                }
                for r in v.iter_mut() {
                    let (a, b) = (r[p], r[q]);
                    r[p] = c * a - s * b;
                    r[q] = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms = [T::zero(); N];
    for (j, n) in norms.iter_mut().enumerate() {
        *n = m.iter().fold(T::zero(), |acc, r| acc + r[j] * r[j]).sqrt();
    }
    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| norms[i].partial_cmp(&norms[j]).unwrap_or(std::cmp::Ordering::Equal));
    RightSingular {
        values: order.map(|j| norms[j]),
        vectors: order.map(|j| std::array::from_fn(|i| v[i][j])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_null_vector() {
        // rows orthogonal to (1, -2, 1)
        let rows: [[f64; 3]; 4] = [[1.0, 1.0, 1.0], [2.0, 1.0, 0.0], [0.0, 1.0, 2.0], [3.0, 2.0, 1.0]];
        let svd = right_singular(&rows);
        assert!(svd.values[0] < 1e-14);
        let v = svd.vectors[0];
        let k = v[0];
        assert!((v[1] / k + 2.0).abs() < 1e-12 && (v[2] / k - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let rows: [[f64; 2]; 3] = [[3.0, 0.0], [0.0, 0.5], [0.0, 0.0]];
        let svd = right_singular(&rows);
        assert_eq!(svd.values, [0.5, 3.0]);
        assert_eq!(svd.vectors[0][1].abs(), 1.0);
    }
}
