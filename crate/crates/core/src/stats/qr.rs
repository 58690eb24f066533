//! Householder QR factorization for least squares.
//!
//! The factorization is applied to the augmented matrix [X | y], so the
//! triangular factor R and the rotated response Qᵀy come out of one pass
//! and the normal equations XᵀX are never formed.

/// Outcome of factoring an n×p design against a response vector.
pub(crate) struct QrFactor {
    /// Upper-triangular R, p×p row-major (entries below the diagonal are 0).
    r: Vec<f64>,
    /// First p entries of Qᵀy.
    qty: Vec<f64>,
    p: usize,
}

/// Householder QR of the augmented system. `values` is the n×p design in
/// row-major order; `y` has length n. Caller guarantees n ≥ p ≥ 1.
pub(crate) fn factor(values: &[f64], n: usize, p: usize, y: &[f64]) -> QrFactor {
    debug_assert_eq!(values.len(), n * p);
    debug_assert_eq!(y.len(), n);
    debug_assert!(n >= p && p >= 1);

    // Working copy of [X | y], n×(p+1).
    let cols = p + 1;
    let mut a = vec![0.0f64; n * cols];
    for i in 0..n {
        a[i * cols..i * cols + p].copy_from_slice(&values[i * p..(i + 1) * p]);
        a[i * cols + p] = y[i];
    }

    for k in 0..p {
        // Householder vector for column k, rows k..n.
        let sigma: f64 = (k..n).map(|i| a[i * cols + k] * a[i * cols + k]).sum::<f64>().sqrt();
        if sigma == 0.0 {
            // Column is exactly zero below the pivot row; R[k][k] = 0 and
            // the rank check downstream reports it.
            continue;
        }
        let alpha = if a[k * cols + k] >= 0.0 { -sigma } else { sigma };
        let mut v = vec![0.0f64; n - k];
        v[0] = a[k * cols + k] - alpha;
        for i in k + 1..n {
            v[i - k] = a[i * cols + k];
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();

        // Apply H = I − 2vvᵀ/vᵀv to the remaining columns (y included).
        for j in k..cols {
            let dot: f64 = (k..n).map(|i| v[i - k] * a[i * cols + j]).sum();
            let scale = 2.0 * dot / vtv;
            for i in k..n {
                a[i * cols + j] -= scale * v[i - k];
            }
        }
        // Column k is now (alpha, 0, ..., 0) up to rounding; store exactly.
        a[k * cols + k] = alpha;
        for i in k + 1..n {
            a[i * cols + k] = 0.0;
        }
    }

    let mut r = vec![0.0f64; p * p];
    let mut qty = vec![0.0f64; p];
    for i in 0..p {
        for j in i..p {
            r[i * p + j] = a[i * cols + j];
        }
        qty[i] = a[i * cols + p];
    }
    QrFactor { r, qty, p }
}

impl QrFactor {
    /// Index of the first diagonal entry with |R[k][k]| below
    /// `tol_rel × max_k |R[k][k]|`, if any — the dependent column.
    pub(crate) fn deficient_column(&self, tol_rel: f64) -> Option<usize> {
        let max = (0..self.p)
            .map(|k| self.r[k * self.p + k].abs())
            .fold(0.0f64, f64::max);
        if max == 0.0 {
            return Some(0);
        }
        (0..self.p).find(|&k| self.r[k * self.p + k].abs() < tol_rel * max)
    }

    /// Solves Rβ = Qᵀy by back substitution. Requires a full-rank R.
    pub(crate) fn solve(&self) -> Vec<f64> {
        let p = self.p;
        let mut beta = vec![0.0f64; p];
        for i in (0..p).rev() {
            let row = &self.r[i * p..(i + 1) * p];
            let solved: f64 = row[i + 1..].iter().zip(&beta[i + 1..]).map(|(r, b)| r * b).sum();
            beta[i] = (self.qty[i] - solved) / row[i];
        }
        beta
    }

    /// Diagonal of (XᵀX)⁻¹ = R⁻¹R⁻ᵀ: entry j is the squared norm of row j
    /// of R⁻¹. Requires a full-rank R.
    pub(crate) fn xtx_inverse_diagonal(&self) -> Vec<f64> {
        let p = self.p;
        // Invert the upper-triangular R by back substitution per column.
        let mut inv = vec![0.0f64; p * p];
        for col in 0..p {
            for i in (0..=col).rev() {
                let mut acc = if i == col { 1.0 } else { 0.0 };
                for j in i + 1..=col {
                    acc -= self.r[i * p + j] * inv[j * p + col];
                }
                inv[i * p + col] = acc / self.r[i * p + i];
            }
        }
        (0..p)
            .map(|j| (j..p).map(|k| inv[j * p + k] * inv[j * p + k]).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_solves_exactly() {
        // X = [1 x] with x = [0,1,2], y = 1 + 2x.
        let values = vec![1.0, 0.0, 1.0, 1.0, 1.0, 2.0];
        let y = vec![1.0, 3.0, 5.0];
        let qr = factor(&values, 3, 2, &y);
        assert!(qr.deficient_column(1e-10).is_none());
        let beta = qr.solve();
        assert!((beta[0] - 1.0).abs() < 1e-12);
        assert!((beta[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn matches_normal_equations_on_small_system() {
        // 4×2 system solved by hand via normal equations:
        // X = [1 1; 1 2; 1 3; 1 5], y = [2, 3, 5, 8].
        // XᵀX = [4 11; 11 39], Xᵀy = [18, 63];
        // β = (XᵀX)⁻¹Xᵀy with det = 4·39 − 121 = 35:
        // β0 = (39·18 − 11·63)/35 = 9/35, β1 = (4·63 − 11·18)/35 = 54/35.
        let values = vec![1.0, 1.0, 1.0, 2.0, 1.0, 3.0, 1.0, 5.0];
        let y = vec![2.0, 3.0, 5.0, 8.0];
        let qr = factor(&values, 4, 2, &y);
        let beta = qr.solve();
        assert!((beta[0] - 9.0 / 35.0).abs() < 1e-12);
        assert!((beta[1] - 54.0 / 35.0).abs() < 1e-12);

        // (XᵀX)⁻¹ diagonal: [39/35, 4/35].
        let diag = qr.xtx_inverse_diagonal();
        assert!((diag[0] - 39.0 / 35.0).abs() < 1e-12);
        assert!((diag[1] - 4.0 / 35.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_column_is_reported_deficient() {
        let values = vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        let y = vec![1.0, 2.0, 3.0];
        let qr = factor(&values, 3, 2, &y);
        assert_eq!(qr.deficient_column(1e-10), Some(1));
    }

    #[test]
    fn zero_column_is_reported_deficient() {
        let values = vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
        let y = vec![1.0, 2.0, 3.0];
        let qr = factor(&values, 3, 2, &y);
        assert_eq!(qr.deficient_column(1e-10), Some(1));
    }

    #[test]
    fn r_transpose_r_reconstructs_gram_matrix() {
        let values = vec![
            1.0, 2.0, 0.5, //
            1.0, -1.0, 1.5, //
            1.0, 0.0, -2.0, //
            1.0, 3.0, 0.0, //
            1.0, 1.0, 1.0,
        ];
        let (n, p) = (5usize, 3usize);
        let y = vec![0.0; n];
        let qr = factor(&values, n, p, &y);
        for i in 0..p {
            for j in 0..p {
                let gram: f64 = (0..n).map(|k| values[k * p + i] * values[k * p + j]).sum();
                let rtr: f64 = (0..p).map(|k| qr.r[k * p + i] * qr.r[k * p + j]).sum();
                assert!((gram - rtr).abs() < 1e-10, "Gram mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn single_column_mean_solve() {
        let values = vec![1.0, 1.0];
        let y = vec![2.0, 4.0];
        let qr = factor(&values, 2, 1, &y);
        let beta = qr.solve();
        assert!((beta[0] - 3.0).abs() < 1e-12);
    }
}
