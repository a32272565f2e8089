//! Dense LU factorization with partial pivoting, used only for determinants.

/// `log|det|` and the sign of the determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub log_abs: f64,
    pub sign: f64,
}

/// Determinant of the row-major `dim x dim` matrix, factorized in place.
///
/// Pivot rows are chosen by largest magnitude in the column; the sign
/// accumulates the permutation parity and the pivot signs. A zero pivot
/// gives `log_abs = -inf` and `sign = 0`.
pub fn lu_log_det(a: &mut [f64], dim: usize) -> LogDet {
    assert_eq!(
        a.len(),
        dim * dim,
        "matrix storage does not match dimension"
    );
    let mut log_abs = 0.0;
    let mut sign = 1.0;
    for col in 0..dim {
        let (piv, piv_abs) =
            (col..dim)
                .map(|r| (r, a[r * dim + col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if piv_abs == 0.0 || !piv_abs.is_finite() {
            return LogDet {
                log_abs: if piv_abs == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    f64::NAN
                },
                sign: 0.0,
            };
        }
        if piv != col {
            for j in 0..dim {
                a.swap(col * dim + j, piv * dim + j);
            }
            sign = -sign;
        }
        let p = a[col * dim + col];
        if p < 0.0 {
            sign = -sign;
        }
        log_abs += piv_abs.ln();
        let (head, tail) = a.split_at_mut((col + 1) * dim);
        let pivot_row = &head[col * dim..];
        for row in tail.chunks_exact_mut(dim) {
            let factor = row[col] / p;
            if factor == 0.0 {
                continue;
            }
            row[col] = 0.0;
            for (x, &u) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                *x -= factor * u;
            }
        }
    }
    LogDet { log_abs, sign }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal() {
        let mut eye = vec![1.0, 0.0, 0.0, 1.0];
        assert_eq!(
            lu_log_det(&mut eye, 2),
            LogDet {
                log_abs: 0.0,
                sign: 1.0
            }
        );
        let mut d = vec![2.0, 0.0, 0.0, 0.0, -3.0, 0.0, 0.0, 0.0, 0.5];
        let r = lu_log_det(&mut d, 3);
        assert!((r.log_abs - 3f64.ln()).abs() < 1e-15);
        assert_eq!(r.sign, -1.0);
    }

    #[test]
    fn pivoting_tracks_permutation_sign() {
        let mut m = vec![0.0, 1.0, 1.0, 0.0];
        let r = lu_log_det(&mut m, 2);
        assert_eq!(r.sign, -1.0);
        assert!(r.log_abs.abs() < 1e-15);
    }

    #[test]
    fn singular() {
        let mut m = vec![1.0, 2.0, 2.0, 4.0];
        let r = lu_log_det(&mut m, 2);
        assert_eq!(r.sign, 0.0);
    }

    /// Cofactor expansion as an independent oracle.
    fn cofactor_det(m: &[f64], dim: usize) -> f64 {
        if dim == 1 {
            return m[0];
        }
        (0..dim)
            .map(|j| {
                let minor: Vec<f64> = (1..dim)
                    .flat_map(|r| (0..dim).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| m[r * dim + c])
                    .collect();
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                s * m[j] * cofactor_det(&minor, dim - 1)
            })
            .sum()
    }

    #[test]
    fn matches_cofactor_expansion() {
        let m = vec![
            0.3, -1.2, 0.7, 2.0, //
            1.1, 0.4, -0.5, 0.2, //
            -0.9, 0.8, 1.5, -0.3, //
            0.25, 0.6, -1.1, 0.9,
        ];
        let det = cofactor_det(&m, 4);
        let r = lu_log_det(&mut m.clone(), 4);
        assert!((r.sign * r.log_abs.exp() - det).abs() < 1e-13 * det.abs());
    }
}
