//! Exact Gaussian elimination over the rationals.

use crate::scalar::Scalar;

/// Basis of `{v : M v = 0}` for the `rows x ncols` matrix `m`.
pub(crate) fn nullspace(mut m: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..ncols {
                    let delta = &factor * &m[row][j];
                    m[i][j] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&n| Scalar::from(n)).collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6])];
        let ker = nullspace(m.clone(), 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            for r in &m {
                let dot: Scalar = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = vec![row(&[1, 1]), row(&[1, -1]), row(&[0, 3])];
        assert!(nullspace(m, 2).is_empty());
    }

    #[test]
    fn zero_column_is_in_kernel() {
        let m = vec![row(&[0, 1]), row(&[0, 5])];
        assert_eq!(nullspace(m, 2), vec![row(&[1, 0])]);
    }
}
