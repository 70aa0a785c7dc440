//! Dense exact linear algebra on small matrices.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix expected");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = Scalar::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn inverse_of_two_by_two() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(-2), int(1)], vec![ratio(3, 2), ratio(-1, 2)]]);
    }

    #[test]
    fn singular_rejected() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(invert(&m).is_none());
        assert_eq!(invert(&vec![]), Some(vec![]));
    }
}
