//! Exact rational inversion for the small Cartan blocks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Inverse of a square integer matrix over `Q`, or `None` when singular.
pub(crate) fn invert(matrix: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, p) in aug[r].iter_mut().zip(pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_a2_cartan() {
        let inv = invert(&[vec![2, -1], vec![-1, 2]]).unwrap();
        let third = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(3));
        assert_eq!(inv, vec![vec![third(2), third(1)], vec![third(1), third(2)]]);
    }

    #[test]
    fn singular_is_none() {
        assert!(invert(&[vec![1, 2], vec![2, 4]]).is_none());
    }
}
