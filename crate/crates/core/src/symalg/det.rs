use std::collections::HashMap;

use super::Polynomial;
use crate::Error;

/// Dense square matrix of polynomials, row-major.
pub type Matrix = Vec<Vec<Polynomial>>;

/// Exact determinant by Laplace expansion along the last remaining row,
/// memoised over the subset of columns still in play.
///
/// Only column subsets reachable through nonzero entries are visited, so
/// sparse matrices cost far less than the `2^m` worst case. The empty matrix
/// has determinant one.
pub fn det_symbolic(m: &[Vec<Polynomial>]) -> Result<Polynomial, Error> {
    let size = m.len();
    if let Some(bad) = m.iter().position(|row| row.len() != size) {
        return Err(Error::NotSquare {
            rows: size,
            cols: m[bad].len(),
        });
    }
    if size == 0 {
        return Ok(Polynomial::one());
    }
    if size > 63 {
        return Err(Error::TooLarge(size));
    }
    let full: u64 = (1u64 << size) - 1;
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    Ok(expand(m, full, &mut memo))
}

fn expand(m: &[Vec<Polynomial>], cols: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
    let k = cols.count_ones() as usize;
    if k == 0 {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let row = &m[k - 1];
    let mut acc = Polynomial::zero();
    let mut pos = 0usize;
    for (j, entry) in row.iter().enumerate() {
        if cols & (1 << j) == 0 {
            continue;
        }
        if !entry.is_zero() {
            let minor = expand(m, cols & !(1 << j), memo);
            if !minor.is_zero() {
                let term = entry.mul(&minor);
                // cofactor sign of position (k-1, pos) in the k x k submatrix
                if (k - 1 + pos).is_multiple_of(2) {
                    acc.add_assign_ref(&term);
                } else {
                    acc.add_assign_ref(&term.neg());
                }
            }
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> Polynomial {
        Polynomial::x(i, j)
    }

    #[test]
    fn two_by_two_minor() {
        let m = vec![vec![x(2, 4), x(2, 5)], vec![x(3, 4), x(3, 5)]];
        let d = det_symbolic(&m).unwrap();
        assert_eq!(d, &x(2, 4) * &x(3, 5) - &x(2, 5) * &x(3, 4));
    }

    #[test]
    fn diagonal_c() {
        let c = Polynomial::c();
        let z = Polynomial::zero();
        let m = vec![vec![c.clone(), z.clone()], vec![z, c.clone()]];
        assert_eq!(det_symbolic(&m).unwrap(), &c * &c);
    }

    #[test]
    fn empty_is_one() {
        assert!(det_symbolic(&[]).unwrap().is_one());
    }

    #[test]
    fn rejects_ragged() {
        let m = vec![vec![x(1, 2)], vec![x(1, 3), x(2, 3)]];
        assert!(matches!(det_symbolic(&m), Err(Error::NotSquare { .. })));
    }
}
