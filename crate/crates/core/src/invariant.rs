//! Semi-invariants attached to neighbouring pairs, as lowest `c`-degree
//! coefficients of minors of `c·Id + X`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::reverse::{ColoredTableau, PseudoPair};
use crate::shape::{left_rectangle_entries, NeighbouringPair, Root, StandardTableau};
use crate::symalg::{det_symbolic, Matrix, Polynomial, Variable};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BSInvariant {
    pub pair: NeighbouringPair,
    pub poly: Polynomial,
    pub degree: u32,
    pub c_power: u32,
}

/// Rows and columns removed from the `n × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedMinorSpec {
    pub deleted_rows: BTreeSet<usize>,
    pub deleted_cols: BTreeSet<usize>,
    pub n: usize,
}

impl IndexedMinorSpec {
    pub fn kept_rows(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.deleted_rows.contains(i)).collect()
    }

    pub fn kept_cols(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.deleted_cols.contains(i)).collect()
    }
}

fn entry(basis: &BTreeSet<Root>, i: usize, j: usize, with_deform: bool) -> Polynomial {
    if i == j && with_deform {
        Polynomial::c()
    } else if i < j && basis.contains(&(i, j)) {
        Polynomial::x(i, j)
    } else {
        Polynomial::zero()
    }
}

/// `X` (or `c·Id + X`) with entry `x_{i,j}` at `(i, j)` for each basis pair.
pub fn generic_matrix(basis: &BTreeSet<Root>, n: usize, with_deform: bool) -> Matrix {
    (1..=n)
        .map(|i| (1..=n).map(|j| entry(basis, i, j, with_deform)).collect())
        .collect()
}

/// Submatrix of `c·Id + X` on the given rows and columns (1-based).
pub fn deformed_submatrix(basis: &BTreeSet<Root>, rows: &[usize], cols: &[usize]) -> Matrix {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| entry(basis, i, j, true)).collect())
        .collect()
}

/// Lowest `c`-coefficient of `det (c·Id + X)[rows, cols]`, sign-normalized.
pub fn minor_lowest_c(
    basis: &BTreeSet<Root>,
    rows: &[usize],
    cols: &[usize],
) -> Result<(Polynomial, u32), Error> {
    if rows.len() != cols.len() {
        return Err(Error::NotSquare {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let det = det_symbolic(&deformed_submatrix(basis, rows, cols))?;
    let (p, e) = det.lowest_c_coefficient()?;
    Ok((p.normalized(), e))
}

pub fn bs_minor_spec(t: &StandardTableau, p: &NeighbouringPair) -> IndexedMinorSpec {
    IndexedMinorSpec {
        deleted_rows: t.column(p.right).iter().copied().collect(),
        deleted_cols: t.column(p.left).iter().copied().collect(),
        n: t.n(),
    }
}

/// The invariant of a neighbouring pair over the coordinates in `basis`.
///
/// Delete the rows indexed by the entries of `C'` and the columns indexed by
/// the entries of `C`, take the determinant and keep its lowest `c`-degree
/// part.
pub fn bs_invariant(
    t: &StandardTableau,
    p: &NeighbouringPair,
    basis: &BTreeSet<Root>,
) -> Result<BSInvariant, Error> {
    let spec = bs_minor_spec(t, p);
    let (poly, c_power) = minor_lowest_c(basis, &spec.kept_rows(), &spec.kept_cols()).map_err(|e| match e {
        Error::ZeroPolynomial => Error::DegenerateMinor { pair: p.label() },
        e => e,
    })?;
    let degree = poly.degree().unwrap_or(0);
    Ok(BSInvariant {
        pair: *p,
        poly,
        degree,
        c_power,
    })
}

/// Factor of a restricted invariant attached to one pseudo pair.
pub fn factor_invariant(
    _rt: &ColoredTableau,
    pseudo: &PseudoPair,
    basis: &BTreeSet<Root>,
) -> Result<Polynomial, Error> {
    let rows: Vec<usize> = pseudo.rows.iter().copied().collect();
    let cols: Vec<usize> = pseudo.cols.iter().copied().collect();
    let label = || {
        format!(
            "({:?},{:?})",
            pseudo.left.values, pseudo.right.values
        )
    };
    if rows.len() != cols.len() {
        return Err(Error::UnbalancedMinor {
            pair: label(),
            rows,
            cols,
        });
    }
    if rows.is_empty() {
        return Ok(Polynomial::one());
    }
    match minor_lowest_c(basis, &rows, &cols) {
        Ok((p, _)) => Ok(p),
        Err(Error::ZeroPolynomial) => Err(Error::DegenerateMinor { pair: label() }),
        Err(e) => Err(e),
    }
}

/// Sets every excluded coordinate to zero.
pub fn restrict_invariant(inv: &BSInvariant, excluded: &BTreeSet<Root>) -> Polynomial {
    restrict(&inv.poly, excluded)
}

pub fn restrict(p: &Polynomial, excluded: &BTreeSet<Root>) -> Polynomial {
    let kill: BTreeSet<Variable> = excluded.iter().map(|&(i, j)| Variable::x(i, j)).collect();
    p.substitute_zero(&kill)
}

/// Degree equals the number of entries of the left rectangle, and the
/// polynomial is homogeneous and multilinear.
pub fn check_degree_law(t: &StandardTableau, inv: &BSInvariant) -> Result<(), String> {
    let d = left_rectangle_entries(t, &inv.pair).len() as u32;
    if inv.degree != d {
        return Err(format!("{}: degree {} but left rectangle has {d} entries", inv.pair, inv.degree));
    }
    if !inv.poly.is_homogeneous() {
        return Err(format!("{}: not homogeneous", inv.pair));
    }
    if !inv.poly.is_multilinear() {
        return Err(format!("{}: not multilinear", inv.pair));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{m_basis, standard_tableau, Composition};

    #[test]
    fn worked_example_invariants() {
        let comp: Composition = "1,2,2,1".parse().unwrap();
        let t = standard_tableau(&comp);
        let basis = m_basis(&comp);
        let i2 = bs_invariant(&t, &NeighbouringPair::new(2, 3, 2), &basis).unwrap();
        assert_eq!(i2.poly.to_string(), "x_{2,4}*x_{3,5} - x_{2,5}*x_{3,4}");
        assert_eq!(i2.degree, 2);
        let i1 = bs_invariant(&t, &NeighbouringPair::new(1, 4, 1), &basis).unwrap();
        let expect = Polynomial::x(1, 2) * Polynomial::x(2, 4) * Polynomial::x(4, 6)
            + Polynomial::x(1, 2) * Polynomial::x(2, 5) * Polynomial::x(5, 6)
            + Polynomial::x(1, 3) * Polynomial::x(3, 4) * Polynomial::x(4, 6)
            + Polynomial::x(1, 3) * Polynomial::x(3, 5) * Polynomial::x(5, 6);
        assert!(i1.poly.equals_up_to_sign(&expect));
        assert_eq!(i1.degree, 3);
    }

    #[test]
    fn generic_matrix_shapes() {
        let m = generic_matrix(&BTreeSet::new(), 3, true);
        assert_eq!(det_symbolic(&m).unwrap(), Polynomial::c() * Polynomial::c() * Polynomial::c());
        let basis: BTreeSet<Root> = [(1, 2)].into_iter().collect();
        let m = generic_matrix(&basis, 2, false);
        assert_eq!(m[0][1], Polynomial::x(1, 2));
        assert!(m[0][0].is_zero() && m[1][0].is_zero());
    }

    #[test]
    fn restriction_kills_terms() {
        let comp: Composition = "1,2,2,1".parse().unwrap();
        let t = standard_tableau(&comp);
        let i2 = bs_invariant(&t, &NeighbouringPair::new(2, 3, 2), &m_basis(&comp)).unwrap();
        let ex: BTreeSet<Root> = [(2, 5), (3, 5)].into_iter().collect();
        assert!(restrict_invariant(&i2, &ex).is_zero());
        assert_eq!(restrict_invariant(&i2, &BTreeSet::new()), i2.poly);
    }
}
