//! Compositions, the standard tableau, neighbouring column pairs and the
//! coordinate basis of the nilradical.
//!
//! Columns and rows are 1-based; row 1 is the top row.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A coordinate `x_{i,j}` of the nilradical, `i < j`.
pub type Root = (usize, usize);

/// A composition `(c_1, ..., c_k)` of `n`; the parts are the column heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("composition must have at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition("parts must be positive".into()));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_columns(&self) -> usize {
        self.parts.len()
    }

    /// Height of column `col` (1-based).
    pub fn height(&self, col: usize) -> usize {
        self.parts[col - 1]
    }

    /// Every composition of `n`, in lexicographic order of parts.
    pub fn all_of(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self, Error> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        // accept the displayed form `(1,2,2,1)` as well
        let s = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Err(Error::InvalidComposition("empty composition".into()));
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::InvalidComposition(format!("{tok:?} is not an integer")))?;
            if v <= 0 {
                return Err(Error::InvalidComposition("parts must be positive".into()));
            }
            parts.push(v as usize);
        }
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A box `C_col ∩ R_row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Box {
    pub col: usize,
    pub row: usize,
}

impl Box {
    pub fn new(col: usize, row: usize) -> Self {
        Self { col, row }
    }
}

/// Filling of the diagram by `1..=n`, down each column and then left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    composition: Composition,
    columns: Vec<Vec<usize>>,
    position: Vec<Box>,
}

impl StandardTableau {
    pub fn new(comp: &Composition) -> Self {
        let mut columns = Vec::with_capacity(comp.num_columns());
        let mut position = vec![Box::new(0, 0)];
        let mut next = 1;
        for (c, &h) in comp.parts().iter().enumerate() {
            let col: Vec<usize> = (next..next + h).collect();
            for (r, _) in col.iter().enumerate() {
                position.push(Box::new(c + 1, r + 1));
            }
            next += h;
            columns.push(col);
        }
        Self {
            composition: comp.clone(),
            columns,
            position,
        }
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn n(&self) -> usize {
        self.composition.n()
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    /// Entries of column `col`, top to bottom.
    pub fn column(&self, col: usize) -> &[usize] {
        &self.columns[col - 1]
    }

    pub fn entry(&self, b: Box) -> Option<usize> {
        self.columns.get(b.col.checked_sub(1)?)?.get(b.row.checked_sub(1)?).copied()
    }

    /// Box holding `value`.
    pub fn position(&self, value: usize) -> Box {
        self.position[value]
    }

    pub fn column_of(&self, value: usize) -> usize {
        self.position[value].col
    }
}

pub fn standard_tableau(comp: &Composition) -> StandardTableau {
    StandardTableau::new(comp)
}

/// Two columns of equal height `s` with no height-`s` column strictly between.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NeighbouringPair {
    pub left: usize,
    pub right: usize,
    pub height: usize,
}

impl NeighbouringPair {
    pub fn new(left: usize, right: usize, height: usize) -> Self {
        Self { left, right, height }
    }

    /// True if `col` lies in `]left, right]`.
    pub fn surrounds(&self, col: usize) -> bool {
        self.left < col && col <= self.right
    }

    pub fn label(&self) -> String {
        format!("(C{},C{})", self.left, self.right)
    }
}

impl fmt::Display for NeighbouringPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(C{},C{};s={})", self.left, self.right, self.height)
    }
}

/// All neighbouring pairs, sorted by height descending and then by left
/// column ascending.
pub fn neighbouring_pairs(comp: &Composition) -> Vec<NeighbouringPair> {
    let parts = comp.parts();
    let mut pairs = Vec::new();
    for (l, &h) in parts.iter().enumerate() {
        if let Some(off) = parts[l + 1..].iter().position(|&x| x == h) {
            pairs.push(NeighbouringPair::new(l + 1, l + off + 2, h));
        }
    }
    pairs.sort_by(|a, b| b.height.cmp(&a.height).then(a.left.cmp(&b.left)));
    pairs
}

/// Whether some column strictly inside the pair is taller than the pair.
pub fn has_tall_intermediate(comp: &Composition, p: &NeighbouringPair) -> bool {
    (p.left + 1..p.right).any(|c| comp.height(c) > p.height)
}

/// Boxes of rows `1..=s` in the columns `]C, C']`.
pub fn left_rectangle(t: &StandardTableau, p: &NeighbouringPair) -> BTreeSet<Box> {
    let comp = t.composition();
    (p.left + 1..=p.right)
        .flat_map(|c| (1..=p.height.min(comp.height(c))).map(move |r| Box::new(c, r)))
        .collect()
}

/// Entries of the left rectangle.
pub fn left_rectangle_entries(t: &StandardTableau, p: &NeighbouringPair) -> BTreeSet<usize> {
    left_rectangle(t, p)
        .into_iter()
        .filter_map(|b| t.entry(b))
        .collect()
}

/// Coordinates `(i, j)`, `i < j`, with `i` and `j` in different columns.
pub fn m_basis(comp: &Composition) -> BTreeSet<Root> {
    let t = StandardTableau::new(comp);
    let n = comp.n();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if t.column_of(i) != t.column_of(j) {
                out.insert((i, j));
            }
        }
    }
    out
}

pub fn is_levi_root(t: &StandardTableau, i: usize, j: usize) -> bool {
    t.column_of(i) == t.column_of(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn standard_tableau_columns() {
        let t = standard_tableau(&comp("1,2,2,1"));
        assert_eq!(t.columns(), &[vec![1], vec![2, 3], vec![4, 5], vec![6]]);
        let t = standard_tableau(&comp("1"));
        assert_eq!(t.columns(), &[vec![1]]);
        let t = standard_tableau(&comp("1,2,3,3,1,2"));
        assert_eq!(
            t.columns(),
            &[
                vec![1],
                vec![2, 3],
                vec![4, 5, 6],
                vec![7, 8, 9],
                vec![10],
                vec![11, 12]
            ]
        );
        assert_eq!(t.position(8), Box::new(4, 2));
    }

    #[test]
    fn pairs_of_worked_examples() {
        let p = neighbouring_pairs(&comp("1,2,2,1"));
        assert_eq!(p, vec![NeighbouringPair::new(2, 3, 2), NeighbouringPair::new(1, 4, 1)]);
        let p = neighbouring_pairs(&comp("2,2,2"));
        assert_eq!(p, vec![NeighbouringPair::new(1, 2, 2), NeighbouringPair::new(2, 3, 2)]);
        let p = neighbouring_pairs(&comp("1,2,3,3,1,2"));
        assert_eq!(
            p,
            vec![
                NeighbouringPair::new(3, 4, 3),
                NeighbouringPair::new(2, 6, 2),
                NeighbouringPair::new(1, 5, 1)
            ]
        );
    }

    #[test]
    fn left_rectangles() {
        let t = standard_tableau(&comp("1,2,2,1"));
        let e = left_rectangle_entries(&t, &NeighbouringPair::new(1, 4, 1));
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![2, 4, 6]);
        let e = left_rectangle_entries(&t, &NeighbouringPair::new(2, 3, 2));
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec![4, 5]);
        let t = standard_tableau(&comp("2,2"));
        let r = left_rectangle(&t, &NeighbouringPair::new(1, 2, 2));
        assert_eq!(r, [Box::new(2, 1), Box::new(2, 2)].into_iter().collect());
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(m_basis(&comp("1,2,2,1")).len(), 13);
        assert!(m_basis(&comp("4")).is_empty());
        assert_eq!(m_basis(&comp("1,1")), [(1, 2)].into_iter().collect());
    }

    #[test]
    fn levi_roots() {
        let t = standard_tableau(&comp("1,2,2,1"));
        assert!(is_levi_root(&t, 2, 3));
        assert!(!is_levi_root(&t, 2, 4));
        assert!(is_levi_root(&t, 4, 5));
    }

    #[test]
    fn parse_errors() {
        let err = "0,2".parse::<Composition>().unwrap_err();
        assert!(err.to_string().contains("parts must be positive"));
        assert!("1,x".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(Composition::all_of(4).len(), 8);
    }
}
