use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::tableau::ColoredTableau;
use crate::shape::{Box, NeighbouringPair};
use crate::Error;

/// Value of the standard tableau at `(col, row)`.
pub(crate) fn standard_value(rt: &ColoredTableau, col: usize, row: usize) -> usize {
    rt.composition().parts()[..col - 1].iter().sum::<usize>() + row
}

/// Column of the left boundary box in row `t`: the rightmost box of that row
/// holding the row-`t` value of `C`.
pub(crate) fn left_boundary_col(rt: &ColoredTableau, p: &NeighbouringPair, t: usize) -> Result<usize, Error> {
    let v = standard_value(rt, p.left, t);
    rt.column_in_row(v, t).ok_or_else(|| Error::Structure {
        pair: p.to_string(),
        detail: format!("value {v} of the left column is missing from row R{t}"),
        trace: rt.render_ascii(),
    })
}

/// Column of the right boundary box in row `t`: the leftmost box of that row
/// holding the row-`t` value of `C'`.
pub(crate) fn right_boundary_col(rt: &ColoredTableau, p: &NeighbouringPair, t: usize) -> Result<usize, Error> {
    let v = standard_value(rt, p.right, t);
    rt.column_in_row(v, t).ok_or_else(|| Error::Structure {
        pair: p.to_string(),
        detail: format!("value {v} of the right column is missing from row R{t}"),
        trace: rt.render_ascii(),
    })
}

/// A height-`s` column of a trapezium, possibly skewed: `cols[t-1]` is its
/// column in row `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoColumn {
    pub cols: Vec<usize>,
    pub values: Vec<usize>,
}

/// Consecutive height-`s` columns of a trapezium, with the row and column
/// index sets of the minor giving the corresponding factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoPair {
    pub index: usize,
    pub left: PseudoColumn,
    pub right: PseudoColumn,
    pub rows: BTreeSet<usize>,
    pub cols: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trapezium {
    pub pair: NeighbouringPair,
    /// `B`: one box per row `1..=s`.
    pub left: Vec<Box>,
    /// `B'`: one box per row `1..=s`, all black.
    pub right: Vec<Box>,
    pub members: Vec<Box>,
    /// Members strictly right of `B`, up to and including `B'`.
    pub left_members: Vec<Box>,
    /// `B`, the eligible columns strictly inside, then `B'`.
    pub pseudo_columns: Vec<PseudoColumn>,
}

impl Trapezium {
    /// Values of each pseudo column in rows `1..=s`.
    pub fn pseudo_column_values(&self) -> Vec<Vec<usize>> {
        self.pseudo_columns.iter().map(|c| c.values.clone()).collect()
    }
}

/// The trapezium of a pair not yet implemented; fails unless `B'` is black.
pub fn trapezium(rt: &ColoredTableau, p: &NeighbouringPair) -> Result<Trapezium, Error> {
    build(rt, p, true)
}

/// Same region without the colour check on `B'`, for pairs already
/// implemented.
pub fn trapezium_unchecked(rt: &ColoredTableau, p: &NeighbouringPair) -> Result<Trapezium, Error> {
    build(rt, p, false)
}

fn build(rt: &ColoredTableau, p: &NeighbouringPair, check_black: bool) -> Result<Trapezium, Error> {
    let s = p.height;
    let mut left = Vec::with_capacity(s);
    let mut right = Vec::with_capacity(s);
    let mut members = Vec::new();
    let mut left_members = Vec::new();
    for t in 1..=s {
        let lc = left_boundary_col(rt, p, t)?;
        let rc = right_boundary_col(rt, p, t)?;
        if lc > rc {
            return Err(Error::Structure {
                pair: p.to_string(),
                detail: format!("left boundary C{lc} lies right of right boundary C{rc} in row R{t}"),
                trace: rt.render_ascii(),
            });
        }
        let rb = Box::new(rc, t);
        if check_black && !rt.cell(rb).is_some_and(|c| c.is_black()) {
            return Err(Error::Structure {
                pair: p.to_string(),
                detail: format!("right boundary box C{rc}R{t} is not black"),
                trace: rt.render_ascii(),
            });
        }
        left.push(Box::new(lc, t));
        right.push(rb);
        for c in lc..=rc {
            let b = Box::new(c, t);
            if rt.cell(b).is_some() {
                members.push(b);
                if c > lc {
                    left_members.push(b);
                }
            }
        }
    }

    let lb = left[s - 1].col;
    let rb = right[s - 1].col;
    let row_values = |cols: &[usize]| -> Vec<usize> {
        cols.iter()
            .enumerate()
            .map(|(t, &c)| rt.column(c)[t].value)
            .collect()
    };
    let mut pseudo_columns = Vec::new();
    let bcols: Vec<usize> = left.iter().map(|b| b.col).collect();
    pseudo_columns.push(PseudoColumn {
        values: row_values(&bcols),
        cols: bcols,
    });
    // intermediate columns must clear both boundaries in every row
    let inside = |c: usize| left.iter().all(|b| b.col < c) && right.iter().all(|b| c < b.col);
    for c in lb + 1..rb {
        if inside(c) && rt.height(c) >= s && rt.black_height(c) <= s {
            let cols = vec![c; s];
            pseudo_columns.push(PseudoColumn {
                values: row_values(&cols),
                cols,
            });
        }
    }
    let rcols: Vec<usize> = right.iter().map(|b| b.col).collect();
    pseudo_columns.push(PseudoColumn {
        values: row_values(&rcols),
        cols: rcols,
    });

    Ok(Trapezium {
        pair: *p,
        left,
        right,
        members,
        left_members,
        pseudo_columns,
    })
}

/// Number of black boxes in the left trapezium.
pub fn black_count(rt: &ColoredTableau, p: &NeighbouringPair) -> Result<usize, Error> {
    let tr = trapezium_unchecked(rt, p)?;
    Ok(tr
        .left_members
        .iter()
        .filter(|&&b| rt.cell(b).is_some_and(|c| c.is_black()))
        .count())
}

/// Whether row `s` of the left trapezium holds a red entry.
pub fn has_red_in_top_row(rt: &ColoredTableau, p: &NeighbouringPair) -> Result<bool, Error> {
    let tr = trapezium_unchecked(rt, p)?;
    Ok(tr
        .left_members
        .iter()
        .filter(|b| b.row == p.height)
        .any(|&b| rt.cell(b).is_some_and(|c| !c.is_black())))
}

/// Box that decides which pseudo pair a value indexes as a row: its
/// rightmost occurrence in rows `1..=s`, or its black box if it has none
/// there.
fn row_anchor(rt: &ColoredTableau, value: usize, s: usize) -> Option<Box> {
    rt.occurrences(value)
        .into_iter()
        .filter(|b| b.row <= s)
        .max_by_key(|b| b.col)
        .or_else(|| rt.black_position(value))
}

/// Pseudo-neighbouring pairs of the trapezium with their minor index sets.
///
/// For consecutive pseudo columns `P`, `Q`, rows are the values anchored in
/// `[P, Q[` and columns the black entries in `]P, Q]`. Below row `s` the
/// row-`s` columns of `P` and `Q` bound the region, and neither `Q` itself
/// nor values anchored beyond `B'` count on the column side. The first pair also takes
/// every row-`1..=s` value of `C` as a row index.
pub fn pseudo_pairs(rt: &ColoredTableau, p: &NeighbouringPair) -> Result<Vec<PseudoPair>, Error> {
    let tr = trapezium(rt, p)?;
    let s = p.height;
    let rows_total = rt.columns().iter().map(Vec::len).max().unwrap_or(0);
    // anchored at or beyond the right boundary
    let escapes = |v: usize| {
        row_anchor(rt, v, s).is_some_and(|a| a.row <= s && a.col >= tr.right[a.row - 1].col)
    };
    let mut out = Vec::new();
    for (idx, w) in tr.pseudo_columns.windows(2).enumerate() {
        let (pl, pr) = (&w[0], &w[1]);
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for t in 1..=rows_total {
            let k = t.min(s) - 1;
            let (lo, hi) = (pl.cols[k], pr.cols[k]);
            for c in lo..=hi {
                let b = Box::new(c, t);
                let Some(cell) = rt.cell(b) else {
                    continue;
                };
                if c < hi && row_anchor(rt, cell.value, s) == Some(b) {
                    rows.insert(cell.value);
                }
                let col_side = c > lo && (t <= s || (c < hi && !escapes(cell.value)));
                if col_side && cell.is_black() {
                    cols.insert(cell.value);
                }
            }
        }
        if idx == 0 {
            rows.extend((1..=s).map(|t| standard_value(rt, p.left, t)));
        }
        out.push(PseudoPair {
            index: idx,
            left: pl.clone(),
            right: pr.clone(),
            rows,
            cols,
        });
    }
    Ok(out)
}
