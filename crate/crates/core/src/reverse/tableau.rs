use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::shape::{m_basis, Box, Composition, Root, StandardTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub value: usize,
    pub color: Color,
}

impl Cell {
    pub fn black(value: usize) -> Self {
        Self { value, color: Color::Black }
    }

    pub fn red(value: usize) -> Self {
        Self { value, color: Color::Red }
    }

    pub fn is_black(&self) -> bool {
        self.color == Color::Black
    }
}

/// One box of the JSON rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBox {
    pub col: usize,
    pub row: usize,
    pub value: usize,
    pub color: Color,
}

/// A reverse tableau: the diagram columns filled with values, each box black
/// or red. Columns never have gaps, so a column is a top-down list of cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredTableau {
    composition: Composition,
    columns: Vec<Vec<Cell>>,
}

impl ColoredTableau {
    /// The all-black standard tableau.
    pub fn init(t: &StandardTableau) -> Self {
        Self {
            composition: t.composition().clone(),
            columns: t
                .columns()
                .iter()
                .map(|c| c.iter().map(|&v| Cell::black(v)).collect())
                .collect(),
        }
    }

    pub(crate) fn from_columns(composition: Composition, columns: Vec<Vec<Cell>>) -> Self {
        Self { composition, columns }
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn n(&self) -> usize {
        self.composition.n()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Cell>] {
        &self.columns
    }

    pub(crate) fn columns_mut(&mut self) -> &mut Vec<Vec<Cell>> {
        &mut self.columns
    }

    pub fn column(&self, col: usize) -> &[Cell] {
        &self.columns[col - 1]
    }

    /// Row index of the lowest box of the column.
    pub fn height(&self, col: usize) -> usize {
        self.columns[col - 1].len()
    }

    /// Row index of the lowest black box of the column (0 if none).
    pub fn black_height(&self, col: usize) -> usize {
        self.columns[col - 1]
            .iter()
            .rposition(Cell::is_black)
            .map_or(0, |r| r + 1)
    }

    pub fn cell(&self, b: Box) -> Option<Cell> {
        self.columns
            .get(b.col.checked_sub(1)?)?
            .get(b.row.checked_sub(1)?)
            .copied()
    }

    pub fn boxes(&self) -> impl Iterator<Item = (Box, Cell)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| {
            col.iter()
                .enumerate()
                .map(move |(r, &cell)| (Box::new(c + 1, r + 1), cell))
        })
    }

    /// Every box holding `value`, left to right.
    pub fn occurrences(&self, value: usize) -> Vec<Box> {
        let mut out: Vec<Box> = self
            .boxes()
            .filter(|(_, cell)| cell.value == value)
            .map(|(b, _)| b)
            .collect();
        out.sort();
        out
    }

    pub fn black_position(&self, value: usize) -> Option<Box> {
        self.boxes()
            .find(|(_, cell)| cell.value == value && cell.is_black())
            .map(|(b, _)| b)
    }

    pub fn rightmost(&self, value: usize) -> Option<Box> {
        self.occurrences(value).last().copied()
    }

    /// Column holding `value` in row `row`, if any.
    pub fn column_in_row(&self, value: usize, row: usize) -> Option<usize> {
        self.columns
            .iter()
            .position(|col| col.get(row - 1).is_some_and(|c| c.value == value))
            .map(|c| c + 1)
    }

    /// Red values with multiplicity.
    pub fn red_multiset(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (_, cell) in self.boxes() {
            if !cell.is_black() {
                *out.entry(cell.value).or_insert(0) += 1;
            }
        }
        out
    }

    /// Red values as a sorted list, repeated by multiplicity.
    pub fn red_values(&self) -> Vec<usize> {
        self.red_multiset()
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    /// Coordinates `x_{i,j}` of the nilradical killed by this tableau: the
    /// rightmost `i` sits above the black `j` in its column, or in a column
    /// strictly to its right.
    pub fn excluded_roots(&self) -> BTreeSet<Root> {
        let n = self.n();
        let mut rightmost = vec![Box::new(0, 0); n + 1];
        let mut black = vec![Box::new(0, 0); n + 1];
        for (b, cell) in self.boxes() {
            if b.col >= rightmost[cell.value].col {
                rightmost[cell.value] = b;
            }
            if cell.is_black() {
                black[cell.value] = b;
            }
        }
        m_basis(&self.composition)
            .into_iter()
            .filter(|&(i, j)| {
                let ri = rightmost[i];
                let bj = black[j];
                ri.col > bj.col || (ri.col == bj.col && ri.row < bj.row)
            })
            .collect()
    }

    /// Nilradical coordinates that are not excluded.
    pub fn u_basis(&self) -> BTreeSet<Root> {
        let excluded = self.excluded_roots();
        m_basis(&self.composition)
            .into_iter()
            .filter(|r| !excluded.contains(r))
            .collect()
    }

    /// Checks that the tableau is standard with multiplicities: strict
    /// increase down columns and along rows, one black box per value, red
    /// copies forming a reverse string, and no value twice in a row.
    pub fn check_structure(&self) -> Result<(), String> {
        for (c, col) in self.columns.iter().enumerate() {
            for w in col.windows(2) {
                if w[0].value >= w[1].value {
                    return Err(format!(
                        "column C{} not strictly increasing at {} / {}",
                        c + 1,
                        w[0].value,
                        w[1].value
                    ));
                }
            }
        }
        let max_rows = self.columns.iter().map(Vec::len).max().unwrap_or(0);
        for r in 0..max_rows {
            let mut prev: Option<(usize, usize)> = None;
            for (c, col) in self.columns.iter().enumerate() {
                if let Some(cell) = col.get(r) {
                    if let Some((pc, pv)) = prev {
                        if pv >= cell.value {
                            return Err(format!(
                                "row R{} not strictly increasing: {} in C{} then {} in C{}",
                                r + 1,
                                pv,
                                pc,
                                cell.value,
                                c + 1
                            ));
                        }
                    }
                    prev = Some((c + 1, cell.value));
                }
            }
        }
        let n = self.n();
        let mut occ: Vec<Vec<(Box, Cell)>> = vec![Vec::new(); n + 1];
        for (b, cell) in self.boxes() {
            if cell.value == 0 || cell.value > n {
                return Err(format!("value {} out of range", cell.value));
            }
            occ[cell.value].push((b, cell));
        }
        for (v, list) in occ.iter_mut().enumerate().skip(1) {
            list.sort_by_key(|(b, _)| *b);
            let blacks = list.iter().filter(|(_, c)| c.is_black()).count();
            if blacks != 1 {
                return Err(format!("value {v} has {blacks} black boxes"));
            }
            if !list[0].1.is_black() {
                return Err(format!("leftmost occurrence of {v} is red"));
            }
            for w in list.windows(2) {
                let (a, b) = (w[0].0, w[1].0);
                if a.col == b.col || b.row + 1 != a.row {
                    return Err(format!(
                        "occurrences of {v} at C{}R{} and C{}R{} do not form a reverse string",
                        a.col, a.row, b.col, b.row
                    ));
                }
            }
            let rows: BTreeSet<usize> = list.iter().map(|(b, _)| b.row).collect();
            if rows.len() != list.len() {
                return Err(format!("value {v} appears twice in one row"));
            }
        }
        Ok(())
    }

    pub fn to_json_boxes(&self) -> Vec<JsonBox> {
        self.boxes()
            .map(|(b, cell)| JsonBox {
                col: b.col,
                row: b.row,
                value: cell.value,
                color: cell.color,
            })
            .collect()
    }

    /// One line per row; red entries are wrapped in brackets. Cells are
    /// right-aligned to a common width and trailing blanks trimmed.
    pub fn render_ascii(&self) -> String {
        let render = |c: &Cell| match c.color {
            Color::Black => c.value.to_string(),
            Color::Red => format!("[{}]", c.value),
        };
        let width = self
            .boxes()
            .map(|(_, c)| render(&c).len())
            .max()
            .unwrap_or(1);
        let rows = self.columns.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = String::new();
        for r in 0..rows {
            let cells: Vec<String> = self
                .columns
                .iter()
                .map(|col| {
                    let s = col.get(r).map(render).unwrap_or_default();
                    format!("{s:>width$}")
                })
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ColoredTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}
