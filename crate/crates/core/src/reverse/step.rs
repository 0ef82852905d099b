use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::tableau::{Cell, ColoredTableau};
use super::trapezium::{left_boundary_col, right_boundary_col};
use crate::shape::NeighbouringPair;
use crate::Error;

/// Data needed to implement one pair on a given tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairState {
    pub pair: NeighbouringPair,
    /// Every value present in the columns `[C, C']`.
    pub values: BTreeSet<usize>,
    /// `C⁻`: the column holding the row-`s` entry of the left boundary.
    pub left_boundary: usize,
    /// Column holding the row-`s` entry of the right boundary.
    pub right_boundary: usize,
    /// `S_i`: columns of `[C⁻, right_boundary]` with black height at most `s`
    /// and total height at least `s`, left to right.
    pub eligible: Vec<usize>,
}

/// One branch of an implementation step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ImplementationChoice {
    pub pair: NeighbouringPair,
    /// `C''`: the column whose row-`s` black entry turns red.
    pub source_col: usize,
    /// `C'''`: the column receiving the new black entry in row `s + 1`.
    pub landing_col: usize,
    /// Height-`s` column absorbing the shifted lower parts; equals
    /// `landing_col` when no shifting is needed.
    pub shift_stop: usize,
}

impl ImplementationChoice {
    /// Whether this choice moves lower parts past at least one height-`s`
    /// column.
    pub fn is_shifting(&self) -> bool {
        self.shift_stop != self.landing_col
    }
}

pub fn pair_state(rt: &ColoredTableau, p: &NeighbouringPair) -> Result<PairState, Error> {
    let s = p.height;
    let values = (p.left..=p.right)
        .flat_map(|c| rt.column(c).iter().map(|cell| cell.value))
        .collect();
    let left_boundary = left_boundary_col(rt, p, s)?;
    let right_boundary = right_boundary_col(rt, p, s)?;
    let eligible: Vec<usize> = (left_boundary..=right_boundary)
        .filter(|&c| rt.black_height(c) <= s && rt.height(c) >= s)
        .collect();
    let fail = |detail: String| Error::Enabling {
        pair: p.to_string(),
        detail,
        trace: rt.render_ascii(),
    };
    let Some(&first) = eligible.first() else {
        return Err(fail("no eligible column".into()));
    };
    if rt.height(first) != s {
        return Err(fail(format!(
            "leftmost eligible column C{first} has height {} instead of {s}",
            rt.height(first)
        )));
    }
    if let Some(&bad) = eligible[1..].iter().find(|&&c| rt.black_height(c) != s) {
        return Err(fail(format!(
            "eligible column C{bad} has black height {} instead of {s}",
            rt.black_height(bad)
        )));
    }
    Ok(PairState {
        pair: *p,
        values,
        left_boundary,
        right_boundary,
        eligible,
    })
}

/// All legal `(source, shift stop)` combinations: sources right to left, and
/// for each source the stops right to left, ending with extreme shifting.
pub fn enumerate_choices(
    rt: &ColoredTableau,
    p: &NeighbouringPair,
) -> Result<Vec<ImplementationChoice>, Error> {
    let st = pair_state(rt, p)?;
    let s = p.height;
    if st.eligible.len() < 2 {
        return Err(Error::NotImplementable {
            pair: p.to_string(),
            trace: rt.render_ascii(),
        });
    }
    let mut out = Vec::new();
    for &source in st.eligible[1..].iter().rev() {
        let landing = (st.left_boundary..source)
            .rev()
            .find(|&c| rt.height(c) >= s)
            .expect("left boundary column reaches row s");
        if rt.height(landing) == s {
            out.push(ImplementationChoice {
                pair: *p,
                source_col: source,
                landing_col: landing,
                shift_stop: landing,
            });
            continue;
        }
        for stop in (st.left_boundary..landing).rev().filter(|&c| rt.height(c) == s) {
            out.push(ImplementationChoice {
                pair: *p,
                source_col: source,
                landing_col: landing,
                shift_stop: stop,
            });
        }
    }
    Ok(out)
}

/// Recolours the row-`s` black entry `j` of the source column red, places a
/// black `j` in row `s + 1` of the landing column and, if that box was
/// occupied, shifts the lower parts (rows below `s`) one step left along the
/// chain of taller columns down to the stop column.
pub fn implement_pair(
    rt: &ColoredTableau,
    p: &NeighbouringPair,
    ch: &ImplementationChoice,
) -> Result<ColoredTableau, Error> {
    let legal = enumerate_choices(rt, p)?;
    if ch.pair != *p || !legal.contains(ch) {
        return Err(Error::IllegalChoice {
            pair: p.to_string(),
            detail: format!(
                "source C{} / stop C{} is not among the legal choices",
                ch.source_col, ch.shift_stop
            ),
        });
    }
    Ok(apply_choice(rt, ch))
        .and_then(|next| match next.check_structure() {
            Ok(()) => Ok(next),
            Err(detail) => Err(Error::Structure {
                pair: p.to_string(),
                detail,
                trace: format!("before:\n{}after:\n{}", rt.render_ascii(), next.render_ascii()),
            }),
        })
}

pub(crate) fn apply_choice(rt: &ColoredTableau, ch: &ImplementationChoice) -> ColoredTableau {
    let s = ch.pair.height;
    let mut next = rt.clone();
    let cols = next.columns_mut();
    let src = &mut cols[ch.source_col - 1][s - 1];
    debug_assert!(src.is_black());
    let j = src.value;
    src.color = super::Color::Red;

    if ch.landing_col == ch.shift_stop {
        debug_assert_eq!(cols[ch.landing_col - 1].len(), s);
        cols[ch.landing_col - 1].push(Cell::black(j));
        return next;
    }
    // chain: stop, every taller column in between, landing
    let mut chain = vec![ch.shift_stop];
    chain.extend((ch.shift_stop + 1..ch.landing_col).filter(|&c| rt.height(c) > s));
    chain.push(ch.landing_col);
    let mut carried: Vec<Cell> = vec![Cell::black(j)];
    for &c in chain.iter().rev() {
        let col = &mut cols[c - 1];
        let lower = col.split_off(s);
        col.extend(carried);
        carried = lower;
    }
    debug_assert!(carried.is_empty());
    next
}
