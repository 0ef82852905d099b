use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::enumerate::ComponentRecord;
use super::rank::codim;
use crate::invariant::{bs_invariant, factor_invariant, restrict, restrict_invariant, BSInvariant};
use crate::reverse::{black_count, has_red_in_top_row, pseudo_pairs, Cell, ColoredTableau, ImplementationTrace};
use crate::shape::{
    left_rectangle_entries, m_basis, neighbouring_pairs, standard_tableau, Composition, NeighbouringPair, Root,
};
use crate::symalg::Polynomial;
use crate::Error;

/// Outcome of a batch of checks; empty `failures` means everything held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.failures.push(msg());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// All invariants of the composition over the full nilradical.
pub fn all_invariants(comp: &Composition) -> Result<Vec<BSInvariant>, Error> {
    let t = standard_tableau(comp);
    let basis = m_basis(comp);
    neighbouring_pairs(comp)
        .iter()
        .map(|p| bs_invariant(&t, p, &basis))
        .collect()
}

/// Every invariant restricts to zero on `u` of the record.
pub fn verify_vanishing(comp: &Composition, record: &ComponentRecord) -> Result<Report, Error> {
    Ok(vanishing_on(&all_invariants(comp)?, &record.excluded))
}

pub fn vanishing_on(invs: &[BSInvariant], excluded: &BTreeSet<Root>) -> Report {
    let mut r = Report::default();
    for inv in invs {
        let res = restrict_invariant(inv, excluded);
        r.check(res.is_zero(), || format!("{} survives as {res}", inv.pair.label()));
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub pair: NeighbouringPair,
    pub stage: usize,
    pub restriction: Polynomial,
    pub factors: Vec<Polynomial>,
    pub product_matches: bool,
    pub degree_additive: bool,
}

impl FactorizationReport {
    pub fn ok(&self) -> bool {
        self.product_matches && self.degree_additive
    }
}

/// Compares the restriction of a free pair's invariant at stage `stage`
/// (1-based, `R^stage`) with the product of its pseudo-pair factors.
pub fn verify_factorization(
    trace: &ImplementationTrace,
    stage: usize,
    pair: &NeighbouringPair,
) -> Result<FactorizationReport, Error> {
    let comp = trace.composition();
    let rt = &trace.stages()[stage - 1];
    let inv = bs_invariant(&standard_tableau(comp), pair, &m_basis(comp))?;
    factorization_at(rt, &inv, stage)
}

pub(crate) fn factorization_at(
    rt: &ColoredTableau,
    inv: &BSInvariant,
    stage: usize,
) -> Result<FactorizationReport, Error> {
    let pair = &inv.pair;
    let restriction = restrict_invariant(inv, &rt.excluded_roots());
    if restriction.is_zero() {
        return Err(Error::NotFree { pair: pair.label() });
    }
    let u = rt.u_basis();
    let factors = pseudo_pairs(rt, pair)?
        .iter()
        .map(|pp| factor_invariant(rt, pp, &u))
        .collect::<Result<Vec<_>, _>>()?;
    let product = factors.iter().fold(Polynomial::one(), |acc, f| &acc * f);
    let deg_sum: u32 = factors.iter().map(|f| f.degree().unwrap_or(0)).sum();
    Ok(FactorizationReport {
        pair: *pair,
        stage,
        product_matches: restriction.equals_up_to_sign(&product),
        degree_additive: restriction.degree() == Some(deg_sum),
        restriction,
        factors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrullReport {
    pub codims: Vec<usize>,
    /// Pairs restricting to zero before their own implementation.
    pub premature: Vec<String>,
}

impl KrullReport {
    pub fn ok(&self) -> bool {
        self.premature.is_empty() && self.codims.iter().enumerate().all(|(t, &c)| c == t)
    }
}

/// Codimension of `closure(B·u(R^t))` at each stage, and freeness of the
/// pairs still waiting.
pub fn verify_krull_chain(trace: &ImplementationTrace, trials: u32, seed: u64) -> Result<KrullReport, Error> {
    let comp = trace.composition();
    let invs = all_invariants(comp)?;
    let mut codims = Vec::new();
    let mut premature = Vec::new();
    for (t, rt) in trace.stages().iter().enumerate() {
        codims.push(codim(comp, &rt.u_basis(), trials, seed));
        let done = &trace.steps()[..t];
        let ex = rt.excluded_roots();
        for inv in &invs {
            if done.iter().any(|s| s.pair == inv.pair) {
                continue;
            }
            if restrict_invariant(inv, &ex).is_zero() {
                premature.push(format!("{} vanishes at stage R{}", inv.pair.label(), t + 1));
            }
        }
    }
    Ok(KrullReport { codims, premature })
}

/// Structural lemmas along a trace: standardness of every stage, growth of
/// the excluded set, black counts and red entries in the top trapezium row.
pub fn verify_stage_lemmas(trace: &ImplementationTrace) -> Report {
    let comp = trace.composition();
    let t = standard_tableau(comp);
    let pairs = neighbouring_pairs(comp);
    let mut r = Report::default();
    let mut prev: Option<BTreeSet<Root>> = None;
    for (k, rt) in trace.stages().iter().enumerate() {
        let st = k + 1;
        let s = rt.check_structure();
        r.check(s.is_ok(), || format!("R{st}: {}", s.clone().unwrap_err()));
        let ex = rt.excluded_roots();
        if let Some(p) = &prev {
            r.check(p.is_subset(&ex), || format!("R{st}: excluded set shrank"));
        }
        prev = Some(ex);
        r.check(rt.red_values().len() == k, || format!("R{st}: {} red entries", rt.red_values().len()));
        let done = &trace.steps()[..k];
        for p in &pairs {
            let d = left_rectangle_entries(&t, p).len();
            let implemented = done.iter().any(|s| s.pair == *p);
            let just_done = done.last().is_some_and(|s| s.pair == *p);
            if implemented && !just_done {
                continue;
            }
            match (black_count(rt, p), has_red_in_top_row(rt, p)) {
                (Ok(b), Ok(red)) => {
                    if implemented {
                        r.check(b < d, || format!("R{st}: {} black count {b} not below {d}", p.label()));
                        r.check(red, || format!("R{st}: {} has no red entry in its top row", p.label()));
                    } else {
                        r.check(b == d, || format!("R{st}: {} black count {b}, degree {d}", p.label()));
                        r.check(!red, || format!("R{st}: {} acquired a red entry early", p.label()));
                    }
                }
                (Err(e), _) | (_, Err(e)) => r.check(false, || format!("R{st}: {}: {e}", p.label())),
            }
        }
    }
    r
}

/// Every complete stage's free pairs factor as predicted.
pub fn verify_trace_factorizations(trace: &ImplementationTrace) -> Result<Report, Error> {
    let invs = all_invariants(trace.composition())?;
    let mut r = Report::default();
    for (k, rt) in trace.stages().iter().enumerate() {
        let ex = rt.excluded_roots();
        for inv in &invs {
            if restrict(&inv.poly, &ex).is_zero() {
                continue;
            }
            match factorization_at(rt, inv, k + 1) {
                Ok(f) => r.check(f.ok(), || {
                    format!(
                        "R{}: {} restriction {} vs factors {:?} (degree additive: {})",
                        k + 1,
                        inv.pair.label(),
                        f.restriction,
                        f.factors.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        f.degree_additive
                    )
                }),
                Err(e) => r.check(false, || format!("R{}: {}: {e}", k + 1, inv.pair.label())),
            }
        }
    }
    Ok(r)
}

/// Move of the last `k` boxes of column `j` below column `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcolumnMove {
    pub j: usize,
    pub k: usize,
    pub i: usize,
}

/// Coordinates surviving the move, and the predicted codimension
/// `k·(c_i - (c_j - k))`.
pub fn subcolumn_move(comp: &Composition, mv: &SubcolumnMove) -> Result<(BTreeSet<Root>, usize), Error> {
    let SubcolumnMove { j, k, i } = *mv;
    let cols = comp.num_columns();
    if i == 0 || j > cols || i >= j {
        return Err(Error::IllegalMove(format!("need 1 <= i < j <= {cols}, got i={i}, j={j}")));
    }
    let (ci, cj) = (comp.height(i), comp.height(j));
    if k > cj {
        return Err(Error::IllegalMove(format!("column C{j} has only {cj} boxes, cannot move {k}")));
    }
    if ci + k < cj {
        return Err(Error::IllegalMove(format!("c_{i} = {ci} < c_{j} - k = {}", cj - k)));
    }
    let t = standard_tableau(comp);
    let mut columns: Vec<Vec<Cell>> = t
        .columns()
        .iter()
        .map(|c| c.iter().map(|&v| Cell::black(v)).collect())
        .collect();
    let moved = columns[j - 1].split_off(cj - k);
    columns[i - 1].extend(moved);
    let moved_t = ColoredTableau::from_columns(comp.clone(), columns);
    Ok((moved_t.u_basis(), k * (ci + k - cj)))
}

/// Every legal move with `k >= 1`.
pub fn legal_moves(comp: &Composition) -> Vec<SubcolumnMove> {
    let cols = comp.num_columns();
    let mut out = Vec::new();
    for j in 2..=cols {
        for i in 1..j {
            for k in 1..=comp.height(j) {
                if comp.height(i) + k >= comp.height(j) {
                    out.push(SubcolumnMove { j, k, i });
                }
            }
        }
    }
    out
}

/// Entries that can ever turn red, with multiplicity.
///
/// The entry in row `s` of a column of height `h` qualifies when for every
/// height in `[s, h]` some neighbouring pair of that height has the column in
/// `]C, C']`. A bottom entry is repeated once for each consecutive height
/// `h, h+1, ...` that surrounds it in this way.
pub fn global_red_multiset(comp: &Composition) -> BTreeMap<usize, usize> {
    let t = standard_tableau(comp);
    let pairs = neighbouring_pairs(comp);
    let surrounded = |col: usize, height: usize| pairs.iter().any(|p| p.height == height && p.surrounds(col));
    let mut out = BTreeMap::new();
    for col in 1..=comp.num_columns() {
        let h = comp.height(col);
        for s in 1..=h {
            if !(s..=h).all(|x| surrounded(col, x)) {
                continue;
            }
            let value = t.column(col)[s - 1];
            let mult = if s == h {
                (h..).take_while(|&x| surrounded(col, x)).count()
            } else {
                1
            };
            out.insert(value, mult);
        }
    }
    out
}

pub fn multiset_of(values: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &v in values {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

pub fn is_submultiset(small: &BTreeMap<usize, usize>, big: &BTreeMap<usize, usize>) -> bool {
    small.iter().all(|(v, m)| big.get(v).is_some_and(|b| b >= m))
}

/// Every Red Set lies inside the Global Red multiset.
pub fn check_red_subset(comp: &Composition, records: &[ComponentRecord]) -> Report {
    let global = global_red_multiset(comp);
    let mut r = Report::default();
    for rec in records {
        r.check(is_submultiset(&multiset_of(&rec.red), &global), || {
            format!("red set {:?} not inside global red {:?}", rec.red, global)
        });
    }
    r
}
