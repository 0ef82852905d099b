use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::reverse::{enumerate_choices, implement_pair, pair_state, ColoredTableau, ImplementationChoice};
use crate::shape::{has_tall_intermediate, m_basis, neighbouring_pairs, standard_tableau, Composition, NeighbouringPair, Root};
use crate::Error;

pub const DEFAULT_LIMIT: u64 = 1_000_000;

/// One irreducible component, keyed by its Red Set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub red: Vec<usize>,
    pub excluded: BTreeSet<Root>,
    pub u_basis: BTreeSet<Root>,
    pub codim: Option<usize>,
    pub witness: Vec<ImplementationChoice>,
    /// The complete tableau reached by the witness.
    #[serde(skip)]
    pub tableau: Option<ColoredTableau>,
}

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub records: Vec<ComponentRecord>,
    /// Every distinct complete tableau with one trace reaching it.
    pub complete: Vec<(ColoredTableau, Vec<ImplementationChoice>)>,
    pub findings: Vec<String>,
    pub states: u64,
    /// Partial traces stopped by a pair with a single eligible column.
    pub dead_ends: Vec<Vec<ImplementationChoice>>,
}

fn factorial(g: usize) -> u128 {
    (1..=g as u128).product()
}

/// Depth-first search over all pair orders and all branch choices.
///
/// Partial states are memoised on `(tableau, remaining pairs)`, so equal
/// intermediate tableaux are explored once. The guard applies to `g!` up
/// front and to the number of explored states.
pub fn enumerate_components(comp: &Composition, limit: Option<u64>) -> Result<Enumeration, Error> {
    let limit = limit.unwrap_or(DEFAULT_LIMIT);
    let pairs = neighbouring_pairs(comp);
    let g = pairs.len();
    let est = factorial(g);
    if est > limit as u128 {
        return Err(Error::LimitExceeded { estimated: est, limit });
    }
    let start = ColoredTableau::init(&standard_tableau(comp));
    let mut out = Enumeration::default();
    for p in &pairs {
        if has_tall_intermediate(comp, p) {
            out.findings.push(format!("pair {} has an intermediate column taller than {}", p.label(), p.height));
        }
    }

    let mut seen: HashSet<(ColoredTableau, u64)> = HashSet::new();
    let mut complete: HashMap<ColoredTableau, Vec<ImplementationChoice>> = HashMap::new();
    let mut order: Vec<ColoredTableau> = Vec::new();
    let mut landing_notes: BTreeSet<String> = BTreeSet::new();
    let mut path = Vec::new();
    let full = if g == 64 { u64::MAX } else { (1u64 << g) - 1 };
    dfs(
        &pairs,
        start,
        full,
        &mut path,
        &mut seen,
        &mut complete,
        &mut order,
        &mut landing_notes,
        &mut out.dead_ends,
        limit,
        &mut out.states,
    )?;
    out.findings.extend(landing_notes);
    if !out.dead_ends.is_empty() {
        out.findings.push(format!(
            "{} partial traces stop at a pair with no eligible column besides the leftmost",
            out.dead_ends.len()
        ));
    }

    let mut groups: BTreeMap<Vec<usize>, Vec<&ColoredTableau>> = BTreeMap::new();
    for t in &order {
        groups.entry(t.red_values()).or_default().push(t);
    }
    // Order records by first discovery.
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for t in &order {
        let k = t.red_values();
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    for red in keys {
        let members = &groups[&red];
        let first = members[0];
        let excluded = first.excluded_roots();
        let distinct: BTreeSet<BTreeSet<Root>> = members.iter().map(|t| t.excluded_roots()).collect();
        if distinct.len() > 1 {
            out.findings.push(format!(
                "red set {:?}: {} complete tableaux give {} different excluded-root sets",
                red,
                members.len(),
                distinct.len()
            ));
        }
        let u_basis = m_basis(comp).into_iter().filter(|r| !excluded.contains(r)).collect();
        out.records.push(ComponentRecord {
            red,
            excluded,
            u_basis,
            codim: None,
            witness: complete[first].clone(),
            tableau: Some(first.clone()),
        });
    }
    let mut by_excluded: BTreeMap<&BTreeSet<Root>, Vec<&Vec<usize>>> = BTreeMap::new();
    for r in &out.records {
        by_excluded.entry(&r.excluded).or_default().push(&r.red);
    }
    for (_, reds) in by_excluded.into_iter().filter(|(_, v)| v.len() > 1) {
        out.findings.push(format!("red sets {reds:?} share one excluded-root set"));
    }
    out.complete = order.into_iter().map(|t| {
        let w = complete[&t].clone();
        (t, w)
    }).collect();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    pairs: &[NeighbouringPair],
    rt: ColoredTableau,
    remaining: u64,
    path: &mut Vec<ImplementationChoice>,
    seen: &mut HashSet<(ColoredTableau, u64)>,
    complete: &mut HashMap<ColoredTableau, Vec<ImplementationChoice>>,
    order: &mut Vec<ColoredTableau>,
    notes: &mut BTreeSet<String>,
    dead_ends: &mut Vec<Vec<ImplementationChoice>>,
    limit: u64,
    states: &mut u64,
) -> Result<(), Error> {
    if remaining == 0 {
        if !complete.contains_key(&rt) {
            complete.insert(rt.clone(), path.clone());
            order.push(rt);
        }
        return Ok(());
    }
    if !seen.insert((rt.clone(), remaining)) {
        return Ok(());
    }
    *states += 1;
    if *states > limit {
        return Err(Error::LimitExceeded {
            estimated: *states as u128,
            limit,
        });
    }
    for (k, p) in pairs.iter().enumerate() {
        if remaining & (1 << k) == 0 {
            continue;
        }
        let st = pair_state(&rt, p)?;
        let choices = match enumerate_choices(&rt, p) {
            Ok(c) => c,
            Err(Error::NotImplementable { .. }) => {
                dead_ends.push(path.clone());
                continue;
            }
            Err(e) => return Err(e),
        };
        for ch in choices {
            if !st.eligible.contains(&ch.landing_col) {
                notes.insert(format!(
                    "pair {}: landing column C{} lies outside the eligible set {:?}",
                    p.label(),
                    ch.landing_col,
                    st.eligible
                ));
            }
            let next = implement_pair(&rt, p, &ch)?;
            path.push(ch);
            dfs(pairs, next, remaining & !(1 << k), path, seen, complete, order, notes, dead_ends, limit, states)?;
            path.pop();
        }
    }
    Ok(())
}
