use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_components, Enumeration};
use super::rank::codim;
use super::verify::{
    all_invariants, check_red_subset, global_red_multiset, legal_moves, subcolumn_move, vanishing_on,
    verify_krull_chain, verify_stage_lemmas, verify_trace_factorizations, Report,
};
use crate::invariant::check_degree_law;
use crate::reverse::{ImplementationTrace, TraceJson};
use crate::shape::{m_basis, neighbouring_pairs, standard_tableau, Composition, Root};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub limit: Option<u64>,
    pub trials: u32,
    pub seed: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            limit: None,
            trials: super::DEFAULT_TRIALS,
            seed: super::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub red: Vec<usize>,
    pub excluded: BTreeSet<Root>,
    pub codim: usize,
    pub witness: TraceJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub composition: Composition,
    pub g: usize,
    pub dim_m: usize,
    pub components: Vec<ComponentJson>,
    pub global_red: Vec<usize>,
    pub findings: Vec<String>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// One record per Red Set, each with its rank-oracle codimension.
pub fn census(comp: &Composition, opts: &CensusOptions) -> Result<CensusReport, Error> {
    let en = enumerate_components(comp, opts.limit)?;
    Ok(report_from(comp, &en, opts))
}

pub(crate) fn report_from(comp: &Composition, en: &Enumeration, opts: &CensusOptions) -> CensusReport {
    let components = en
        .records
        .iter()
        .map(|r| ComponentJson {
            red: r.red.clone(),
            excluded: r.excluded.clone(),
            codim: r.codim.unwrap_or_else(|| codim(comp, &r.u_basis, opts.trials, opts.seed)),
            witness: TraceJson {
                steps: r.witness.iter().map(Into::into).collect(),
            },
        })
        .collect();
    let global_red = global_red_multiset(comp)
        .into_iter()
        .flat_map(|(v, m)| std::iter::repeat_n(v, m))
        .collect();
    CensusReport {
        composition: comp.clone(),
        g: neighbouring_pairs(comp).len(),
        dim_m: m_basis(comp).len(),
        components,
        global_red,
        findings: en.findings.clone(),
    }
}

/// Every check of the library on one composition, by section.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub sections: Vec<(String, Report)>,
    pub findings: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.sections.iter().all(|(_, r)| r.ok())
    }
}

/// Runs the full suite: degree law, vanishing, structure lemmas,
/// factorization, codimension of every record, Krull chains of the
/// witnesses, Red Set containment and subcolumn moves.
///
/// A subcolumn move whose intermediate columns are taller than `c_i` falls
/// outside the range where the closed-form codimension is known to hold; a
/// mismatch there is a finding, not a failure.
pub fn verify_composition(comp: &Composition, opts: &CensusOptions) -> Result<VerifyReport, Error> {
    let g = neighbouring_pairs(comp).len();
    let t = standard_tableau(comp);
    let invs = all_invariants(comp)?;
    let en = enumerate_components(comp, opts.limit)?;
    let mut out = VerifyReport {
        findings: en.findings.clone(),
        ..Default::default()
    };

    let mut degree = Report::default();
    for inv in &invs {
        let r = check_degree_law(&t, inv);
        degree.check(r.is_ok(), || r.clone().unwrap_err());
    }
    out.sections.push(("degree law".into(), degree));

    let mut vanishing = Report::default();
    let mut lemmas = Report::default();
    let mut factor = Report::default();
    for (tab, steps) in &en.complete {
        vanishing.merge(vanishing_on(&invs, &tab.excluded_roots()));
        let trace = ImplementationTrace::replay(comp, steps)?;
        lemmas.merge(verify_stage_lemmas(&trace));
        factor.merge(verify_trace_factorizations(&trace)?);
    }
    out.sections.push(("vanishing".into(), vanishing));
    out.sections.push(("structure".into(), lemmas));
    out.sections.push(("factorization".into(), factor));

    let mut cod = Report::default();
    let mut krull = Report::default();
    let mut red_len = Report::default();
    for rec in &en.records {
        red_len.check(rec.red.len() == g, || format!("red set {:?} has size {}, g = {g}", rec.red, rec.red.len()));
        let c = codim(comp, &rec.u_basis, opts.trials, opts.seed);
        cod.check(c == g, || format!("red set {:?}: codim {c}, g = {g}", rec.red));
        let trace = ImplementationTrace::replay(comp, &rec.witness)?;
        let k = verify_krull_chain(&trace, opts.trials, opts.seed)?;
        krull.check(k.ok(), || format!("red set {:?}: codims {:?} {:?}", rec.red, k.codims, k.premature));
    }
    out.sections.push(("red set size".into(), red_len));
    out.sections.push(("codimension".into(), cod));
    out.sections.push(("krull chain".into(), krull));
    out.sections.push(("global red".into(), check_red_subset(comp, &en.records)));

    let mut moves = Report::default();
    for mv in legal_moves(comp) {
        let (u, pred) = subcolumn_move(comp, &mv)?;
        let c = codim(comp, &u, opts.trials, opts.seed);
        let in_range = (mv.i + 1..mv.j).all(|col| comp.height(col) <= comp.height(mv.i));
        if in_range {
            moves.check(c == pred, || format!("move C{}^({}) below C{}: predicted {pred}, oracle {c}", mv.j, mv.k, mv.i));
        } else if c != pred {
            out.findings.push(format!(
                "move C{}^({}) below C{} passes a taller column: predicted {pred}, oracle {c}",
                mv.j, mv.k, mv.i
            ));
        }
    }
    out.sections.push(("subcolumn moves".into(), moves));
    Ok(out)
}
