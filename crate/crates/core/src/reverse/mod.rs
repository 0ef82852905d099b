//! Reverse tableaux: colouring, pair implementation, trapezia.

mod step;
mod tableau;
mod trapezium;

pub use step::{enumerate_choices, implement_pair, pair_state, ImplementationChoice, PairState};
pub use tableau::{Cell, Color, ColoredTableau, JsonBox};
pub use trapezium::{black_count, has_red_in_top_row, pseudo_pairs, trapezium, trapezium_unchecked, PseudoColumn, PseudoPair, Trapezium};

use serde::{Deserialize, Serialize};

use crate::shape::{neighbouring_pairs, standard_tableau, Composition, NeighbouringPair};
use crate::Error;

/// Every stage `R^1, ..., R^{t+1}` of a (partial) run, with the choices made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplementationTrace {
    composition: Composition,
    stages: Vec<ColoredTableau>,
    steps: Vec<ImplementationChoice>,
}

impl ImplementationTrace {
    pub fn new(comp: &Composition) -> Self {
        Self {
            composition: comp.clone(),
            stages: vec![ColoredTableau::init(&standard_tableau(comp))],
            steps: Vec::new(),
        }
    }

    /// Replays a list of choices from the standard tableau.
    pub fn replay(comp: &Composition, steps: &[ImplementationChoice]) -> Result<Self, Error> {
        let mut tr = Self::new(comp);
        for ch in steps {
            tr.push(ch)?;
        }
        Ok(tr)
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn stages(&self) -> &[ColoredTableau] {
        &self.stages
    }

    pub fn steps(&self) -> &[ImplementationChoice] {
        &self.steps
    }

    pub fn current(&self) -> &ColoredTableau {
        self.stages.last().expect("a trace has at least one stage")
    }

    pub fn implemented(&self) -> Vec<NeighbouringPair> {
        self.steps.iter().map(|s| s.pair).collect()
    }

    /// Pairs not yet implemented, in default order.
    pub fn remaining(&self) -> Vec<NeighbouringPair> {
        neighbouring_pairs(&self.composition)
            .into_iter()
            .filter(|p| !self.steps.iter().any(|s| s.pair == *p))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.remaining().is_empty()
    }

    pub fn push(&mut self, ch: &ImplementationChoice) -> Result<(), Error> {
        let p = ch.pair;
        if !neighbouring_pairs(&self.composition).contains(&p) {
            return Err(Error::UnknownPair { pair: p.label() });
        }
        if self.steps.iter().any(|s| s.pair == p) {
            return Err(Error::AlreadyImplemented { pair: p.label() });
        }
        let next = implement_pair(self.current(), &p, ch)?;
        self.stages.push(next);
        self.steps.push(*ch);
        Ok(())
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            steps: self.steps.iter().map(StepJson::from).collect(),
        }
    }

    /// Stages rendered one after another, each headed by the step producing it.
    pub fn render_ascii(&self) -> String {
        let mut out = format!("R1:\n{}", self.stages[0].render_ascii());
        for (i, (st, ch)) in self.stages[1..].iter().zip(&self.steps).enumerate() {
            out.push_str(&format!(
                "R{} after {} source C{} stop C{}:\n{}",
                i + 2,
                ch.pair.label(),
                ch.source_col,
                ch.shift_stop,
                st.render_ascii()
            ));
        }
        out
    }
}

/// Serialized form of a trace: its steps only; stages are recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub steps: Vec<StepJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub pair: [usize; 2],
    pub height: usize,
    pub source: usize,
    pub landing: usize,
    pub stop: usize,
}

impl From<&ImplementationChoice> for StepJson {
    fn from(ch: &ImplementationChoice) -> Self {
        Self {
            pair: [ch.pair.left, ch.pair.right],
            height: ch.pair.height,
            source: ch.source_col,
            landing: ch.landing_col,
            stop: ch.shift_stop,
        }
    }
}

impl From<&StepJson> for ImplementationChoice {
    fn from(s: &StepJson) -> Self {
        Self {
            pair: NeighbouringPair::new(s.pair[0], s.pair[1], s.height),
            source_col: s.source,
            landing_col: s.landing,
            shift_stop: s.stop,
        }
    }
}
