use nilfibre::census::{census, verify_composition, CensusOptions, CensusReport};
use nilfibre::reverse::{enumerate_choices, implement_pair, pair_state, ImplementationTrace, TraceJson};
use nilfibre::shape::{neighbouring_pairs, Composition};
use nilfibre::Error;

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

#[test]
fn both_orders_reach_the_same_two_components() {
    let c = comp("1,2,2,1");
    let pairs = neighbouring_pairs(&c);
    let mut reds = std::collections::BTreeSet::new();
    for order in [[0, 1], [1, 0]] {
        let mut stack = vec![ImplementationTrace::new(&c)];
        for &k in &order {
            let mut next = Vec::new();
            for tr in stack {
                let Ok(chs) = enumerate_choices(tr.current(), &pairs[k]) else {
                    continue;
                };
                for ch in chs {
                    let mut t = tr.clone();
                    t.push(&ch).unwrap();
                    next.push(t);
                }
            }
            stack = next;
        }
        for tr in stack {
            reds.insert(tr.current().red_values());
        }
    }
    assert_eq!(reds.into_iter().collect::<Vec<_>>(), vec![vec![4, 5], vec![5, 6]]);
}

#[test]
fn first_step_is_forced() {
    let c = comp("1,2,2,1");
    let p = neighbouring_pairs(&c)[0];
    let tr = ImplementationTrace::new(&c);
    let st = pair_state(tr.current(), &p).unwrap();
    assert_eq!(st.eligible, vec![2, 3]);
    let chs = enumerate_choices(tr.current(), &p).unwrap();
    assert_eq!(chs.len(), 1);
    let next = implement_pair(tr.current(), &p, &chs[0]).unwrap();
    assert_eq!(next.red_values(), vec![5]);
}

#[test]
fn illegal_and_repeated_steps_are_rejected() {
    let c = comp("1,2,2,1");
    let p = neighbouring_pairs(&c)[0];
    let mut tr = ImplementationTrace::new(&c);
    let mut ch = enumerate_choices(tr.current(), &p).unwrap()[0];
    tr.push(&ch).unwrap();
    assert!(matches!(tr.push(&ch), Err(Error::AlreadyImplemented { .. })));
    ch.source_col = 1;
    assert!(matches!(
        implement_pair(&tr.stages()[0], &p, &ch),
        Err(Error::IllegalChoice { .. })
    ));
}

#[test]
fn census_json_round_trips_byte_for_byte() {
    for s in ["1,2,2,1", "1,2,3,3,1,2", "2,1,1,2", "1"] {
        let rep = census(&comp(s), &CensusOptions::default()).unwrap();
        let text = rep.to_json();
        let back = CensusReport::from_json(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn trace_json_round_trips() {
    let c = comp("1,2,3,3,1,2");
    let rep = census(&c, &CensusOptions::default()).unwrap();
    for comp_rec in &rep.components {
        let text = serde_json::to_string(&comp_rec.witness).unwrap();
        let back: TraceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let steps: Vec<_> = back.steps.iter().map(Into::into).collect();
        let tr = ImplementationTrace::replay(&c, &steps).unwrap();
        assert_eq!(tr.current().red_values(), comp_rec.red);
    }
}

#[test]
fn census_is_seed_stable() {
    let c = comp("2,1,2,1,2");
    let a = census(&c, &CensusOptions::default()).unwrap().to_json();
    let b = census(&c, &CensusOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn guard_refuses_large_enumerations() {
    let opts = CensusOptions {
        limit: Some(10),
        ..CensusOptions::default()
    };
    assert!(matches!(
        census(&comp("1,1,1,1,1,1,1"), &opts),
        Err(Error::LimitExceeded { .. })
    ));
}

#[test]
fn verification_passes_on_the_figure_composition() {
    let rep = verify_composition(&comp("1,2,3,3,1,2"), &CensusOptions::default()).unwrap();
    for (name, r) in &rep.sections {
        assert!(r.ok(), "{name}: {:?}", r.failures);
    }
}
