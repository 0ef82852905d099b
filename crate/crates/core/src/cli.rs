//! Command-line front end. `run` takes the full argument vector (program
//! name first) and returns the exit code with rendered output, so it can be
//! driven from tests without a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::census::{census, enumerate_components, verify_composition, CensusOptions, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::invariant::bs_invariant;
use crate::reverse::{enumerate_choices, ColoredTableau, ImplementationChoice, ImplementationTrace, JsonBox};
use crate::shape::{left_rectangle_entries, m_basis, neighbouring_pairs, standard_tableau, Composition, NeighbouringPair};
use crate::symalg::JsonTerm;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nilfibre", version, about = "Semi-invariants, reverse tableaux and nilfibre components in type A")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Composition as comma-separated positive integers, e.g. 1,2,2,1
    composition: String,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration guard (explored states and g!)
    #[arg(long)]
    limit: Option<u64>,
    /// Seed of the rank oracle
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random samples taken by the rank oracle
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the standard tableau
    Tableau(Common),
    /// List the neighbouring pairs
    Pairs(Common),
    /// Print the invariant of each pair (or of one pair)
    Invariant {
        #[command(flatten)]
        common: Common,
        /// Restrict to one pair, e.g. C2-C3
        #[arg(long)]
        pair: Option<String>,
    },
    /// Implement pairs step by step and print every stage
    Implement {
        #[command(flatten)]
        common: Common,
        /// Steps such as `pair=C2-C3;source=C3;stop=C2`; omitted fields
        /// must have a single legal value
        #[arg(required = true)]
        steps: Vec<String>,
    },
    /// Enumerate complete reverse tableaux grouped by Red Set
    Enumerate(Common),
    /// Run every check on the composition
    Verify(Common),
    /// Component census with codimensions
    Census(Common),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidComposition(_)
        | Error::Parse(_)
        | Error::UnknownPair { .. }
        | Error::AlreadyImplemented { .. }
        | Error::IllegalChoice { .. }
        | Error::NotImplementable { .. }
        | Error::LimitExceeded { .. }
        | Error::IllegalMove(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output::ok(text),
                _ => Output::err(EXIT_USAGE, text),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Output::err(exit_code(&e), format!("error: {e}\n")),
    }
}

fn opts(c: &Common) -> CensusOptions {
    CensusOptions {
        limit: c.limit,
        trials: c.trials,
        seed: c.seed,
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Result<Output, Error> {
    match cmd {
        Command::Tableau(c) => {
            let comp: Composition = c.composition.parse()?;
            let rt = ColoredTableau::init(&standard_tableau(&comp));
            Ok(Output::ok(if c.json { json(&rt.to_json_boxes()) } else { rt.render_ascii() }))
        }
        Command::Pairs(c) => {
            let comp: Composition = c.composition.parse()?;
            let t = standard_tableau(&comp);
            #[derive(Serialize)]
            struct P {
                left: usize,
                right: usize,
                height: usize,
                degree: usize,
            }
            let ps: Vec<P> = neighbouring_pairs(&comp)
                .iter()
                .map(|p| P {
                    left: p.left,
                    right: p.right,
                    height: p.height,
                    degree: left_rectangle_entries(&t, p).len(),
                })
                .collect();
            if c.json {
                return Ok(Output::ok(json(&ps)));
            }
            let mut s = format!("g = {}\n", ps.len());
            for p in &ps {
                writeln!(s, "(C{},C{}) s={} degree {}", p.left, p.right, p.height, p.degree).unwrap();
            }
            Ok(Output::ok(s))
        }
        Command::Invariant { common: c, pair } => {
            let comp: Composition = c.composition.parse()?;
            let t = standard_tableau(&comp);
            let basis = m_basis(&comp);
            let mut pairs = neighbouring_pairs(&comp);
            if let Some(label) = pair {
                let p = find_pair(&comp, &label)?;
                pairs.retain(|q| *q == p);
            }
            let invs = pairs
                .iter()
                .map(|p| bs_invariant(&t, p, &basis))
                .collect::<Result<Vec<_>, _>>()?;
            if c.json {
                #[derive(Serialize)]
                struct J {
                    pair: [usize; 2],
                    height: usize,
                    degree: u32,
                    c_power: u32,
                    poly: Vec<JsonTerm>,
                    text: String,
                }
                let out: Vec<J> = invs
                    .iter()
                    .map(|i| J {
                        pair: [i.pair.left, i.pair.right],
                        height: i.pair.height,
                        degree: i.degree,
                        c_power: i.c_power,
                        poly: i.poly.to_json_terms(),
                        text: i.poly.to_string(),
                    })
                    .collect();
                return Ok(Output::ok(json(&out)));
            }
            let mut s = String::new();
            for i in &invs {
                writeln!(s, "{} degree {}: {}", i.pair, i.degree, i.poly).unwrap();
            }
            Ok(Output::ok(s))
        }
        Command::Implement { common: c, steps } => {
            let comp: Composition = c.composition.parse()?;
            let mut trace = ImplementationTrace::new(&comp);
            for tok in &steps {
                let ch = parse_step(&comp, trace.current(), tok)?;
                trace.push(&ch)?;
            }
            if c.json {
                #[derive(Serialize)]
                struct J {
                    steps: crate::reverse::TraceJson,
                    stages: Vec<Vec<JsonBox>>,
                    red: Vec<usize>,
                    excluded: Vec<(usize, usize)>,
                }
                let cur = trace.current();
                return Ok(Output::ok(json(&J {
                    steps: trace.to_json(),
                    stages: trace.stages().iter().map(|s| s.to_json_boxes()).collect(),
                    red: cur.red_values(),
                    excluded: cur.excluded_roots().into_iter().collect(),
                })));
            }
            let cur = trace.current();
            let mut s = trace.render_ascii();
            writeln!(s, "red {}", brace(&cur.red_values())).unwrap();
            let ex: Vec<String> = cur.excluded_roots().iter().map(|(i, j)| format!("x_{{{i},{j}}}")).collect();
            writeln!(s, "excluded {{{}}}", ex.join(", ")).unwrap();
            Ok(Output::ok(s))
        }
        Command::Enumerate(c) => {
            let comp: Composition = c.composition.parse()?;
            let en = enumerate_components(&comp, c.limit)?;
            if c.json {
                #[derive(Serialize)]
                struct R {
                    red: Vec<usize>,
                    excluded: Vec<(usize, usize)>,
                    witness: crate::reverse::TraceJson,
                }
                #[derive(Serialize)]
                struct J {
                    complete: usize,
                    dead_ends: usize,
                    records: Vec<R>,
                    findings: Vec<String>,
                }
                return Ok(Output::ok(json(&J {
                    complete: en.complete.len(),
                    dead_ends: en.dead_ends.len(),
                    records: en
                        .records
                        .iter()
                        .map(|r| R {
                            red: r.red.clone(),
                            excluded: r.excluded.iter().copied().collect(),
                            witness: crate::reverse::TraceJson {
                                steps: r.witness.iter().map(Into::into).collect(),
                            },
                        })
                        .collect(),
                    findings: en.findings.clone(),
                })));
            }
            let mut s = format!(
                "{} complete tableaux, {} red sets\n",
                en.complete.len(),
                en.records.len()
            );
            for r in &en.records {
                writeln!(s, "red {}  witness {}", brace(&r.red), witness_text(&r.witness)).unwrap();
                if let Some(t) = &r.tableau {
                    s.push_str(&t.render_ascii());
                }
            }
            push_findings(&mut s, &en.findings);
            Ok(Output::ok(s))
        }
        Command::Verify(c) => {
            let comp: Composition = c.composition.parse()?;
            let rep = verify_composition(&comp, &opts(&c))?;
            let code = if rep.ok() { EXIT_OK } else { EXIT_FAILED };
            let stdout = if c.json {
                json(&rep)
            } else {
                let mut s = String::new();
                for (name, r) in &rep.sections {
                    let tag = if r.ok() { "PASS" } else { "FAIL" };
                    writeln!(s, "{tag} {name} ({} checks)", r.checks).unwrap();
                    for f in &r.failures {
                        writeln!(s, "  {f}").unwrap();
                    }
                }
                push_findings(&mut s, &rep.findings);
                s
            };
            Ok(Output {
                code,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Census(c) => {
            let comp: Composition = c.composition.parse()?;
            let rep = census(&comp, &opts(&c))?;
            if c.json {
                let mut s = rep.to_json();
                s.push('\n');
                return Ok(Output::ok(s));
            }
            let mut s = format!("composition {}  g = {}  dim m = {}\n", rep.composition, rep.g, rep.dim_m);
            writeln!(s, "global red {}", brace(&rep.global_red)).unwrap();
            for (k, comp_rec) in rep.components.iter().enumerate() {
                let steps: Vec<ImplementationChoice> = comp_rec.witness.steps.iter().map(Into::into).collect();
                writeln!(
                    s,
                    "component {}: red {}  codim {}  |excluded| = {}\n  witness {}",
                    k + 1,
                    brace(&comp_rec.red),
                    comp_rec.codim,
                    comp_rec.excluded.len(),
                    witness_text(&steps)
                )
                .unwrap();
            }
            push_findings(&mut s, &rep.findings);
            Ok(Output::ok(s))
        }
    }
}

fn brace(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn witness_text(steps: &[ImplementationChoice]) -> String {
    if steps.is_empty() {
        return "(none)".into();
    }
    steps
        .iter()
        .map(|c| format!("pair=C{}-C{};source=C{};stop=C{}", c.pair.left, c.pair.right, c.source_col, c.shift_stop))
        .collect::<Vec<_>>()
        .join(" ")
}

fn push_findings(s: &mut String, findings: &[String]) {
    if findings.is_empty() {
        return;
    }
    s.push_str("findings:\n");
    for f in findings {
        writeln!(s, "  - {f}").unwrap();
    }
}

fn parse_col(s: &str) -> Result<usize, Error> {
    let t = s.trim();
    let t = t.strip_prefix('C').or_else(|| t.strip_prefix('c')).unwrap_or(t);
    t.parse()
        .map_err(|_| Error::Parse(format!("{s:?} is not a column like C3")))
}

/// Neighbouring pair named `Ca-Cb` (or `a-b`).
pub fn find_pair(comp: &Composition, label: &str) -> Result<NeighbouringPair, Error> {
    let (a, b) = label
        .split_once('-')
        .ok_or_else(|| Error::Parse(format!("pair {label:?} should look like C2-C3")))?;
    let (l, r) = (parse_col(a)?, parse_col(b)?);
    neighbouring_pairs(comp)
        .into_iter()
        .find(|p| p.left == l && p.right == r)
        .ok_or_else(|| Error::UnknownPair {
            pair: format!("(C{l},C{r})"),
        })
}

/// Parses `pair=Ca-Cb;source=Cx;stop=Cy` against the current tableau.
pub fn parse_step(comp: &Composition, rt: &ColoredTableau, tok: &str) -> Result<ImplementationChoice, Error> {
    let mut pair = None;
    let mut source = None;
    let mut stop = None;
    for field in tok.split(';').map(str::trim).filter(|f| !f.is_empty()) {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("step field {field:?} should be key=value")))?;
        match k.trim() {
            "pair" => pair = Some(find_pair(comp, v)?),
            "source" => source = Some(parse_col(v)?),
            "stop" => stop = Some(parse_col(v)?),
            other => return Err(Error::Parse(format!("unknown step field {other:?}"))),
        }
    }
    let pair = pair.ok_or_else(|| Error::Parse(format!("step {tok:?} names no pair")))?;
    let matching: Vec<ImplementationChoice> = enumerate_choices(rt, &pair)?
        .into_iter()
        .filter(|c| source.is_none_or(|s| c.source_col == s) && stop.is_none_or(|s| c.shift_stop == s))
        .collect();
    match matching.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::IllegalChoice {
            pair: pair.label(),
            detail: "no legal choice matches the given source/stop".into(),
        }),
        many => Err(Error::IllegalChoice {
            pair: pair.label(),
            detail: format!(
                "{} legal choices; specify source and stop (options: {})",
                many.len(),
                many.iter()
                    .map(|c| format!("source=C{};stop=C{}", c.source_col, c.shift_stop))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }),
    }
}
