//! Concrete syntax: the `.inet` format, printing, and the JSON stats record.

mod parse;
mod print;

pub use parse::{parse, ParseError, ParseErrorKind};
pub use print::{print_config, print_rule, print_system, print_term};

use serde::Serialize;

use crate::engine::RunResult;

#[derive(Serialize)]
struct StatsRecord<'a> {
    mode: &'a str,
    status: &'a str,
    interactions: u64,
    indirections: u64,
    delegations: u64,
    steps: u64,
    loops_removed: u64,
    cyclic_equations: u64,
    observable_terminals: u64,
    max_ops_per_step: u64,
}

/// Single-line JSON object with the run's status and counters.
pub fn stats_json(result: &RunResult) -> String {
    let s = &result.stats;
    let record = StatsRecord {
        mode: result.mode.as_str(),
        status: result.status.as_str(),
        interactions: s.interactions,
        indirections: s.indirections,
        delegations: s.delegations,
        steps: s.steps,
        loops_removed: s.loops_removed,
        cyclic_equations: s.cyclic_equations,
        observable_terminals: s.observable_terminals,
        max_ops_per_step: s.max_ops_per_step,
    };
    serde_json::to_string(&record).expect("stats serialize")
}
