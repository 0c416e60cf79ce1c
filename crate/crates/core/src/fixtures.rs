//! Shipped example systems and generators for benchmark nets.

use std::fmt::Write;

/// Read-back of `\x. x x` driven by an observer agent.
pub const OMEGA: &str = include_str!("../fixtures/omega.inet");

/// Unary addition `1 + 1` observed through `Res`.
pub const ADD: &str = include_str!("../fixtures/add.inet");

/// A net whose demand has to climb `depth` unary agents before anything can
/// interact, then unwinds them one interaction at a time.
///
/// Needed-mode reduction takes `depth` delegations, one indirection and
/// `depth` interactions, ending in the observable pair `!L = E`.
pub fn delegation_chain(depth: usize) -> String {
    let mut out = String::from(
        "agent U/1 agent L/0 agent E/0\nrule U[E] >< E[]\nnet chain {\n  x = ",
    );
    for _ in 0..depth {
        out.push_str("U(");
    }
    out.push_str("!L");
    for _ in 0..depth {
        out.push(')');
    }
    let _ = write!(out, ";\n  x = E;\n}}\n");
    out
}
