use std::collections::HashMap;
use std::fmt::Write;

use crate::calculus::{Configuration, InteractionSystem, Rule, RuleSide, Term};

/// Prints a configuration, one `lhs = rhs;` line per equation.
///
/// With `canon`, names are renamed to `n0, n1, …` in first-occurrence order.
pub fn print_config(config: &Configuration, canon: bool) -> String {
    let mut renames = canon.then(HashMap::new);
    let mut out = String::new();
    for eq in &config.equations {
        write_term(&mut out, &eq.lhs, renames.as_mut());
        out.push_str(" = ");
        write_term(&mut out, &eq.rhs, renames.as_mut());
        out.push_str(";\n");
    }
    out
}

/// Prints a whole system in source form. `parse(print_system(s))` yields a
/// system structurally equal to `s`.
pub fn print_system(system: &InteractionSystem) -> String {
    let mut out = String::new();
    for sym in system.signature.symbols() {
        let _ = writeln!(out, "agent {}/{}", sym.name, sym.arity);
    }
    for rule in system.rules.rules() {
        out.push_str("rule ");
        write_side(&mut out, &rule.left);
        out.push_str(" >< ");
        write_side(&mut out, &rule.right);
        out.push('\n');
    }
    for net in &system.nets {
        out.push_str("net ");
        if let Some(name) = &net.name {
            out.push_str(name);
            out.push(' ');
        }
        out.push_str("{\n");
        for line in print_config(&net.config, false).lines() {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str("}\n");
    }
    out
}

pub fn print_rule(rule: &Rule) -> String {
    let mut out = String::new();
    write_side(&mut out, &rule.left);
    out.push_str(" >< ");
    write_side(&mut out, &rule.right);
    out
}

pub fn print_term(term: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, term, None);
    out
}

fn write_side(out: &mut String, side: &RuleSide) {
    out.push_str(&side.symbol);
    out.push('[');
    for (i, t) in side.templates.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, t, None);
    }
    out.push(']');
}

fn write_term(out: &mut String, term: &Term, mut renames: Option<&mut HashMap<String, usize>>) {
    match term {
        Term::Name { name, needed, .. } => {
            if *needed {
                out.push('!');
            }
            match renames {
                Some(map) => {
                    let next = map.len();
                    let ix = *map.entry(name.clone()).or_insert(next);
                    let _ = write!(out, "n{ix}");
                }
                None => out.push_str(name),
            }
        }
        Term::Agent {
            symbol,
            needed,
            args,
            ..
        } => {
            if *needed {
                out.push('!');
            }
            out.push_str(symbol);
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(out, t, renames.as_deref_mut());
                }
                out.push(')');
            }
        }
    }
}
