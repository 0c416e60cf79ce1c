use std::collections::HashMap;

use super::net::{EqId, NodeId, NodeKind, Slot};
use super::queue::Entry;
use super::{Engine, Mode};
use crate::calculus::occurrence_count;

impl Engine {
    /// Full consistency scan of the graph, queue and counters. Linear in
    /// the size of the net; meant for tests and `--audit` style runs.
    pub fn audit(&mut self) -> Vec<String> {
        let mut v = Vec::new();
        let net = &self.net;

        for (i, node) in net.nodes.iter().enumerate() {
            if !node.alive {
                continue;
            }
            let id = NodeId(i as u32);
            match node.parent {
                Slot::Root(e, side) => {
                    let eq = net.equation(e);
                    if !eq.alive || eq.sides[side as usize] != id {
                        v.push(format!("node {i}: parent equation does not point back"));
                    }
                }
                Slot::Arg(p, k) => {
                    let ok = net.node(p).alive
                        && matches!(&net.node(p).kind,
                            NodeKind::Agent { children, .. } if children.get(k as usize) == Some(&id));
                    if !ok {
                        v.push(format!("node {i}: parent agent does not point back"));
                    }
                }
                Slot::Detached => v.push(format!("node {i}: live but detached")),
            }
            match &node.kind {
                NodeKind::Agent {
                    symbol, children, ..
                } => {
                    if children.len() != self.signature.get(*symbol).arity {
                        v.push(format!("node {i}: child count differs from arity"));
                    }
                    for (k, &c) in children.iter().enumerate() {
                        if c.0 == u32::MAX || !net.node(c).alive || net.node(c).parent != Slot::Arg(id, k as u32) {
                            v.push(format!("node {i}: child {k} is not linked back"));
                        }
                    }
                }
                NodeKind::Wire { partner, .. } => {
                    let back = net.partner(*partner);
                    if !net.node(*partner).alive || back != Some(id) {
                        v.push(format!("wire {i}: partner involution broken"));
                    }
                }
            }
        }

        for (i, eq) in net.equations.iter().enumerate() {
            if !eq.alive {
                continue;
            }
            for (s, &n) in eq.sides.iter().enumerate() {
                let ok = n.0 != u32::MAX
                    && net.node(n).alive
                    && matches!(net.node(n).parent, Slot::Root(e, side) if e == EqId(i as u32) && side as usize == s);
                if !ok {
                    v.push(format!("equation {i}: side {s} is not linked back"));
                }
            }
        }

        let mut resident: HashMap<Entry, usize> = HashMap::new();
        for &e in self.queue.iter() {
            *resident.entry(e).or_default() += 1;
        }
        for (&entry, &count) in &resident {
            let (alive, flag) = match entry {
                Entry::Term(n) => (net.node(n).alive, net.node(n).in_queue),
                Entry::Equation(e) => (net.equation(e).alive, net.equation(e).in_queue),
            };
            if count > 1 {
                v.push(format!("{entry:?} resident {count} times"));
            }
            if !flag {
                v.push(format!("{entry:?} in queue without residency flag"));
            }
            if let (Entry::Term(n), true, Mode::Needed) = (entry, alive, self.config.mode) {
                if !net.is_needed(n) {
                    v.push(format!("{entry:?} queued but not needed"));
                }
            }
        }
        for (i, node) in net.nodes.iter().enumerate() {
            if node.in_queue && !resident.contains_key(&Entry::Term(NodeId(i as u32))) {
                v.push(format!("node {i} flagged resident but not queued"));
            }
        }
        for (i, eq) in net.equations.iter().enumerate() {
            if eq.in_queue && !resident.contains_key(&Entry::Equation(EqId(i as u32))) {
                v.push(format!("equation {i} flagged resident but not queued"));
            }
        }

        for &(n, generation) in &self.needed_snapshot {
            let node = net.node(n);
            if node.alive && node.generation == generation && !net.is_needed(n) {
                v.push(format!("node {} lost its needed flag", n.0));
            }
        }
        self.needed_snapshot = net
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.alive && matches!(n.kind, NodeKind::Agent { needed: true, .. }))
            .map(|(i, n)| (NodeId(i as u32), n.generation))
            .collect();

        let s = &self.stats;
        if s.steps != s.interactions + s.indirections + s.delegations {
            v.push("steps differ from interactions + indirections + delegations".into());
        }

        let residual = self.readback();
        let mut names: Vec<&str> = Vec::new();
        residual.for_each_name(|x, _| names.push(x));
        names.sort_unstable();
        names.dedup();
        for x in names {
            let n = occurrence_count(&residual, x);
            if n != 2 {
                v.push(format!("name {x} occurs {n} times in readback"));
            }
        }
        v
    }
}
