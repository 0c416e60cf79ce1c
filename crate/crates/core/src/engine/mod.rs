//! Reduction engine.
//!
//! Weak reduction is driven by a queue of needed entities. Popping a term
//! node either marks its parent agent needed (delegation) or, when the node
//! is the root of an equation, hands the equation to the queue. Popping an
//! equation performs an interaction or an indirection. Each of these does a
//! bounded amount of graph mutation that depends only on the rule templates.
//!
//! Full mode ignores needed markers and enqueues every equation; it serves
//! as the reference against which weak results are compared.

mod audit;
pub mod net;
pub mod queue;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::calculus::{
    validate_system, Configuration, Diagnostic, Equation, InteractionSystem, NetSelectError,
    Orientation, RuleSet, Signature, SymbolId, Term,
};

use net::{EqId, NodeId, NodeKind, RuntimeNet, Side, Slot, TerminalKind};
use queue::{Entry, NeededQueue};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Needed,
    Full,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Needed => "needed",
            Mode::Full => "full",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "needed" => Ok(Mode::Needed),
            "full" => Ok(Mode::Full),
            other => Err(format!("unknown mode `{other}` (expected needed|full)")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EngineConfig {
    pub mode: Mode,
    pub max_steps: Option<u64>,
    pub shuffle_seed: Option<u64>,
    /// Report a needed agent pair without a rule as stuck instead of
    /// leaving it as an observable result.
    pub strict_rules: bool,
    pub trace: bool,
    /// Check graph invariants after every processed entry.
    pub audit: bool,
}

impl EngineConfig {
    pub fn needed() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        EngineConfig {
            mode: Mode::Full,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub interactions: u64,
    pub indirections: u64,
    pub delegations: u64,
    pub steps: u64,
    pub loops_removed: u64,
    pub cyclic_equations: u64,
    pub observable_terminals: u64,
    /// Largest number of primitive mutations (link writes, allocations,
    /// frees, flag writes, enqueues) performed while processing a single
    /// queue entry.
    pub max_ops_per_step: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Interaction,
    Indirection,
    Delegation,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Interaction => "interaction",
            StepKind::Indirection => "indirection",
            StepKind::Delegation => "delegation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: u64,
    pub kind: StepKind,
    pub detail: String,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.step, self.kind, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Normal,
    StepLimit,
    Stuck { left: String, right: String },
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Normal => "normal",
            RunStatus::StepLimit => "step_limit",
            RunStatus::Stuck { .. } => "stuck",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub mode: Mode,
    pub status: RunStatus,
    pub stats: Stats,
    pub residual: Configuration,
    pub trace: Vec<TraceEvent>,
    /// Invariant violations found when auditing; empty unless
    /// `EngineConfig::audit` is set and something went wrong.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Net(#[from] NetSelectError),
    #[error("system has {} diagnostic(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Diagnostic>),
    #[error("no rule for needed pair {left} >< {right}")]
    StuckPair { left: String, right: String },
}

/// Outcome of processing one queue entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progress {
    /// The queue is empty.
    Idle,
    Processed,
    /// The next entry would exceed `max_steps`; it was left in the queue.
    StepLimit,
}

#[derive(Clone, Debug)]
enum Template {
    Agent {
        symbol: SymbolId,
        needed: bool,
        args: Vec<Template>,
    },
    Name(u32),
}

#[derive(Clone, Debug)]
struct CompiledRule {
    /// Symbol and argument templates for the rule's left and right operand.
    sides: [(SymbolId, Vec<Template>); 2],
    names: usize,
}

fn compile_term(sig: &Signature, t: &Term, names: &mut HashMap<String, u32>) -> Template {
    match t {
        Term::Agent {
            symbol,
            needed,
            args,
            ..
        } => Template::Agent {
            symbol: sig.id_of(symbol).expect("validated"),
            needed: *needed,
            args: args.iter().map(|a| compile_term(sig, a, names)).collect(),
        },
        Term::Name { name, .. } => {
            let next = names.len() as u32;
            Template::Name(*names.entry(name.clone()).or_insert(next))
        }
    }
}

fn compile_rules(sig: &Signature, rules: &RuleSet) -> Vec<CompiledRule> {
    rules
        .rules()
        .iter()
        .map(|r| {
            let mut names = HashMap::new();
            let mut side = |s: &crate::calculus::RuleSide| {
                (
                    sig.id_of(&s.symbol).expect("validated"),
                    s.templates
                        .iter()
                        .map(|t| compile_term(sig, t, &mut names))
                        .collect(),
                )
            };
            let left = side(&r.left);
            let right = side(&r.right);
            CompiledRule {
                sides: [left, right],
                names: names.len(),
            }
        })
        .collect()
}

enum Action {
    Skip,
    Promote(EqId),
    Delegate { child: NodeId, parent: NodeId },
    Interact { eq: EqId, rule: usize, orientation: Orientation },
    Indirect { eq: EqId, wire: Side },
    RemoveLoop(EqId),
    MarkCyclic(EqId),
    MarkObservable(EqId),
    Stuck(EqId),
}

impl Action {
    fn is_step(&self) -> bool {
        matches!(
            self,
            Action::Delegate { .. } | Action::Interact { .. } | Action::Indirect { .. }
        )
    }
}

/// A loaded net together with its rules, queue and counters.
pub struct Engine {
    signature: Signature,
    rules: RuleSet,
    compiled: Arc<[CompiledRule]>,
    net: RuntimeNet,
    queue: NeededQueue,
    config: EngineConfig,
    stats: Stats,
    trace: Vec<TraceEvent>,
    needed_snapshot: Vec<(NodeId, u32)>,
}

impl Engine {
    /// Loads the named net (or the only net) of a validated system.
    pub fn load(
        system: &InteractionSystem,
        net_name: Option<&str>,
        config: EngineConfig,
    ) -> Result<Engine, EngineError> {
        let net = system.select_net(net_name)?;
        Self::load_configuration(system, &net.config, config)
    }

    /// Loads an arbitrary configuration over the system's signature and rules.
    pub fn load_configuration(
        system: &InteractionSystem,
        config_ast: &Configuration,
        config: EngineConfig,
    ) -> Result<Engine, EngineError> {
        let diags = validate_system(system);
        if !diags.is_empty() {
            return Err(EngineError::Invalid(diags));
        }
        let probe = InteractionSystem {
            signature: system.signature.clone(),
            rules: RuleSet::default(),
            nets: vec![crate::calculus::Net {
                name: None,
                config: config_ast.clone(),
                span: Default::default(),
            }],
        };
        let diags = validate_system(&probe);
        if !diags.is_empty() {
            return Err(EngineError::Invalid(diags));
        }
        let mut engine = Engine {
            signature: system.signature.clone(),
            rules: system.rules.clone(),
            compiled: compile_rules(&system.signature, &system.rules).into(),
            net: RuntimeNet::new(),
            queue: NeededQueue::new(config.shuffle_seed),
            config,
            stats: Stats::default(),
            trace: Vec::new(),
            needed_snapshot: Vec::new(),
        };
        engine.lower(config_ast);
        engine.net.ops = 0;
        Ok(engine)
    }

    fn lower(&mut self, config_ast: &Configuration) {
        let full = self.config.mode == Mode::Full;
        let mut open: HashMap<&str, NodeId> = HashMap::new();
        let mut needed = Vec::new();
        for eq in &config_ast.equations {
            let e = self.net.alloc_equation();
            let mut stack = vec![(&eq.rhs, Slot::Root(e, Side::Right)), (&eq.lhs, Slot::Root(e, Side::Left))];
            while let Some((t, slot)) = stack.pop() {
                match t {
                    Term::Agent {
                        symbol,
                        needed: marked,
                        args,
                        ..
                    } => {
                        let sym = self.signature.id_of(symbol).expect("validated");
                        let marked = *marked && !full;
                        let id = self.net.alloc_agent(sym, args.len(), marked, slot);
                        if marked {
                            needed.push(id);
                        }
                        for (i, a) in args.iter().enumerate().rev() {
                            stack.push((a, Slot::Arg(id, i as u32)));
                        }
                    }
                    Term::Name { name, .. } => match open.remove(name.as_str()) {
                        Some(half) => self.net.place(half, slot),
                        None => {
                            let label = self.net.intern_name(name);
                            let (_, other) = self.net.alloc_wire(Some(label), slot);
                            open.insert(name, other);
                        }
                    },
                }
            }
            if full {
                self.enqueue(Entry::Equation(e));
            }
        }
        for id in needed {
            self.enqueue(Entry::Term(id));
        }
    }

    pub fn net(&self) -> &RuntimeNet {
        &self.net
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn queue(&self) -> &NeededQueue {
        &self.queue
    }

    fn enqueue(&mut self, entry: Entry) {
        let (alive, in_queue) = match entry {
            Entry::Term(n) => {
                let n = self.net.node(n);
                (n.alive, n.in_queue)
            }
            Entry::Equation(e) => {
                let e = self.net.equation(e);
                (e.alive && e.terminal == TerminalKind::None, e.in_queue)
            }
        };
        if !alive || in_queue {
            return;
        }
        match entry {
            Entry::Term(n) => self.net.node_mut(n).in_queue = true,
            Entry::Equation(e) => self.net.equation_mut(e).in_queue = true,
        }
        self.net.ops += 1;
        self.queue.push(entry);
    }

    /// Clears the residency flag of a popped entry. Returns false (and
    /// recycles the slot) if the entity died while queued.
    fn take(&mut self, entry: Entry) -> bool {
        match entry {
            Entry::Term(n) => {
                let node = self.net.node_mut(n);
                node.in_queue = false;
                if !node.alive {
                    self.net.recycle_node(n);
                    return false;
                }
            }
            Entry::Equation(e) => {
                let eq = self.net.equation_mut(e);
                eq.in_queue = false;
                if !eq.alive {
                    self.net.recycle_equation(e);
                    return false;
                }
            }
        }
        true
    }

    fn restore(&mut self, entry: Entry) {
        match entry {
            Entry::Term(n) => self.net.node_mut(n).in_queue = true,
            Entry::Equation(e) => self.net.equation_mut(e).in_queue = true,
        }
        self.queue.unpop(entry);
    }

    fn classify(&self, entry: Entry) -> Action {
        match entry {
            Entry::Term(n) => match self.net.node(n).parent {
                Slot::Root(e, _) => {
                    let eq = self.net.equation(e);
                    if eq.alive && eq.terminal == TerminalKind::None {
                        Action::Promote(e)
                    } else {
                        Action::Skip
                    }
                }
                Slot::Arg(p, _) => {
                    if self.net.is_needed(p) {
                        Action::Skip
                    } else {
                        Action::Delegate { child: n, parent: p }
                    }
                }
                Slot::Detached => Action::Skip,
            },
            Entry::Equation(e) => {
                let eq = self.net.equation(e);
                if eq.terminal != TerminalKind::None {
                    return Action::Skip;
                }
                let [l, r] = eq.sides;
                match (self.net.partner(l), self.net.partner(r)) {
                    (Some(p), Some(_)) if p == r => Action::RemoveLoop(e),
                    (Some(p), _) => self.classify_indirection(e, Side::Left, p),
                    (None, Some(p)) => self.classify_indirection(e, Side::Right, p),
                    (None, None) => {
                        if self.config.mode == Mode::Needed
                            && !self.net.is_needed(l)
                            && !self.net.is_needed(r)
                        {
                            return Action::Skip;
                        }
                        let (a, b) = (self.net.symbol(l).unwrap(), self.net.symbol(r).unwrap());
                        match self.rules.lookup_index(a, b, &self.signature) {
                            Some((rule, orientation)) => Action::Interact {
                                eq: e,
                                rule,
                                orientation,
                            },
                            None if self.config.strict_rules => Action::Stuck(e),
                            None => Action::MarkObservable(e),
                        }
                    }
                }
            }
        }
    }

    fn classify_indirection(&self, e: EqId, wire: Side, partner: NodeId) -> Action {
        if self.net.enclosing_equation(partner) == Some(e) {
            Action::MarkCyclic(e)
        } else {
            Action::Indirect { eq: e, wire }
        }
    }

    /// Pops and processes one queue entry.
    pub fn step(&mut self) -> Result<Progress, EngineError> {
        let Some(entry) = self.queue.pop() else {
            return Ok(Progress::Idle);
        };
        if !self.take(entry) {
            return Ok(Progress::Processed);
        }
        let action = self.classify(entry);
        if action.is_step() {
            if let Some(max) = self.config.max_steps {
                if self.stats.steps >= max {
                    self.restore(entry);
                    return Ok(Progress::StepLimit);
                }
            }
        }
        let before = self.net.ops;
        let result = self.execute(action);
        let ops = self.net.ops - before;
        self.stats.max_ops_per_step = self.stats.max_ops_per_step.max(ops);
        result.map(|_| Progress::Processed)
    }

    fn execute(&mut self, action: Action) -> Result<(), EngineError> {
        match action {
            Action::Skip => {}
            Action::Promote(e) => self.enqueue(Entry::Equation(e)),
            Action::Delegate { child, parent } => {
                self.net.set_needed(parent);
                self.enqueue(Entry::Term(parent));
                let detail = self.detail(|e| {
                    format!("{}->{}", e.symbol_name(child), e.symbol_name(parent))
                });
                self.record(StepKind::Delegation, detail);
            }
            Action::Interact {
                eq,
                rule,
                orientation,
            } => self.interact(eq, rule, orientation),
            Action::Indirect { eq, wire } => self.indirect(eq, wire),
            Action::RemoveLoop(e) => {
                let [l, r] = self.net.equation(e).sides;
                self.net.free_node(l);
                self.net.free_node(r);
                self.net.free_equation(e);
                self.stats.loops_removed += 1;
            }
            Action::MarkCyclic(e) => {
                self.net.equation_mut(e).terminal = TerminalKind::Cyclic;
                self.net.ops += 1;
                self.stats.cyclic_equations += 1;
            }
            Action::MarkObservable(e) => {
                self.net.equation_mut(e).terminal = TerminalKind::Observable;
                self.net.ops += 1;
                self.stats.observable_terminals += 1;
            }
            Action::Stuck(e) => {
                let [l, r] = self.net.equation(e).sides;
                // Leave it queued so a later run reports the same pair.
                self.restore(Entry::Equation(e));
                return Err(EngineError::StuckPair {
                    left: self.symbol_name(l).to_string(),
                    right: self.symbol_name(r).to_string(),
                });
            }
        }
        Ok(())
    }

    fn symbol_name(&self, n: NodeId) -> &str {
        match self.net.symbol(n) {
            Some(s) => &self.signature.get(s).name,
            None => "_",
        }
    }

    fn wire_name(&self, n: NodeId) -> &str {
        match self.net.node(n).kind {
            NodeKind::Wire {
                label: Some(l), ..
            } => &self.net.names[l as usize],
            _ => "_",
        }
    }

    fn detail(&self, f: impl FnOnce(&Self) -> String) -> String {
        if self.config.trace {
            f(self)
        } else {
            String::new()
        }
    }

    fn record(&mut self, kind: StepKind, detail: String) {
        match kind {
            StepKind::Interaction => self.stats.interactions += 1,
            StepKind::Indirection => self.stats.indirections += 1,
            StepKind::Delegation => self.stats.delegations += 1,
        }
        self.stats.steps += 1;
        if self.config.trace {
            self.trace.push(TraceEvent {
                step: self.stats.steps,
                kind,
                detail,
            });
        }
    }

    fn interact(&mut self, eq: EqId, rule_ix: usize, orientation: Orientation) {
        let needed_mode = self.config.mode == Mode::Needed;
        let [l, r] = self.net.equation(eq).sides;
        let detail = if self.config.trace {
            format!("{}><{}", self.symbol_name(l), self.symbol_name(r))
        } else {
            String::new()
        };
        // Rule side matching each equation side.
        let (l_side, r_side) = match orientation {
            Orientation::Direct => (0, 1),
            Orientation::Swapped => (1, 0),
        };
        // The needed operand's arguments come first.
        let order = if needed_mode && !self.net.is_needed(l) && self.net.is_needed(r) {
            [(r, r_side), (l, l_side)]
        } else {
            [(l, l_side), (r, r_side)]
        };

        let compiled = Arc::clone(&self.compiled);
        let rule = &compiled[rule_ix];
        let mut bindings: Vec<Option<NodeId>> = vec![None; rule.names];
        let mut fresh_needed = Vec::new();
        let mut created = Vec::new();
        for (node, side) in order {
            let children = match &self.net.node(node).kind {
                NodeKind::Agent { children, .. } => children.clone(),
                NodeKind::Wire { .. } => unreachable!("interaction on a wire"),
            };
            for (child, template) in children.into_iter().zip(&rule.sides[side].1) {
                let e = self.net.alloc_equation();
                self.net.place(child, Slot::Root(e, Side::Left));
                self.instantiate(
                    template,
                    Slot::Root(e, Side::Right),
                    &mut bindings,
                    &mut fresh_needed,
                );
                created.push(e);
            }
        }

        self.net.free_node(l);
        self.net.free_node(r);
        self.net.free_equation(eq);
        self.record(StepKind::Interaction, detail);

        if needed_mode {
            for n in fresh_needed {
                self.enqueue(Entry::Term(n));
            }
            for e in created {
                let root = self.net.equation(e).sides[Side::Left as usize];
                if self.net.is_needed(root) {
                    self.enqueue(Entry::Equation(e));
                }
            }
        } else {
            for e in created {
                self.enqueue(Entry::Equation(e));
            }
        }
    }

    fn instantiate(
        &mut self,
        template: &Template,
        slot: Slot,
        bindings: &mut [Option<NodeId>],
        fresh_needed: &mut Vec<NodeId>,
    ) {
        let mark = self.config.mode == Mode::Needed;
        let mut stack = vec![(template, slot)];
        while let Some((t, slot)) = stack.pop() {
            match t {
                Template::Agent {
                    symbol,
                    needed,
                    args,
                } => {
                    let needed = *needed && mark;
                    let id = self.net.alloc_agent(*symbol, args.len(), needed, slot);
                    if needed {
                        fresh_needed.push(id);
                    }
                    for (i, a) in args.iter().enumerate().rev() {
                        stack.push((a, Slot::Arg(id, i as u32)));
                    }
                }
                Template::Name(k) => match bindings[*k as usize].take() {
                    Some(half) => self.net.place(half, slot),
                    None => {
                        let (_, other) = self.net.alloc_wire(None, slot);
                        bindings[*k as usize] = Some(other);
                    }
                },
            }
        }
    }

    fn indirect(&mut self, eq: EqId, wire_side: Side) {
        let sides = self.net.equation(eq).sides;
        let wire = sides[wire_side as usize];
        let term = sides[wire_side.other() as usize];
        let partner = self.net.partner(wire).expect("indirection on a wire");
        let target = self.net.node(partner).parent;
        let detail = if self.config.trace {
            let t = if self.net.is_agent(term) {
                self.symbol_name(term)
            } else {
                self.wire_name(term)
            };
            format!("{}:={}", self.wire_name(wire), t)
        } else {
            String::new()
        };

        self.net.place(term, target);
        self.net.free_node(wire);
        self.net.free_node(partner);
        self.net.free_equation(eq);
        self.record(StepKind::Indirection, detail);

        match self.config.mode {
            Mode::Needed => {
                if self.net.is_needed(term) {
                    self.enqueue(Entry::Term(term));
                }
            }
            Mode::Full => {
                if let Slot::Root(e, _) = target {
                    self.enqueue(Entry::Equation(e));
                }
            }
        }
    }

    /// Processes entries until the queue is empty, the step bound is hit,
    /// or (under `strict_rules`) a needed pair has no rule.
    pub fn run(&mut self) -> RunResult {
        let mut violations = Vec::new();
        if self.config.audit {
            violations.extend(self.audit());
        }
        let status = loop {
            match self.step() {
                Ok(Progress::Idle) => break RunStatus::Normal,
                Ok(Progress::StepLimit) => break RunStatus::StepLimit,
                Ok(Progress::Processed) => {
                    if self.config.audit {
                        violations.extend(self.audit());
                    }
                }
                Err(EngineError::StuckPair { left, right }) => {
                    break RunStatus::Stuck { left, right }
                }
                Err(e) => unreachable!("step cannot fail with {e}"),
            }
        };
        RunResult {
            mode: self.config.mode,
            status,
            stats: self.stats,
            residual: self.readback(),
            trace: std::mem::take(&mut self.trace),
            violations,
        }
    }

    /// Reconstructs the configuration held by the graph. Input names are
    /// kept; fresh names become `n0, n1, …` in first-occurrence order,
    /// skipping any that collide with input names.
    pub fn readback(&self) -> Configuration {
        let mut fresh: HashMap<NodeId, String> = HashMap::new();
        let mut counter = 0usize;
        let mut equations = Vec::new();
        for e in self.net.live_equations() {
            let [l, r] = self.net.equation(e).sides;
            let lhs = self.readback_term(l, &mut fresh, &mut counter);
            let rhs = self.readback_term(r, &mut fresh, &mut counter);
            equations.push(Equation::new(lhs, rhs));
        }
        Configuration::new(equations)
    }

    fn readback_term(
        &self,
        root: NodeId,
        fresh: &mut HashMap<NodeId, String>,
        counter: &mut usize,
    ) -> Term {
        enum Frame {
            Visit(NodeId),
            Build(NodeId),
        }
        let mut frames = vec![Frame::Visit(root)];
        let mut out: Vec<Term> = Vec::new();
        while let Some(frame) = frames.pop() {
            match frame {
                Frame::Visit(n) => match &self.net.node(n).kind {
                    NodeKind::Wire { partner, label } => {
                        let name = match label {
                            Some(l) => self.net.names[*l as usize].clone(),
                            None => {
                                let key = n.min(*partner);
                                fresh
                                    .entry(key)
                                    .or_insert_with(|| loop {
                                        let candidate = format!("n{counter}");
                                        *counter += 1;
                                        if !self.net.names.contains(&candidate) {
                                            break candidate;
                                        }
                                    })
                                    .clone()
                            }
                        };
                        out.push(Term::name(&name));
                    }
                    NodeKind::Agent { children, .. } => {
                        frames.push(Frame::Build(n));
                        frames.extend(children.iter().rev().map(|&c| Frame::Visit(c)));
                    }
                },
                Frame::Build(n) => {
                    let NodeKind::Agent {
                        symbol,
                        needed,
                        children,
                    } = &self.net.node(n).kind
                    else {
                        unreachable!()
                    };
                    let args = out.split_off(out.len() - children.len());
                    out.push(Term::Agent {
                        symbol: self.signature.get(*symbol).name.clone(),
                        needed: *needed,
                        args,
                        span: Default::default(),
                    });
                }
            }
        }
        out.pop().expect("readback produced a term")
    }
}

/// Loads and runs a net in one call.
pub fn run(
    system: &InteractionSystem,
    net_name: Option<&str>,
    config: EngineConfig,
) -> Result<RunResult, EngineError> {
    Ok(Engine::load(system, net_name, config)?.run())
}
