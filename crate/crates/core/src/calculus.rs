//! Syntactic domain: signatures, terms, rules, configurations, and static
//! validation of interaction systems.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

/// Source position, 1-based. `Span::default()` marks synthesized items.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Span { line, col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Dense handle into a [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentSymbol {
    pub id: SymbolId,
    pub name: String,
    pub arity: usize,
    pub span: Span,
}

/// The declared agent types of a system, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    symbols: Vec<AgentSymbol>,
    by_name: HashMap<String, SymbolId>,
    duplicates: Vec<(String, Span)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an agent. Redeclaring a name keeps the first declaration
    /// and records the duplicate for validation.
    pub fn declare(&mut self, name: &str, arity: usize, span: Span) -> SymbolId {
        if let Some(&id) = self.by_name.get(name) {
            self.duplicates.push((name.to_string(), span));
            return id;
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(AgentSymbol {
            id,
            name: name.to_string(),
            arity,
            span,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<&AgentSymbol> {
        self.by_name.get(name).map(|id| &self.symbols[id.index()])
    }

    pub fn id_of(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn get(&self, id: SymbolId) -> &AgentSymbol {
        &self.symbols[id.index()]
    }

    pub fn symbols(&self) -> &[AgentSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn duplicate_declarations(&self) -> &[(String, Span)] {
        &self.duplicates
    }
}

/// A term of the calculus: `!α(t1,…,tn)`, `α(t1,…,tn)` or a name `x`.
///
/// Agents are referenced by symbol name so that undeclared symbols can be
/// represented and reported by [`validate_system`].
#[derive(Clone, Debug)]
pub enum Term {
    Agent {
        symbol: String,
        needed: bool,
        args: Vec<Term>,
        span: Span,
    },
    Name {
        name: String,
        needed: bool,
        span: Span,
    },
}

impl Term {
    pub fn agent(symbol: &str, args: Vec<Term>) -> Term {
        Term::Agent {
            symbol: symbol.to_string(),
            needed: false,
            args,
            span: Span::default(),
        }
    }

    pub fn needed_agent(symbol: &str, args: Vec<Term>) -> Term {
        Term::Agent {
            symbol: symbol.to_string(),
            needed: true,
            args,
            span: Span::default(),
        }
    }

    pub fn name(name: &str) -> Term {
        Term::Name {
            name: name.to_string(),
            needed: false,
            span: Span::default(),
        }
    }

    pub fn span(&self) -> Span {
        match self {
            Term::Agent { span, .. } | Term::Name { span, .. } => *span,
        }
    }

    pub fn is_needed(&self) -> bool {
        match self {
            Term::Agent { needed, .. } | Term::Name { needed, .. } => *needed,
        }
    }

    /// Calls `f` on every name occurrence, left to right.
    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a str, Span)) {
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Name { name, span, .. } => f(name, *span),
                Term::Agent { args, .. } => stack.extend(args.iter().rev()),
            }
        }
    }
}

// Structural equality ignores spans.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Term::Agent {
                    symbol: s1,
                    needed: n1,
                    args: a1,
                    ..
                },
                Term::Agent {
                    symbol: s2,
                    needed: n2,
                    args: a2,
                    ..
                },
            ) => s1 == s2 && n1 == n2 && a1 == a2,
            (
                Term::Name {
                    name: x, needed: n1, ..
                },
                Term::Name {
                    name: y, needed: n2, ..
                },
            ) => x == y && n1 == n2,
            _ => false,
        }
    }
}

impl Eq for Term {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }
}

/// A multiset of equations. The stored order is presentation only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    pub equations: Vec<Equation>,
}

impl Configuration {
    pub fn new(equations: Vec<Equation>) -> Self {
        Configuration { equations }
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn for_each_name<'a>(&'a self, mut f: impl FnMut(&'a str, Span)) {
        for eq in &self.equations {
            eq.lhs.for_each_name(&mut f);
            eq.rhs.for_each_name(&mut f);
        }
    }

    /// Equality up to consistent renaming of names, reordering of
    /// equations, and swapping the two sides of an equation.
    pub fn equivalent(&self, other: &Configuration) -> bool {
        if self.equations.len() != other.equations.len() {
            return false;
        }
        let mut used = vec![false; other.equations.len()];
        let mut renaming = Renaming::default();
        match_equations(&self.equations, &other.equations, &mut used, &mut renaming)
    }
}

#[derive(Clone, Default)]
struct Renaming {
    forward: HashMap<String, String>,
    backward: HashMap<String, String>,
}

impl Renaming {
    fn bind(&mut self, a: &str, b: &str) -> bool {
        match (self.forward.get(a), self.backward.get(b)) {
            (Some(x), Some(y)) => x == b && y == a,
            (None, None) => {
                self.forward.insert(a.to_string(), b.to_string());
                self.backward.insert(b.to_string(), a.to_string());
                true
            }
            _ => false,
        }
    }
}

fn match_terms(a: &Term, b: &Term, r: &mut Renaming) -> bool {
    match (a, b) {
        (
            Term::Agent {
                symbol: s1,
                needed: n1,
                args: a1,
                ..
            },
            Term::Agent {
                symbol: s2,
                needed: n2,
                args: a2,
                ..
            },
        ) => {
            s1 == s2
                && n1 == n2
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| match_terms(x, y, r))
        }
        (Term::Name { name: x, .. }, Term::Name { name: y, .. }) => r.bind(x, y),
        _ => false,
    }
}

fn match_equations(
    rest: &[Equation],
    pool: &[Equation],
    used: &mut [bool],
    renaming: &mut Renaming,
) -> bool {
    let Some((eq, rest)) = rest.split_first() else {
        return true;
    };
    for j in 0..pool.len() {
        if used[j] {
            continue;
        }
        let cand = &pool[j];
        for (l, r) in [(&cand.lhs, &cand.rhs), (&cand.rhs, &cand.lhs)] {
            let mut attempt = renaming.clone();
            if match_terms(&eq.lhs, l, &mut attempt) && match_terms(&eq.rhs, r, &mut attempt) {
                used[j] = true;
                if match_equations(rest, pool, used, &mut attempt) {
                    *renaming = attempt;
                    return true;
                }
                used[j] = false;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSide {
    pub symbol: String,
    pub templates: Vec<Term>,
    pub span: Span,
}

/// An interaction rule `α[v1,…,vm] >< β[w1,…,wn]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub left: RuleSide,
    pub right: RuleSide,
    pub span: Span,
}

impl Rule {
    pub fn for_each_name<'a>(&'a self, mut f: impl FnMut(&'a str, Span)) {
        for t in self.left.templates.iter().chain(&self.right.templates) {
            t.for_each_name(&mut f);
        }
    }
}

/// Which side of a rule matches the first symbol passed to
/// [`RuleSet::lookup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// The first symbol matches `rule.left`.
    Direct,
    /// The first symbol matches `rule.right`.
    Swapped,
}

/// Rules indexed by unordered symbol pair. At most one rule per pair is
/// indexed; later duplicates are kept in `rules` for diagnostics only.
#[derive(Clone, Debug, Default)]
pub struct RuleSet {
    rules: Vec<Rule>,
    index: HashMap<(SymbolId, SymbolId), usize>,
    duplicates: Vec<usize>,
}

fn pair_key(a: SymbolId, b: SymbolId) -> (SymbolId, SymbolId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl RuleSet {
    pub fn build(signature: &Signature, rules: Vec<Rule>) -> Self {
        let mut set = RuleSet::default();
        for rule in rules {
            set.insert(signature, rule);
        }
        set
    }

    pub fn insert(&mut self, signature: &Signature, rule: Rule) {
        let ix = self.rules.len();
        let ids = (
            signature.id_of(&rule.left.symbol),
            signature.id_of(&rule.right.symbol),
        );
        self.rules.push(rule);
        if let (Some(a), Some(b)) = ids {
            match self.index.entry(pair_key(a, b)) {
                Entry::Occupied(_) => self.duplicates.push(ix),
                Entry::Vacant(v) => {
                    v.insert(ix);
                }
            }
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn duplicate_indices(&self) -> &[usize] {
        &self.duplicates
    }

    /// Index of the rule for `{a, b}` and which of its sides matches `a`.
    /// For `a == b` the orientation is always [`Orientation::Direct`].
    pub fn lookup_index(&self, a: SymbolId, b: SymbolId, sig: &Signature) -> Option<(usize, Orientation)> {
        let ix = *self.index.get(&pair_key(a, b))?;
        let rule = &self.rules[ix];
        let orientation = if sig.id_of(&rule.left.symbol) == Some(a) {
            Orientation::Direct
        } else {
            Orientation::Swapped
        };
        Some((ix, orientation))
    }

    pub fn lookup(&self, a: SymbolId, b: SymbolId, sig: &Signature) -> Option<(&Rule, Orientation)> {
        self.lookup_index(a, b, sig)
            .map(|(ix, o)| (&self.rules[ix], o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub name: Option<String>,
    pub config: Configuration,
    pub span: Span,
}

#[derive(Clone, Debug, Default)]
pub struct InteractionSystem {
    pub signature: Signature,
    pub rules: RuleSet,
    pub nets: Vec<Net>,
}

impl InteractionSystem {
    pub fn net(&self, name: &str) -> Option<&Net> {
        self.nets.iter().find(|n| n.name.as_deref() == Some(name))
    }

    /// The named net, or the only net when `name` is `None`.
    pub fn select_net(&self, name: Option<&str>) -> Result<&Net, NetSelectError> {
        match name {
            Some(n) => self.net(n).ok_or_else(|| NetSelectError::Unknown(n.to_string())),
            None => match self.nets.as_slice() {
                [only] => Ok(only),
                [] => Err(NetSelectError::NoNets),
                _ => Err(NetSelectError::Ambiguous(self.nets.len())),
            },
        }
    }

    pub fn lookup_rule(&self, a: &str, b: &str) -> Option<(&Rule, Orientation)> {
        let a = self.signature.id_of(a)?;
        let b = self.signature.id_of(b)?;
        self.rules.lookup(a, b, &self.signature)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NetSelectError {
    #[error("unknown net `{0}`")]
    Unknown(String),
    #[error("file declares no nets")]
    NoNets,
    #[error("file declares {0} nets; select one with --net")]
    Ambiguous(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    ArityMismatch,
    NameLinearity,
    DuplicateRule,
    UndeclaredSymbol,
    NeededOnName,
    DuplicateAgent,
    DuplicateNet,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Span,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.span, self.kind, self.message)
    }
}

/// Number of occurrences of `name` in `config`.
pub fn occurrence_count(config: &Configuration, name: &str) -> usize {
    let mut n = 0;
    config.for_each_name(|x, _| {
        if x == name {
            n += 1;
        }
    });
    n
}

/// Checks every static invariant of `system`. An empty result means the
/// system is valid.
pub fn validate_system(system: &InteractionSystem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let sig = &system.signature;

    for (name, span) in sig.duplicate_declarations() {
        out.push(Diagnostic {
            kind: DiagnosticKind::DuplicateAgent,
            span: *span,
            message: format!("agent `{name}` is declared more than once"),
        });
    }

    for (ix, rule) in system.rules.rules().iter().enumerate() {
        for side in [&rule.left, &rule.right] {
            match sig.lookup(&side.symbol) {
                None => out.push(Diagnostic {
                    kind: DiagnosticKind::UndeclaredSymbol,
                    span: side.span,
                    message: format!("rule side uses undeclared agent `{}`", side.symbol),
                }),
                Some(sym) if sym.arity != side.templates.len() => out.push(Diagnostic {
                    kind: DiagnosticKind::ArityMismatch,
                    span: side.span,
                    message: format!(
                        "rule side `{}` has {} templates but the agent has arity {}",
                        side.symbol,
                        side.templates.len(),
                        sym.arity
                    ),
                }),
                Some(_) => {}
            }
            for t in &side.templates {
                check_term(sig, t, &mut out);
            }
        }
        let mut counts: Vec<(&str, Span, usize)> = Vec::new();
        rule.for_each_name(|x, span| count_into(&mut counts, x, span));
        for (x, span, n) in counts {
            if n != 2 {
                out.push(Diagnostic {
                    kind: DiagnosticKind::NameLinearity,
                    span,
                    message: format!("name `{x}` occurs {n} time(s) in rule; expected exactly 2"),
                });
            }
        }
        if system.rules.duplicate_indices().contains(&ix) {
            out.push(Diagnostic {
                kind: DiagnosticKind::DuplicateRule,
                span: rule.span,
                message: format!(
                    "a rule for {{{}, {}}} is already defined",
                    rule.left.symbol, rule.right.symbol
                ),
            });
        }
    }

    let mut seen_nets: Vec<&str> = Vec::new();
    for net in &system.nets {
        if let Some(name) = &net.name {
            if seen_nets.contains(&name.as_str()) {
                out.push(Diagnostic {
                    kind: DiagnosticKind::DuplicateNet,
                    span: net.span,
                    message: format!("net `{name}` is defined more than once"),
                });
            }
            seen_nets.push(name);
        }
        for eq in &net.config.equations {
            check_term(sig, &eq.lhs, &mut out);
            check_term(sig, &eq.rhs, &mut out);
        }
        let mut counts: Vec<(&str, Span, usize)> = Vec::new();
        net.config.for_each_name(|x, span| count_into(&mut counts, x, span));
        for (x, span, n) in counts {
            if n != 2 {
                out.push(Diagnostic {
                    kind: DiagnosticKind::NameLinearity,
                    span,
                    message: format!("name `{x}` occurs {n} time(s) in net; expected 0 or 2"),
                });
            }
        }
    }
    out
}

fn count_into<'a>(counts: &mut Vec<(&'a str, Span, usize)>, x: &'a str, span: Span) {
    match counts.iter_mut().find(|(y, _, _)| *y == x) {
        Some(entry) => entry.2 += 1,
        None => counts.push((x, span, 1)),
    }
}

fn check_term(sig: &Signature, term: &Term, out: &mut Vec<Diagnostic>) {
    let mut stack = vec![term];
    while let Some(t) = stack.pop() {
        match t {
            Term::Name {
                name,
                needed: true,
                span,
            } => out.push(Diagnostic {
                kind: DiagnosticKind::NeededOnName,
                span: *span,
                message: format!("needed marker on name `{name}`"),
            }),
            Term::Name { .. } => {}
            Term::Agent {
                symbol, args, span, ..
            } => {
                match sig.lookup(symbol) {
                    None => out.push(Diagnostic {
                        kind: DiagnosticKind::UndeclaredSymbol,
                        span: *span,
                        message: format!("undeclared agent `{symbol}`"),
                    }),
                    Some(sym) if sym.arity != args.len() => out.push(Diagnostic {
                        kind: DiagnosticKind::ArityMismatch,
                        span: *span,
                        message: format!(
                            "agent `{symbol}` applied to {} argument(s) but has arity {}",
                            args.len(),
                            sym.arity
                        ),
                    }),
                    Some(_) => {}
                }
                stack.extend(args.iter().rev());
            }
        }
    }
}
