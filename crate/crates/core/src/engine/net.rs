//! Runtime graph: agent nodes with parent links, paired wire halves, and
//! equations. Every mutation primitive bumps `ops`, which the scheduler
//! reads to bound the work done per step.

use crate::calculus::SymbolId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqId(pub(crate) u32);

impl NodeId {
    pub(crate) const NONE: NodeId = NodeId(u32::MAX);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EqId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left = 0,
    Right = 1,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Where a node lives: the root of one side of an equation, or an argument
/// position of an agent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Root(EqId, Side),
    Arg(NodeId, u32),
    Detached,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    Agent {
        symbol: SymbolId,
        needed: bool,
        children: Vec<NodeId>,
    },
    /// One half of a name. `label` indexes the net's name table for names
    /// that came from the input; fresh names have none.
    Wire { partner: NodeId, label: Option<u32> },
}

#[derive(Clone, Debug)]
pub struct Node {
    pub kind: NodeKind,
    pub parent: Slot,
    pub alive: bool,
    pub in_queue: bool,
    pub generation: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TerminalKind {
    None,
    /// A pair of agents with no rule between them.
    Observable,
    /// `x = t` where the other occurrence of `x` lies inside `t`.
    Cyclic,
}

#[derive(Clone, Debug)]
pub struct EquationNode {
    pub sides: [NodeId; 2],
    pub alive: bool,
    pub in_queue: bool,
    pub terminal: TerminalKind,
    /// Creation order, used for presentation.
    pub seq: u64,
}

#[derive(Clone, Debug, Default)]
pub struct RuntimeNet {
    pub(crate) nodes: Vec<Node>,
    pub(crate) equations: Vec<EquationNode>,
    free_nodes: Vec<NodeId>,
    free_equations: Vec<EqId>,
    next_seq: u64,
    live_nodes: usize,
    live_equations: usize,
    pub(crate) names: Vec<String>,
    pub(crate) ops: u64,
}

impl RuntimeNet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub(crate) fn node_mut(&mut self, id: NodeId) -> &mut Node {
        &mut self.nodes[id.index()]
    }

    pub fn equation(&self, id: EqId) -> &EquationNode {
        &self.equations[id.index()]
    }

    pub(crate) fn equation_mut(&mut self, id: EqId) -> &mut EquationNode {
        &mut self.equations[id.index()]
    }

    pub fn live_node_count(&self) -> usize {
        self.live_nodes
    }

    pub fn live_equation_count(&self) -> usize {
        self.live_equations
    }

    pub fn agent_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.alive && matches!(n.kind, NodeKind::Agent { .. }))
            .count()
    }

    pub fn wire_half_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.alive && matches!(n.kind, NodeKind::Wire { .. }))
            .count()
    }

    /// Live equations in creation order.
    pub fn live_equations(&self) -> Vec<EqId> {
        let mut ids: Vec<EqId> = (0..self.equations.len() as u32)
            .map(EqId)
            .filter(|&e| self.equation(e).alive)
            .collect();
        ids.sort_by_key(|&e| self.equation(e).seq);
        ids
    }

    pub(crate) fn intern_name(&mut self, name: &str) -> u32 {
        if let Some(ix) = self.names.iter().position(|n| n == name) {
            return ix as u32;
        }
        self.names.push(name.to_string());
        (self.names.len() - 1) as u32
    }

    pub fn is_agent(&self, id: NodeId) -> bool {
        matches!(self.node(id).kind, NodeKind::Agent { .. })
    }

    pub fn is_needed(&self, id: NodeId) -> bool {
        matches!(self.node(id).kind, NodeKind::Agent { needed: true, .. })
    }

    pub fn symbol(&self, id: NodeId) -> Option<SymbolId> {
        match self.node(id).kind {
            NodeKind::Agent { symbol, .. } => Some(symbol),
            NodeKind::Wire { .. } => None,
        }
    }

    pub fn partner(&self, id: NodeId) -> Option<NodeId> {
        match self.node(id).kind {
            NodeKind::Wire { partner, .. } => Some(partner),
            NodeKind::Agent { .. } => None,
        }
    }

    fn alloc(&mut self, kind: NodeKind, parent: Slot) -> NodeId {
        self.ops += 1;
        self.live_nodes += 1;
        match self.free_nodes.pop() {
            Some(id) => {
                let n = &mut self.nodes[id.index()];
                n.kind = kind;
                n.parent = parent;
                n.alive = true;
                n.in_queue = false;
                n.generation = n.generation.wrapping_add(1);
                id
            }
            None => {
                self.nodes.push(Node {
                    kind,
                    parent,
                    alive: true,
                    in_queue: false,
                    generation: 0,
                });
                NodeId(self.nodes.len() as u32 - 1)
            }
        }
    }

    /// Allocates an agent whose children are yet to be placed.
    pub(crate) fn alloc_agent(&mut self, symbol: SymbolId, arity: usize, needed: bool, parent: Slot) -> NodeId {
        let id = self.alloc(
            NodeKind::Agent {
                symbol,
                needed,
                children: vec![NodeId::NONE; arity],
            },
            parent,
        );
        self.link(id, parent);
        id
    }

    /// Allocates both halves of a wire. The first is placed at `parent`;
    /// the second is left detached.
    pub(crate) fn alloc_wire(&mut self, label: Option<u32>, parent: Slot) -> (NodeId, NodeId) {
        let a = self.alloc(
            NodeKind::Wire {
                partner: NodeId::NONE,
                label,
            },
            parent,
        );
        let b = self.alloc(NodeKind::Wire { partner: a, label }, Slot::Detached);
        if let NodeKind::Wire { partner, .. } = &mut self.node_mut(a).kind {
            *partner = b;
        }
        self.ops += 1;
        self.link(a, parent);
        (a, b)
    }

    pub(crate) fn alloc_equation(&mut self) -> EqId {
        self.ops += 1;
        self.live_equations += 1;
        let seq = self.next_seq;
        self.next_seq += 1;
        let fresh = EquationNode {
            sides: [NodeId::NONE; 2],
            alive: true,
            in_queue: false,
            terminal: TerminalKind::None,
            seq,
        };
        match self.free_equations.pop() {
            Some(id) => {
                self.equations[id.index()] = fresh;
                id
            }
            None => {
                self.equations.push(fresh);
                EqId(self.equations.len() as u32 - 1)
            }
        }
    }

    /// Writes the downward link of `slot` to point at `node`.
    fn link(&mut self, node: NodeId, slot: Slot) {
        match slot {
            Slot::Root(e, side) => {
                self.ops += 1;
                self.equation_mut(e).sides[side as usize] = node;
            }
            Slot::Arg(p, i) => {
                self.ops += 1;
                if let NodeKind::Agent { children, .. } = &mut self.node_mut(p).kind {
                    children[i as usize] = node;
                }
            }
            Slot::Detached => {}
        }
    }

    /// Moves `node` into `slot`, updating both directions of the link.
    pub(crate) fn place(&mut self, node: NodeId, slot: Slot) {
        self.ops += 1;
        self.node_mut(node).parent = slot;
        self.link(node, slot);
    }

    pub(crate) fn set_needed(&mut self, id: NodeId) {
        if let NodeKind::Agent { needed, .. } = &mut self.nodes[id.index()].kind {
            *needed = true;
            self.ops += 1;
        }
    }

    /// Tombstones a node. Its slot is recycled once it is out of the queue.
    pub(crate) fn free_node(&mut self, id: NodeId) {
        self.ops += 1;
        self.live_nodes -= 1;
        let n = self.node_mut(id);
        n.alive = false;
        n.parent = Slot::Detached;
        if let NodeKind::Agent { children, .. } = &mut n.kind {
            children.clear();
        }
        if !n.in_queue {
            self.free_nodes.push(id);
        }
    }

    pub(crate) fn free_equation(&mut self, id: EqId) {
        self.ops += 1;
        self.live_equations -= 1;
        let e = self.equation_mut(id);
        e.alive = false;
        if !e.in_queue {
            self.free_equations.push(id);
        }
    }

    /// Called when a dead entity leaves the queue.
    pub(crate) fn recycle_node(&mut self, id: NodeId) {
        self.free_nodes.push(id);
    }

    pub(crate) fn recycle_equation(&mut self, id: EqId) {
        self.free_equations.push(id);
    }

    /// The equation whose tree contains `node`, found by climbing parent
    /// links. Read-only.
    pub fn enclosing_equation(&self, mut node: NodeId) -> Option<EqId> {
        loop {
            match self.node(node).parent {
                Slot::Root(e, _) => return Some(e),
                Slot::Arg(p, _) => node = p,
                Slot::Detached => return None,
            }
        }
    }
}
