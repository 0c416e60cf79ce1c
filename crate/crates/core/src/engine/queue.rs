use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::net::{EqId, NodeId};

/// A needed entity: a term node whose demand must climb one level, or an
/// equation that demand has reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Term(NodeId),
    Equation(EqId),
}

/// FIFO by default; with a seed, pops a uniformly random resident entry.
#[derive(Clone, Debug)]
pub struct NeededQueue {
    entries: VecDeque<Entry>,
    rng: Option<ChaCha8Rng>,
}

impl NeededQueue {
    pub fn new(shuffle_seed: Option<u64>) -> Self {
        NeededQueue {
            entries: VecDeque::new(),
            rng: shuffle_seed.map(ChaCha8Rng::seed_from_u64),
        }
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push_back(e);
    }

    /// Puts an entry back so that it is popped next.
    pub fn unpop(&mut self, e: Entry) {
        if self.rng.is_some() {
            self.entries.push_back(e);
        } else {
            self.entries.push_front(e);
        }
    }

    pub fn pop(&mut self) -> Option<Entry> {
        match &mut self.rng {
            None => self.entries.pop_front(),
            Some(rng) => {
                if self.entries.is_empty() {
                    return None;
                }
                let i = rng.gen_range(0..self.entries.len());
                self.entries.swap_remove_back(i)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter()
    }
}
