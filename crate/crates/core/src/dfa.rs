//! Minimal complete automaton of a factorial language.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::presentation::{Edge, LabeledPresentation};
use crate::word::Symbol;

pub(crate) const DEAD: u32 = u32::MAX;

/// Deterministic automaton in which every state is accepting; missing transitions go to
/// the implicit dead state. States are numbered in breadth-first order from `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dfa {
    pub alphabet: usize,
    pub start: u32,
    /// `trans[state][symbol]`
    pub trans: Vec<Vec<u32>>,
}

impl Dfa {
    /// Subset construction from the full vertex set, then minimization.
    pub fn from_presentation(p: &LabeledPresentation) -> Dfa {
        let k = p.alphabet_len();
        let n = p.vertex_count();
        let mut by_label: Vec<Vec<Vec<usize>>> = alloc::vec![alloc::vec![Vec::new(); k]; n];
        for e in p.edges() {
            by_label[e.from][e.label as usize].push(e.to);
        }
        let all: Vec<usize> = (0..n).collect();
        let mut index: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        let mut sets = alloc::vec![all.clone()];
        index.insert(all, 0);
        let mut trans: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = alloc::vec![DEAD; k];
            for (s, slot) in row.iter_mut().enumerate() {
                let mut next: Vec<usize> = sets[i]
                    .iter()
                    .flat_map(|&v| by_label[v][s].iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                if next.is_empty() {
                    continue;
                }
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    (sets.len() - 1) as u32
                });
                *slot = id;
            }
            trans.push(row);
            i += 1;
        }
        Dfa { alphabet: k, start: 0, trans }.minimize()
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn step(&self, state: u32, s: Symbol) -> u32 {
        if state == DEAD {
            DEAD
        } else {
            self.trans[state as usize][s as usize]
        }
    }

    pub fn run_from(&self, state: u32, w: &[Symbol]) -> u32 {
        w.iter().fold(state, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.run_from(self.start, w) != DEAD
    }

    /// Moore refinement followed by breadth-first renumbering from the start state.
    pub fn minimize(&self) -> Dfa {
        let n = self.trans.len();
        let mut block = alloc::vec![0u32; n];
        let mut count = 1;
        loop {
            let mut sig: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
            let mut next = alloc::vec![0u32; n];
            for q in 0..n {
                let row: Vec<u32> = self.trans[q]
                    .iter()
                    .map(|&t| if t == DEAD { DEAD } else { block[t as usize] })
                    .collect();
                let len = sig.len() as u32;
                next[q] = *sig.entry((block[q], row)).or_insert(len);
            }
            let new_count = sig.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut rep = alloc::vec![usize::MAX; count];
        for q in (0..n).rev() {
            rep[block[q] as usize] = q;
        }
        let quotient: Vec<Vec<u32>> = rep
            .iter()
            .map(|&q| {
                self.trans[q]
                    .iter()
                    .map(|&t| if t == DEAD { DEAD } else { block[t as usize] })
                    .collect()
            })
            .collect();
        Dfa { alphabet: self.alphabet, start: block[self.start as usize], trans: quotient }
            .renumber()
    }

    /// Keeps states reachable from `start`, numbered in breadth-first order.
    fn renumber(&self) -> Dfa {
        let mut order = alloc::vec![DEAD; self.trans.len()];
        let mut queue = VecDeque::new();
        let mut seen = Vec::new();
        order[self.start as usize] = 0;
        queue.push_back(self.start);
        seen.push(self.start);
        while let Some(q) = queue.pop_front() {
            for &t in &self.trans[q as usize] {
                if t != DEAD && order[t as usize] == DEAD {
                    order[t as usize] = seen.len() as u32;
                    seen.push(t);
                    queue.push_back(t);
                }
            }
        }
        let trans = seen
            .iter()
            .map(|&q| {
                self.trans[q as usize]
                    .iter()
                    .map(|&t| if t == DEAD { DEAD } else { order[t as usize] })
                    .collect()
            })
            .collect();
        Dfa { alphabet: self.alphabet, start: 0, trans }
    }

    pub fn to_presentation(&self, alphabet: &[alloc::string::String]) -> LabeledPresentation {
        let mut edges = Vec::new();
        for (q, row) in self.trans.iter().enumerate() {
            for (s, &t) in row.iter().enumerate() {
                if t != DEAD {
                    edges.push(Edge { from: q, to: t as usize, label: s as Symbol });
                }
            }
        }
        LabeledPresentation::raw(alphabet.to_vec(), self.trans.len(), edges)
            .expect("automaton graph is well formed")
    }

    /// Every word accepted by `self` is accepted by `other` (same alphabet size).
    pub fn contained_in(&self, other: &Dfa) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert((self.start, other.start));
        queue.push_back((self.start, other.start));
        while let Some((a, b)) = queue.pop_front() {
            for s in 0..self.alphabet {
                let na = self.trans[a as usize][s];
                if na == DEAD {
                    continue;
                }
                let nb = if s < other.alphabet { other.trans[b as usize][s] } else { DEAD };
                if nb == DEAD {
                    return false;
                }
                if seen.insert((na, nb)) {
                    queue.push_back((na, nb));
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm() -> LabeledPresentation {
        LabeledPresentation::from_named(&["0", "1"], 2, &[(0, 0, "0"), (0, 1, "1"), (1, 0, "0")])
            .unwrap()
    }

    #[test]
    fn golden_mean_automaton() {
        let d = Dfa::from_presentation(&gm());
        // the start state already has the follower set of "after 0"
        assert_eq!(d.state_count(), 2);
        assert!(d.accepts(&[0, 1, 0, 1]));
        assert!(!d.accepts(&[0, 1, 1, 0]));
        assert!(d.accepts(&[]));
    }

    #[test]
    fn containment_is_reflexive_and_strict() {
        let full = LabeledPresentation::from_named(&["0", "1"], 1, &[(0, 0, "0"), (0, 0, "1")])
            .unwrap();
        let g = Dfa::from_presentation(&gm());
        let f = Dfa::from_presentation(&full);
        assert!(g.contained_in(&g));
        assert!(g.contained_in(&f));
        assert!(!f.contained_in(&g));
    }
}
