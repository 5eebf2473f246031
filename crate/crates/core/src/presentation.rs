//! Finite labeled graphs presenting sofic shifts.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Result, SoficError};
use crate::word::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Symbol,
}

/// A labeled graph. After [`LabeledPresentation::new`] the graph is essential: every
/// vertex has an incoming and an outgoing edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPresentation {
    alphabet: Vec<String>,
    vertices: usize,
    edges: Vec<Edge>,
}

impl LabeledPresentation {
    /// Validates the raw graph and trims it to its essential part.
    pub fn new(alphabet: Vec<String>, vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        let raw = Self::raw(alphabet, vertices, edges)?;
        let trimmed = raw.essential();
        if trimmed.vertices == 0 {
            return Err(SoficError::EmptyLanguage);
        }
        Ok(trimmed)
    }

    /// Validates without trimming. Used for intermediate graphs that are trimmed later.
    pub(crate) fn raw(alphabet: Vec<String>, vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(SoficError::Malformed("empty alphabet".into()));
        }
        if alphabet.len() > Symbol::MAX as usize {
            return Err(SoficError::Malformed("alphabet too large".into()));
        }
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(SoficError::Malformed("duplicate alphabet symbol".into()));
        }
        for e in &edges {
            if e.from >= vertices || e.to >= vertices {
                return Err(SoficError::Malformed(alloc::format!(
                    "edge {}->{} out of range",
                    e.from,
                    e.to
                )));
            }
            if e.label as usize >= alphabet.len() {
                return Err(SoficError::UnknownSymbol(e.label.to_string()));
            }
        }
        let mut edges = edges;
        edges.sort();
        edges.dedup();
        Ok(LabeledPresentation { alphabet, vertices, edges })
    }

    /// Builds a presentation from symbol names, resolving each edge label by name.
    pub fn from_named(
        alphabet: &[&str],
        vertices: usize,
        edges: &[(usize, usize, &str)],
    ) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::with_capacity(edges.len());
        for &(from, to, label) in edges {
            let idx = alphabet
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| SoficError::UnknownSymbol(label.to_string()))?;
            out.push(Edge { from, to, label: idx as Symbol });
        }
        Self::new(alphabet, vertices, out)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn symbol_index(&self, name: &str) -> Option<Symbol> {
        self.alphabet.iter().position(|s| s == name).map(|i| i as Symbol)
    }

    /// At most one outgoing edge per (vertex, symbol).
    pub fn is_right_resolving(&self) -> bool {
        self.edges
            .windows(2)
            .all(|w| !(w[0].from == w[1].from && w[0].label == w[1].label))
    }

    /// Removes vertices without an incoming or outgoing edge until none remain.
    pub(crate) fn essential(&self) -> Self {
        let mut alive = alloc::vec![true; self.vertices];
        loop {
            let mut has_in = alloc::vec![false; self.vertices];
            let mut has_out = alloc::vec![false; self.vertices];
            for e in &self.edges {
                if alive[e.from] && alive[e.to] {
                    has_out[e.from] = true;
                    has_in[e.to] = true;
                }
            }
            let mut changed = false;
            for v in 0..self.vertices {
                if alive[v] && !(has_in[v] && has_out[v]) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.restrict(&alive)
    }

    /// Induced subgraph on the vertices flagged `keep`, renumbered in order.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Self {
        let mut index = alloc::vec![usize::MAX; self.vertices];
        let mut n = 0;
        for v in 0..self.vertices {
            if keep[v] {
                index[v] = n;
                n += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.from] && keep[e.to])
            .map(|e| Edge { from: index[e.from], to: index[e.to], label: e.label })
            .collect();
        LabeledPresentation { alphabet: self.alphabet.clone(), vertices: n, edges }
    }

    pub(crate) fn successors(&self) -> Vec<Vec<(Symbol, usize)>> {
        let mut out = alloc::vec![Vec::new(); self.vertices];
        for e in &self.edges {
            out[e.from].push((e.label, e.to));
        }
        out
    }

    /// Strongly connected component index per vertex (Tarjan, iterative).
    pub(crate) fn components(&self) -> Vec<usize> {
        strongly_connected(self.vertices, &self.successors())
    }

    /// Same labeled graph up to a vertex bijection. Exhaustive; intended for small graphs.
    pub fn isomorphic(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet
            || self.vertices != other.vertices
            || self.edges.len() != other.edges.len()
        {
            return false;
        }
        let mut map = alloc::vec![usize::MAX; self.vertices];
        let mut used = alloc::vec![false; self.vertices];
        fn go(
            a: &LabeledPresentation,
            b: &LabeledPresentation,
            v: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if v == a.vertices {
                let mut mapped: Vec<Edge> = a
                    .edges
                    .iter()
                    .map(|e| Edge { from: map[e.from], to: map[e.to], label: e.label })
                    .collect();
                mapped.sort();
                return mapped == b.edges;
            }
            for w in 0..b.vertices {
                if !used[w] {
                    used[w] = true;
                    map[v] = w;
                    if go(a, b, v + 1, map, used) {
                        return true;
                    }
                    used[w] = false;
                }
            }
            false
        }
        go(self, other, 0, &mut map, &mut used)
    }
}

pub(crate) fn strongly_connected(n: usize, succ: &[Vec<(Symbol, usize)>]) -> Vec<usize> {
    let mut index = alloc::vec![usize::MAX; n];
    let mut low = alloc::vec![0usize; n];
    let mut on_stack = alloc::vec![false; n];
    let mut stack = Vec::new();
    let mut comp = alloc::vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = alloc::vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i].1;
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_has_two_vertices() {
        let p = LabeledPresentation::from_named(
            &["0", "1"],
            2,
            &[(0, 0, "0"), (0, 1, "1"), (1, 0, "0")],
        )
        .unwrap();
        assert_eq!(p.vertex_count(), 2);
        assert!(p.is_right_resolving());
    }

    #[test]
    fn dead_end_graph_is_empty() {
        let r = LabeledPresentation::from_named(&["0", "1"], 2, &[(0, 1, "0")]);
        assert_eq!(r, Err(SoficError::EmptyLanguage));
    }

    #[test]
    fn trims_transient_vertices() {
        let p = LabeledPresentation::from_named(
            &["0", "1"],
            3,
            &[(0, 0, "0"), (1, 0, "1"), (0, 2, "1")],
        )
        .unwrap();
        assert_eq!(p.vertex_count(), 1);
        assert_eq!(p.edges().len(), 1);
    }

    #[test]
    fn rejects_bad_indices() {
        let r = LabeledPresentation::from_named(&["0"], 1, &[(0, 3, "0")]);
        assert!(matches!(r, Err(SoficError::Malformed(_))));
        let r = LabeledPresentation::from_named(&["0"], 1, &[(0, 0, "x")]);
        assert!(matches!(r, Err(SoficError::UnknownSymbol(_))));
    }
}
