//! Sofic shifts with their canonical automata.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dfa::{Dfa, DEAD};
use crate::error::{Result, SoficError};
use crate::presentation::LabeledPresentation;
use crate::syntactic::SyntacticSemigroup;
use crate::word::{gcd, Symbol, Word};

/// A sofic shift together with the automata every other computation runs on.
///
/// Construction is eager: the minimal automaton of the language, the deterministic cover,
/// the Fischer cover (when transitive) and the syntactic semigroup are all built once.
#[derive(Debug, Clone)]
pub struct SoficShift {
    presentation: LabeledPresentation,
    dfa: Dfa,
    cover: LabeledPresentation,
    fischer: Option<LabeledPresentation>,
    aperiodic: Option<bool>,
    semigroup: SyntacticSemigroup,
}

impl SoficShift {
    pub fn new(presentation: LabeledPresentation) -> Result<Self> {
        let presentation = presentation.essential();
        if presentation.vertex_count() == 0 {
            return Err(SoficError::EmptyLanguage);
        }
        let dfa = Dfa::from_presentation(&presentation);
        let cover = dfa.to_presentation(presentation.alphabet()).essential();
        let fischer = fischer_of(&cover, &dfa);
        let aperiodic = fischer.as_ref().map(|f| cycle_gcd(f) == 1);
        let semigroup = SyntacticSemigroup::from_dfa(&dfa)?;
        Ok(SoficShift { presentation, dfa, cover, fischer, aperiodic, semigroup })
    }

    pub fn presentation(&self) -> &LabeledPresentation {
        &self.presentation
    }

    pub fn alphabet(&self) -> &[String] {
        self.presentation.alphabet()
    }

    pub(crate) fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn semigroup(&self) -> &SyntacticSemigroup {
        &self.semigroup
    }

    /// Right-resolving essential presentation of the same language.
    pub fn deterministic_cover(&self) -> &LabeledPresentation {
        &self.cover
    }

    pub fn fischer_cover(&self) -> Result<&LabeledPresentation> {
        self.fischer.as_ref().ok_or(SoficError::NotTransitive)
    }

    pub fn is_transitive(&self) -> bool {
        self.fischer.is_some()
    }

    pub fn is_aperiodic(&self) -> Result<bool> {
        self.aperiodic.ok_or(SoficError::NotTransitive)
    }

    pub fn is_admissible(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| (s as usize) < self.dfa.alphabet) && self.dfa.accepts(w)
    }

    /// A shift is finite iff its deterministic cover is a disjoint union of cycles.
    pub fn is_finite(&self) -> bool {
        cover_is_finite(&self.cover)
    }

    /// Natural logarithm of the Perron root of the Fischer cover.
    pub fn entropy(&self) -> Result<f64> {
        let f = self.fischer_cover()?;
        Ok(libm::log(perron_root(f)))
    }

    /// Every word of `self` is a word of `other`. Symbols are matched by name.
    pub fn language_contained_in(&self, other: &SoficShift) -> bool {
        dfa_contained_in(&self.dfa, self.alphabet(), other)
    }

    pub fn same_language(&self, other: &SoficShift) -> bool {
        self.language_contained_in(other) && other.language_contained_in(self)
    }

    /// Parses a word written symbol by symbol when every symbol name is a single
    /// character, and as a comma or space separated list otherwise.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(self.alphabet(), text)
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        format_word(self.alphabet(), w)
    }

    /// All admissible words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut layer: Vec<(Word, u32)> = alloc::vec![(Vec::new(), self.dfa.start)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, q) in &layer {
                for s in 0..self.dfa.alphabet {
                    let t = self.dfa.step(*q, s as Symbol);
                    if t != DEAD {
                        let mut v = w.clone();
                        v.push(s as Symbol);
                        next.push((v, t));
                    }
                }
            }
            layer = next;
        }
        layer.into_iter().map(|(w, _)| w).collect()
    }
}

pub fn parse_word(alphabet: &[String], text: &str) -> Result<Word> {
    let single = alphabet.iter().all(|s| s.chars().count() == 1);
    let lookup = |tok: &str| {
        alphabet
            .iter()
            .position(|s| s == tok)
            .map(|i| i as Symbol)
            .ok_or_else(|| SoficError::UnknownSymbol(tok.into()))
    };
    if single && !text.contains([',', ' ']) {
        let mut buf = [0u8; 4];
        text.chars().map(|c| lookup(c.encode_utf8(&mut buf))).collect()
    } else {
        text.split([',', ' ']).filter(|t| !t.is_empty()).map(lookup).collect()
    }
}

pub fn format_word(alphabet: &[String], w: &[Symbol]) -> String {
    let single = alphabet.iter().all(|s| s.chars().count() == 1);
    let parts: Vec<&str> = w.iter().map(|&s| alphabet[s as usize].as_str()).collect();
    if single {
        parts.concat()
    } else {
        parts.join(",")
    }
}

/// Right-resolving presentation built by subset construction, trimmed to its essential part.
pub fn determinize(p: &LabeledPresentation) -> LabeledPresentation {
    Dfa::from_presentation(p).to_presentation(p.alphabet()).essential()
}

/// Some strongly connected component of the deterministic cover presents the whole
/// language; its follower-separated quotient is the Fischer cover.
fn fischer_of(cover: &LabeledPresentation, dfa: &Dfa) -> Option<LabeledPresentation> {
    let comp = cover.components();
    let count = comp.iter().max().map_or(0, |m| m + 1);
    for c in 0..count {
        let keep: Vec<bool> = comp.iter().map(|&x| x == c).collect();
        let sub = cover.restrict(&keep);
        if sub.edges().is_empty() {
            continue;
        }
        let mut sub_dfa = Dfa {
            alphabet: dfa.alphabet,
            start: 0,
            trans: alloc::vec![alloc::vec![DEAD; dfa.alphabet]; sub.vertex_count()],
        };
        for e in sub.edges() {
            sub_dfa.trans[e.from][e.label as usize] = e.to as u32;
        }
        let whole = Dfa::from_presentation(&sub);
        if dfa.contained_in(&whole) {
            return Some(sub_dfa.minimize().to_presentation(cover.alphabet()));
        }
    }
    None
}

pub(crate) fn dfa_contained_in(dfa: &Dfa, alphabet: &[String], other: &SoficShift) -> bool {
    let map: Vec<Option<Symbol>> = alphabet.iter().map(|s| other.presentation.symbol_index(s)).collect();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut queue = alloc::collections::VecDeque::new();
    seen.insert((dfa.start, other.dfa.start));
    queue.push_back((dfa.start, other.dfa.start));
    while let Some((a, b)) = queue.pop_front() {
        for (s, target) in map.iter().enumerate() {
            let na = dfa.step(a, s as Symbol);
            if na == DEAD {
                continue;
            }
            let nb = match target {
                Some(t) => other.dfa.step(b, *t),
                None => DEAD,
            };
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

pub(crate) fn cover_is_finite(cover: &LabeledPresentation) -> bool {
    let mut out = alloc::vec![0usize; cover.vertex_count()];
    for e in cover.edges() {
        out[e.from] += 1;
    }
    out.iter().all(|&d| d <= 1)
}

/// Transitivity of the shift presented by `p`.
pub fn is_transitive(p: &LabeledPresentation) -> bool {
    let dfa = Dfa::from_presentation(p);
    let cover = dfa.to_presentation(p.alphabet()).essential();
    fischer_of(&cover, &dfa).is_some()
}

/// Gcd of the cycle lengths of a strongly connected graph.
pub(crate) fn cycle_gcd(p: &LabeledPresentation) -> usize {
    let n = p.vertex_count();
    let mut level = alloc::vec![usize::MAX; n];
    let succ = p.successors();
    level[0] = 0;
    let mut queue = alloc::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(_, w) in &succ[v] {
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut g = 0;
    for e in p.edges() {
        let d = (level[e.from] + 1) as i64 - level[e.to] as i64;
        g = gcd(g, d.unsigned_abs() as usize);
    }
    g
}

/// Perron root of the adjacency matrix of an irreducible graph, counting parallel edges.
pub(crate) fn perron_root(p: &LabeledPresentation) -> f64 {
    let n = p.vertex_count();
    let mut v = alloc::vec![1.0f64; n];
    for _ in 0..200_000 {
        // (A + I) v, which is primitive whenever A is irreducible
        let mut w = v.clone();
        for e in p.edges() {
            w[e.from] += v[e.to];
        }
        let ratios = w.iter().zip(&v).map(|(a, b)| a / b);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let norm = w.iter().cloned().fold(0.0f64, f64::max);
        v = w.iter().map(|x| x / norm).collect();
        if hi - lo < 1e-13 {
            return (lo + hi) / 2.0 - 1.0;
        }
    }
    let w: Vec<f64> = (0..n)
        .map(|i| v[i] + p.edges().iter().filter(|e| e.from == i).map(|e| v[e.to]).sum::<f64>())
        .collect();
    w.iter().zip(&v).map(|(a, b)| a / b).sum::<f64>() / n as f64 - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn golden_mean_basics() {
        let gm = catalog::golden_mean();
        assert!(gm.is_admissible(&[0, 1, 0, 1]));
        assert!(!gm.is_admissible(&[0, 1, 1, 0]));
        assert!(gm.is_transitive());
        assert_eq!(gm.is_aperiodic(), Ok(true));
        assert_eq!(gm.fischer_cover().unwrap().vertex_count(), 2);
        assert!((gm.entropy().unwrap() - 0.481211825059603).abs() < 1e-12);
    }

    #[test]
    fn full_shift_entropy() {
        for k in 2..=4 {
            let f = catalog::full_shift(k);
            assert_eq!(f.fischer_cover().unwrap().vertex_count(), 1);
            assert!((f.entropy().unwrap() - libm::log(k as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn disjoint_union_is_not_transitive() {
        let u = catalog::disjoint_full_shifts();
        assert!(!u.is_transitive());
        assert_eq!(u.entropy(), Err(SoficError::NotTransitive));
        assert_eq!(u.is_aperiodic(), Err(SoficError::NotTransitive));
    }

    #[test]
    fn word_text_round_trip() {
        let gm = catalog::golden_mean();
        let w = gm.parse_word("0101").unwrap();
        assert_eq!(w, alloc::vec![0, 1, 0, 1]);
        assert_eq!(gm.format_word(&w), "0101");
        assert!(gm.parse_word("012").is_err());
    }

    #[test]
    fn periodic_cycle_is_finite() {
        let p = LabeledPresentation::from_named(&["a", "b"], 2, &[(0, 1, "a"), (1, 0, "b")])
            .unwrap();
        let s = SoficShift::new(p).unwrap();
        assert!(s.is_finite());
        assert!(!catalog::golden_mean().is_finite());
        assert_eq!(s.is_aperiodic(), Ok(false));
        assert!(s.entropy().unwrap().abs() < 1e-12);
    }
}
