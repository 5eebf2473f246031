//! Periodic points, their primitive words and the power invariants `R(a)`, `Q(a)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Result, SoficError};
use crate::shift::SoficShift;
use crate::syntactic::{ClassId, SyntacticSemigroup};
use crate::word::{is_primitive, lcm, Symbol, Word};

/// `R`: eventual period of `[a], [a²], ...`; `Q`: least `Q ≥ 1` with `[a^{QR}] = [a^{(Q+1)R}]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodInvariants {
    pub r: usize,
    pub q: usize,
}

/// Preperiod `μ` and period of the power sequence of `c`: `c^i = c^{i+p}` iff `i ≥ μ`.
pub fn power_cycle(sg: &SyntacticSemigroup, c: ClassId) -> (usize, usize) {
    let mut seen = BTreeMap::new();
    let mut x = c;
    let mut i = 1;
    loop {
        if let Some(&j) = seen.get(&x) {
            return (j, i - j);
        }
        seen.insert(x, i);
        x = sg.mul(x, c);
        i += 1;
    }
}

/// All powers of `c` are admissible.
pub fn powers_nonzero(sg: &SyntacticSemigroup, c: ClassId) -> bool {
    let (mu, p) = power_cycle(sg, c);
    let mut x = c;
    for _ in 1..mu + p {
        if sg.is_zero(x) {
            return false;
        }
        x = sg.mul(x, c);
    }
    !sg.is_zero(x)
}

pub fn class_invariants(sg: &SyntacticSemigroup, c: ClassId) -> PeriodInvariants {
    let (mu, r) = power_cycle(sg, c);
    PeriodInvariants { r, q: mu.div_ceil(r).max(1) }
}

/// `a^∞` is a point of the shift.
pub fn is_periodic_word(shift: &SoficShift, a: &[Symbol]) -> bool {
    let sg = shift.semigroup();
    match sg.class_of(a) {
        Some(c) => powers_nonzero(sg, c),
        None => false,
    }
}

pub fn period_invariants(shift: &SoficShift, a: &[Symbol]) -> Result<PeriodInvariants> {
    if !is_primitive(a) {
        return Err(SoficError::Precondition("word is not primitive".into()));
    }
    let sg = shift.semigroup();
    let c = sg.class_of(a).expect("non-empty");
    if sg.is_zero(c) {
        return Err(SoficError::Inadmissible);
    }
    Ok(class_invariants(sg, c))
}

/// Primitive words `a` with `ℓ(a) ≤ k` and `a^∞` in the shift, by length then lexicographically.
pub fn enumerate_primitive_words(shift: &SoficShift, k: usize) -> Vec<Word> {
    let sg = shift.semigroup();
    (1..=k)
        .flat_map(|n| shift.words_of_length(n))
        .filter(|w| is_primitive(w) && powers_nonzero(sg, sg.class_of(w).unwrap()))
        .collect()
}

/// One representative per orbit: the lexicographically least rotation.
pub fn orbit_representatives(words: &[Word]) -> Vec<Word> {
    words
        .iter()
        .filter(|w| crate::word::necklace(w) == **w)
        .cloned()
        .collect()
}

/// Classes of the admissible words of each length, as an eventually periodic sequence.
#[derive(Debug, Clone)]
pub(crate) struct LayerSequence {
    layers: Vec<Vec<bool>>,
    mu: usize,
    period: usize,
}

impl LayerSequence {
    pub fn new(sg: &SyntacticSemigroup) -> Self {
        let v = sg.v();
        let mut first = alloc::vec![false; v];
        for s in 0..gens_len(sg) {
            let g = sg.generator(s as Symbol);
            if !sg.is_zero(g) {
                first[g.0] = true;
            }
        }
        // index 0 is a placeholder so that `layers[n]` is the layer of length n
        let mut layers = alloc::vec![Vec::new(), first];
        let mut seen: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        loop {
            let n = layers.len() - 1;
            if let Some(&m) = seen.get(&layers[n]) {
                layers.pop();
                return LayerSequence { layers, mu: m, period: n - m };
            }
            seen.insert(layers[n].clone(), n);
            let mut next = alloc::vec![false; v];
            for c in 0..v {
                if layers[n][c] {
                    for s in 0..gens_len(sg) {
                        let d = sg.mul(ClassId(c), sg.generator(s as Symbol));
                        if !sg.is_zero(d) {
                            next[d.0] = true;
                        }
                    }
                }
            }
            layers.push(next);
        }
    }

    pub fn layer(&self, n: usize) -> &[bool] {
        assert!(n >= 1);
        if n < self.layers.len() {
            &self.layers[n]
        } else {
            &self.layers[self.mu + (n - self.mu) % self.period]
        }
    }

    pub fn horizon(&self) -> (usize, usize) {
        (self.mu, self.period)
    }
}

fn gens_len(sg: &SyntacticSemigroup) -> usize {
    sg.generator_count()
}

/// Lengths `n` such that some point has `σⁿ p = p`, as a predicate with its horizon.
struct PeriodSet {
    layers: LayerSequence,
    periodic: Vec<bool>,
}

impl PeriodSet {
    fn new(sg: &SyntacticSemigroup) -> Self {
        let periodic = sg.admissible_classes().map(|c| powers_nonzero(sg, c)).collect();
        PeriodSet { layers: LayerSequence::new(sg), periodic }
    }

    fn contains(&self, n: usize) -> bool {
        self.layers
            .layer(n)
            .iter()
            .zip(&self.periodic)
            .any(|(&a, &b)| a && b)
    }
}

/// Least `π` that is a period of `X` but not of `X̄`. Such a `π` is a least period of `X`
/// without any divisor among the least periods of `X̄`, and it exists iff the periodic
/// point condition fails.
pub fn periodic_point_obstruction(x: &SoficShift, x_bar: &SoficShift) -> Option<usize> {
    let a = PeriodSet::new(x.semigroup());
    let b = PeriodSet::new(x_bar.semigroup());
    let (ma, pa) = a.layers.horizon();
    let (mb, pb) = b.layers.horizon();
    let bound = ma.max(mb) + lcm(pa, pb);
    (1..=bound).find(|&n| a.contains(n) && !b.contains(n))
}

pub fn periodic_point_condition(x: &SoficShift, x_bar: &SoficShift) -> bool {
    periodic_point_obstruction(x, x_bar).is_none()
}

/// Largest `R(a)` over the periodic words of length at most `k`.
///
/// A proper power `b^j` never has a larger `R` than `b`, so this is also the maximum over
/// the primitive words of length at most `k`.
pub fn max_r(shift: &SoficShift, k: usize) -> usize {
    let sg = shift.semigroup();
    let layers = LayerSequence::new(sg);
    let (mu, p) = layers.horizon();
    let mut hit = alloc::vec![false; sg.v()];
    for n in 1..=k.min(mu + p) {
        for (c, &present) in layers.layer(n).iter().enumerate() {
            hit[c] |= present;
        }
    }
    sg.admissible_classes()
        .filter(|c| hit[c.0] && powers_nonzero(sg, *c))
        .map(|c| power_cycle(sg, c).1)
        .max()
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn golden_mean_primitive_words() {
        let gm = catalog::golden_mean();
        let words = enumerate_primitive_words(&gm, 3);
        let expect: Vec<Word> =
            alloc::vec![alloc::vec![0], alloc::vec![0, 1], alloc::vec![1, 0], alloc::vec![0, 0, 1], alloc::vec![0, 1, 0], alloc::vec![1, 0, 0]];
        assert_eq!(words, expect);
        assert!(enumerate_primitive_words(&catalog::no_repeat3(), 1).is_empty());
    }

    #[test]
    fn golden_mean_invariants() {
        let gm = catalog::golden_mean();
        assert_eq!(period_invariants(&gm, &[0]), Ok(PeriodInvariants { r: 1, q: 1 }));
        assert_eq!(period_invariants(&gm, &[0, 1]), Ok(PeriodInvariants { r: 1, q: 1 }));
        assert!(period_invariants(&gm, &[0, 0]).is_err());
    }

    #[test]
    fn periodic_point_conditions() {
        let gm = catalog::golden_mean();
        let full = catalog::full_shift(2);
        let ne3 = catalog::no_repeat3();
        assert!(periodic_point_condition(&full, &gm));
        assert_eq!(periodic_point_obstruction(&gm, &ne3), Some(1));
        assert!(periodic_point_condition(&gm, &gm));
    }

    #[test]
    fn max_r_of_full_shift_is_one() {
        assert_eq!(max_r(&catalog::full_shift(2), 5), 1);
    }
}
