//! Points that are eventually periodic in both directions and their canonical triples.

use alloc::vec::Vec;

use crate::error::{Result, SoficError};
use crate::periodic::{enumerate_primitive_words, power_cycle, powers_nonzero};
use crate::pumping::{escapes, in_bk, psi_k};
use crate::shift::SoficShift;
use crate::syntactic::{ClassId, SyntacticSemigroup};
use crate::word::{is_primitive, power, primitive_period, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AsymptoticTriple {
    pub a_minus: Word,
    pub c: Word,
    pub a_plus: Word,
}

impl AsymptoticTriple {
    pub fn new(a_minus: Word, c: Word, a_plus: Word) -> Self {
        AsymptoticTriple { a_minus, c, a_plus }
    }
}

/// `…left left · middle · right right…` with the first symbol of `middle` at coordinate
/// `start`. `left` and `right` must be non-empty; `middle` may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodicPoint {
    pub left: Word,
    pub middle: Word,
    pub right: Word,
    pub start: i64,
}

impl EventuallyPeriodicPoint {
    pub fn new(left: Word, middle: Word, right: Word, start: i64) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(SoficError::Precondition("periodic tails must be non-empty".into()));
        }
        Ok(EventuallyPeriodicPoint { left, middle, right, start })
    }

    fn end(&self) -> i64 {
        self.start + self.middle.len() as i64
    }

    pub fn symbol_at(&self, i: i64) -> Symbol {
        if i < self.start {
            let n = self.left.len() as i64;
            self.left[(n - 1 - (self.start - 1 - i) % n) as usize]
        } else if i < self.end() {
            self.middle[(i - self.start) as usize]
        } else {
            let n = self.right.len() as i64;
            self.right[((i - self.end()) % n) as usize]
        }
    }

    /// `x_{[from, to)}`.
    pub fn window(&self, from: i64, to: i64) -> Word {
        (from..to).map(|i| self.symbol_at(i)).collect()
    }

    /// Coordinates outside `[lo, hi)` lie in the periodic tails.
    fn span(&self) -> (i64, i64) {
        (self.start, self.end())
    }

    pub fn same_point(&self, other: &Self) -> bool {
        let pad = (self.left.len() * other.left.len() + self.right.len() * other.right.len()) as i64;
        let lo = self.span().0.min(other.span().0) - pad;
        let hi = self.span().1.max(other.span().1) + pad;
        (lo..hi).all(|i| self.symbol_at(i) == other.symbol_at(i))
    }

    pub fn is_periodic(&self) -> bool {
        matches!(decompose(self), Err(SoficError::PeriodicPoint))
    }
}

/// `S^{-t} z^{(a−,c,a+)}`: the middle word ends at coordinate `t` and the right tail starts there.
pub fn realize(t: i64, triple: &AsymptoticTriple) -> EventuallyPeriodicPoint {
    EventuallyPeriodicPoint {
        left: triple.a_minus.clone(),
        middle: triple.c.clone(),
        right: triple.a_plus.clone(),
        start: t - triple.c.len() as i64,
    }
}

/// The unique `(t, (a−, c, a+))` with `x = S^{-t} z^{(a−,c,a+)}` and the symbol conditions.
pub fn decompose(x: &EventuallyPeriodicPoint) -> Result<(i64, AsymptoticTriple)> {
    let pm = primitive_period(&x.left) as i64;
    let pp = primitive_period(&x.right) as i64;
    let (start, end) = x.span();
    // k+: the right tail agrees with its periodic continuation exactly from here on
    let mut k_plus = end;
    while x.symbol_at(k_plus - 1) == x.symbol_at(k_plus - 1 + pp) {
        k_plus -= 1;
        if k_plus < start - pm - pp {
            return Err(SoficError::PeriodicPoint);
        }
    }
    // k−: first coordinate where the left tail's periodic continuation breaks
    let mut k_minus = start;
    while k_minus < k_plus && x.symbol_at(k_minus) == x.symbol_at(k_minus - pm) {
        k_minus += 1;
    }
    let a_plus = x.window(k_plus, k_plus + pp);
    let triple = if k_minus >= k_plus {
        AsymptoticTriple::new(x.window(k_plus - pm, k_plus), Word::new(), a_plus)
    } else {
        AsymptoticTriple::new(x.window(k_minus - pm, k_minus), x.window(k_minus, k_plus), a_plus)
    };
    Ok((k_plus, triple))
}

/// Distinct classes of `a`, `a²`, `a³`, ...
pub(crate) fn power_classes(sg: &SyntacticSemigroup, a: &[Symbol]) -> Vec<ClassId> {
    let c = sg.class_of(a).expect("non-empty");
    let (mu, p) = power_cycle(sg, c);
    let mut out = Vec::with_capacity(mu + p - 1);
    let mut x = c;
    for _ in 1..mu + p {
        out.push(x);
        x = sg.mul(x, c);
    }
    out
}

pub fn symbol_conditions(a_minus: &[Symbol], c: &[Symbol], a_plus: &[Symbol]) -> bool {
    match (c.first(), c.last()) {
        (None, _) | (_, None) => a_minus.last() != a_plus.last(),
        (Some(f), Some(l)) => Some(l) != a_plus.last() && Some(f) != a_minus.first(),
    }
}

/// Membership in the set of asymptotic triples of the shift.
pub fn is_triple(shift: &SoficShift, t: &AsymptoticTriple) -> bool {
    if !is_primitive(&t.a_minus) || !is_primitive(&t.a_plus) {
        return false;
    }
    if !symbol_conditions(&t.a_minus, &t.c, &t.a_plus) {
        return false;
    }
    let sg = shift.semigroup();
    let (lm, lp) = (sg.class_of(&t.a_minus).unwrap(), sg.class_of(&t.a_plus).unwrap());
    if !powers_nonzero(sg, lm) || !powers_nonzero(sg, lp) {
        return false;
    }
    let c = sg.class_of(&t.c);
    let left = power_classes(sg, &t.a_minus);
    let right = power_classes(sg, &t.a_plus);
    left.iter().all(|&l| {
        let lc = sg.mul_opt(Some(l), c).unwrap();
        right.iter().all(|&r| !sg.is_zero(sg.mul(lc, r)))
    })
}

/// `ψ_{ℓ(a−)}(a−^{V+2} c)` lies outside every `B_{ℓ(a−),δ}`. When the word is too short for
/// `ψ` it is left as it is, and then it lies outside `B_{ℓ(a−)}` altogether.
pub fn psi_escape_condition(shift: &SoficShift, t: &AsymptoticTriple) -> Result<bool> {
    let k = t.a_minus.len();
    let mut w = power(&t.a_minus, shift.semigroup().v() + 2);
    w.extend_from_slice(&t.c);
    if !in_bk(shift, &w, k)? {
        return Ok(true);
    }
    escapes(shift, &psi_k(shift, &w, k)?, k)
}

/// Triples with `ℓ(a±) ≤ h`, `ℓ(c) ≤ c_cap` that satisfy the escape condition, ordered by
/// `a−`, then `c` (shortlex), then `a+`, with periodic words in the order of
/// [`enumerate_primitive_words`].
pub fn enumerate_a_circ(shift: &SoficShift, h: usize, c_cap: usize) -> Result<Vec<AsymptoticTriple>> {
    let sg = shift.semigroup();
    let words = enumerate_primitive_words(shift, h);
    let powers: Vec<Vec<ClassId>> = words.iter().map(|a| power_classes(sg, a)).collect();
    let middles: Vec<Word> = (0..=c_cap).flat_map(|n| shift.words_of_length(n)).collect();
    let mut out = Vec::new();
    for (i, am) in words.iter().enumerate() {
        for c in &middles {
            let cc = sg.class_of(c);
            let lefts: Vec<ClassId> =
                powers[i].iter().map(|&l| sg.mul_opt(Some(l), cc).unwrap()).collect();
            if lefts.iter().any(|&l| sg.is_zero(l)) {
                continue;
            }
            for (j, ap) in words.iter().enumerate() {
                if !symbol_conditions(am, c, ap) {
                    continue;
                }
                if lefts
                    .iter()
                    .all(|&l| powers[j].iter().all(|&r| !sg.is_zero(sg.mul(l, r))))
                {
                    let t = AsymptoticTriple::new(am.clone(), c.clone(), ap.clone());
                    if psi_escape_condition(shift, &t)? {
                        out.push(t);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::vec;

    fn tr(a: &[Symbol], c: &[Symbol], b: &[Symbol]) -> AsymptoticTriple {
        AsymptoticTriple::new(a.to_vec(), c.to_vec(), b.to_vec())
    }

    #[test]
    fn triples_of_golden_mean() {
        let gm = catalog::golden_mean();
        assert!(is_triple(&gm, &tr(&[0], &[1], &[0])));
        assert!(is_triple(&gm, &tr(&[0, 1], &[], &[0])));
        assert!(!is_triple(&gm, &tr(&[0], &[], &[0])));
        assert!(!is_triple(&gm, &tr(&[0], &[1], &[1, 0])));
    }

    #[test]
    fn decompose_examples() {
        let x = EventuallyPeriodicPoint::new(vec![0], vec![1], vec![0], 0).unwrap();
        assert_eq!(decompose(&x), Ok((1, tr(&[0], &[1], &[0]))));
        let x = EventuallyPeriodicPoint::new(vec![0, 1], vec![], vec![0], 0).unwrap();
        assert_eq!(decompose(&x), Ok((0, tr(&[0, 1], &[], &[0]))));
        let x = EventuallyPeriodicPoint::new(vec![0], vec![1, 1], vec![0], 0).unwrap();
        assert_eq!(decompose(&x), Ok((2, tr(&[0], &[1, 1], &[0]))));
        let x = EventuallyPeriodicPoint::new(vec![0, 1], vec![0], vec![1, 0], 5).unwrap();
        assert_eq!(decompose(&x), Err(SoficError::PeriodicPoint));
    }

    #[test]
    fn realize_then_decompose() {
        let t = tr(&[0, 1], &[1, 1], &[0]);
        for s in -4..4 {
            assert_eq!(decompose(&realize(s, &t)), Ok((s, t.clone())));
        }
    }

    #[test]
    fn a_circ_examples() {
        let gm = catalog::golden_mean();
        assert!(enumerate_a_circ(&gm, 1, 1).unwrap().contains(&tr(&[0], &[1], &[0])));
        let f = catalog::full_shift(2);
        let a = enumerate_a_circ(&f, 1, 0).unwrap();
        assert_eq!(a, vec![tr(&[0], &[], &[1]), tr(&[1], &[], &[0])]);
    }
}
