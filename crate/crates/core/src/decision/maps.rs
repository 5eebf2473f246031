use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::constants::DecisionConstants;
use crate::asymptotic::{is_triple, psi_escape_condition, AsymptoticTriple};
use crate::error::{Result, SoficError};
use crate::periodic::{enumerate_primitive_words, is_periodic_word, orbit_representatives};
use crate::shift::SoficShift;
use crate::word::{is_primitive, necklace, rotate, rotation_offset, Symbol, Word};

/// A shift-commuting map `φ∘` from the periodic points of period at most `h` of one shift
/// to periodic points of another, stored orbit by orbit: the necklace `a` of each source
/// orbit is sent to the primitive word `η(φ∘(p^(a)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicMap {
    h: usize,
    orbits: BTreeMap<Word, Word>,
}

impl PeriodicMap {
    /// Checks that every orbit of `P_X⟨h⟩` is mapped, and to a primitive periodic word of
    /// `X̄` whose length divides the source period.
    pub fn new(x: &SoficShift, x_bar: &SoficShift, h: usize, orbits: BTreeMap<Word, Word>) -> Result<Self> {
        let reps = orbit_representatives(&enumerate_primitive_words(x, h));
        if reps.len() != orbits.len() {
            return Err(SoficError::Precondition("orbit map does not match the source orbits".into()));
        }
        for a in &reps {
            let Some(b) = orbits.get(a) else {
                return Err(SoficError::Precondition(format!("orbit {a:?} is not mapped")));
            };
            if !is_primitive(b) || a.len() % b.len() != 0 || !is_periodic_word(x_bar, b) {
                return Err(SoficError::Precondition(format!("orbit {a:?} has an invalid image")));
            }
        }
        Ok(PeriodicMap { h, orbits })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn orbits(&self) -> &BTreeMap<Word, Word> {
        &self.orbits
    }

    /// Sum of the image periods over all source orbits.
    pub fn total_period(&self) -> usize {
        self.orbits.values().map(Vec::len).sum()
    }

    /// `η(φ∘(p^(a)))` for a primitive word `a` of a mapped orbit.
    pub fn image(&self, a: &[Symbol]) -> Option<Word> {
        self.image_shifted(a, 0)
    }

    /// `η(φ∘(S^j p^(a)))`.
    pub fn image_shifted(&self, a: &[Symbol], j: i64) -> Option<Word> {
        let rep = necklace(a);
        let b = self.orbits.get(&rep)?;
        let k = rotation_offset(&rep, a)? as i64 + j;
        Some(rotate(b, k.rem_euclid(b.len() as i64) as usize))
    }

    /// `φ∘(S^{ℓ(c)} p^(a−)) = φ∘(p^(a+))`.
    pub fn collapses(&self, t: &AsymptoticTriple) -> Option<bool> {
        Some(self.image_shifted(&t.a_minus, t.c.len() as i64)? == self.image(&t.a_plus)?)
    }
}

/// Smallest source period with no admissible image period, i.e. no `φ∘` exists on `P_X⟨h⟩`.
pub fn phi_obstruction(x: &SoficShift, x_bar: &SoficShift, h: usize) -> Option<usize> {
    let targets = enumerate_primitive_words(x_bar, h);
    orbit_representatives(&enumerate_primitive_words(x, h))
        .iter()
        .map(Vec::len)
        .find(|&p| !targets.iter().any(|b| p % b.len() == 0))
}

/// Calls `visit` on every `φ∘` on `P_X⟨h⟩`, by increasing total image period and then
/// lexicographically in the per-orbit choices (targets in the order of
/// [`enumerate_primitive_words`]). Stops early when `visit` returns false.
pub fn for_each_periodic_map(
    x: &SoficShift,
    x_bar: &SoficShift,
    h: usize,
    visit: &mut dyn FnMut(PeriodicMap) -> bool,
) {
    let reps = orbit_representatives(&enumerate_primitive_words(x, h));
    let targets = enumerate_primitive_words(x_bar, h);
    let choices: Vec<Vec<&Word>> = reps
        .iter()
        .map(|a| targets.iter().filter(|b| a.len() % b.len() == 0).collect())
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let lo: Vec<usize> = choices.iter().map(|c| c.iter().map(|b| b.len()).min().unwrap()).collect();
    let hi: Vec<usize> = choices.iter().map(|c| c.iter().map(|b| b.len()).max().unwrap()).collect();
    let (min_total, max_total) = (lo.iter().sum::<usize>(), hi.iter().sum::<usize>());
    let mut suffix_lo = alloc::vec![0; reps.len() + 1];
    let mut suffix_hi = alloc::vec![0; reps.len() + 1];
    for i in (0..reps.len()).rev() {
        suffix_lo[i] = suffix_lo[i + 1] + lo[i];
        suffix_hi[i] = suffix_hi[i + 1] + hi[i];
    }
    struct Walk<'a> {
        reps: &'a [Word],
        choices: &'a [Vec<&'a Word>],
        suffix_lo: &'a [usize],
        suffix_hi: &'a [usize],
        h: usize,
        pick: Vec<usize>,
    }
    fn go(w: &mut Walk, i: usize, left: usize, visit: &mut dyn FnMut(PeriodicMap) -> bool) -> bool {
        if i == w.reps.len() {
            let orbits = w
                .reps
                .iter()
                .zip(&w.pick)
                .enumerate()
                .map(|(j, (a, &p))| (a.clone(), w.choices[j][p].clone()))
                .collect();
            return visit(PeriodicMap { h: w.h, orbits });
        }
        for p in 0..w.choices[i].len() {
            let len = w.choices[i][p].len();
            if len > left {
                continue;
            }
            let rest = left - len;
            if rest < w.suffix_lo[i + 1] || rest > w.suffix_hi[i + 1] {
                continue;
            }
            w.pick.push(p);
            let go_on = go(w, i + 1, rest, visit);
            w.pick.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut w = Walk {
        reps: &reps,
        choices: &choices,
        suffix_lo: &suffix_lo,
        suffix_hi: &suffix_hi,
        h,
        pick: Vec::new(),
    };
    for total in min_total..=max_total {
        if !go(&mut w, 0, total, visit) {
            return;
        }
    }
}

/// A value of an accompanying map: target triple and phase offset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiEntry {
    pub target: AsymptoticTriple,
    pub t: i64,
}

/// An accompanying map `Ψ` with its domain made explicit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AccompanyingMap {
    table: BTreeMap<AsymptoticTriple, PsiEntry>,
}

impl AccompanyingMap {
    pub fn new(table: BTreeMap<AsymptoticTriple, PsiEntry>) -> Self {
        AccompanyingMap { table }
    }

    pub fn table(&self) -> &BTreeMap<AsymptoticTriple, PsiEntry> {
        &self.table
    }

    pub fn get(&self, t: &AsymptoticTriple) -> Option<&PsiEntry> {
        self.table.get(t)
    }

    pub fn in_domain(&self, t: &AsymptoticTriple) -> bool {
        self.table.contains_key(t)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Checks the accompanying-map conditions against the enumerated source triples:
    /// the domain is a non-empty subset, every excluded triple collapses, and every value
    /// satisfies the range, sign and endpoint conditions.
    pub fn validate(
        &self,
        x_bar: &SoficShift,
        phi: &PeriodicMap,
        consts: &DecisionConstants,
        triples: &[AsymptoticTriple],
    ) -> Result<()> {
        if self.table.is_empty() {
            return Err(SoficError::Precondition("accompanying map has an empty domain".into()));
        }
        for t in self.table.keys() {
            if !triples.contains(t) {
                return Err(SoficError::Precondition(format!("{t:?} is not an enumerated triple")));
            }
        }
        for t in triples {
            match self.table.get(t) {
                None if phi.collapses(t) != Some(true) => {
                    return Err(SoficError::Precondition(format!("{t:?} must be in the domain")));
                }
                Some(e) if !entry_valid(x_bar, phi, consts, t, e)? => {
                    return Err(SoficError::Precondition(format!("invalid value at {t:?}")));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Range, sign and endpoint conditions for a single value, together with membership of the
/// target triple in the target triple set.
pub fn entry_valid(
    x_bar: &SoficShift,
    phi: &PeriodicMap,
    consts: &DecisionConstants,
    src: &AsymptoticTriple,
    e: &PsiEntry,
) -> Result<bool> {
    let tr = &e.target;
    if tr.a_minus.len() > consts.h || tr.a_plus.len() > consts.h {
        return Ok(false);
    }
    if !is_triple(x_bar, tr) || !psi_escape_condition(x_bar, tr)? {
        return Ok(false);
    }
    Ok(t_allowed(consts, src, e.t) && endpoints_match(phi, src, tr, e.t))
}

pub(crate) fn t_allowed(consts: &DecisionConstants, src: &AsymptoticTriple, t: i64) -> bool {
    let (big_t, t_circ) = (consts.t as i64, consts.t_circ as i64);
    if t.abs() > big_t {
        return false;
    }
    if src.a_minus.len() <= consts.v_circ_x && t < -t_circ {
        return false;
    }
    !(src.a_plus.len() <= consts.v_circ_x && t > t_circ)
}

pub(crate) fn endpoints_match(phi: &PeriodicMap, src: &AsymptoticTriple, tr: &AsymptoticTriple, t: i64) -> bool {
    let shift_minus = t + src.c.len() as i64 - tr.c.len() as i64;
    phi.image_shifted(&src.a_minus, shift_minus).as_deref() == Some(&tr.a_minus[..])
        && phi.image_shifted(&src.a_plus, t).as_deref() == Some(&tr.a_plus[..])
}

/// All admissible values for `src` among the given target triples, ordered by `|t|`, then
/// `t`, then target order.
pub fn psi_values(
    phi: &PeriodicMap,
    consts: &DecisionConstants,
    src: &AsymptoticTriple,
    targets: &[AsymptoticTriple],
) -> Vec<PsiEntry> {
    let big_t = consts.t as i64;
    let mut ts: Vec<i64> = (-big_t..=big_t).filter(|&t| t_allowed(consts, src, t)).collect();
    ts.sort_by_key(|&t| (t.abs(), t));
    let mut out = Vec::new();
    for t in ts {
        for tr in targets {
            if endpoints_match(phi, src, tr, t) {
                out.push(PsiEntry { target: tr.clone(), t });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::vec;

    #[test]
    fn golden_mean_to_ne3_has_no_periodic_map() {
        assert_eq!(phi_obstruction(&catalog::golden_mean(), &catalog::no_repeat3(), 3), Some(1));
        let mut n = 0;
        for_each_periodic_map(&catalog::golden_mean(), &catalog::no_repeat3(), 3, &mut |_| {
            n += 1;
            true
        });
        assert_eq!(n, 0);
    }

    #[test]
    fn maps_are_ordered_by_total_period() {
        let (x, y) = (catalog::full_shift(2), catalog::golden_mean());
        let mut seen = Vec::new();
        for_each_periodic_map(&x, &y, 2, &mut |m| {
            seen.push(m.total_period());
            true
        });
        // orbits 0, 1, 01; images of 01 are 0, 01 or 10
        assert_eq!(seen, vec![3, 4, 4]);
    }

    #[test]
    fn image_rotates_with_phase() {
        let orbits = BTreeMap::from([(vec![0], vec![0]), (vec![0, 1], vec![1, 0]), (vec![1], vec![0])]);
        let m = PeriodicMap::new(&catalog::full_shift(2), &catalog::golden_mean(), 2, orbits).unwrap();
        assert_eq!(m.image(&[1, 0]), Some(vec![0, 1]));
        assert_eq!(m.image_shifted(&[0, 1], 3), Some(vec![0, 1]));
        let t = AsymptoticTriple::new(vec![0], vec![1], vec![0]);
        assert_eq!(m.collapses(&t), Some(true));
    }
}
