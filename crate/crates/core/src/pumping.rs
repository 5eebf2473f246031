//! Length- and context-preserving normalization of long words.
//!
//! Indices follow the one-based convention `b_{[1, n]}` for the prefix of length `n`.

use alloc::vec::Vec;

use crate::error::{Result, SoficError};
use crate::shift::SoficShift;
use crate::syntactic::{ClassId, SyntacticSemigroup};
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PumpIndices {
    pub i: usize,
    pub i_prime: usize,
    pub m: usize,
}

impl PumpIndices {
    /// Length of the pumped prefix `b_{[1,kI]} b^m_{(kI,kI']}`.
    pub fn pumped_len(&self, k: usize) -> usize {
        k * (self.i + self.m * (self.i_prime - self.i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaWindow {
    pub delta: ClassId,
    pub j: usize,
    pub j_prime: usize,
}

/// One application of `ψ_{k,δ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiStep {
    pub pump: PumpIndices,
    pub window: DeltaWindow,
    pub replacement: Word,
    pub result: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTrace {
    pub output: Word,
    pub steps: Vec<PsiStep>,
}

fn prefix_classes(sg: &SyntacticSemigroup, b: &[Symbol]) -> Vec<ClassId> {
    let mut out = Vec::with_capacity(b.len() + 1);
    out.push(sg.zero()); // placeholder for the empty prefix
    let mut c: Option<ClassId> = None;
    for &s in b {
        let next = sg.mul_opt(c, Some(sg.generator(s))).expect("non-empty");
        out.push(next);
        c = Some(next);
    }
    out
}

fn check_admissible(shift: &SoficShift, b: &[Symbol]) -> Result<()> {
    if shift.is_admissible(b) {
        Ok(())
    } else {
        Err(SoficError::Inadmissible)
    }
}

pub fn in_bk(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<bool> {
    check_admissible(shift, b)?;
    Ok(b.len() > k * (shift.semigroup().v() + 2))
}

pub fn pump_indices(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<PumpIndices> {
    if k == 0 || !in_bk(shift, b, k)? {
        return Err(SoficError::Precondition("word not in B_k".into()));
    }
    let sg = shift.semigroup();
    let pc = prefix_classes(sg, b);
    let top = sg.v() + 2;
    for i in 2..top {
        if let Some(i_prime) = (i + 1..=top).find(|&ip| pc[k * i] == pc[k * ip]) {
            let block = &b[k * i..k * i_prime];
            let mut m = 1;
            while k * i + (m + 1) * block.len() <= b.len()
                && b[k * i + m * block.len()..k * i + (m + 1) * block.len()] == *block
            {
                m += 1;
            }
            return Ok(PumpIndices { i, i_prime, m });
        }
    }
    Err(SoficError::Internal("no repeated prefix class".into()))
}

fn window_at(
    sg: &SyntacticSemigroup,
    pc: &[ClassId],
    len: usize,
    pump: &PumpIndices,
    k: usize,
    delta: ClassId,
) -> Option<DeltaWindow> {
    let data = sg.shannon().cycle_data(delta)?;
    let start = pump.pumped_len(k) + 1;
    let hits: Vec<usize> = (start..len).filter(|&j| pc[j] == delta).collect();
    let (&j, &j_prime) = (hits.first()?, hits.last()?);
    (j_prime - j > data.q + k * data.r * (pump.i_prime - pump.i))
        .then_some(DeltaWindow { delta, j, j_prime })
}

pub fn in_bk_delta(
    shift: &SoficShift,
    b: &[Symbol],
    k: usize,
    delta: ClassId,
) -> Result<Option<DeltaWindow>> {
    let pump = pump_indices(shift, b, k)?;
    let sg = shift.semigroup();
    Ok(window_at(sg, &prefix_classes(sg, b), b.len(), &pump, k, delta))
}

/// `H∘(X,k) = V − V∘ + Σ_δ (q_δ + k V∘ r_δ)`.
pub fn h_circ(shift: &SoficShift, k: usize) -> usize {
    let sg = shift.semigroup();
    let sh = sg.shannon();
    let vc = sh.v_circ();
    sg.v() - vc
        + sh.cyclic
            .iter()
            .map(|&d| {
                let data = sh.cycle_data(d).expect("cyclic");
                data.q + k * vc * data.r
            })
            .sum::<usize>()
}

/// Lexicographically least label of a closed path of length `l` at `delta`.
pub fn cycle_word(shift: &SoficShift, delta: ClassId, l: usize) -> Result<Word> {
    let sg = shift.semigroup();
    let sh = sg.shannon();
    let err = SoficError::NotACycleLength { class: delta.0, length: l };
    match sh.cycle_data(delta) {
        Some(d) if d.contains(l) => {}
        _ => return Err(err),
    }
    let v = sg.v();
    // back[j][x]: a path of length j leads from x to delta
    let mut back = alloc::vec![alloc::vec![false; v]; l + 1];
    back[0][delta.0] = true;
    for j in 1..=l {
        for x in 0..v {
            back[j][x] = sh.edges[x].iter().flatten().any(|t| back[j - 1][t.0]);
        }
    }
    let mut w = Word::with_capacity(l);
    let mut at = delta;
    for j in (1..=l).rev() {
        let (s, t) = sh.edges[at.0]
            .iter()
            .enumerate()
            .find_map(|(s, t)| t.filter(|t| back[j - 1][t.0]).map(|t| (s, t)))
            .ok_or(SoficError::Internal("cycle word walk".into()))?;
        w.push(s as Symbol);
        at = t;
    }
    Ok(w)
}

fn apply_delta(
    shift: &SoficShift,
    b: &[Symbol],
    k: usize,
    pump: PumpIndices,
    window: DeltaWindow,
) -> Result<PsiStep> {
    let data = shift.semigroup().shannon().cycle_data(window.delta).expect("cyclic");
    let (i, ip) = (k * pump.i, k * pump.i_prime);
    let block = &b[i..ip];
    let p = pump.pumped_len(k);
    let l = window.j_prime - window.j - k * data.r * (pump.i_prime - pump.i);
    let replacement = cycle_word(shift, window.delta, l)?;
    let mut out = Word::with_capacity(b.len());
    out.extend_from_slice(&b[..i]);
    for _ in 0..pump.m + data.r {
        out.extend_from_slice(block);
    }
    out.extend_from_slice(&b[p..window.j]);
    out.extend_from_slice(&replacement);
    out.extend_from_slice(&b[window.j_prime..]);
    Ok(PsiStep { pump, window, replacement, result: out })
}

pub fn psi_k_delta(shift: &SoficShift, b: &[Symbol], k: usize, delta: ClassId) -> Result<Word> {
    let pump = pump_indices(shift, b, k)?;
    let window = in_bk_delta(shift, b, k, delta)?
        .ok_or_else(|| SoficError::Precondition("word not in B_{k,delta}".into()))?;
    Ok(apply_delta(shift, b, k, pump, window)?.result)
}

/// The first class in ascending order whose window the word admits.
fn first_window(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<Option<(PumpIndices, DeltaWindow)>> {
    let sg = shift.semigroup();
    let pump = pump_indices(shift, b, k)?;
    let pc = prefix_classes(sg, b);
    Ok(sg
        .shannon()
        .cyclic
        .iter()
        .find_map(|&d| window_at(sg, &pc, b.len(), &pump, k, d))
        .map(|w| (pump, w)))
}

/// `b` lies in `B_k` but in no `B_{k,δ}`.
pub fn escapes(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<bool> {
    Ok(first_window(shift, b, k)?.is_none())
}

pub fn psi_k_trace(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<PsiTrace> {
    let sg = shift.semigroup();
    let guard = sg.shannon().v_circ() * b.len() * (sg.v() + 2);
    let mut current = b.to_vec();
    let mut steps = Vec::new();
    while let Some((pump, window)) = first_window(shift, &current, k)? {
        if steps.len() >= guard {
            return Err(SoficError::Internal("psi iteration exceeded its guard".into()));
        }
        let step = apply_delta(shift, &current, k, pump, window)?;
        current = step.result.clone();
        steps.push(step);
    }
    Ok(PsiTrace { output: current, steps })
}

pub fn psi_k(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<Word> {
    Ok(psi_k_trace(shift, b, k)?.output)
}

/// `ℓ(b) − k[I + m(I'−I)] ≤ H∘(X,k)`, the length of the part after the pumped prefix.
pub fn tail_bound_holds(shift: &SoficShift, b: &[Symbol], k: usize) -> Result<bool> {
    let pump = pump_indices(shift, b, k)?;
    Ok(b.len() - pump.pumped_len(k).min(b.len()) <= h_circ(shift, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn membership_in_bk() {
        let gm = catalog::golden_mean();
        assert_eq!(in_bk(&gm, &[0; 7], 1), Ok(true));
        assert_eq!(in_bk(&gm, &[0; 6], 1), Ok(false));
        assert_eq!(in_bk(&catalog::full_shift(2), &[0; 4], 1), Ok(true));
        assert_eq!(in_bk(&gm, &[1, 1], 1), Err(SoficError::Inadmissible));
    }

    #[test]
    fn pump_index_examples() {
        let f = catalog::full_shift(2);
        assert_eq!(pump_indices(&f, &[0; 5], 1), Ok(PumpIndices { i: 2, i_prime: 3, m: 3 }));
        let gm = catalog::golden_mean();
        assert_eq!(
            pump_indices(&gm, &[0, 1, 0, 1, 0, 1, 0], 1),
            Ok(PumpIndices { i: 2, i_prime: 4, m: 2 })
        );
    }

    #[test]
    fn windows() {
        let f = catalog::full_shift(2);
        let d = ClassId(0);
        let w = in_bk_delta(&f, &[0; 12], 1, d).unwrap();
        assert_eq!(w, None);
        let b = [0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1];
        let w = in_bk_delta(&f, &b, 1, d).unwrap().unwrap();
        assert_eq!((w.j, w.j_prime), (4, 11));
        let gm = catalog::golden_mean();
        let zero = gm.semigroup().class_of(&[0]).unwrap();
        assert_eq!(in_bk_delta(&gm, &[1, 0, 1, 0, 1, 0, 1], 1, zero), Ok(None));
    }

    #[test]
    fn h_circ_values() {
        assert_eq!(h_circ(&catalog::full_shift(2), 1), 1);
        let gm = catalog::golden_mean();
        // [0] and [10] carry loops, [1] and [01] return after 2 or more steps
        assert_eq!(h_circ(&gm, 1), (0 + 4) + (1 + 8) + (1 + 8) + (0 + 4));
        assert!(h_circ(&gm, 2) >= h_circ(&gm, 1));
    }

    #[test]
    fn cycle_words() {
        let f = catalog::full_shift(2);
        assert_eq!(cycle_word(&f, ClassId(0), 3), Ok(alloc::vec![0, 0, 0]));
        let gm = catalog::golden_mean();
        let one = gm.semigroup().class_of(&[1]).unwrap();
        assert_eq!(cycle_word(&gm, one, 2), Ok(alloc::vec![0, 1]));
        assert!(matches!(cycle_word(&gm, one, 1), Err(SoficError::NotACycleLength { .. })));
    }

    #[test]
    fn psi_preserves_length_and_context() {
        let f = catalog::full_shift(2);
        let b = [0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1];
        let out = psi_k(&f, &b, 1).unwrap();
        assert_eq!(out.len(), b.len());
        assert_ne!(out, b);
        assert!(escapes(&f, &out, 1).unwrap());
        assert_eq!(psi_k(&f, &[0; 12], 1).unwrap(), alloc::vec![0; 12]);
    }
}
