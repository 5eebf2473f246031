//! Brute-force ground truth: sliding block codes of small window between two shifts.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::asymptotic::{decompose, enumerate_a_circ, is_triple, realize, EventuallyPeriodicPoint};
use crate::blockmap::BlockMap;
use crate::decision::{AccompanyingMap, Budget, DecisionConstants, PeriodicMap, PsiEntry};
use crate::dfa::{Dfa, DEAD};
use crate::error::{Result, SoficError};
use crate::periodic::{enumerate_primitive_words, is_periodic_word, orbit_representatives, period_invariants};
use crate::pumping::{in_bk, psi_k};
use crate::shift::{cover_is_finite, dfa_contained_in, SoficShift};
use crate::syntactic::ClassId;
use crate::word::{lcm, power, primitive_period, Symbol, Word};

pub const DEFAULT_MAX_WINDOW: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Want {
    Any,
    InfiniteImage,
    Surjective,
    /// The image meets the complement of the derived shift of the target.
    MeetsNonderived,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub window: usize,
    pub found: Vec<BlockMap>,
    /// The whole table space was searched.
    pub exhausted: bool,
}

/// The image contains a point with a synchronizing word of `x_bar`.
pub fn meets_nonderived(image: &SoficShift, x_bar: &SoficShift) -> bool {
    reaches_sync(image.dfa(), x_bar)
}

fn reaches_sync(dfa: &Dfa, x_bar: &SoficShift) -> bool {
    let sg = x_bar.semigroup();
    let mut seen = BTreeSet::from([(dfa.start, None)]);
    let mut queue = VecDeque::from([(dfa.start, None::<ClassId>)]);
    while let Some((q, c)) = queue.pop_front() {
        for s in 0..dfa.alphabet {
            let q2 = dfa.step(q, s as Symbol);
            if q2 == DEAD {
                continue;
            }
            let c2 = sg.mul_opt(c, Some(sg.generator(s as Symbol)));
            if c2.is_some_and(|c| sg.is_synchronizing_class(c)) {
                return true;
            }
            if seen.insert((q2, c2)) {
                queue.push_back((q2, c2));
            }
        }
    }
    false
}

fn image_automaton(map: &BlockMap, x: &SoficShift) -> Result<Dfa> {
    Ok(Dfa::from_presentation(&map.image_presentation(x)?.essential()))
}

fn wanted(map: &BlockMap, x: &SoficShift, x_bar: &SoficShift, want: Want) -> Result<bool> {
    let dfa = image_automaton(map, x)?;
    if !dfa_contained_in(&dfa, x_bar.alphabet(), x_bar) {
        return Ok(false);
    }
    Ok(match want {
        Want::Any => true,
        Want::InfiniteImage => !cover_is_finite(&dfa.to_presentation(x_bar.alphabet()).essential()),
        Want::Surjective => x_bar.dfa().contained_in(&dfa),
        Want::MeetsNonderived => reaches_sync(&dfa, x_bar),
    })
}

/// All block maps of half-window `window` from `x` into `x_bar` with the wanted property,
/// in lexicographic table order (blocks in lexicographic order, target symbols by index).
pub fn search_homomorphisms(
    x: &SoficShift,
    x_bar: &SoficShift,
    window: usize,
    want: Want,
    budget: &Budget,
) -> Result<OracleResult> {
    if window > DEFAULT_MAX_WINDOW {
        return Err(SoficError::ResourceExceeded(format!(
            "window {window} exceeds the maximum {DEFAULT_MAX_WINDOW}"
        )));
    }
    let width = 2 * window + 1;
    let blocks = x.words_of_length(width);
    let index: BTreeMap<&[Symbol], usize> =
        blocks.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    // Words checked as soon as their last block is assigned.
    let mut checks: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); blocks.len()];
    for extra in 1..=width + 1 {
        for w in x.words_of_length(width + extra) {
            let ids: Vec<usize> = w.windows(width).map(|b| index[b]).collect();
            let last = *ids.iter().max().unwrap();
            checks[last].push(ids);
        }
    }
    for a in enumerate_primitive_words(x, width + 1) {
        let n = a.len();
        let cyc = power(&a, width.div_ceil(n) + 1);
        let ids: Vec<usize> = (0..n).map(|i| index[&cyc[i..i + width]]).collect();
        let last = *ids.iter().max().unwrap();
        // A leading usize::MAX marks a periodic check.
        let mut tagged = alloc::vec![usize::MAX];
        tagged.extend(ids);
        checks[last].push(tagged);
    }
    let k = x_bar.alphabet().len();
    let mut assign: Vec<Symbol> = Vec::with_capacity(blocks.len());
    let mut found = Vec::new();
    let mut exhausted = true;
    let ok = |assign: &[Symbol], i: usize| -> bool {
        checks[i].iter().all(|ids| {
            if ids[0] == usize::MAX {
                let img: Word = ids[1..].iter().map(|&b| assign[b]).collect();
                is_periodic_word(x_bar, &img)
            } else {
                let img: Word = ids.iter().map(|&b| assign[b]).collect();
                x_bar.is_admissible(&img)
            }
        })
    };
    // Iterative depth-first search over the table space.
    let mut next: Vec<Symbol> = alloc::vec![0];
    while let Some(&s) = next.last() {
        if (s as usize) >= k {
            next.pop();
            assign.pop();
            if let Some(t) = next.last_mut() {
                *t += 1;
            }
            continue;
        }
        if !budget.spend(1) {
            exhausted = false;
            break;
        }
        let depth = next.len() - 1;
        assign.truncate(depth);
        assign.push(s);
        if !ok(&assign, depth) {
            *next.last_mut().unwrap() += 1;
            continue;
        }
        if depth + 1 == blocks.len() {
            let table = blocks.iter().cloned().zip(assign.iter().copied()).collect();
            let map = BlockMap::new(window, table, x_bar.alphabet().to_vec())?;
            if wanted(&map, x, x_bar, want)? {
                found.push(map);
            }
            *next.last_mut().unwrap() += 1;
        } else {
            next.push(0);
        }
    }
    Ok(OracleResult { window, found, exhausted })
}

/// `φ(x)` as an eventually periodic point.
fn image_point(map: &BlockMap, z: &EventuallyPeriodicPoint) -> Result<EventuallyPeriodicPoint> {
    let l = map.window() as i64;
    let sym = |i: i64| -> Result<Symbol> {
        let b = z.window(i - l, i + l + 1);
        map.table().get(&b).copied().ok_or_else(|| SoficError::NotTotal(format!("{b:?}")))
    };
    let lo = z.start - l;
    let hi = z.start + z.middle.len() as i64 + l;
    let (pl, pr) = (z.left.len() as i64, z.right.len() as i64);
    let left: Word = (lo - pl..lo).map(sym).collect::<Result<_>>()?;
    let middle: Word = (lo..hi).map(sym).collect::<Result<_>>()?;
    let right: Word = (hi..hi + pr).map(sym).collect::<Result<_>>()?;
    let dl = primitive_period(&left);
    let dr = primitive_period(&right);
    EventuallyPeriodicPoint::new(left[left.len() - dl..].to_vec(), middle, right[..dr].to_vec(), lo)
}

/// `φ∘` and `Ψ` induced by a homomorphism with infinite image, for the triples with
/// `ℓ(a±) ≤ consts.h` and `ℓ(c) ≤ c_cap`.
///
/// The phase offset `t` is taken congruent to the actual offset modulo
/// `lcm(ℓ(ā−), ℓ(ā+))·R(ā−)·R(ā+)` where possible and otherwise is any admissible offset
/// of least absolute value.
pub fn induced_pair(
    map: &BlockMap,
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    c_cap: usize,
) -> Result<(PeriodicMap, AccompanyingMap)> {
    if map.target_alphabet() != x_bar.alphabet() {
        return Err(SoficError::Precondition("block map has a different target alphabet".into()));
    }
    let image = image_automaton(map, x)?;
    if !dfa_contained_in(&image, x_bar.alphabet(), x_bar) {
        return Err(SoficError::Precondition("block map does not map into the target".into()));
    }
    if cover_is_finite(&image.to_presentation(x_bar.alphabet()).essential()) {
        return Err(SoficError::FiniteShift);
    }
    let h = consts.h;
    let mut orbits = BTreeMap::new();
    for a in orbit_representatives(&enumerate_primitive_words(x, h)) {
        let b = map.image_primitive(&a)?;
        orbits.insert(a, b);
    }
    let phi = PeriodicMap::new(x, x_bar, h, orbits)?;
    let v_bar = x_bar.semigroup().v();
    let mut table = BTreeMap::new();
    for tr in enumerate_a_circ(x, h, c_cap)? {
        let z = realize(0, &tr);
        let fz = image_point(map, &z)?;
        let (t1, tilde) = match decompose(&fz) {
            Ok(d) => d,
            Err(SoficError::PeriodicPoint) => continue,
            Err(e) => return Err(e),
        };
        let mut w = power(&tilde.a_minus, v_bar + 2);
        w.extend_from_slice(&tilde.c);
        let k = tilde.a_minus.len();
        let middle = if in_bk(x_bar, &w, k)? { psi_k(x_bar, &w, k)? } else { w };
        let start = -(middle.len() as i64);
        let zbar = EventuallyPeriodicPoint::new(tilde.a_minus.clone(), middle, tilde.a_plus.clone(), start)?;
        let (t2, target) = decompose(&zbar)?;
        if !is_triple(x_bar, &target) {
            return Err(SoficError::Internal(format!("{target:?} is not a target triple")));
        }
        let actual = t1 + t2;
        let (rm, rp) = (
            period_invariants(x_bar, &target.a_minus)?.r,
            period_invariants(x_bar, &target.a_plus)?.r,
        );
        let modulus = (lcm(target.a_minus.len(), target.a_plus.len()) * rm * rp) as i64;
        let big_t = consts.t as i64;
        let mut ts: Vec<i64> = (-big_t..=big_t)
            .filter(|&t| {
                crate::decision::maps::t_allowed(consts, &tr, t)
                    && crate::decision::maps::endpoints_match(&phi, &tr, &target, t)
            })
            .collect();
        ts.sort_by_key(|&t| ((t - actual).rem_euclid(modulus) != 0, t.abs(), t));
        let t = *ts.first().ok_or_else(|| {
            SoficError::Internal(format!("no admissible phase offset for {tr:?} (actual offset {actual})"))
        })?;
        table.insert(tr, PsiEntry { target, t });
    }
    Ok((phi, AccompanyingMap::new(table)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::decision::constants;

    #[test]
    fn full2_to_golden_mean_window_one() {
        let (x, y) = (catalog::full_shift(2), catalog::golden_mean());
        let r = search_homomorphisms(&x, &y, 1, Want::InfiniteImage, &Budget::unlimited()).unwrap();
        assert!(r.exhausted);
        let detector = BlockMap::from_fn(&x, 1, y.alphabet().to_vec(), |b| (b[1] == 1 && b[2] == 0) as Symbol).unwrap();
        assert!(r.found.contains(&detector));
    }

    #[test]
    fn golden_mean_to_ne3_is_empty() {
        let (x, y) = (catalog::golden_mean(), catalog::no_repeat3());
        for l in 0..=2 {
            let r = search_homomorphisms(&x, &y, l, Want::Any, &Budget::unlimited()).unwrap();
            assert!(r.exhausted && r.found.is_empty());
        }
    }

    #[test]
    fn identity_is_surjective() {
        let x = catalog::even();
        let r = search_homomorphisms(&x, &x, 0, Want::Surjective, &Budget::unlimited()).unwrap();
        assert!(r.found.contains(&BlockMap::identity(&x)));
    }

    #[test]
    fn identity_induces_identity_pair() {
        let x = catalog::golden_mean();
        let c = constants(&x, &x, Some(2)).unwrap();
        let (phi, psi) = induced_pair(&BlockMap::identity(&x), &x, &x, &c, 2).unwrap();
        assert!(phi.orbits().iter().all(|(a, b)| a == b));
        assert!(!psi.is_empty());
        assert!(psi.table().iter().all(|(k, v)| *k == v.target && v.t == 0));
    }

    #[test]
    fn constant_map_rejected() {
        let x = catalog::full_shift(2);
        let y = catalog::golden_mean();
        let c = constants(&x, &y, Some(1)).unwrap();
        let m = BlockMap::from_fn(&x, 0, y.alphabet().to_vec(), |_| 0).unwrap();
        assert_eq!(induced_pair(&m, &x, &y, &c, 1).unwrap_err(), SoficError::FiniteShift);
    }
}
