//! Reference implementations written directly from the definitions of the test shifts.
//! Nothing here goes through the automata of the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use sofic_core::{catalog, SoficShift, Symbol, Word};

pub struct TestShift {
    pub name: &'static str,
    pub shift: SoficShift,
    pub symbols: usize,
    pub admissible: fn(&[Symbol]) -> bool,
}

/// No two adjacent 1s.
pub fn golden_mean_ok(w: &[Symbol]) -> bool {
    w.iter().all(|&s| s < 2) && !w.windows(2).any(|p| p == [1, 1])
}

/// Every run of 1s enclosed by 0s has even length.
pub fn even_ok(w: &[Symbol]) -> bool {
    if w.iter().any(|&s| s > 1) {
        return false;
    }
    let zeros: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 0).collect();
    zeros.windows(2).all(|p| (p[1] - p[0] - 1) % 2 == 0)
}

pub fn full2_ok(w: &[Symbol]) -> bool {
    w.iter().all(|&s| s < 2)
}

/// Three symbols, no symbol twice in a row.
pub fn ne3_ok(w: &[Symbol]) -> bool {
    w.iter().all(|&s| s < 3) && !w.windows(2).any(|p| p[0] == p[1])
}

pub fn gm() -> TestShift {
    TestShift { name: "GM", shift: catalog::golden_mean(), symbols: 2, admissible: golden_mean_ok }
}

pub fn even() -> TestShift {
    TestShift { name: "EVEN", shift: catalog::even(), symbols: 2, admissible: even_ok }
}

pub fn full2() -> TestShift {
    TestShift { name: "FULL2", shift: catalog::full_shift(2), symbols: 2, admissible: full2_ok }
}

pub fn ne3() -> TestShift {
    TestShift { name: "NE3", shift: catalog::no_repeat3(), symbols: 3, admissible: ne3_ok }
}

pub fn all_shifts() -> Vec<TestShift> {
    vec![gm(), even(), full2(), ne3()]
}

/// All words of length `n` over `k` symbols, lexicographic.
pub fn words(k: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Word| {
                (0..k as Symbol).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn words_up_to(k: usize, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|l| words(k, l)).collect()
}

pub fn admissible_words(t: &TestShift, min: usize, max: usize) -> Vec<Word> {
    (min..=max).flat_map(|l| words(t.symbols, l)).filter(|w| (t.admissible)(w)).collect()
}

/// Pairs `(u, v)` with `u w v` admissible and `ℓ(u) + ℓ(v) ≤ max`.
pub fn contexts(t: &TestShift, w: &[Symbol], max: usize) -> BTreeSet<(Word, Word)> {
    let mut out = BTreeSet::new();
    for total in 0..=max {
        for u_len in 0..=total {
            for u in words(t.symbols, u_len) {
                for v in words(t.symbols, total - u_len) {
                    let mut x = u.clone();
                    x.extend_from_slice(w);
                    x.extend_from_slice(&v);
                    if (t.admissible)(&x) {
                        out.insert((u.clone(), v));
                    }
                }
            }
        }
    }
    out
}

pub fn repeat(w: &[Symbol], n: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * n).collect()
}

pub fn naive_primitive(w: &[Symbol]) -> bool {
    let n = w.len();
    n > 0 && (1..n).filter(|d| n % d == 0).all(|d| (0..n).any(|i| w[i] != w[i % d]))
}

/// `a^∞` lies in the shift, judged on a long power.
pub fn naive_periodic(t: &TestShift, a: &[Symbol]) -> bool {
    !a.is_empty() && (t.admissible)(&repeat(a, 24 / a.len() + 2))
}

/// Primitive words of length at most `n` whose periodic point lies in the shift.
pub fn periodic_words(t: &TestShift, n: usize) -> BTreeSet<Word> {
    (1..=n)
        .flat_map(|l| words(t.symbols, l))
        .filter(|a| naive_primitive(a) && naive_periodic(t, a))
        .collect()
}

/// Image of `w` under the sliding code with half-window `window` given by `f`.
pub fn slide(w: &[Symbol], window: usize, f: impl Fn(&[Symbol]) -> Symbol) -> Word {
    w.windows(2 * window + 1).map(f).collect()
}
