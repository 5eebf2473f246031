//! Finite words over a symbol alphabet and the combinatorics of periodic words.

use alloc::vec::Vec;

/// Index of a symbol in the alphabet of a presentation.
pub type Symbol = u16;
pub type Word = Vec<Symbol>;

/// Smallest `p` such that `w` is a power of `w[..p]`; `w` must be non-empty.
pub fn primitive_period(w: &[Symbol]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

pub fn primitive_root(w: &[Symbol]) -> &[Symbol] {
    &w[..primitive_period(w)]
}

/// True iff `w` is non-empty and not a proper power of a shorter word.
pub fn is_primitive(w: &[Symbol]) -> bool {
    !w.is_empty() && primitive_period(w) == w.len()
}

/// Cyclic left rotation: `rotate(ab, |a|) = ba`.
pub fn rotate(w: &[Symbol], by: usize) -> Word {
    if w.is_empty() {
        return Vec::new();
    }
    let k = by % w.len();
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[k..]);
    out.extend_from_slice(&w[..k]);
    out
}

/// Rotation offset `k` with `rotate(a, k) == b`, if any.
pub fn rotation_offset(a: &[Symbol], b: &[Symbol]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    (0..a.len()).find(|&k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

/// `a` and `b` label the same periodic orbit.
pub fn conjugate(a: &[Symbol], b: &[Symbol]) -> bool {
    !a.is_empty() && rotation_offset(a, b).is_some()
}

/// The longest non-empty suffix of `a_prime` that is a prefix of `a`; `a` itself when the
/// words coincide. `None` for non-conjugate arguments.
pub fn overlap_u(a: &[Symbol], a_prime: &[Symbol]) -> Option<Word> {
    if !conjugate(a, a_prime) {
        return None;
    }
    let n = a.len();
    (1..=n)
        .rev()
        .find(|&len| a_prime[n - len..] == a[..len])
        .map(|len| a[..len].to_vec())
}

/// Lexicographically least rotation.
pub fn necklace(w: &[Symbol]) -> Word {
    (0..w.len().max(1))
        .map(|k| rotate(w, k))
        .min()
        .unwrap_or_default()
}

pub fn power(w: &[Symbol], n: usize) -> Word {
    let mut out = Vec::with_capacity(w.len() * n);
    for _ in 0..n {
        out.extend_from_slice(w);
    }
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// All words of length exactly `n` over `0..alphabet`, in lexicographic order.
pub fn all_words(alphabet: usize, n: usize) -> Vec<Word> {
    let mut out: Vec<Word> = alloc::vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * alphabet);
        for w in &out {
            for s in 0..alphabet {
                let mut v = w.clone();
                v.push(s as Symbol);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap_u(&[0, 1], &[1, 0]), Some(vec![0]));
        assert_eq!(overlap_u(&[0, 0, 1], &[0, 1, 0]), Some(vec![0]));
        assert_eq!(overlap_u(&[0, 1], &[0, 1]), Some(vec![0, 1]));
        assert_eq!(overlap_u(&[0, 1], &[1, 1]), None);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[0, 1]));
        assert!(!is_primitive(&[0, 1, 0, 1]));
        assert!(!is_primitive(&[]));
        assert_eq!(primitive_root(&[1, 0, 1, 0]), &[1, 0]);
    }

    #[test]
    fn conjugacy_is_rotation() {
        assert!(conjugate(&[0, 0, 1], &[1, 0, 0]));
        assert!(!conjugate(&[0, 0, 1], &[1, 1, 0]));
        assert_eq!(necklace(&[1, 0, 0]), vec![0, 0, 1]);
    }

    proptest::proptest! {
        #[test]
        fn overlap_is_suffix_and_prefix(w in proptest::collection::vec(0u16..3, 1..7), k in 0usize..7) {
            let a = w.clone();
            let b = rotate(&w, k);
            let u = overlap_u(&a, &b).unwrap();
            proptest::prop_assert!(!u.is_empty());
            proptest::prop_assert!(a.starts_with(&u));
            proptest::prop_assert!(b.ends_with(&u));
        }
    }
}
