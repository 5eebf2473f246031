//! Context classes, the syntactic semigroup and its Shannon graph.
//!
//! Two words have equal context exactly when they induce the same partial transformation
//! on the states of the minimal automaton of the language, so the semigroup is computed as
//! the transition semigroup of that automaton, with an absorbing zero for inadmissible
//! words adjoined as the last element.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::dfa::{Dfa, DEAD};
use crate::error::{Result, SoficError};
use crate::presentation::{Edge, LabeledPresentation};
use crate::shift::SoficShift;
use crate::word::{Symbol, Word};

/// Largest syntactic semigroup that is built.
pub const MAX_CLASSES: usize = 2048;

/// Index of a context class. Admissible classes are numbered in shortlex order of their
/// least representatives; the zero class comes last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub usize);

#[derive(Debug, Clone)]
pub struct SyntacticSemigroup {
    transforms: Vec<Vec<u32>>,
    reps: Vec<Word>,
    mult: Vec<ClassId>,
    gens: Vec<ClassId>,
    sync: Vec<bool>,
    shannon: ShannonGraphData,
}

/// Cycle data of a Shannon graph vertex.
///
/// `lambda` is the set of lengths of closed paths at the vertex. Beyond `q` it is
/// periodic with period `r`: a length `l > q` belongs to it iff the unique element of
/// `window` congruent to `l` modulo `r` exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleData {
    pub r: usize,
    pub q: usize,
    /// Elements of the set up to and including `q`.
    pub below: Vec<usize>,
    /// Elements in `(q, q + r]`.
    pub window: Vec<usize>,
    /// `profile[l]` for `l < mu + period` describes membership; later lengths repeat with
    /// `period`.
    profile: Vec<bool>,
    mu: usize,
    period: usize,
}

impl CycleData {
    pub fn contains(&self, l: usize) -> bool {
        if l == 0 {
            return false;
        }
        if l < self.profile.len() {
            self.profile[l]
        } else {
            self.profile[self.mu + (l - self.mu) % self.period]
        }
    }
}

#[derive(Debug, Clone)]
pub struct ShannonGraphData {
    /// `edges[δ][σ] = δ·[σ]` when that product is admissible.
    pub edges: Vec<Vec<Option<ClassId>>>,
    /// Vertices lying on a cycle, ascending.
    pub cyclic: Vec<ClassId>,
    cycle_data: BTreeMap<ClassId, CycleData>,
}

impl ShannonGraphData {
    pub fn v_circ(&self) -> usize {
        self.cyclic.len()
    }

    pub fn cycle_data(&self, c: ClassId) -> Option<&CycleData> {
        self.cycle_data.get(&c)
    }

    fn build(admissible: usize, edges: Vec<Vec<Option<ClassId>>>) -> Self {
        let mut cyclic = Vec::new();
        let mut cycle_data = BTreeMap::new();
        for d in 0..admissible {
            if let Some(data) = lambda_of(&edges, d) {
                cyclic.push(ClassId(d));
                cycle_data.insert(ClassId(d), data);
            }
        }
        ShannonGraphData { edges, cyclic, cycle_data }
    }
}

/// Exact-length return sets at `d`, stopping at the first repeated reachable set.
fn lambda_of(edges: &[Vec<Option<ClassId>>], d: usize) -> Option<CycleData> {
    let n = edges.len();
    let mut seen: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut current = alloc::vec![false; n];
    current[d] = true;
    let mut profile = Vec::new();
    let (mu, period) = loop {
        if let Some(&first) = seen.get(&current) {
            break (first, profile.len() - first);
        }
        seen.insert(current.clone(), profile.len());
        profile.push(current[d]);
        let mut next = alloc::vec![false; n];
        for (v, row) in edges.iter().enumerate() {
            if current[v] {
                for t in row.iter().flatten() {
                    next[t.0] = true;
                }
            }
        }
        current = next;
    };
    let member = |l: usize| {
        if l == 0 {
            false
        } else if l < profile.len() {
            profile[l]
        } else {
            profile[mu + (l - mu) % period]
        }
    };
    let r = (1..mu + period + 1).find(|&l| member(l))?;
    let horizon = mu + period + r;
    let q = (0..=horizon)
        .find(|&q| (q + r + 1..=horizon.max(q + r + 1)).all(|l| member(l) == member(l - r)))
        .expect("eventually periodic");
    Some(CycleData {
        r,
        q,
        below: (1..=q).filter(|&l| member(l)).collect(),
        window: (q + 1..=q + r).filter(|&l| member(l)).collect(),
        profile,
        mu,
        period,
    })
}

fn compose(f: &[u32], g: &[u32]) -> Vec<u32> {
    f.iter()
        .map(|&x| if x == DEAD { DEAD } else { g[x as usize] })
        .collect()
}

impl SyntacticSemigroup {
    pub(crate) fn from_dfa(dfa: &Dfa) -> Result<Self> {
        let n = dfa.state_count();
        let k = dfa.alphabet;
        let generator_maps: Vec<Vec<u32>> = (0..k)
            .map(|s| (0..n).map(|q| dfa.trans[q][s]).collect())
            .collect();
        let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        let mut transforms: Vec<Vec<u32>> = Vec::new();
        let mut reps: Vec<Word> = Vec::new();
        let mut zero_rep: Option<Word> = None;
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut visit = |t: Vec<u32>, rep: Word, transforms: &mut Vec<Vec<u32>>, reps: &mut Vec<Word>, queue: &mut VecDeque<usize>, zero_rep: &mut Option<Word>| {
            if t.iter().all(|&x| x == DEAD) {
                if zero_rep.is_none() {
                    *zero_rep = Some(rep);
                }
                return;
            }
            if !index.contains_key(&t) {
                index.insert(t.clone(), transforms.len());
                queue.push_back(transforms.len());
                transforms.push(t);
                reps.push(rep);
            }
        };
        for (s, g) in generator_maps.iter().enumerate() {
            visit(g.clone(), alloc::vec![s as Symbol], &mut transforms, &mut reps, &mut queue, &mut zero_rep);
        }
        while let Some(i) = queue.pop_front() {
            if transforms.len() > MAX_CLASSES {
                return Err(SoficError::ResourceExceeded(format!(
                    "syntactic semigroup has more than {MAX_CLASSES} classes"
                )));
            }
            for (s, g) in generator_maps.iter().enumerate() {
                let t = compose(&transforms[i], g);
                let mut rep = reps[i].clone();
                rep.push(s as Symbol);
                visit(t, rep, &mut transforms, &mut reps, &mut queue, &mut zero_rep);
            }
        }
        let v = transforms.len();
        let zero = ClassId(v);
        let lookup = |t: &Vec<u32>| -> ClassId {
            if t.iter().all(|&x| x == DEAD) {
                zero
            } else {
                ClassId(index[t])
            }
        };
        let mut mult = alloc::vec![zero; (v + 1) * (v + 1)];
        for i in 0..v {
            for j in 0..v {
                mult[i * (v + 1) + j] = lookup(&compose(&transforms[i], &transforms[j]));
            }
        }
        let gens: Vec<ClassId> = generator_maps.iter().map(|g| lookup(g)).collect();
        let sync = transforms
            .iter()
            .map(|t| {
                let mut image = t.iter().filter(|&&x| x != DEAD);
                let first = image.next();
                image.all(|x| Some(x) == first)
            })
            .collect();
        reps.push(zero_rep.unwrap_or_default());
        let edges = (0..v)
            .map(|i| {
                gens.iter()
                    .map(|&g| {
                        let p = mult[i * (v + 1) + g.0];
                        (p != zero).then_some(p)
                    })
                    .collect()
            })
            .collect();
        let shannon = ShannonGraphData::build(v, edges);
        Ok(SyntacticSemigroup { transforms, reps, mult, gens, sync, shannon })
    }

    /// Number of admissible classes.
    pub fn v(&self) -> usize {
        self.transforms.len()
    }

    /// Number of elements including the zero.
    pub fn len(&self) -> usize {
        self.transforms.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> ClassId {
        ClassId(self.transforms.len())
    }

    pub fn is_zero(&self, c: ClassId) -> bool {
        c.0 == self.transforms.len()
    }

    pub fn admissible_classes(&self) -> impl Iterator<Item = ClassId> {
        (0..self.transforms.len()).map(ClassId)
    }

    pub fn mul(&self, a: ClassId, b: ClassId) -> ClassId {
        self.mult[a.0 * self.len() + b.0]
    }

    /// Product with the empty word treated as an identity.
    pub fn mul_opt(&self, a: Option<ClassId>, b: Option<ClassId>) -> Option<ClassId> {
        match (a, b) {
            (Some(a), Some(b)) => Some(self.mul(a, b)),
            (x, None) | (None, x) => x,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generator(&self, s: Symbol) -> ClassId {
        self.gens[s as usize]
    }

    /// Class of a non-empty word; `None` for the empty word.
    pub fn class_of(&self, w: &[Symbol]) -> Option<ClassId> {
        let (&first, rest) = w.split_first()?;
        Some(rest.iter().fold(self.generator(first), |c, &s| self.mul(c, self.generator(s))))
    }

    /// Shortest, then lexicographically least, word of the class. For the zero class this
    /// is the least inadmissible word, or empty when every word is admissible.
    pub fn representative(&self, c: ClassId) -> &[Symbol] {
        &self.reps[c.0]
    }

    /// `c^n` for `n ≥ 1`.
    pub fn power(&self, c: ClassId, n: usize) -> ClassId {
        assert!(n >= 1);
        (1..n).fold(c, |acc, _| self.mul(acc, c))
    }

    pub fn is_synchronizing_class(&self, c: ClassId) -> bool {
        !self.is_zero(c) && self.sync[c.0]
    }

    pub fn synchronizing_classes(&self) -> Vec<ClassId> {
        self.admissible_classes().filter(|&c| self.sync[c.0]).collect()
    }

    pub fn shannon(&self) -> &ShannonGraphData {
        &self.shannon
    }

    /// Row-major multiplication table over all elements including the zero.
    pub fn table(&self) -> &[ClassId] {
        &self.mult
    }
}

pub fn context_class(shift: &SoficShift, w: &[Symbol]) -> Option<ClassId> {
    shift.semigroup().class_of(w)
}

pub fn is_synchronizing(shift: &SoficShift, w: &[Symbol]) -> Result<bool> {
    let sg = shift.semigroup();
    match sg.class_of(w) {
        None => Ok(false),
        Some(c) if sg.is_zero(c) => Err(SoficError::Inadmissible),
        Some(c) => Ok(sg.is_synchronizing_class(c)),
    }
}

/// Whether `γ− w γ+` is admissible; `w` may be empty.
pub fn gamma_expression_admissible(
    shift: &SoficShift,
    gamma_minus: ClassId,
    w: &[Symbol],
    gamma_plus: ClassId,
) -> Result<bool> {
    let sg = shift.semigroup();
    if !sg.is_synchronizing_class(gamma_minus) || !sg.is_synchronizing_class(gamma_plus) {
        return Err(SoficError::NotSynchronizing);
    }
    let left = sg.mul_opt(Some(gamma_minus), sg.class_of(w)).expect("non-empty");
    Ok(!sg.is_zero(sg.mul(left, gamma_plus)))
}

/// The subshift of points containing no synchronizing word; `None` when it is empty.
///
/// Synchronizing words stay synchronizing under admissible extension, so these points are
/// exactly the labels of bi-infinite paths in the Shannon graph through non-synchronizing
/// classes.
pub fn derived_shift(shift: &SoficShift) -> Option<SoficShift> {
    let sg = shift.semigroup();
    let keep: Vec<usize> = sg
        .admissible_classes()
        .filter(|&c| !sg.is_synchronizing_class(c))
        .map(|c| c.0)
        .collect();
    let mut index = alloc::vec![usize::MAX; sg.v()];
    for (i, &c) in keep.iter().enumerate() {
        index[c] = i;
    }
    let mut edges = Vec::new();
    for &c in &keep {
        for (s, t) in sg.shannon().edges[c].iter().enumerate() {
            if let Some(t) = t {
                if index[t.0] != usize::MAX {
                    edges.push(Edge { from: index[c], to: index[t.0], label: s as Symbol });
                }
            }
        }
    }
    let p = LabeledPresentation::new(shift.alphabet().to_vec(), keep.len(), edges).ok()?;
    SoficShift::new(p).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn golden_mean_semigroup() {
        let gm = catalog::golden_mean();
        let sg = gm.semigroup();
        assert_eq!(sg.v(), 4);
        let c = |w: &[Symbol]| sg.class_of(w).unwrap();
        assert_eq!(c(&[0]), c(&[0, 1, 0]));
        assert_ne!(c(&[0]), c(&[1, 0]));
        assert!(sg.is_zero(c(&[1, 1])));
        assert_eq!(sg.representative(sg.zero()), &[1, 1]);
        let reps: Vec<&[Symbol]> = sg.admissible_classes().map(|k| sg.representative(k)).collect();
        assert_eq!(reps, [&[0][..], &[1], &[0, 1], &[1, 0]]);
    }

    #[test]
    fn golden_mean_shannon_data() {
        let gm = catalog::golden_mean();
        let sg = gm.semigroup();
        let sh = sg.shannon();
        assert_eq!(sh.v_circ(), 4);
        let zero = sh.cycle_data(sg.class_of(&[0]).unwrap()).unwrap();
        assert_eq!((zero.r, zero.q), (1, 0));
        let one = sh.cycle_data(sg.class_of(&[1]).unwrap()).unwrap();
        assert_eq!((one.r, one.q), (2, 1));
        assert!(!one.contains(1));
        assert!((2..40).all(|l| one.contains(l)));
    }

    #[test]
    fn full_shift_single_class() {
        let f = catalog::full_shift(2);
        assert_eq!(f.semigroup().v(), 1);
        assert!(f.semigroup().representative(f.semigroup().zero()).is_empty());
    }

    #[test]
    fn even_synchronization() {
        let e = catalog::even();
        assert_eq!(is_synchronizing(&e, &[0]), Ok(true));
        assert_eq!(is_synchronizing(&e, &[1]), Ok(false));
        let sg = e.semigroup();
        let zero = sg.class_of(&[0]).unwrap();
        assert_eq!(gamma_expression_admissible(&e, zero, &[1, 1], zero), Ok(true));
        assert_eq!(gamma_expression_admissible(&e, zero, &[1], zero), Ok(false));
        let one = sg.class_of(&[1]).unwrap();
        assert_eq!(
            gamma_expression_admissible(&e, one, &[], zero),
            Err(SoficError::NotSynchronizing)
        );
    }

    #[test]
    fn derived_shifts() {
        assert!(derived_shift(&catalog::golden_mean()).is_none());
        assert!(derived_shift(&catalog::full_shift(2)).is_none());
        let d = derived_shift(&catalog::even()).unwrap();
        assert!(d.is_admissible(&[1, 1, 1, 1]));
        assert!(!d.is_admissible(&[0]));
        assert!(d.is_finite());
    }
}
