//! Sliding block codes given by a finite window table.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Result, SoficError};
use crate::presentation::{Edge, LabeledPresentation};
use crate::shift::SoficShift;
use crate::word::{primitive_root, Symbol, Word};

/// `x ↦ y` with `y_i = table[x_{[i-L, i+L]}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    window: usize,
    table: BTreeMap<Word, Symbol>,
    target: Vec<String>,
}

impl BlockMap {
    pub fn new(window: usize, table: BTreeMap<Word, Symbol>, target: Vec<String>) -> Result<Self> {
        for (block, &image) in &table {
            if block.len() != 2 * window + 1 {
                return Err(SoficError::Malformed("block of wrong length".into()));
            }
            if image as usize >= target.len() {
                return Err(SoficError::UnknownSymbol(alloc::format!("{image}")));
            }
        }
        Ok(BlockMap { window, table, target })
    }

    /// Builds the table of `f` on every admissible block of `shift`.
    pub fn from_fn(
        shift: &SoficShift,
        window: usize,
        target: Vec<String>,
        f: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        let table = shift
            .words_of_length(2 * window + 1)
            .into_iter()
            .map(|w| {
                let s = f(&w);
                (w, s)
            })
            .collect();
        Self::new(window, table, target)
    }

    pub fn identity(shift: &SoficShift) -> Self {
        Self::from_fn(shift, 0, shift.alphabet().to_vec(), |w| w[0]).expect("identity table")
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn table(&self) -> &BTreeMap<Word, Symbol> {
        &self.table
    }

    pub fn target_alphabet(&self) -> &[String] {
        &self.target
    }

    pub fn check_total(&self, shift: &SoficShift) -> Result<()> {
        for w in shift.words_of_length(2 * self.window + 1) {
            if !self.table.contains_key(&w) {
                return Err(SoficError::NotTotal(shift.format_word(&w)));
            }
        }
        Ok(())
    }

    /// Image of a word of length at least `2L + 1`; shorter words map to the empty word.
    pub fn image_word(&self, w: &[Symbol]) -> Result<Word> {
        let span = 2 * self.window + 1;
        if w.len() < span {
            return Ok(Word::new());
        }
        w.windows(span)
            .map(|b| {
                self.table
                    .get(b)
                    .copied()
                    .ok_or_else(|| SoficError::NotTotal(alloc::format!("{b:?}")))
            })
            .collect()
    }

    /// One period of the image of the periodic point `a^∞`, starting at the coordinate of
    /// the first symbol of `a`. Not reduced to its primitive root.
    pub fn image_period(&self, a: &[Symbol]) -> Result<Word> {
        let n = a.len();
        let l = self.window;
        let block = |i: usize| -> Vec<Symbol> {
            (0..2 * l + 1).map(|j| a[(i + n * (l + 1) + j - l) % n]).collect()
        };
        (0..n)
            .map(|i| {
                let b = block(i);
                self.table
                    .get(&b)
                    .copied()
                    .ok_or_else(|| SoficError::NotTotal(alloc::format!("{b:?}")))
            })
            .collect()
    }

    /// Primitive word of the image orbit of `a^∞` at the same phase.
    pub fn image_primitive(&self, a: &[Symbol]) -> Result<Word> {
        Ok(primitive_root(&self.image_period(a)?).to_vec())
    }

    /// The image shift, built on the higher block presentation of the deterministic cover.
    pub fn apply(&self, shift: &SoficShift) -> Result<SoficShift> {
        SoficShift::new(self.image_presentation(shift)?)
    }

    pub(crate) fn image_presentation(&self, shift: &SoficShift) -> Result<LabeledPresentation> {
        self.check_total(shift)?;
        let cover = shift.deterministic_cover();
        let succ = cover.successors();
        let memory = 2 * self.window;
        // (end vertex, last `memory` symbols) for every path of that length
        let mut states: BTreeSet<(usize, Word)> = BTreeSet::new();
        for v in 0..cover.vertex_count() {
            let mut layer: Vec<(usize, Word)> = alloc::vec![(v, Word::new())];
            for _ in 0..memory {
                let mut next = Vec::new();
                for (u, w) in &layer {
                    for &(s, t) in &succ[*u] {
                        let mut x = w.clone();
                        x.push(s);
                        next.push((t, x));
                    }
                }
                layer = next;
            }
            states.extend(layer);
        }
        let index: BTreeMap<&(usize, Word), usize> =
            states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut edges = Vec::new();
        for (state, &i) in &index {
            let (v, w) = state;
            for &(s, t) in &succ[*v] {
                let mut block = w.clone();
                block.push(s);
                let label = self.table[&block];
                let next = (t, block[1..].to_vec());
                edges.push(Edge { from: i, to: index[&next], label });
            }
        }
        LabeledPresentation::new(self.target.clone(), states.len(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn constant_map_has_fixed_point_image() {
        let f = catalog::full_shift(2);
        let m = BlockMap::from_fn(&f, 0, f.alphabet().to_vec(), |_| 0).unwrap();
        let img = m.apply(&f).unwrap();
        assert!(img.is_finite());
        assert!(img.is_admissible(&[0, 0, 0]));
        assert!(!img.is_admissible(&[1]));
    }

    #[test]
    fn detector_lands_in_golden_mean() {
        let f = catalog::full_shift(2);
        let gm = catalog::golden_mean();
        let m = BlockMap::from_fn(&f, 1, gm.alphabet().to_vec(), |w| (w[1] == 1 && w[2] == 0) as Symbol)
            .unwrap();
        let img = m.apply(&f).unwrap();
        assert!(img.language_contained_in(&gm));
        assert!(!img.is_finite());
        assert!(img.same_language(&gm));
    }

    #[test]
    fn identity_preserves_language() {
        let gm = catalog::golden_mean();
        let img = BlockMap::identity(&gm).apply(&gm).unwrap();
        assert!(img.same_language(&gm));
    }

    #[test]
    fn missing_block_is_reported() {
        let gm = catalog::golden_mean();
        let mut table = BTreeMap::new();
        table.insert(alloc::vec![0], 0);
        let m = BlockMap::new(0, table, gm.alphabet().to_vec()).unwrap();
        assert!(matches!(m.apply(&gm), Err(SoficError::NotTotal(_))));
    }

    #[test]
    fn periodic_images() {
        let f = catalog::full_shift(2);
        let m = BlockMap::from_fn(&f, 1, f.alphabet().to_vec(), |w| (w[1] == 1 && w[2] == 0) as Symbol)
            .unwrap();
        assert_eq!(m.image_primitive(&[1]).unwrap(), alloc::vec![0]);
        assert_eq!(m.image_primitive(&[0, 1]).unwrap(), alloc::vec![0, 1]);
        assert_eq!(m.image_period(&[0, 1, 1]).unwrap(), alloc::vec![0, 0, 1]);
    }
}
