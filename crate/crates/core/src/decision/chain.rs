use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::constants::DecisionConstants;
use super::maps::{AccompanyingMap, PeriodicMap};
use super::Budget;
use crate::asymptotic::{power_classes, AsymptoticTriple};
use crate::error::{Result, SoficError};
use crate::periodic::period_invariants;
use crate::shift::SoficShift;
use crate::syntactic::{ClassId, SyntacticSemigroup};
use crate::word::{conjugate, gcd, necklace, overlap_u, Symbol, Word};

/// Left flank of a factor chain: `(γ−, a(+)) ∈ Ω−(X)` together with `γ̄− = Ψ−(γ−, a(+))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Start {
    pub gamma: ClassId,
    pub a: Word,
    pub gamma_bar: ClassId,
}

/// Right flank of a factor chain: `(a(−), γ+) ∈ Ω+(X)` together with `γ̄+ = Ψ+(a(−), γ+)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct End {
    pub a: Word,
    pub gamma: ClassId,
    pub gamma_bar: ClassId,
}

#[derive(Debug, Clone, Copy)]
pub enum ChainMode<'a> {
    /// Chains of the homomorphism condition.
    Homomorphism,
    /// Chains of the factor condition, flanked by synchronizing classes.
    Factor { starts: &'a [Start], ends: &'a [End] },
}

pub struct ChainProblem<'a> {
    pub x: &'a SoficShift,
    pub x_bar: &'a SoficShift,
    pub consts: &'a DecisionConstants,
    pub phi: &'a PeriodicMap,
    pub psi: &'a AccompanyingMap,
    /// The enumerated source triples; those outside the domain of `psi` are the
    /// intermediate segments.
    pub triples: &'a [AsymptoticTriple],
    pub mode: ChainMode<'a>,
    /// Most intermediate segments per block.
    pub k_cap: u128,
    /// Most blocks.
    pub n_cap: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closing {
    /// First segment of the last block of a homomorphism chain.
    Triple(AsymptoticTriple),
    /// Right flank of a factor chain.
    End { a_minus: Word, gamma_plus: ClassId },
}

/// A chain whose source word is admissible while the target word is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub gamma_minus: Option<ClassId>,
    /// Segments `(a−, c, a+)` with their counters `R`, block by block. In a factor chain
    /// the first segment of block 0 is `(ε, ε, a(+))`.
    pub blocks: Vec<Vec<(AsymptoticTriple, usize)>>,
    pub closing: Closing,
    /// One residue `R̄(n)` per block making the target word inadmissible.
    pub r_bar: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    /// No failing chain within the caps. `exhaustive` means the caps were never reached,
    /// so no failing chain exists at all (for the enumerated triples).
    Holds { exhaustive: bool, states: usize },
    Fails(ChainWitness),
    ResourceExceeded { states: usize, blocks: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&i| self.get(i))
    }
}

struct Periodic {
    word: Word,
    q: usize,
    r: usize,
    class: ClassId,
    powers: Vec<ClassId>,
    orbit: Word,
}

struct PsiInfo {
    minus_bar: Word,
    c_bar: Option<ClassId>,
    c_bar_len: usize,
    plus_bar: usize,
    t: i64,
}

struct Tri {
    minus: usize,
    plus: usize,
    c: Option<ClassId>,
    c_len: usize,
    psi: Option<PsiInfo>,
}

struct StartInfo {
    gamma: ClassId,
    cur: usize,
    plus_bar: usize,
    gamma_bar: ClassId,
}

struct EndInfo {
    cur: usize,
    minus_bar: Word,
    gamma: ClassId,
    gamma_bar: ClassId,
}

#[derive(Clone, Copy)]
enum Step {
    Root(usize),
    Enter,
    Move { r: usize, tri: usize },
    Close { r: usize, tri: usize },
    End { r: usize, end: usize },
}

enum Payload {
    Block { s: Bits, t: Bits, seg0: usize },
    In { s: Bits, t: Bits, seg0: usize, cur: usize, y: Bits, k: u128 },
}

struct Node {
    parent: usize,
    step: Step,
    payload: Payload,
}

struct Engine<'a> {
    p: &'a ChainProblem<'a>,
    sg: &'a SyntacticSemigroup,
    sgb: &'a SyntacticSemigroup,
    src: Vec<Periodic>,
    tgt: Vec<Periodic>,
    tris: Vec<Tri>,
    starts: Vec<StartInfo>,
    ends: Vec<EndInfo>,
    by_orbit: BTreeMap<Word, Vec<usize>>,
    ends_by_orbit: BTreeMap<Word, Vec<usize>>,
    joins: BTreeMap<(usize, usize), (usize, ClassId)>,
}

fn periodic(shift: &SoficShift, list: &mut Vec<Periodic>, w: &[Symbol]) -> Result<usize> {
    if let Some(i) = list.iter().position(|p| p.word == w) {
        return Ok(i);
    }
    let sg = shift.semigroup();
    let inv = period_invariants(shift, w)?;
    list.push(Periodic {
        word: w.to_vec(),
        q: inv.q,
        r: inv.r,
        class: sg.class_of(w).unwrap(),
        powers: power_classes(sg, w),
        orbit: necklace(w),
    });
    Ok(list.len() - 1)
}

impl<'a> Engine<'a> {
    fn new(p: &'a ChainProblem<'a>) -> Result<Self> {
        let (sg, sgb) = (p.x.semigroup(), p.x_bar.semigroup());
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut tris = Vec::new();
        let missing = || SoficError::Precondition("periodic map misses a periodic word".into());
        for tr in p.triples {
            let minus = periodic(p.x, &mut src, &tr.a_minus)?;
            let plus = periodic(p.x, &mut src, &tr.a_plus)?;
            let psi = match p.psi.get(tr) {
                None => None,
                Some(e) => Some(PsiInfo {
                    minus_bar: e.target.a_minus.clone(),
                    c_bar: sgb.class_of(&e.target.c),
                    c_bar_len: e.target.c.len(),
                    plus_bar: periodic(p.x_bar, &mut tgt, &e.target.a_plus)?,
                    t: e.t,
                }),
            };
            tris.push(Tri { minus, plus, c: sg.class_of(&tr.c), c_len: tr.c.len(), psi });
        }
        let mut starts = Vec::new();
        let mut ends = Vec::new();
        if let ChainMode::Factor { starts: s, ends: e } = p.mode {
            for st in s {
                let image = p.phi.image(&st.a).ok_or_else(missing)?;
                starts.push(StartInfo {
                    gamma: st.gamma,
                    cur: periodic(p.x, &mut src, &st.a)?,
                    plus_bar: periodic(p.x_bar, &mut tgt, &image)?,
                    gamma_bar: st.gamma_bar,
                });
            }
            for en in e {
                ends.push(EndInfo {
                    cur: periodic(p.x, &mut src, &en.a)?,
                    minus_bar: p.phi.image(&en.a).ok_or_else(missing)?,
                    gamma: en.gamma,
                    gamma_bar: en.gamma_bar,
                });
            }
        }
        let mut by_orbit: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
        for (i, t) in tris.iter().enumerate() {
            by_orbit.entry(src[t.minus].orbit.clone()).or_default().push(i);
        }
        let mut ends_by_orbit: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
        for (i, e) in ends.iter().enumerate() {
            ends_by_orbit.entry(src[e.cur].orbit.clone()).or_default().push(i);
        }
        Ok(Engine {
            p,
            sg,
            sgb,
            src,
            tgt,
            tris,
            starts,
            ends,
            by_orbit,
            ends_by_orbit,
            joins: BTreeMap::new(),
        })
    }

    fn id_index(&self) -> usize {
        self.sgb.v() + 1
    }

    fn t_class(&self, i: usize) -> Option<ClassId> {
        (i != self.id_index()).then_some(ClassId(i))
    }

    fn zero_bar(&self) -> usize {
        self.sgb.zero().0
    }

    /// `ā+`, `t` and the current periodic word at the start of a block.
    fn seg0(&self, seg0: usize) -> (usize, i64, usize) {
        if seg0 < self.tris.len() {
            let t = &self.tris[seg0];
            let psi = t.psi.as_ref().expect("domain triple");
            (psi.plus_bar, psi.t, t.plus)
        } else {
            let s = &self.starts[seg0 - self.tris.len()];
            (s.plus_bar, 0, s.cur)
        }
    }

    fn modulus(&self, plus_bar: usize) -> usize {
        let b = &self.tgt[plus_bar];
        b.word.len() * b.r
    }

    /// Length and class of `u(a, a')`.
    fn join(&mut self, cur: usize, next: usize) -> Result<(usize, ClassId)> {
        if let Some(&j) = self.joins.get(&(cur, next)) {
            return Ok(j);
        }
        let u = overlap_u(&self.src[cur].word, &self.src[next].word).ok_or(SoficError::NotConjugate)?;
        let j = (u.len(), self.sg.class_of(&u).unwrap());
        self.joins.insert((cur, next), j);
        Ok(j)
    }

    fn advance_source(&self, s: &Bits, piece: ClassId) -> Option<Bits> {
        let mut out = Bits::new(self.sg.v() + 1);
        for c in s.iter() {
            let d = self.sg.mul(ClassId(c), piece);
            if self.sg.is_zero(d) {
                return None;
            }
            out.set(d.0);
        }
        Some(out)
    }

    fn shift_y(y: &Bits, m: usize, add: i64) -> Bits {
        let mut out = Bits::new(m);
        let a = add.rem_euclid(m as i64) as usize;
        for v in y.iter() {
            out.set((v + a) % m);
        }
        out
    }

    /// Adds every multiple `j·step`, `0 ≤ j < count`.
    fn spread_y(y: &Bits, m: usize, step: usize, count: usize) -> Bits {
        let step = step % m;
        let cycle = m / gcd(step, m).max(1);
        let mut out = y.clone();
        let mut cur = y.clone();
        for _ in 1..count.min(cycle) {
            cur = Self::shift_y(&cur, m, step as i64);
            for v in cur.iter() {
                out.set(v);
            }
        }
        out
    }

    /// Residue set and its effect on `Y` for leaving the current periodic word `cur` with
    /// counter `r` towards the periodic word `next`.
    fn leave(&mut self, seg0: usize, cur: usize, r: usize, next: usize, y: &Bits) -> Result<(ClassId, usize, Bits)> {
        let (plus_bar, ..) = self.seg0(seg0);
        let m = self.modulus(plus_bar);
        let (u_len, u) = self.join(cur, next)?;
        let a = &self.src[cur];
        let base = a.word.len() * (a.q * a.r + r) + u_len;
        let piece = self.sg.mul(self.sg.power(a.class, a.q * a.r + r), u);
        let y = Self::shift_y(y, m, base as i64);
        let y = Self::spread_y(&y, m, a.word.len() * a.r, self.tgt[plus_bar].r * a.r);
        Ok((piece, m, y))
    }

    /// Pieces `[ā+^{QR+R̄}]·[u(ā+, ā−')]·tail` for every residue `R̄` of the final `Y`.
    fn target_pieces(&self, plus_bar: usize, y: &Bits, minus_bar: &[Symbol], tail: Option<ClassId>) -> Result<Vec<(usize, ClassId)>> {
        let b = &self.tgt[plus_bar];
        let u = overlap_u(&b.word, minus_bar).ok_or_else(|| {
            SoficError::Internal(format!("target words {:?} and {:?} are not conjugate", b.word, minus_bar))
        })?;
        let m = self.modulus(plus_bar);
        let residues: BTreeSet<usize> = y.iter().map(|v| (v + m - u.len() % m) % m / b.word.len()).collect();
        let u = self.sgb.class_of(&u).unwrap();
        Ok(residues
            .into_iter()
            .map(|rb| {
                let head = self.sgb.mul(self.sgb.power(b.class, b.q * b.r + rb), u);
                (rb, self.sgb.mul_opt(Some(head), tail).unwrap())
            })
            .collect())
    }

    fn advance_target(&self, t: &Bits, pieces: &[(usize, ClassId)]) -> Bits {
        let mut out = Bits::new(self.sgb.v() + 2);
        for x in t.iter() {
            for &(_, p) in pieces {
                out.set(self.sgb.mul_opt(self.t_class(x), Some(p)).unwrap().0);
            }
        }
        out
    }

    /// All source continuations `s·q`, `q` a power of `a+`, stay admissible.
    fn tail_admissible(&self, s: &Bits, plus: usize) -> bool {
        s.iter().all(|c| {
            self.src[plus].powers.iter().all(|&q| !self.sg.is_zero(self.sg.mul(ClassId(c), q)))
        })
    }

    fn roots(&self) -> Vec<(usize, Bits, Bits)> {
        let mut out = Vec::new();
        let mut ident = Bits::new(self.sgb.v() + 2);
        ident.set(self.id_index());
        match self.p.mode {
            ChainMode::Homomorphism => {
                for (i, t) in self.tris.iter().enumerate() {
                    if t.psi.is_none() {
                        continue;
                    }
                    let mut s = Bits::new(self.sg.v() + 1);
                    let mut ok = true;
                    for &p in &self.src[t.minus].powers {
                        let d = self.sg.mul_opt(Some(p), t.c).unwrap();
                        ok &= !self.sg.is_zero(d);
                        s.set(d.0);
                    }
                    if ok {
                        out.push((i, s, ident.clone()));
                    }
                }
            }
            ChainMode::Factor { .. } => {
                for (i, st) in self.starts.iter().enumerate() {
                    let mut s = Bits::new(self.sg.v() + 1);
                    s.set(st.gamma.0);
                    let mut t = Bits::new(self.sgb.v() + 2);
                    t.set(st.gamma_bar.0);
                    out.push((self.tris.len() + i, s, t));
                }
            }
        }
        out
    }

    fn run(&mut self, budget: &Budget) -> Result<ChainVerdict> {
        let factor = matches!(self.p.mode, ChainMode::Factor { .. });
        let mut arena: Vec<Node> = Vec::new();
        let mut block_seen: BTreeSet<(Bits, Bits, usize)> = BTreeSet::new();
        let mut in_seen: BTreeMap<(Bits, Bits, usize, usize, Bits), u128> = BTreeMap::new();
        let mut layer = Vec::new();
        for (seg0, s, t) in self.roots() {
            if block_seen.insert((s.clone(), t.clone(), seg0)) {
                arena.push(Node { parent: usize::MAX, step: Step::Root(seg0), payload: Payload::Block { s, t, seg0 } });
                layer.push(arena.len() - 1);
            }
        }
        let mut capped = false;
        let mut n: u128 = 0;
        while !layer.is_empty() {
            let mut next_layer = Vec::new();
            for &b in &layer {
                let Payload::Block { s, t, seg0 } = &arena[b].payload else { unreachable!() };
                let (s, t, seg0) = (s.clone(), t.clone(), *seg0);
                let (plus_bar, _, cur) = self.seg0(seg0);
                let m = self.modulus(plus_bar);
                let mut y = Bits::new(m);
                y.set(0);
                let key = (s.clone(), t.clone(), seg0, cur, y.clone());
                if in_seen.get(&key).is_some_and(|&k| k == 0) {
                    continue;
                }
                in_seen.insert(key, 0);
                arena.push(Node { parent: b, step: Step::Enter, payload: Payload::In { s, t, seg0, cur, y, k: 0 } });
                let mut queue = VecDeque::from([arena.len() - 1]);
                while let Some(i) = queue.pop_front() {
                    let Payload::In { s, t, seg0, cur, y, k } = &arena[i].payload else { unreachable!() };
                    let (s, t, seg0, cur, y, k) = (s.clone(), t.clone(), *seg0, *cur, y.clone(), *k);
                    let (plus_bar, t_n, ..) = self.seg0(seg0);
                    let orbit = self.src[cur].orbit.clone();
                    let nexts = self.by_orbit.get(&orbit).cloned().unwrap_or_default();
                    let ends = self.ends_by_orbit.get(&orbit).cloned().unwrap_or_default();
                    for r in 0..self.src[cur].r {
                        for &tri in &nexts {
                            if !budget.spend(1) {
                                return Ok(ChainVerdict::ResourceExceeded { states: arena.len(), blocks: n as usize });
                            }
                            let in_domain = self.tris[tri].psi.is_some();
                            if in_domain && n + 1 > self.p.n_cap || !in_domain && k + 1 > self.p.k_cap {
                                capped = true;
                                continue;
                            }
                            let (piece, m, y2) = self.leave(seg0, cur, r, self.tris[tri].minus, &y)?;
                            let piece = self.sg.mul_opt(Some(piece), self.tris[tri].c).unwrap();
                            let Some(s2) = self.advance_source(&s, piece) else { continue };
                            if !in_domain {
                                let y3 = Self::shift_y(&y2, m, self.tris[tri].c_len as i64);
                                let cur2 = self.tris[tri].plus;
                                let key = (s2.clone(), t.clone(), seg0, cur2, y3.clone());
                                if in_seen.get(&key).is_some_and(|&old| old <= k + 1) {
                                    continue;
                                }
                                in_seen.insert(key, k + 1);
                                arena.push(Node {
                                    parent: i,
                                    step: Step::Move { r, tri },
                                    payload: Payload::In { s: s2, t: t.clone(), seg0, cur: cur2, y: y3, k: k + 1 },
                                });
                                queue.push_back(arena.len() - 1);
                                continue;
                            }
                            let psi = self.tris[tri].psi.as_ref().unwrap();
                            let (minus_bar, c_bar, shift) =
                                (psi.minus_bar.clone(), psi.c_bar, self.tris[tri].c_len as i64 + psi.t - t_n - psi.c_bar_len as i64);
                            let yf = Self::shift_y(&y2, m, shift);
                            let pieces = self.target_pieces(plus_bar, &yf, &minus_bar, c_bar)?;
                            let t2 = self.advance_target(&t, &pieces);
                            if !factor && t2.get(self.zero_bar()) && self.tail_admissible(&s2, self.tris[tri].plus) {
                                let w = self.witness(&arena, i, Step::Close { r, tri })?;
                                return Ok(ChainVerdict::Fails(w));
                            }
                            if block_seen.insert((s2.clone(), t2.clone(), tri)) {
                                arena.push(Node { parent: i, step: Step::Close { r, tri }, payload: Payload::Block { s: s2, t: t2, seg0: tri } });
                                next_layer.push(arena.len() - 1);
                            }
                        }
                        for &e in &ends {
                            if !budget.spend(1) {
                                return Ok(ChainVerdict::ResourceExceeded { states: arena.len(), blocks: n as usize });
                            }
                            let (piece, m, y2) = self.leave(seg0, cur, r, self.ends[e].cur, &y)?;
                            let piece = self.sg.mul(piece, self.ends[e].gamma);
                            if self.advance_source(&s, piece).is_none() {
                                continue;
                            }
                            let yf = Self::shift_y(&y2, m, -t_n);
                            let en = &self.ends[e];
                            let pieces = self.target_pieces(plus_bar, &yf, &en.minus_bar.clone(), Some(en.gamma_bar))?;
                            if self.advance_target(&t, &pieces).get(self.zero_bar()) {
                                let w = self.witness(&arena, i, Step::End { r, end: e })?;
                                return Ok(ChainVerdict::Fails(w));
                            }
                        }
                    }
                }
            }
            layer = next_layer;
            n += 1;
        }
        Ok(ChainVerdict::Holds { exhaustive: !capped, states: arena.len() })
    }

    /// Replays the path ending with `last` from node `i` and picks residues that make the
    /// target word inadmissible.
    fn witness(&mut self, arena: &[Node], i: usize, last: Step) -> Result<ChainWitness> {
        let mut steps = vec![last];
        let mut j = i;
        while j != usize::MAX {
            steps.push(arena[j].step);
            j = arena[j].parent;
        }
        steps.reverse();
        let Step::Root(root) = steps[0] else { unreachable!() };
        let (mut seg0, mut cur) = (root, self.seg0(root).2);
        let mut t_set = self.roots().into_iter().find(|r| r.0 == root).unwrap().2;
        let mut y = Bits::new(1);
        let mut closings: Vec<(Bits, Vec<(usize, ClassId)>)> = Vec::new();
        let mut blocks: Vec<Vec<(AsymptoticTriple, usize)>> = Vec::new();
        let first = if root < self.tris.len() {
            self.p.triples[root].clone()
        } else {
            AsymptoticTriple::new(Vec::new(), Vec::new(), self.src[cur].word.clone())
        };
        let mut block = vec![(first, 0)];
        let mut closing = None;
        let gamma_minus = (root >= self.tris.len()).then(|| self.starts[root - self.tris.len()].gamma);
        for step in &steps[1..] {
            let (plus_bar, t_n, ..) = self.seg0(seg0);
            match *step {
                Step::Root(_) => unreachable!(),
                Step::Enter => {
                    let (plus_bar, _, c) = self.seg0(seg0);
                    let m = self.modulus(plus_bar);
                    y = Bits::new(m);
                    y.set(0);
                    cur = c;
                }
                Step::Move { r, tri } => {
                    let (_, m, y2) = self.leave(seg0, cur, r, self.tris[tri].minus, &y)?;
                    y = Self::shift_y(&y2, m, self.tris[tri].c_len as i64);
                    block.last_mut().unwrap().1 = r;
                    block.push((self.p.triples[tri].clone(), 0));
                    cur = self.tris[tri].plus;
                }
                Step::Close { r, tri } => {
                    let (_, m, y2) = self.leave(seg0, cur, r, self.tris[tri].minus, &y)?;
                    let psi = self.tris[tri].psi.as_ref().unwrap();
                    let (minus_bar, c_bar) = (psi.minus_bar.clone(), psi.c_bar);
                    let yf = Self::shift_y(&y2, m, self.tris[tri].c_len as i64 + psi.t - t_n - psi.c_bar_len as i64);
                    let pieces = self.target_pieces(plus_bar, &yf, &minus_bar, c_bar)?;
                    let next = self.advance_target(&t_set, &pieces);
                    closings.push((t_set, pieces));
                    t_set = next;
                    block.last_mut().unwrap().1 = r;
                    blocks.push(core::mem::replace(&mut block, vec![(self.p.triples[tri].clone(), 0)]));
                    seg0 = tri;
                    closing = Some(Closing::Triple(self.p.triples[tri].clone()));
                }
                Step::End { r, end } => {
                    let (_, m, y2) = self.leave(seg0, cur, r, self.ends[end].cur, &y)?;
                    let yf = Self::shift_y(&y2, m, -t_n);
                    let en = &self.ends[end];
                    let (minus_bar, gb, a, g) = (en.minus_bar.clone(), en.gamma_bar, self.src[en.cur].word.clone(), en.gamma);
                    let pieces = self.target_pieces(plus_bar, &yf, &minus_bar, Some(gb))?;
                    closings.push((t_set.clone(), pieces));
                    block.last_mut().unwrap().1 = r;
                    blocks.push(core::mem::take(&mut block));
                    closing = Some(Closing::End { a_minus: a, gamma_plus: g });
                }
            }
        }
        let mut want = Some(self.sgb.zero());
        let mut r_bar = vec![0; closings.len()];
        for (idx, (before, pieces)) in closings.iter().enumerate().rev() {
            let pick = before.iter().find_map(|x| {
                pieces
                    .iter()
                    .find(|&&(_, p)| self.sgb.mul_opt(self.t_class(x), Some(p)) == want)
                    .map(|&(rb, _)| (x, rb))
            });
            let (x, rb) = pick.ok_or_else(|| SoficError::Internal("witness replay diverged".into()))?;
            r_bar[idx] = rb;
            want = self.t_class(x);
        }
        Ok(ChainWitness {
            gamma_minus,
            blocks,
            closing: closing.ok_or_else(|| SoficError::Internal("witness without closing".into()))?,
            r_bar,
        })
    }
}

/// Searches the chains of the homomorphism or factor condition for one whose source word
/// is admissible and whose target word is not.
pub fn check_chains(problem: &ChainProblem, budget: &Budget) -> Result<ChainVerdict> {
    if problem.psi.is_empty() {
        return Err(SoficError::Precondition("accompanying map has an empty domain".into()));
    }
    Engine::new(problem)?.run(budget)
}

/// The residues modulo `R(ā+)` of the integer parts of the block ratio, over all values of
/// the free counters `R̄_k ∈ [0, R(ā+)·R(a+,k))`.
///
/// `plus` lists `(a+,k, R_k)` for `0 ≤ k ≤ K`; `minus` lists `a−,k` for `1 ≤ k ≤ K+1`.
#[allow(clippy::too_many_arguments)]
pub fn remainder_set(
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    l: i64,
    s: i64,
    plus: &[(Word, usize)],
    minus: &[Word],
    a_bar_plus: &[Symbol],
) -> Result<BTreeSet<usize>> {
    let (h, t) = (consts.h as i64, consts.t as i64);
    if l.abs() > 2 * h || s.abs() >= 2 * t.max(1) {
        return Err(SoficError::Precondition("l or s out of range".into()));
    }
    if plus.len() != minus.len() || plus.is_empty() {
        return Err(SoficError::Precondition("segment lists must have equal non-zero length".into()));
    }
    let bar = period_invariants(x_bar, a_bar_plus)?;
    let lb = a_bar_plus.len();
    let m = lb * bar.r;
    let mut y = Bits::new(m);
    y.set(0);
    let mut base = s + l;
    let mut spreads = Vec::new();
    for ((a, r), a_next) in plus.iter().zip(minus) {
        let inv = period_invariants(x, a)?;
        if *r >= inv.r {
            return Err(SoficError::Precondition(format!("counter {r} not below R = {}", inv.r)));
        }
        if !conjugate(a, a_next) {
            return Err(SoficError::NotConjugate);
        }
        let u = overlap_u(a, a_next).unwrap();
        base += (a.len() * (inv.q * inv.r + r) + u.len()) as i64;
        spreads.push((a.len() * inv.r, bar.r * inv.r));
    }
    y = Engine::shift_y(&y, m, base);
    for (step, count) in spreads {
        y = Engine::spread_y(&y, m, step, count);
    }
    Ok(y.iter().map(|v| v / lb).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::decision::constants::constants;
    use crate::decision::maps::PsiEntry;
    use alloc::vec;

    fn detector_setup() -> (SoficShift, SoficShift, DecisionConstants, PeriodicMap) {
        let (x, y) = (catalog::full_shift(2), catalog::golden_mean());
        let c = constants(&x, &y, Some(1)).unwrap();
        let orbits = BTreeMap::from([(vec![0], vec![0]), (vec![1], vec![0])]);
        let phi = PeriodicMap::new(&x, &y, 1, orbits).unwrap();
        (x, y, c, phi)
    }

    #[test]
    fn remainder_set_trivial_when_periods_are_one() {
        let (x, y, c, _) = detector_setup();
        let r = remainder_set(&x, &y, &c, 0, 0, &[(vec![0], 0)], &[vec![0]], &[0]).unwrap();
        assert_eq!(r, BTreeSet::from([0]));
    }

    #[test]
    fn detector_chains_hold() {
        let (x, y, c, phi) = detector_setup();
        let triples = crate::asymptotic::enumerate_a_circ(&x, 1, 1).unwrap();
        let target = AsymptoticTriple::new(vec![0], vec![1], vec![0]);
        let table = triples
            .iter()
            .filter(|t| **t != AsymptoticTriple::new(vec![0], vec![], vec![1]))
            .map(|t| (t.clone(), PsiEntry { target: target.clone(), t: 0 }))
            .collect();
        let psi = AccompanyingMap::new(table);
        let problem = ChainProblem {
            x: &x,
            x_bar: &y,
            consts: &c,
            phi: &phi,
            psi: &psi,
            triples: &triples,
            mode: ChainMode::Homomorphism,
            k_cap: 4,
            n_cap: 6,
        };
        let v = check_chains(&problem, &Budget::unlimited()).unwrap();
        assert!(matches!(v, ChainVerdict::Holds { exhaustive: true, .. }), "{v:?}");
    }

    #[test]
    fn bad_middle_word_fails() {
        // Every target block contributes an isolated 1, an odd run in EVEN.
        let (x, y) = (catalog::full_shift(2), catalog::even());
        let c = constants(&x, &y, Some(1)).unwrap();
        let orbits = BTreeMap::from([(vec![0], vec![0]), (vec![1], vec![0])]);
        let phi = PeriodicMap::new(&x, &y, 1, orbits).unwrap();
        let triples = crate::asymptotic::enumerate_a_circ(&x, 1, 1).unwrap();
        let target = AsymptoticTriple::new(vec![0], vec![1], vec![0]);
        let table = triples.iter().map(|t| (t.clone(), PsiEntry { target: target.clone(), t: 0 })).collect();
        let psi = AccompanyingMap::new(table);
        let problem = ChainProblem {
            x: &x,
            x_bar: &y,
            consts: &c,
            phi: &phi,
            psi: &psi,
            triples: &triples,
            mode: ChainMode::Homomorphism,
            k_cap: 2,
            n_cap: 3,
        };
        let v = check_chains(&problem, &Budget::unlimited()).unwrap();
        let ChainVerdict::Fails(w) = v else { panic!("{v:?}") };
        assert_eq!(w.r_bar.len(), w.blocks.len());
    }
}
