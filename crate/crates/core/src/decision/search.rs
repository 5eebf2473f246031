use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::chain::{check_chains, ChainMode, ChainProblem, ChainVerdict, End, Start};
use super::constants::{constants, Caps, DecisionConstants};
use super::maps::{for_each_periodic_map, psi_values, AccompanyingMap, PeriodicMap, PsiEntry};
use super::Budget;
use crate::asymptotic::{enumerate_a_circ, power_classes, AsymptoticTriple};
use crate::error::{Result, SoficError};
use crate::oracle::{search_homomorphisms, Want};
use crate::periodic::{enumerate_primitive_words, period_invariants, periodic_point_condition, periodic_point_obstruction};
use crate::shift::SoficShift;
use crate::syntactic::ClassId;
use crate::word::Word;

/// `Ω−(X)`: `(γ, a)` with `γ` synchronizing and `γ a^m` admissible for all `m`;
/// `Ω+(X)`: `(a, γ)` with `a^m γ` admissible for all `m`. Periodic words up to length `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSets {
    pub minus: Vec<(ClassId, Word)>,
    pub plus: Vec<(Word, ClassId)>,
}

pub fn omega_sets(x: &SoficShift, h: usize) -> OmegaSets {
    let sg = x.semigroup();
    let sync = sg.synchronizing_classes();
    let words = enumerate_primitive_words(x, h);
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for &g in &sync {
        for a in &words {
            let powers = power_classes(sg, a);
            if powers.iter().all(|&p| !sg.is_zero(sg.mul(g, p))) {
                minus.push((g, a.clone()));
            }
        }
    }
    for a in &words {
        let powers = power_classes(sg, a);
        for &g in &sync {
            if powers.iter().all(|&p| !sg.is_zero(sg.mul(p, g))) {
                plus.push((a.clone(), g));
            }
        }
    }
    OmegaSets { minus, plus }
}

/// A chain check together with the bounds and the caps it ran with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: ChainVerdict,
    pub rho_bar: usize,
    pub nu: usize,
    pub nu_phi: usize,
    pub k_bound: u128,
    pub n_bound: u128,
    pub k_cap: u128,
    pub n_cap: u128,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, ChainVerdict::Holds { .. })
    }

    /// The check is exact: the search was exhaustive or covered the bounds.
    pub fn exact(&self) -> bool {
        match self.verdict {
            ChainVerdict::Holds { exhaustive, .. } => {
                exhaustive || (self.k_cap >= self.k_bound && self.n_cap >= self.n_bound)
            }
            ChainVerdict::Fails(_) => true,
            ChainVerdict::ResourceExceeded { .. } => false,
        }
    }
}

fn rho_bar(x_bar: &SoficShift, phi: &PeriodicMap) -> Result<usize> {
    let mut m = 1;
    for b in phi.orbits().values() {
        m = m.max(period_invariants(x_bar, b)?.r);
    }
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    phi: &PeriodicMap,
    psi: &AccompanyingMap,
    triples: &[AsymptoticTriple],
    mode: ChainMode,
    caps: &Caps,
    budget: &Budget,
) -> Result<CheckReport> {
    let rho_bar = rho_bar(x_bar, phi)?;
    let nu_phi = psi.len();
    let nu = triples.len() - nu_phi;
    let (k_bound, n_bound) = consts.bounds(rho_bar, nu, nu_phi);
    let (k_cap, n_cap) = (caps.k.unwrap_or(k_bound), caps.n.unwrap_or(n_bound));
    let problem = ChainProblem { x, x_bar, consts, phi, psi, triples, mode, k_cap, n_cap };
    let verdict = check_chains(&problem, budget)?;
    Ok(CheckReport { verdict, rho_bar, nu, nu_phi, k_bound, n_bound, k_cap, n_cap })
}

/// The homomorphism chain condition for a given `(φ∘, Ψ)`. Missing caps default to the
/// bounds `K(X, X̄)` and `N(X, X̄)` of the candidate.
pub fn check_hom_condition(
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    phi: &PeriodicMap,
    psi: &AccompanyingMap,
    caps: &Caps,
    budget: &Budget,
) -> Result<CheckReport> {
    let triples = enumerate_a_circ(x, consts.h, caps.c)?;
    psi.validate(x_bar, phi, consts, &triples)?;
    run_check(x, x_bar, consts, phi, psi, &triples, ChainMode::Homomorphism, caps, budget)
}

/// Preconditions of the factor condition, each reported as its own error.
pub fn factor_preconditions(x: &SoficShift, x_bar: &SoficShift) -> Result<()> {
    if !x.is_transitive() || !x_bar.is_transitive() {
        return Err(SoficError::NotTransitive);
    }
    if !x_bar.is_aperiodic()? {
        return Err(SoficError::AperiodicityPrecondition);
    }
    if !periodic_point_condition(x, x_bar) {
        return Err(SoficError::PeriodicPointPrecondition);
    }
    if x.entropy()? <= x_bar.entropy()? + 1e-9 {
        return Err(SoficError::EntropyPrecondition);
    }
    Ok(())
}

pub type PsiMinus = BTreeMap<(ClassId, Word), ClassId>;
pub type PsiPlus = BTreeMap<(Word, ClassId), ClassId>;

fn flanks(
    x_bar: &SoficShift,
    omega: &OmegaSets,
    psi_minus: &PsiMinus,
    psi_plus: &PsiPlus,
) -> Result<(Vec<Start>, Vec<End>)> {
    let sgb = x_bar.semigroup();
    let bad = |what: &str| SoficError::Precondition(format!("{what} is not a map into the synchronizing classes"));
    let mut starts = Vec::new();
    for (g, a) in &omega.minus {
        let gb = *psi_minus.get(&(*g, a.clone())).ok_or_else(|| bad("Ψ−"))?;
        if !sgb.is_synchronizing_class(gb) {
            return Err(bad("Ψ−"));
        }
        starts.push(Start { gamma: *g, a: a.clone(), gamma_bar: gb });
    }
    let mut ends = Vec::new();
    for (a, g) in &omega.plus {
        let gb = *psi_plus.get(&(a.clone(), *g)).ok_or_else(|| bad("Ψ+"))?;
        if !sgb.is_synchronizing_class(gb) {
            return Err(bad("Ψ+"));
        }
        ends.push(End { a: a.clone(), gamma: *g, gamma_bar: gb });
    }
    Ok((starts, ends))
}

/// The factor chain condition for given `(φ∘, Ψ, Ψ−, Ψ+)`.
#[allow(clippy::too_many_arguments)]
pub fn check_factor_condition(
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    phi: &PeriodicMap,
    psi: &AccompanyingMap,
    psi_minus: &PsiMinus,
    psi_plus: &PsiPlus,
    caps: &Caps,
    budget: &Budget,
) -> Result<CheckReport> {
    factor_preconditions(x, x_bar)?;
    let triples = enumerate_a_circ(x, consts.h, caps.c)?;
    psi.validate(x_bar, phi, consts, &triples)?;
    let omega = omega_sets(x, consts.h);
    let (starts, ends) = flanks(x_bar, &omega, psi_minus, psi_plus)?;
    let mode = ChainMode::Factor { starts: &starts, ends: &ends };
    run_check(x, x_bar, consts, phi, psi, &triples, mode, caps, budget)
}

enum Flow {
    Continue,
    Stop,
}

enum SearchEnd {
    Completed { periodic_maps: usize },
    Stopped,
    OutOfBudget,
}

/// Visits the candidate pairs `(φ∘, Ψ)`: maps `φ∘` by increasing total period; for each,
/// domains from largest to smallest (the non-collapsing triples are always included);
/// for each domain, tables in lexicographic order of the per-triple value lists.
fn for_each_pair(
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    triples: &[AsymptoticTriple],
    targets: &[AsymptoticTriple],
    budget: &Budget,
    visit: &mut dyn FnMut(&PeriodicMap, &AccompanyingMap) -> Result<Flow>,
) -> Result<SearchEnd> {
    let mut end: Option<SearchEnd> = None;
    let mut err: Option<SoficError> = None;
    let mut maps = 0;
    for_each_periodic_map(x, x_bar, consts.h, &mut |phi| {
        maps += 1;
        let values: Vec<Vec<PsiEntry>> = triples.iter().map(|t| psi_values(&phi, consts, t, targets)).collect();
        let mut mandatory = Vec::new();
        let mut optional = Vec::new();
        for (i, t) in triples.iter().enumerate() {
            if phi.collapses(t) != Some(true) {
                if values[i].is_empty() {
                    return true;
                }
                mandatory.push(i);
            } else if !values[i].is_empty() {
                optional.push(i);
            }
        }
        for size in (0..=optional.len()).rev() {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let mut domain: Vec<usize> = mandatory.iter().copied().chain(combo.iter().map(|&j| optional[j])).collect();
                domain.sort_unstable();
                if !domain.is_empty() {
                    let mut pick = vec![0usize; domain.len()];
                    loop {
                        if !budget.spend(1) {
                            end = Some(SearchEnd::OutOfBudget);
                            return false;
                        }
                        let table = domain
                            .iter()
                            .zip(&pick)
                            .map(|(&i, &p)| (triples[i].clone(), values[i][p].clone()))
                            .collect();
                        match visit(&phi, &AccompanyingMap::new(table)) {
                            Ok(Flow::Continue) => {}
                            Ok(Flow::Stop) => {
                                end = Some(SearchEnd::Stopped);
                                return false;
                            }
                            Err(e) => {
                                err = Some(e);
                                return false;
                            }
                        }
                        // odometer, last position fastest
                        let mut j = domain.len();
                        loop {
                            if j == 0 {
                                break;
                            }
                            j -= 1;
                            pick[j] += 1;
                            if pick[j] < values[domain[j]].len() {
                                break;
                            }
                            pick[j] = 0;
                            if j == 0 {
                                j = usize::MAX;
                                break;
                            }
                        }
                        if j == usize::MAX || domain.is_empty() {
                            break;
                        }
                    }
                }
                // next combination of `size` optional indices in lexicographic order
                let n = optional.len();
                let mut i = size;
                while i > 0 && combo[i - 1] == n - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                combo[i - 1] += 1;
                for j in i..size {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
        true
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(end.unwrap_or(SearchEnd::Completed { periodic_maps: maps }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomAnswer {
    Yes { phi: PeriodicMap, psi: AccompanyingMap, check: CheckReport },
    No { certificate: String },
    ResourceExceeded { frontier: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub answer: HomAnswer,
    pub constants: DecisionConstants,
    pub caps: Caps,
    pub candidates_checked: usize,
    pub truncation_warnings: Vec<String>,
}

impl HomReport {
    pub fn truncated(&self) -> bool {
        !self.truncation_warnings.is_empty()
    }
}

fn base_warnings(consts: &DecisionConstants, caps: &Caps) -> Vec<String> {
    let mut w = Vec::new();
    if consts.h_truncated() {
        w.push(format!("periodic words capped at length {} (formula gives H = {})", consts.h, consts.h_formula));
    }
    w.push(format!("middle words capped at length {}", caps.c));
    w
}

fn chain_warning(check: &CheckReport) -> Option<String> {
    match check.verdict {
        ChainVerdict::Holds { exhaustive: true, .. } => None,
        _ if check.exact() => None,
        _ => Some(format!(
            "chains searched with K ≤ {} and N ≤ {} (bounds K = {}, N = {})",
            check.k_cap, check.n_cap, check.k_bound, check.n_bound
        )),
    }
}

/// Searches for `(φ∘, Ψ)` satisfying the homomorphism chain condition, i.e. for a
/// homomorphism with infinite image, within the given caps.
pub fn decide_homomorphism(x: &SoficShift, x_bar: &SoficShift, caps: &Caps, budget: &Budget) -> Result<HomReport> {
    let consts = constants(x, x_bar, caps.h)?;
    let mut warnings = base_warnings(&consts, caps);
    let report = |answer, n, warnings| HomReport {
        answer,
        constants: consts.clone(),
        caps: *caps,
        candidates_checked: n,
        truncation_warnings: warnings,
    };
    if let Some(p) = periodic_point_obstruction(x, x_bar) {
        let answer = HomAnswer::No { certificate: format!("period-{p} obstruction") };
        return Ok(report(answer, 0, Vec::new()));
    }
    let triples = enumerate_a_circ(x, consts.h, caps.c)?;
    let targets = enumerate_a_circ(x_bar, consts.h, caps.c)?;
    let mut found = None;
    let mut checked = 0;
    let end = for_each_pair(x, x_bar, &consts, &triples, &targets, budget, &mut |phi, psi| {
        checked += 1;
        let check = run_check(x, x_bar, &consts, phi, psi, &triples, ChainMode::Homomorphism, caps, budget)?;
        match check.verdict {
            ChainVerdict::Fails(_) => Ok(Flow::Continue),
            ChainVerdict::ResourceExceeded { .. } => Ok(Flow::Stop),
            ChainVerdict::Holds { .. } => {
                found = Some((phi.clone(), psi.clone(), check));
                Ok(Flow::Stop)
            }
        }
    })?;
    let answer = match (found, end) {
        (Some((phi, psi, check)), _) => {
            warnings.extend(chain_warning(&check));
            HomAnswer::Yes { phi, psi, check }
        }
        (None, SearchEnd::Completed { periodic_maps: 0 }) => {
            HomAnswer::No { certificate: "no valid periodic map".into() }
        }
        (None, SearchEnd::Completed { .. }) => HomAnswer::No {
            certificate: format!("every one of the {checked} candidate pairs has a failing chain"),
        },
        (None, _) => HomAnswer::ResourceExceeded {
            frontier: format!("{checked} candidate pairs checked, budget spent after {} steps", budget.used()),
        },
    };
    Ok(report(answer, checked, warnings))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorAnswer {
    Yes { phi: PeriodicMap, psi: AccompanyingMap, psi_minus: PsiMinus, psi_plus: PsiPlus, check: CheckReport },
    No { certificate: String },
    ResourceExceeded { frontier: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub answer: FactorAnswer,
    pub constants: DecisionConstants,
    pub caps: Caps,
    pub candidates_checked: usize,
    pub truncation_warnings: Vec<String>,
    /// Whether a small-window homomorphism whose image meets the complement of the derived
    /// shift of the target was found; `None` when the table space was too large to try.
    pub oracle_meets_nonderived: Option<bool>,
}

impl FactorReport {
    pub fn truncated(&self) -> bool {
        !self.truncation_warnings.is_empty()
    }
}

/// Table spaces up to this size are searched for the cross-check.
const ORACLE_TABLES: f64 = 65536.0;

fn oracle_cross_check(x: &SoficShift, x_bar: &SoficShift) -> Result<Option<bool>> {
    let mut searched = false;
    for l in 0..=1 {
        let blocks = x.words_of_length(2 * l + 1).len() as f64;
        if libm::pow(x_bar.alphabet().len() as f64, blocks) > ORACLE_TABLES {
            break;
        }
        searched = true;
        let r = search_homomorphisms(x, x_bar, l, Want::MeetsNonderived, &Budget::unlimited())?;
        if !r.found.is_empty() {
            return Ok(Some(true));
        }
    }
    Ok(searched.then_some(false))
}

enum FlankOutcome {
    Found(PsiMinus, PsiPlus, CheckReport),
    NoneFound,
    OutOfBudget,
}

/// Searches `Ψ−`, `Ψ+` for a fixed `(φ∘, Ψ)`: pairwise compatibility from the chains
/// without intermediate blocks first, then full checks of the compatible assignments.
#[allow(clippy::too_many_arguments)]
fn search_flanks(
    x: &SoficShift,
    x_bar: &SoficShift,
    consts: &DecisionConstants,
    phi: &PeriodicMap,
    psi: &AccompanyingMap,
    triples: &[AsymptoticTriple],
    omega: &OmegaSets,
    caps: &Caps,
    budget: &Budget,
) -> Result<FlankOutcome> {
    let sync = x_bar.semigroup().synchronizing_classes();
    let (nm, np, ns) = (omega.minus.len(), omega.plus.len(), sync.len());
    if nm == 0 || np == 0 || ns == 0 {
        return Ok(FlankOutcome::NoneFound);
    }
    let start = |i: usize, g: usize| Start { gamma: omega.minus[i].0, a: omega.minus[i].1.clone(), gamma_bar: sync[g] };
    let end = |j: usize, g: usize| End { a: omega.plus[j].0.clone(), gamma: omega.plus[j].1, gamma_bar: sync[g] };
    let flat = Caps { k: Some(0), n: Some(0), ..*caps };
    // compat[i][gi][j][gj]
    let mut compat = vec![vec![vec![vec![true; ns]; np]; ns]; nm];
    for i in 0..nm {
        for j in 0..np {
            if !crate::word::conjugate(&omega.minus[i].1, &omega.plus[j].0) {
                continue;
            }
            for gi in 0..ns {
                for gj in 0..ns {
                    let (s, e) = ([start(i, gi)], [end(j, gj)]);
                    let mode = ChainMode::Factor { starts: &s, ends: &e };
                    let r = run_check(x, x_bar, consts, phi, psi, triples, mode, &flat, budget)?;
                    match r.verdict {
                        ChainVerdict::ResourceExceeded { .. } => return Ok(FlankOutcome::OutOfBudget),
                        v => compat[i][gi][j][gj] = matches!(v, ChainVerdict::Holds { .. }),
                    }
                }
            }
        }
    }
    // Backtracking over Ψ− (all of Ω−) and then Ψ+, values by ascending class.
    let total = nm + np;
    let mut pick = vec![0usize; total];
    let mut depth = 0;
    let consistent = |pick: &[usize], d: usize| -> bool {
        if d < nm {
            return true;
        }
        let j = d - nm;
        (0..nm).all(|i| compat[i][pick[i]][j][pick[d]])
    };
    loop {
        if depth == total {
            let psi_minus: PsiMinus = (0..nm).map(|i| (omega.minus[i].clone(), sync[pick[i]])).collect();
            let psi_plus: PsiPlus = (0..np).map(|j| (omega.plus[j].clone(), sync[pick[nm + j]])).collect();
            let (starts, ends) = flanks(x_bar, omega, &psi_minus, &psi_plus)?;
            let mode = ChainMode::Factor { starts: &starts, ends: &ends };
            let r = run_check(x, x_bar, consts, phi, psi, triples, mode, caps, budget)?;
            match r.verdict {
                ChainVerdict::Holds { .. } => return Ok(FlankOutcome::Found(psi_minus, psi_plus, r)),
                ChainVerdict::ResourceExceeded { .. } => return Ok(FlankOutcome::OutOfBudget),
                ChainVerdict::Fails(_) => {}
            }
            depth -= 1;
            pick[depth] += 1;
        }
        if !budget.spend(1) {
            return Ok(FlankOutcome::OutOfBudget);
        }
        if pick[depth] >= ns {
            pick[depth] = 0;
            if depth == 0 {
                return Ok(FlankOutcome::NoneFound);
            }
            depth -= 1;
            pick[depth] += 1;
            continue;
        }
        if consistent(&pick, depth) {
            depth += 1;
        } else {
            pick[depth] += 1;
        }
    }
}

/// Searches for `(φ∘, Ψ, Ψ−, Ψ+)` satisfying the factor chain condition, i.e. for a
/// surjective homomorphism, within the given caps.
pub fn decide_factor(x: &SoficShift, x_bar: &SoficShift, caps: &Caps, budget: &Budget) -> Result<FactorReport> {
    factor_preconditions(x, x_bar)?;
    let consts = constants(x, x_bar, caps.h)?;
    let mut warnings = base_warnings(&consts, caps);
    let triples = enumerate_a_circ(x, consts.h, caps.c)?;
    let targets = enumerate_a_circ(x_bar, consts.h, caps.c)?;
    let omega = omega_sets(x, consts.h);
    let mut found = None;
    let mut checked = 0;
    let mut out_of_budget = false;
    let end = for_each_pair(x, x_bar, &consts, &triples, &targets, budget, &mut |phi, psi| {
        checked += 1;
        match search_flanks(x, x_bar, &consts, phi, psi, &triples, &omega, caps, budget)? {
            FlankOutcome::OutOfBudget => {
                out_of_budget = true;
                Ok(Flow::Stop)
            }
            FlankOutcome::NoneFound => Ok(Flow::Continue),
            FlankOutcome::Found(pm, pp, check) => {
                found = Some((phi.clone(), psi.clone(), pm, pp, check));
                Ok(Flow::Stop)
            }
        }
    })?;
    let answer = match (found, end) {
        (Some((phi, psi, psi_minus, psi_plus, check)), _) => {
            warnings.extend(chain_warning(&check));
            FactorAnswer::Yes { phi, psi, psi_minus, psi_plus, check }
        }
        (None, SearchEnd::Completed { periodic_maps: 0 }) => {
            FactorAnswer::No { certificate: "no valid periodic map".into() }
        }
        (None, SearchEnd::Completed { .. }) if !out_of_budget => FactorAnswer::No {
            certificate: format!("every one of the {checked} candidate tuples has a failing chain"),
        },
        (None, _) => FactorAnswer::ResourceExceeded {
            frontier: format!("{checked} candidate pairs checked, budget spent after {} steps", budget.used()),
        },
    };
    Ok(FactorReport {
        answer,
        constants: consts,
        caps: *caps,
        candidates_checked: checked,
        truncation_warnings: warnings,
        oracle_meets_nonderived: oracle_cross_check(x, x_bar)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn omega_examples() {
        let gm = catalog::golden_mean();
        let sg = gm.semigroup();
        let om = omega_sets(&gm, 2);
        let c0 = sg.class_of(&[0]).unwrap();
        let c1 = sg.class_of(&[1]).unwrap();
        assert!(om.minus.contains(&(c0, vec![0])));
        assert!(om.minus.contains(&(c1, vec![0])));
        let even = catalog::even();
        let sge = even.semigroup();
        let om = omega_sets(&even, 1);
        assert!(om.minus.contains(&(sge.class_of(&[0]).unwrap(), vec![1])));
    }

    #[test]
    fn golden_mean_to_ne3_is_no() {
        let r = decide_homomorphism(&catalog::golden_mean(), &catalog::no_repeat3(), &Caps::default(), &Budget::unlimited())
            .unwrap();
        assert_eq!(r.answer, HomAnswer::No { certificate: "period-1 obstruction".into() });
    }

    #[test]
    fn full2_to_golden_mean_is_yes() {
        let caps = Caps { h: Some(1), c: 1, ..Caps::default() };
        let r = decide_homomorphism(&catalog::full_shift(2), &catalog::golden_mean(), &caps, &Budget::unlimited())
            .unwrap();
        assert!(matches!(r.answer, HomAnswer::Yes { .. }), "{:?}", r.answer);
    }

    #[test]
    fn factor_preconditions_are_gated() {
        let gm = catalog::golden_mean();
        let caps = Caps::default();
        let b = Budget::unlimited();
        assert_eq!(decide_factor(&gm, &gm, &caps, &b).unwrap_err(), SoficError::EntropyPrecondition);
        assert_eq!(
            decide_factor(&gm, &catalog::no_repeat3(), &caps, &b).unwrap_err(),
            SoficError::PeriodicPointPrecondition
        );
    }
}
