//! Bounded decision procedures for homomorphisms and factor maps between sofic shifts.

mod chain;
mod constants;
pub(crate) mod maps;
mod search;

pub use chain::{
    check_chains, remainder_set, ChainMode, ChainProblem, ChainVerdict, ChainWitness, Closing, End, Start,
};
pub use constants::{constants, Caps, DecisionConstants};
pub use maps::{
    entry_valid, for_each_periodic_map, phi_obstruction, psi_values, AccompanyingMap, PeriodicMap, PsiEntry,
};
pub use search::{
    check_hom_condition, check_factor_condition, decide_factor, decide_homomorphism, factor_preconditions, omega_sets,
    CheckReport, FactorAnswer, FactorReport, HomAnswer, HomReport, OmegaSets, PsiMinus, PsiPlus,
};

use core::cell::Cell;

/// Work limit shared by the search procedures: a count of elementary steps plus an
/// optional external stop signal (polled, never required).
pub struct Budget<'a> {
    max_steps: Option<u64>,
    used: Cell<u64>,
    stop: Option<&'a dyn Fn() -> bool>,
}

impl<'a> Budget<'a> {
    pub fn unlimited() -> Self {
        Budget { max_steps: None, used: Cell::new(0), stop: None }
    }

    pub fn steps(max_steps: u64) -> Self {
        Budget { max_steps: Some(max_steps), used: Cell::new(0), stop: None }
    }

    pub fn with_stop(mut self, stop: &'a dyn Fn() -> bool) -> Self {
        self.stop = Some(stop);
        self
    }

    /// Records `n` steps; false once the budget is spent.
    pub fn spend(&self, n: u64) -> bool {
        let used = self.used.get().saturating_add(n);
        self.used.set(used);
        if self.max_steps.is_some_and(|m| used > m) {
            return false;
        }
        !self.stop.is_some_and(|f| f())
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}
