use crate::error::{Result, SoficError};
use crate::periodic::{enumerate_primitive_words, max_r, period_invariants};
use crate::pumping::h_circ;
use crate::shift::SoficShift;

/// Pair constants that do not depend on a candidate `φ∘`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionConstants {
    pub v_x: usize,
    pub v_bar: usize,
    pub v_circ_x: usize,
    pub h_circ_x: usize,
    pub t_circ: usize,
    /// `H` as given by its formula.
    pub h_formula: usize,
    /// `H` actually used: the formula value, lowered to the cap when one is set.
    pub h: usize,
    pub t: usize,
    pub rho: usize,
}

impl DecisionConstants {
    pub fn h_truncated(&self) -> bool {
        self.h < self.h_formula
    }

    /// `K` and `N` for a candidate with the given `ρ̄`, `ν`, `ν^φ`, saturating.
    pub fn bounds(&self, rho_bar: usize, nu: usize, nu_phi: usize) -> (u128, u128) {
        let (v, vc) = (self.v_x as u128, self.v_circ_x as u128);
        let nu128 = nu as u128;
        let base = (self.rho as u128).saturating_mul(nu128);
        let exp = vc.saturating_mul(nu128);
        let mut pow: u128 = 1;
        let mut i = 0;
        while i < exp && pow != 0 && pow != u128::MAX {
            pow = pow.saturating_mul(base);
            i += 1;
        }
        let k = (rho_bar as u128)
            .saturating_mul(vc)
            .saturating_mul(nu128)
            .saturating_mul(v.saturating_mul(nu128).saturating_add(1))
            .saturating_mul(pow);
        let n = v.saturating_mul(self.v_bar as u128).saturating_mul(nu_phi as u128);
        (k, n)
    }
}

/// Search limits. `None` means "use the bound".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub k: Option<u128>,
    pub n: Option<u128>,
    /// Longest middle word `c` in the enumerated triple sets.
    pub c: usize,
    pub h: Option<usize>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { k: None, n: None, c: 2, h: Some(2) }
    }
}

pub fn constants(x: &SoficShift, x_bar: &SoficShift, h_cap: Option<usize>) -> Result<DecisionConstants> {
    if x.is_finite() || x_bar.is_finite() {
        return Err(SoficError::FiniteShift);
    }
    if !x.is_transitive() {
        return Err(SoficError::NotTransitive);
    }
    let sg = x.semigroup();
    let v_x = sg.v();
    let v_circ_x = sg.shannon().v_circ();
    let h_circ_x = h_circ(x, 1);
    let r = max_r(x_bar, v_circ_x);
    let t_circ = r * r;
    let mut q_len = 0;
    for a in enumerate_primitive_words(x, v_circ_x) {
        q_len = q_len.max(period_invariants(x, &a)?.q * a.len());
    }
    // The second maximum of the formula runs over the same set as the first.
    let h_formula = v_x + h_circ_x + 2 * t_circ + q_len.max(q_len);
    let h = h_cap.map_or(h_formula, |c| c.min(h_formula));
    let rb = max_r(x_bar, h);
    Ok(DecisionConstants {
        v_x,
        v_bar: x_bar.semigroup().v(),
        v_circ_x,
        h_circ_x,
        t_circ,
        h_formula,
        h,
        t: rb * rb,
        rho: max_r(x, h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn full2_to_golden_mean() {
        let c = constants(&catalog::full_shift(2), &catalog::golden_mean(), None).unwrap();
        assert_eq!((c.t_circ, c.h_formula, c.t, c.rho), (1, 5, 1, 1));
        assert!(c.h >= c.v_x);
        assert_eq!(c.bounds(1, 1, 3), (2, 12));
    }

    #[test]
    fn cap_lowers_h() {
        let c = constants(&catalog::golden_mean(), &catalog::full_shift(2), Some(2)).unwrap();
        assert_eq!(c.h, 2);
        assert!(c.h_truncated());
    }

    #[test]
    fn finite_input_rejected() {
        let p = crate::LabeledPresentation::from_named(&["0"], 1, &[(0, 0, "0")]).unwrap();
        let fixed = SoficShift::new(p).unwrap();
        assert_eq!(constants(&fixed, &catalog::golden_mean(), None), Err(SoficError::FiniteShift));
    }
}
