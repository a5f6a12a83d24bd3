//! Design-independent lower bounds on the A-criteria over all connected
//! primals with given `(b, v, k)`, and the efficiencies they induce.
//!
//! With `f = ⌊bk/v⌋` and `h = bk − vf`:
//!
//! ```text
//! L = (v−1)² / {b(k−1)}     L̃ = (b−1)² / (bk−v)     H = h/(f+1) + (v−h)/f
//! ```
//!
//! `tr(C⁺) ≥ L`, `tr(C̃⁺) ≥ L̃` and `Σ 1/r_i ≥ H` for every design in the class.
//! Efficiencies are bound / criterion, so they lie in (0, 1].

use crate::criteria::{a_criteria, intrablock, mv_criteria, CriteriaReport, Intrablock};
use crate::design::{AugmentationSpec, BlockDesign};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuantities<T> {
    pub l: T,
    pub l_tilde: T,
    /// Smallest possible `Σ 1/r_i` over integer replications summing to `bk`.
    pub h_sum: T,
    pub f: usize,
    pub h: usize,
}

pub fn bound_quantities<T: Scalar>(b: usize, v: usize, k: usize) -> Result<BoundQuantities<T>> {
    if b < 2 || v < 2 || k < 2 {
        return Err(Error::InvalidParameters(format!(
            "need b, v, k >= 2, got ({b}, {v}, {k})"
        )));
    }
    if b * k <= v {
        return Err(Error::InvalidParameters(format!(
            "need bk > v, got bk = {} and v = {v}",
            b * k
        )));
    }
    let f = b * k / v;
    let h = b * k - v * f;
    let (bt, vt, kt) = (T::count(b), T::count(v), T::count(k));
    let one = T::one();
    Ok(BoundQuantities {
        l: (vt - one).powi(2) / (bt * (kt - one)),
        l_tilde: (bt - one).powi(2) / (bt * kt - vt),
        h_sum: T::count(h) / T::count(f + 1) + T::count(v - h) / T::count(f),
        f,
        h,
    })
}

/// Lower bounds on `A_cc`, `A_tt` and `A_ct`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ABounds<T> {
    pub acc: T,
    pub att: T,
    pub act: T,
}

pub fn a_bounds<T: Scalar>(
    b: usize,
    v: usize,
    k: usize,
    s: &AugmentationSpec,
) -> Result<ABounds<T>> {
    let q = bound_quantities::<T>(b, v, k)?;
    s.validate(b)?;
    if s.total(b) < 2 {
        return Err(Error::InvalidParameters(
            "need at least 2 test treatments".into(),
        ));
    }
    let (bt, vt, kt) = (T::count(b), T::count(v), T::count(k));
    let (one, two) = (T::one(), T::of(2.0));
    let acc = two * q.l / (vt - one);
    let (att, act) = match s {
        AugmentationSpec::Common(s) => {
            let ratio = T::count(*s) / T::count(b * s - 1);
            let att = two * (one + ratio * q.l_tilde);
            let act = one + (kt + one) / (vt * kt) * q.h_sum + q.l_tilde / bt - one / (bt * kt);
            (att, act)
        }
        AugmentationSpec::PerBlock(_) => {
            let total = T::count(s.total(b));
            let s0 = T::count(s.min());
            let s_bar = total / bt;
            let phi = T::count(s.phi_sum(b));
            let att = two
                + (T::of(4.0) / kt * phi + two * s0 * s0 * bt * q.l_tilde)
                    / (total * (total - one));
            let act = one
                + (kt * s_bar + s0) * q.h_sum / (vt * kt * s_bar)
                + s0 * q.l_tilde / (bt * s_bar)
                - s0 / (bt * kt * s_bar);
            (att, act)
        }
    };
    Ok(ABounds { acc, att, act })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyReport<T> {
    pub cc: T,
    /// `A_tt` efficiency at the requested augmentation.
    pub tt_s: T,
    /// `A_tt` efficiency at `s = 1`, a lower bound for every `s`.
    pub tt_conservative: T,
    pub ct: T,
    pub mv_cc: T,
    pub mv_tt: T,
    pub mv_ct: T,
}

/// Everything needed to judge a primal: its criteria, the class bounds and
/// the resulting efficiencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub b: usize,
    pub v: usize,
    pub k: usize,
    pub criteria: CriteriaReport<T>,
    pub quantities: BoundQuantities<T>,
    pub bounds: ABounds<T>,
    /// Bounds at `s = 1`; these are the numerators of the MV-efficiencies.
    pub bounds_unit: ABounds<T>,
    pub a_tt_unit: T,
    pub efficiency: EfficiencyReport<T>,
}

impl<T: Scalar> Evaluation<T> {
    pub fn new(ib: &Intrablock<T>, d: &BlockDesign, s: &AugmentationSpec) -> Result<Self> {
        let (b, v, k) = (d.b(), d.v(), ib.k);
        let quantities = bound_quantities::<T>(b, v, k)?;
        let bounds = a_bounds::<T>(b, v, k, s)?;
        let unit = AugmentationSpec::Common(1);
        let bounds_unit = a_bounds::<T>(b, v, k, &unit)?;
        let a = a_criteria(ib, d, s)?;
        let a_tt_unit = match s {
            AugmentationSpec::Common(1) => a.tt,
            _ => a_criteria(ib, d, &unit)?.tt,
        };
        let mv = mv_criteria(ib, d)?;
        let criteria = CriteriaReport {
            a_cc: a.cc,
            a_tt: a.tt,
            a_ct: a.ct,
            mv_cc: mv.cc,
            mv_tt: mv.tt,
            mv_ct: mv.ct,
        };
        let efficiency = EfficiencyReport {
            cc: bounds.acc / a.cc,
            tt_s: bounds.att / a.tt,
            tt_conservative: bounds_unit.att / a_tt_unit,
            ct: bounds.act / a.ct,
            mv_cc: bounds_unit.acc / mv.cc,
            mv_tt: bounds_unit.att / mv.tt,
            mv_ct: bounds_unit.act / mv.ct,
        };
        Ok(Self {
            b,
            v,
            k,
            criteria,
            quantities,
            bounds,
            bounds_unit,
            a_tt_unit,
            efficiency,
        })
    }

    pub fn of_design(d: &BlockDesign, s: &AugmentationSpec) -> Result<Self> {
        let ib = intrablock::<T>(d)?;
        Self::new(&ib, d, s)
    }
}

pub fn efficiencies<T: Scalar>(
    d: &BlockDesign,
    s: &AugmentationSpec,
) -> Result<EfficiencyReport<T>> {
    Ok(Evaluation::<T>::of_design(d, s)?.efficiency)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvEfficiencies<T> {
    pub cc: T,
    pub tt: T,
    pub ct: T,
}

pub fn mv_efficiencies<T: Scalar>(d: &BlockDesign) -> Result<MvEfficiencies<T>> {
    let e = efficiencies::<T>(d, &AugmentationSpec::Common(1))?;
    Ok(MvEfficiencies {
        cc: e.mv_cc,
        tt: e.mv_tt,
        ct: e.mv_ct,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `A_tt eff ≥ 0.99`, `A_ct eff ≥ 0.97`, `A_cc eff ≥ 0.95`.
    High,
    /// `A_tt eff ≥ 0.97`, `A_ct eff ≥ 0.95`, `A_cc eff ≥ 0.93`.
    Good,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::High => "HIGH",
            Self::Good => "GOOD",
            Self::Neither => "NEITHER",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies on unrounded `(A_cc, conservative A_tt, A_ct)` efficiencies.
pub fn threshold_class<T: Scalar>(cc: T, tt: T, ct: T) -> Classification {
    let meets = |t: f64, c: f64, a: f64| tt >= T::of(t) && ct >= T::of(c) && cc >= T::of(a);
    if meets(0.99, 0.97, 0.95) {
        Classification::High
    } else if meets(0.97, 0.95, 0.93) {
        Classification::Good
    } else {
        Classification::Neither
    }
}

impl<T: Scalar> EfficiencyReport<T> {
    pub fn classify(&self) -> Classification {
        threshold_class(self.cc, self.tt_conservative, self.ct)
    }
}
