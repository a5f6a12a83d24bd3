//! Variances of the three contrast types and the A- and MV-criteria built
//! from them. All values are multipliers of the error variance σ².
//!
//! For a connected primal with constant block size `k`:
//!
//! * control vs control: `V_cc(i, i*) = (e_i − e_i*)ᵀ C⁺ (e_i − e_i*)`
//! * test vs test in different blocks: `2 + V_tt(j, j*)` with
//!   `V_tt(j, j*) = (ẽ_j − ẽ_j*)ᵀ C̃⁺ (ẽ_j − ẽ_j*)`; in the same block, `2`
//! * control vs test: `V_ct(i, j) = 1 + 1/r_i + ξ_ijᵀ C̃⁺ ξ_ij` with
//!   `ξ_ij = ẽ_j − NᵀR⁻¹e_i`
//!
//! where `C = R − NNᵀ/k` and `C̃ = kI_b − NᵀR⁻¹N`.

use crate::design::{AugmentationSpec, BlockDesign};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::scalar::Scalar;

/// Intrablock matrices of a primal and of its dual, with their
/// Moore-Penrose inverses.
#[derive(Debug, Clone)]
pub struct Intrablock<T> {
    pub c: SymMatrix<T>,
    pub c_tilde: SymMatrix<T>,
    pub c_plus: SymMatrix<T>,
    pub c_tilde_plus: SymMatrix<T>,
    pub k: usize,
    replication: Vec<usize>,
}

/// `C = R − NNᵀ/k`. Needs a constant block size but not connectivity.
pub fn control_information<T: Scalar>(d: &BlockDesign) -> Result<SymMatrix<T>> {
    let k = d.block_size().ok_or(Error::NonUniformBlockSize)?;
    let r = d.replication();
    let inv_k = T::one() / T::count(k);
    Ok(SymMatrix::from_upper_fn(d.v(), |i, is| {
        let nn = T::from_u32(d.concurrence(i, is)).unwrap();
        let diag = if i == is { T::count(r[i]) } else { T::zero() };
        diag - nn * inv_k
    }))
}

/// `C̃ = kI_b − NᵀR⁻¹N`. Needs a constant block size and every `r_i ≥ 1`.
pub fn dual_information<T: Scalar>(d: &BlockDesign) -> Result<SymMatrix<T>> {
    let k = d.block_size().ok_or(Error::NonUniformBlockSize)?;
    let r = d.replication();
    if r.contains(&0) {
        return Err(Error::Disconnected);
    }
    let inv_r: Vec<T> = r.iter().map(|&x| T::one() / T::count(x)).collect();
    Ok(SymMatrix::from_upper_fn(d.b(), |j, js| {
        let mut acc = T::zero();
        for (i, &w) in inv_r.iter().enumerate() {
            let p = d.n(i, j) * d.n(i, js);
            if p != 0 {
                acc += T::from_u32(p).unwrap() * w;
            }
        }
        let diag = if j == js { T::count(k) } else { T::zero() };
        diag - acc
    }))
}

pub fn intrablock<T: Scalar>(d: &BlockDesign) -> Result<Intrablock<T>> {
    let k = d.block_size().ok_or(Error::NonUniformBlockSize)?;
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let c = control_information::<T>(d)?;
    let c_tilde = dual_information::<T>(d)?;
    let c_plus = c.mp_inverse_centered(d.v())?;
    let c_tilde_plus = c_tilde.mp_inverse_centered(d.b())?;
    Ok(Intrablock {
        c,
        c_tilde,
        c_plus,
        c_tilde_plus,
        k,
        replication: d.replication(),
    })
}

fn check_pair(a: usize, b: usize, limit: usize) -> Result<()> {
    for index in [a, b] {
        if index >= limit {
            return Err(Error::IndexOutOfRange { index, limit });
        }
    }
    if a == b {
        return Err(Error::SameIndex(a));
    }
    Ok(())
}

impl<T: Scalar> Intrablock<T> {
    pub fn v(&self) -> usize {
        self.c.order()
    }

    pub fn b(&self) -> usize {
        self.c_tilde.order()
    }

    pub fn replication(&self) -> &[usize] {
        &self.replication
    }

    pub fn v_cc(&self, i: usize, i_star: usize) -> Result<T> {
        check_pair(i, i_star, self.v())?;
        Ok(self.c_plus.get(i, i) + self.c_plus.get(i_star, i_star)
            - (self.c_plus.get(i, i_star) + self.c_plus.get(i_star, i)))
    }

    /// Block-contrast part only; the test-vs-test variance across blocks is
    /// `2 + v_tt`.
    pub fn v_tt(&self, j: usize, j_star: usize) -> Result<T> {
        check_pair(j, j_star, self.b())?;
        let p = &self.c_tilde_plus;
        Ok(p.get(j, j) + p.get(j_star, j_star) - (p.get(j, j_star) + p.get(j_star, j)))
    }

    /// `ξ_ij = ẽ_j − NᵀR⁻¹e_i`.
    pub fn xi(&self, d: &BlockDesign, i: usize, j: usize) -> Vec<T> {
        let inv_r = T::one() / T::count(self.replication[i]);
        let mut x: Vec<T> = (0..self.b())
            .map(|jj| -T::from_u32(d.n(i, jj)).unwrap() * inv_r)
            .collect();
        x[j] += T::one();
        x
    }

    /// Full control-vs-test variance multiplier, including the `1` from the
    /// test plot and `1/r_i` from the control mean.
    pub fn v_ct(&self, d: &BlockDesign, i: usize, j: usize) -> Result<T> {
        if i >= self.v() {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.v(),
            });
        }
        if j >= self.b() {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: self.b(),
            });
        }
        let xi = self.xi(d, i, j);
        let q = self.c_tilde_plus.quad_form(&xi)?;
        Ok(T::one() + T::one() / T::count(self.replication[i]) + q)
    }

    /// `tr(R⁻¹ N C̃⁺ Nᵀ R⁻¹)`.
    pub fn weighted_dual_trace(&self, d: &BlockDesign) -> T {
        (0..self.v())
            .map(|i| {
                let row: Vec<T> = (0..self.b())
                    .map(|j| T::from_u32(d.n(i, j)).unwrap())
                    .collect();
                let r = T::count(self.replication[i]);
                self.c_tilde_plus.quad_form(&row).unwrap() / (r * r)
            })
            .sum()
    }

    pub fn sum_inverse_replication(&self) -> T {
        self.replication
            .iter()
            .map(|&r| T::one() / T::count(r))
            .sum()
    }
}

/// Average variances of the three contrast types.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ACriteria<T> {
    pub cc: T,
    pub tt: T,
    pub ct: T,
}

/// Maximal variances of the three contrast types.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvCriteria<T> {
    pub cc: T,
    pub tt: T,
    pub ct: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaReport<T> {
    pub a_cc: T,
    pub a_tt: T,
    pub a_ct: T,
    pub mv_cc: T,
    pub mv_tt: T,
    pub mv_ct: T,
}

/// A-criteria. With a common `s` the trace forms are used; with per-block
/// counts the pairwise-weighted forms are evaluated directly.
pub fn a_criteria<T: Scalar>(
    ib: &Intrablock<T>,
    d: &BlockDesign,
    s: &AugmentationSpec,
) -> Result<ACriteria<T>> {
    let (v, b) = (ib.v(), ib.b());
    s.validate(b)?;
    if v < 2 {
        return Err(Error::InvalidParameters("need at least 2 controls".into()));
    }
    if s.total(b) < 2 {
        return Err(Error::InvalidParameters(
            "need at least 2 test treatments".into(),
        ));
    }
    let cc = T::of(2.0) * ib.c_plus.trace() / T::count(v - 1);
    let (tt, ct) = match s {
        AugmentationSpec::Common(s) => {
            let tr = ib.c_tilde_plus.trace();
            let ratio = T::count(*s) / T::count(b * s - 1);
            let tt = T::of(2.0) * (T::one() + ratio * tr);
            let ct = T::one()
                + ib.sum_inverse_replication() / T::count(v)
                + tr / T::count(b)
                + ib.weighted_dual_trace(d) / T::count(v);
            (tt, ct)
        }
        AugmentationSpec::PerBlock(_) => (a_tt_pairwise(ib, s)?, a_ct_weighted(ib, d, s)?),
    };
    Ok(ACriteria { cc, tt, ct })
}

/// `2 + 2 Σ_{j<j*} s_j s_j* V_tt(j, j*) / {S(S−1)}`.
pub fn a_tt_pairwise<T: Scalar>(ib: &Intrablock<T>, s: &AugmentationSpec) -> Result<T> {
    let b = ib.b();
    s.validate(b)?;
    let total = s.total(b);
    if total < 2 {
        return Err(Error::InvalidParameters(
            "need at least 2 test treatments".into(),
        ));
    }
    let mut acc = T::zero();
    for j in 0..b {
        for js in (j + 1)..b {
            acc += T::count(s.count(j) * s.count(js)) * ib.v_tt(j, js)?;
        }
    }
    Ok(T::of(2.0) + T::of(2.0) * acc / T::count(total * (total - 1)))
}

/// `Σ_i Σ_j s_j V_ct(i, j) / (vS)`.
pub fn a_ct_weighted<T: Scalar>(
    ib: &Intrablock<T>,
    d: &BlockDesign,
    s: &AugmentationSpec,
) -> Result<T> {
    let (v, b) = (ib.v(), ib.b());
    s.validate(b)?;
    let mut acc = T::zero();
    for i in 0..v {
        for j in 0..b {
            acc += T::count(s.count(j)) * ib.v_ct(d, i, j)?;
        }
    }
    Ok(acc / T::count(v * s.total(b)))
}

/// MV-criteria: exact maxima over all index pairs. They do not depend on how
/// many tests each block carries.
pub fn mv_criteria<T: Scalar>(ib: &Intrablock<T>, d: &BlockDesign) -> Result<MvCriteria<T>> {
    let (v, b) = (ib.v(), ib.b());
    let mut cc = T::zero();
    for i in 0..v {
        for is in (i + 1)..v {
            cc = cc.max(ib.v_cc(i, is)?);
        }
    }
    let mut tt = T::zero();
    for j in 0..b {
        for js in (j + 1)..b {
            tt = tt.max(ib.v_tt(j, js)?);
        }
    }
    let mut ct = T::zero();
    for i in 0..v {
        for j in 0..b {
            ct = ct.max(ib.v_ct(d, i, j)?);
        }
    }
    Ok(MvCriteria {
        cc,
        tt: T::of(2.0) + tt,
        ct,
    })
}

pub fn criteria<T: Scalar>(
    ib: &Intrablock<T>,
    d: &BlockDesign,
    s: &AugmentationSpec,
) -> Result<CriteriaReport<T>> {
    let a = a_criteria(ib, d, s)?;
    let mv = mv_criteria(ib, d)?;
    Ok(CriteriaReport {
        a_cc: a.cc,
        a_tt: a.tt,
        a_ct: a.ct,
        mv_cc: mv.cc,
        mv_tt: mv.tt,
        mv_ct: mv.ct,
    })
}

/// Both sides of the two trace identities of an equireplicate primal:
///
/// * `tr(C̃⁺) = (r/k) tr(C⁺) + (b − v)/k`
/// * `tr(R⁻¹NC̃⁺NᵀR⁻¹) = (v/b) tr(C̃⁺) − (b − 1)/r`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquireplicateIdentities<T> {
    pub dual_trace: (T, T),
    pub weighted_trace: (T, T),
}

impl<T: Scalar> EquireplicateIdentities<T> {
    pub fn max_gap(&self) -> T {
        (self.dual_trace.0 - self.dual_trace.1)
            .abs()
            .max((self.weighted_trace.0 - self.weighted_trace.1).abs())
    }
}

pub fn equireplicate_identities<T: Scalar>(
    ib: &Intrablock<T>,
    d: &BlockDesign,
) -> Result<EquireplicateIdentities<T>> {
    if !d.is_equireplicate() {
        return Err(Error::NotEquireplicate);
    }
    let r = T::count(d.replication()[0]);
    let (v, b, k) = (T::count(ib.v()), T::count(ib.b()), T::count(ib.k));
    let tr_c = ib.c_plus.trace();
    let tr_ct = ib.c_tilde_plus.trace();
    Ok(EquireplicateIdentities {
        dual_trace: (tr_ct, r / k * tr_c + (b - v) / k),
        weighted_trace: (
            ib.weighted_dual_trace(d),
            v / b * tr_ct - (b - T::one()) / r,
        ),
    })
}

/// Criteria for a design without controls in which some tests are planted
/// twice: the twice-replicated subdesign takes the place of the primal, so
/// `rr`, `rt` and `tt` are the `cc`, `ct` and `tt` values of that subdesign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialReplicationReport<T> {
    pub a_rr: T,
    pub a_tt: T,
    pub a_rt: T,
    pub mv_rr: T,
    pub mv_tt: T,
    pub mv_rt: T,
}

impl<T> From<CriteriaReport<T>> for PartialReplicationReport<T> {
    fn from(c: CriteriaReport<T>) -> Self {
        Self {
            a_rr: c.a_cc,
            a_tt: c.a_tt,
            a_rt: c.a_ct,
            mv_rr: c.mv_cc,
            mv_tt: c.mv_tt,
            mv_rt: c.mv_ct,
        }
    }
}

pub fn partial_replication_eval<T: Scalar>(
    d_rep: &BlockDesign,
    s: &AugmentationSpec,
) -> Result<PartialReplicationReport<T>> {
    let ib = intrablock::<T>(d_rep)?;
    Ok(criteria(&ib, d_rep, s)?.into())
}
