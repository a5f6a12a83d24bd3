//! Brute-force ground truth for the closed-form modules.
//!
//! [`AugmentedModel`] writes out the full fixed-effects model of an augmented
//! design, one row per plot, and computes contrast variances as
//! `cᵀ(XᵀX)⁺c`. It knows nothing about intrablock matrices. The pseudo-inverse
//! comes from bordering `XᵀX` with its null space (one vector per connected
//! component of the block-treatment graph); the rank of `X` is measured
//! separately by Gram-Schmidt on its rows and must agree.
//!
//! [`enumerate_class`] lists every design in a small class `D(b, v, k)`.

use crate::bounds::{a_bounds, ABounds};
use crate::criteria::{a_criteria, intrablock, mv_criteria, CriteriaReport};
use crate::design::{AugmentationSpec, BlockDesign};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

pub const DEFAULT_PLOT_CAP: usize = 200;
pub const DEFAULT_CLASS_CAP: u128 = 10_000_000;
const ESTIMABILITY_TOL: f64 = 1e-8;
const RANK_TOL: f64 = 1e-9;

/// The effect a plot's yield carries besides its block effect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotEffect {
    Control(usize),
    /// Test treatment by its position in the ρ layout.
    Test(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Plot {
    pub block: usize,
    pub effect: PlotEffect,
}

/// The augmented design `d₀` as a linear model with parameters laid out as
/// `(β₁…β_b, τ₁…τ_v, ρ_11…ρ_{b,s_b})`.
#[derive(Debug, Clone)]
pub struct AugmentedModel {
    design: BlockDesign,
    aug: AugmentationSpec,
    plots: Vec<Plot>,
    test_offset: Vec<usize>,
    n_tests: usize,
    information: SymMatrix<f64>,
    bordered_inverse: SymMatrix<f64>,
    row_basis: Vec<Vec<f64>>,
    null_dim: usize,
}

impl AugmentedModel {
    pub fn new(design: &BlockDesign, aug: &AugmentationSpec) -> Result<Self> {
        Self::with_cap(design, aug, DEFAULT_PLOT_CAP)
    }

    pub fn with_cap(design: &BlockDesign, aug: &AugmentationSpec, cap: usize) -> Result<Self> {
        let (b, v) = (design.b(), design.v());
        aug.validate(b)?;
        let n_tests = aug.total(b);
        let n_plots = design.block_sizes().iter().sum::<usize>() + n_tests;
        if n_plots > cap {
            return Err(Error::ModelTooLarge {
                plots: n_plots,
                cap,
            });
        }
        let mut test_offset = Vec::with_capacity(b);
        let mut plots = Vec::with_capacity(n_plots);
        let mut next_test = 0;
        for j in 0..b {
            for &label in design.block(j) {
                plots.push(Plot {
                    block: j,
                    effect: PlotEffect::Control(label - 1),
                });
            }
            test_offset.push(next_test);
            for _ in 0..aug.count(j) {
                plots.push(Plot {
                    block: j,
                    effect: PlotEffect::Test(next_test),
                });
                next_test += 1;
            }
        }
        let p = b + v + n_tests;
        let column = |plot: &Plot| match plot.effect {
            PlotEffect::Control(i) => b + i,
            PlotEffect::Test(t) => b + v + t,
        };

        let mut xtx = vec![0.0; p * p];
        for plot in &plots {
            let (a, c) = (plot.block, column(plot));
            xtx[a * p + a] += 1.0;
            xtx[c * p + c] += 1.0;
            xtx[a * p + c] += 1.0;
            xtx[c * p + a] += 1.0;
        }
        let information = SymMatrix::new(p, xtx)?;

        let row_basis = gram_schmidt(plots.iter().map(|plot| {
            let mut row = vec![0.0; p];
            row[plot.block] = 1.0;
            row[column(plot)] = 1.0;
            row
        }));

        let null_basis = Self::null_basis(design, &test_offset, aug, p);
        if row_basis.len() + null_basis.len() != p {
            return Err(Error::InvalidParameters(format!(
                "rank {} plus null dimension {} does not equal {p} parameters",
                row_basis.len(),
                null_basis.len()
            )));
        }
        let mut bordered = information.entries().to_vec();
        for u in &null_basis {
            for a in 0..p {
                if u[a] == 0.0 {
                    continue;
                }
                for c in 0..p {
                    bordered[a * p + c] += u[a] * u[c];
                }
            }
        }
        let bordered_inverse = SymMatrix::new(p, bordered)?.invert()?;
        Ok(Self {
            design: design.clone(),
            aug: aug.clone(),
            plots,
            test_offset,
            n_tests,
            information,
            bordered_inverse,
            row_basis,
            null_dim: null_basis.len(),
        })
    }

    /// One unit vector per connected component of the block-treatment graph
    /// (blocks +1, their treatments and tests −1) and one per treatment that
    /// never occurs.
    fn null_basis(
        design: &BlockDesign,
        test_offset: &[usize],
        aug: &AugmentationSpec,
        p: usize,
    ) -> Vec<Vec<f64>> {
        let (b, v) = (design.b(), design.v());
        let mut block_comp = vec![usize::MAX; b];
        let mut treat_comp = vec![usize::MAX; v];
        let mut n_comp = 0;
        for start in 0..b {
            if block_comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            block_comp[start] = n_comp;
            while let Some(j) = stack.pop() {
                for &label in design.block(j) {
                    let i = label - 1;
                    if treat_comp[i] == usize::MAX {
                        treat_comp[i] = n_comp;
                        for (jj, comp) in block_comp.iter_mut().enumerate() {
                            if *comp == usize::MAX && design.n(i, jj) > 0 {
                                *comp = n_comp;
                                stack.push(jj);
                            }
                        }
                    }
                }
            }
            n_comp += 1;
        }
        let mut basis = Vec::new();
        for comp in 0..n_comp {
            let mut u = vec![0.0; p];
            for j in (0..b).filter(|&j| block_comp[j] == comp) {
                u[j] = 1.0;
                for w in 0..aug.count(j) {
                    u[b + v + test_offset[j] + w] = -1.0;
                }
            }
            for i in (0..v).filter(|&i| treat_comp[i] == comp) {
                u[b + i] = -1.0;
            }
            basis.push(normalized(u));
        }
        for i in (0..v).filter(|&i| treat_comp[i] == usize::MAX) {
            let mut u = vec![0.0; p];
            u[b + i] = 1.0;
            basis.push(u);
        }
        basis
    }

    pub fn design(&self) -> &BlockDesign {
        &self.design
    }

    pub fn augmentation(&self) -> &AugmentationSpec {
        &self.aug
    }

    pub fn plots(&self) -> &[Plot] {
        &self.plots
    }

    pub fn n_params(&self) -> usize {
        self.information.order()
    }

    pub fn n_tests(&self) -> usize {
        self.n_tests
    }

    pub fn rank(&self) -> usize {
        self.row_basis.len()
    }

    pub fn null_dim(&self) -> usize {
        self.null_dim
    }

    pub fn information(&self) -> &SymMatrix<f64> {
        &self.information
    }

    /// Position of control `i` in a `(τ, ρ)` contrast vector.
    pub fn tau_index(&self, i: usize) -> usize {
        i
    }

    /// Position of test `w` of block `j` in a `(τ, ρ)` contrast vector.
    pub fn rho_index(&self, j: usize, w: usize) -> usize {
        self.design.v() + self.test_offset[j] + w
    }

    /// Zero vector over `(τ, ρ)` with `+1` at `a` and `−1` at `c`.
    pub fn difference(&self, a: usize, c: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.design.v() + self.n_tests];
        x[a] += 1.0;
        x[c] -= 1.0;
        x
    }

    fn embed(&self, contrast: &[f64]) -> Result<Vec<f64>> {
        let want = self.design.v() + self.n_tests;
        if contrast.len() != want {
            return Err(Error::InvalidParameters(format!(
                "contrast has {} coefficients, expected {want}",
                contrast.len()
            )));
        }
        let mut full = vec![0.0; self.design.b()];
        full.extend_from_slice(contrast);
        Ok(full)
    }

    /// Distance from the embedded contrast to the row space of X.
    pub fn estimability_residual(&self, contrast: &[f64]) -> Result<f64> {
        let mut c = self.embed(contrast)?;
        for q in &self.row_basis {
            let proj = dot(q, &c);
            for (x, &qi) in c.iter_mut().zip(q) {
                *x -= proj * qi;
            }
        }
        Ok(dot(&c, &c).sqrt())
    }

    /// Variance of the BLUE of a `(τ, ρ)` contrast, in units of σ².
    pub fn gls_variance(&self, contrast: &[f64]) -> Result<f64> {
        let residual = self.estimability_residual(contrast)?;
        if residual > ESTIMABILITY_TOL {
            return Err(Error::NotEstimable { residual });
        }
        let c = self.embed(contrast)?;
        Ok(self.bordered_inverse.quad_form(&c)?)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalized(mut u: Vec<f64>) -> Vec<f64> {
    let n = dot(&u, &u).sqrt();
    u.iter_mut().for_each(|x| *x /= n);
    u
}

/// Orthonormal basis of the span of `rows` by modified Gram-Schmidt with
/// one reorthogonalization pass.
fn gram_schmidt(rows: impl Iterator<Item = Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut row in rows {
        for _ in 0..2 {
            for q in &basis {
                let proj = dot(q, &row);
                for (x, &qi) in row.iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let n = dot(&row, &row).sqrt();
        if n > RANK_TOL {
            row.iter_mut().for_each(|x| *x /= n);
            basis.push(row);
        }
    }
    basis
}

/// Largest gaps between closed-form variances and the GLS oracle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyReport {
    pub cc: f64,
    pub tt_same_block: f64,
    pub tt_cross_block: f64,
    pub ct: f64,
    pub comparisons: usize,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.cc
            .max(self.tt_same_block)
            .max(self.tt_cross_block)
            .max(self.ct)
    }
}

/// Checks every cc, tt and ct variance of the augmented design against the
/// GLS oracle.
pub fn verify_design(d: &BlockDesign, s: &AugmentationSpec) -> Result<VerifyReport> {
    verify_design_with_cap(d, s, DEFAULT_PLOT_CAP)
}

pub fn verify_design_with_cap(
    d: &BlockDesign,
    s: &AugmentationSpec,
    cap: usize,
) -> Result<VerifyReport> {
    let ib = intrablock::<f64>(d)?;
    let model = AugmentedModel::with_cap(d, s, cap)?;
    let (v, b) = (d.v(), d.b());
    let mut rep = VerifyReport::default();
    let track = |slot: &mut f64, closed: f64, oracle: f64| {
        *slot = slot.max((closed - oracle).abs());
    };

    for i in 0..v {
        for is in (i + 1)..v {
            let g =
                model.gls_variance(&model.difference(model.tau_index(i), model.tau_index(is)))?;
            track(&mut rep.cc, ib.v_cc(i, is)?, g);
            rep.comparisons += 1;
        }
    }

    let tests: Vec<(usize, usize)> = (0..b)
        .flat_map(|j| (0..s.count(j)).map(move |w| (j, w)))
        .collect();
    for (x, &(j, w)) in tests.iter().enumerate() {
        for &(js, ws) in &tests[x + 1..] {
            let g = model
                .gls_variance(&model.difference(model.rho_index(j, w), model.rho_index(js, ws)))?;
            if j == js {
                track(&mut rep.tt_same_block, 2.0, g);
            } else {
                track(&mut rep.tt_cross_block, 2.0 + ib.v_tt(j, js)?, g);
            }
            rep.comparisons += 1;
        }
    }

    for i in 0..v {
        for &(j, w) in &tests {
            let g =
                model.gls_variance(&model.difference(model.tau_index(i), model.rho_index(j, w)))?;
            track(&mut rep.ct, ib.v_ct(d, i, j)?, g);
            rep.comparisons += 1;
        }
    }
    Ok(rep)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of k-multisets over `v` symbols and of b-multisets of those.
pub fn class_size(b: usize, v: usize, k: usize) -> (u128, u128) {
    let blocks = binomial((v + k - 1) as u128, k as u128);
    let designs = binomial(blocks + b as u128 - 1, b as u128);
    (blocks, designs)
}

/// Nondecreasing sequences of length `len` over `0..m`, in lexicographic order.
#[derive(Debug, Clone)]
struct Multisets {
    m: usize,
    cur: Option<Vec<usize>>,
}

impl Multisets {
    fn new(len: usize, m: usize) -> Self {
        Self {
            m,
            cur: (m > 0 || len == 0).then(|| vec![0; len]),
        }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        match cur.iter().rposition(|&x| x + 1 < self.m) {
            Some(pos) => {
                let nv = cur[pos] + 1;
                cur[pos..].iter_mut().for_each(|x| *x = nv);
            }
            None => self.cur = None,
        }
        Some(out)
    }
}

/// Every design with `b` blocks of size `k` on `v` treatments, each block a
/// k-multiset and the design a multiset of blocks, optionally restricted to
/// connected designs.
pub fn enumerate_class(
    b: usize,
    v: usize,
    k: usize,
    connected_only: bool,
    cap: u128,
) -> Result<impl Iterator<Item = BlockDesign>> {
    if b == 0 || v == 0 || k == 0 {
        return Err(Error::InvalidParameters("b, v, k must be positive".into()));
    }
    let (_, count) = class_size(b, v, k);
    if count > cap {
        return Err(Error::ClassTooLarge { count, cap });
    }
    let candidates: Vec<Vec<usize>> = Multisets::new(k, v)
        .map(|bl| bl.into_iter().map(|x| x + 1).collect())
        .collect();
    Ok(Multisets::new(b, candidates.len())
        .map(move |idx| {
            let blocks = idx.iter().map(|&x| candidates[x].clone()).collect();
            BlockDesign::from_blocks(v, blocks).expect("enumerated blocks are valid")
        })
        .filter(move |d| !connected_only || d.is_connected()))
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub value: f64,
    pub design: BlockDesign,
}

impl Minimum {
    fn offer(slot: &mut Option<Minimum>, value: f64, design: &BlockDesign) {
        if slot.as_ref().is_none_or(|m| value < m.value) {
            *slot = Some(Minimum {
                value,
                design: design.clone(),
            });
        }
    }
}

/// Exact minima of the six criteria over the connected designs of a class,
/// with the first design (in enumeration order) attaining each.
#[derive(Debug, Clone, Default)]
pub struct ClassMinima {
    pub total: usize,
    pub connected: usize,
    pub a_cc: Option<Minimum>,
    pub a_tt: Option<Minimum>,
    pub a_ct: Option<Minimum>,
    pub mv_cc: Option<Minimum>,
    pub mv_tt: Option<Minimum>,
    pub mv_ct: Option<Minimum>,
}

impl ClassMinima {
    fn offer(&mut self, c: &CriteriaReport<f64>, d: &BlockDesign) {
        self.connected += 1;
        Minimum::offer(&mut self.a_cc, c.a_cc, d);
        Minimum::offer(&mut self.a_tt, c.a_tt, d);
        Minimum::offer(&mut self.a_ct, c.a_ct, d);
        Minimum::offer(&mut self.mv_cc, c.mv_cc, d);
        Minimum::offer(&mut self.mv_tt, c.mv_tt, d);
        Minimum::offer(&mut self.mv_ct, c.mv_ct, d);
    }

    /// Combines minima computed over disjoint parts of a class; `self` is
    /// taken to precede `other` for tie-breaking.
    pub fn merge(mut self, other: ClassMinima) -> ClassMinima {
        fn pick(a: Option<Minimum>, b: Option<Minimum>) -> Option<Minimum> {
            match (a, b) {
                (Some(a), Some(b)) => Some(if b.value < a.value { b } else { a }),
                (a, b) => a.or(b),
            }
        }
        self.total += other.total;
        self.connected += other.connected;
        self.a_cc = pick(self.a_cc, other.a_cc);
        self.a_tt = pick(self.a_tt, other.a_tt);
        self.a_ct = pick(self.a_ct, other.a_ct);
        self.mv_cc = pick(self.mv_cc, other.mv_cc);
        self.mv_tt = pick(self.mv_tt, other.mv_tt);
        self.mv_ct = pick(self.mv_ct, other.mv_ct);
        self
    }

    pub fn values(&self) -> Option<[f64; 6]> {
        Some([
            self.a_cc.as_ref()?.value,
            self.a_tt.as_ref()?.value,
            self.a_ct.as_ref()?.value,
            self.mv_cc.as_ref()?.value,
            self.mv_tt.as_ref()?.value,
            self.mv_ct.as_ref()?.value,
        ])
    }
}

/// Outcome of checking one class exhaustively against its bounds.
#[derive(Debug, Clone)]
pub struct ClassCheck {
    pub minima: ClassMinima,
    pub bounds: ABounds<f64>,
    /// Bounds at `s = 1`, which also bound the MV-criteria.
    pub bounds_unit: ABounds<f64>,
    /// Smallest `criterion − bound` over all designs and all six inequalities.
    pub worst_margin: f64,
}

pub fn class_minima(
    b: usize,
    v: usize,
    k: usize,
    s: &AugmentationSpec,
    cap: u128,
) -> Result<ClassCheck> {
    let bounds = a_bounds::<f64>(b, v, k, s)?;
    let bounds_unit = a_bounds::<f64>(b, v, k, &AugmentationSpec::Common(1))?;
    let mut minima = ClassMinima::default();
    let mut worst = f64::INFINITY;
    for d in enumerate_class(b, v, k, false, cap)? {
        minima.total += 1;
        if !d.is_connected() {
            continue;
        }
        let ib = intrablock::<f64>(&d)?;
        let a = a_criteria(&ib, &d, s)?;
        let mv = mv_criteria(&ib, &d)?;
        let c = CriteriaReport {
            a_cc: a.cc,
            a_tt: a.tt,
            a_ct: a.ct,
            mv_cc: mv.cc,
            mv_tt: mv.tt,
            mv_ct: mv.ct,
        };
        let margins = [
            c.a_cc - bounds.acc,
            c.a_tt - bounds.att,
            c.a_ct - bounds.act,
            c.mv_cc - bounds_unit.acc,
            c.mv_tt - bounds_unit.att,
            c.mv_ct - bounds_unit.act,
        ];
        worst = margins.iter().copied().fold(worst, f64::min);
        minima.offer(&c, &d);
    }
    Ok(ClassCheck {
        minima,
        bounds,
        bounds_unit,
        worst_margin: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::all_k_subsets;

    fn rcbd2() -> BlockDesign {
        BlockDesign::from_blocks(2, vec![vec![1, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn rcbd_oracle_variances() {
        let m = AugmentedModel::new(&rcbd2(), &AugmentationSpec::Common(1)).unwrap();
        assert_eq!(m.n_params(), 6);
        assert_eq!(m.rank(), 5);
        assert_eq!(m.null_dim(), 1);
        let cc = m
            .gls_variance(&m.difference(m.tau_index(0), m.tau_index(1)))
            .unwrap();
        assert!((cc - 1.0).abs() < 1e-12);
        let tt = m
            .gls_variance(&m.difference(m.rho_index(0, 0), m.rho_index(1, 0)))
            .unwrap();
        assert!((tt - 3.0).abs() < 1e-12);
        let ct = m
            .gls_variance(&m.difference(m.tau_index(0), m.rho_index(0, 0)))
            .unwrap();
        assert!((ct - 1.75).abs() < 1e-12);
    }

    #[test]
    fn rows_have_two_unit_coefficients() {
        let d = all_k_subsets(4, 2).unwrap();
        let m =
            AugmentedModel::new(&d, &AugmentationSpec::PerBlock(vec![1, 2, 1, 1, 3, 1])).unwrap();
        assert_eq!(m.plots().len(), 12 + 9);
        assert_eq!(m.n_params(), 6 + 4 + 9);
        let rows = m.information().row_sums().iter().sum::<f64>();
        // each plot contributes four ones to XᵀX
        assert_eq!(rows, 4.0 * 21.0);
    }

    #[test]
    fn disconnected_contrast_not_estimable() {
        let d = BlockDesign::from_blocks(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let m = AugmentedModel::new(&d, &AugmentationSpec::Common(1)).unwrap();
        assert_eq!(m.null_dim(), 2);
        assert!(matches!(
            m.gls_variance(&m.difference(0, 2)),
            Err(Error::NotEstimable { .. })
        ));
        assert!(m.gls_variance(&m.difference(0, 1)).is_ok());
    }

    #[test]
    fn absent_treatment_gets_own_null_vector() {
        let d = BlockDesign::from_blocks(3, vec![vec![1, 2], vec![1, 2]]).unwrap();
        let m = AugmentedModel::new(&d, &AugmentationSpec::Common(1)).unwrap();
        assert_eq!(m.null_dim(), 2);
        assert!(m.gls_variance(&m.difference(0, 2)).is_err());
    }

    #[test]
    fn model_cap() {
        let d = all_k_subsets(5, 3).unwrap();
        assert_eq!(
            AugmentedModel::with_cap(&d, &AugmentationSpec::Common(2), 40).unwrap_err(),
            Error::ModelTooLarge { plots: 50, cap: 40 }
        );
    }

    #[test]
    fn verify_small_designs() {
        let bib = all_k_subsets(5, 3).unwrap();
        let rep = verify_design(&bib, &AugmentationSpec::Common(2)).unwrap();
        assert!(rep.max_deviation() <= 1e-8, "{rep:?}");
        let ex1 = bib.delete_blocks(&[0, 9]).unwrap();
        assert!(
            verify_design(&ex1, &AugmentationSpec::Common(1))
                .unwrap()
                .max_deviation()
                <= 1e-8
        );
        let split = BlockDesign::from_blocks(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            verify_design(&split, &AugmentationSpec::Common(1)).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(4, 3, 2), (6, 126));
        assert_eq!(class_size(2, 2, 2), (3, 6));
        assert_eq!(
            enumerate_class(4, 3, 2, false, DEFAULT_CLASS_CAP)
                .unwrap()
                .count(),
            126
        );
        assert!(matches!(
            enumerate_class(20, 10, 5, false, DEFAULT_CLASS_CAP),
            Err(Error::ClassTooLarge { .. })
        ));
    }

    #[test]
    fn enumerate_2_2_2_by_hand() {
        let all: Vec<_> = enumerate_class(2, 2, 2, false, 100).unwrap().collect();
        let want = [
            [vec![1, 1], vec![1, 1]],
            [vec![1, 1], vec![1, 2]],
            [vec![1, 1], vec![2, 2]],
            [vec![1, 2], vec![1, 2]],
            [vec![1, 2], vec![2, 2]],
            [vec![2, 2], vec![2, 2]],
        ];
        assert_eq!(all.len(), want.len());
        for (d, w) in all.iter().zip(&want) {
            assert_eq!(d.blocks(), w.as_slice());
        }
        let connected: Vec<_> = enumerate_class(2, 2, 2, true, 100).unwrap().collect();
        assert_eq!(connected.len(), 3);
    }

    #[test]
    fn single_block_cannot_cover_three() {
        assert_eq!(enumerate_class(1, 3, 2, true, 100).unwrap().count(), 0);
    }

    #[test]
    fn merge_prefers_left_on_ties() {
        let a = all_k_subsets(3, 2).unwrap();
        let b = BlockDesign::from_blocks(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let mut left = ClassMinima::default();
        let mut right = ClassMinima::default();
        let ib = intrablock::<f64>(&a).unwrap();
        let c = crate::criteria::criteria(&ib, &a, &AugmentationSpec::Common(1)).unwrap();
        left.offer(&c, &a);
        right.offer(&c, &b);
        let m = left.merge(right);
        assert_eq!(m.connected, 2);
        assert_eq!(m.a_cc.unwrap().design, a);
    }
}
