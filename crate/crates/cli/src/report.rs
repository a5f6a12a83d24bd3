//! Serializable reports and their fixed-width table rendering.

use std::fmt::Write as _;

use augdes_core::{
    ABoundsF64, AugmentationSpec, BoundQuantitiesF64, CriteriaReportF64, EfficiencyReportF64,
    EvaluationF64, PartialReplicationReport,
};
use serde::{Deserialize, Serialize};

/// Rounds half away from zero to 3 decimals and formats.
pub fn round3(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    // avoid "-0.000"
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.3}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SParam {
    Common(usize),
    PerBlock(Vec<usize>),
}

impl From<&AugmentationSpec> for SParam {
    fn from(s: &AugmentationSpec) -> Self {
        match s {
            AugmentationSpec::Common(n) => Self::Common(*n),
            AugmentationSpec::PerBlock(v) => Self::PerBlock(v.clone()),
        }
    }
}

impl From<SParam> for AugmentationSpec {
    fn from(s: SParam) -> Self {
        match s {
            SParam::Common(n) => Self::Common(n),
            SParam::PerBlock(v) => Self::PerBlock(v),
        }
    }
}

impl std::fmt::Display for SParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Common(n) => write!(f, "{n}"),
            Self::PerBlock(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub b: usize,
    pub v: usize,
    pub k: usize,
    pub s: SParam,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Criteria {
    pub a_cc: f64,
    pub a_tt: f64,
    pub a_ct: f64,
    pub mv_cc: f64,
    pub mv_tt: f64,
    pub mv_ct: f64,
}

impl From<CriteriaReportF64> for Criteria {
    fn from(c: CriteriaReportF64) -> Self {
        Self {
            a_cc: c.a_cc,
            a_tt: c.a_tt,
            a_ct: c.a_ct,
            mv_cc: c.mv_cc,
            mv_tt: c.mv_tt,
            mv_ct: c.mv_ct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "Ltilde")]
    pub l_tilde: f64,
    #[serde(rename = "H")]
    pub h_sum: f64,
    pub f: usize,
    pub h: usize,
    pub acc: f64,
    pub att: f64,
    pub act: f64,
}

impl Bounds {
    pub fn new(q: &BoundQuantitiesF64, a: &ABoundsF64) -> Self {
        Self {
            l: q.l,
            l_tilde: q.l_tilde,
            h_sum: q.h_sum,
            f: q.f,
            h: q.h,
            acc: a.acc,
            att: a.att,
            act: a.act,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitBounds {
    pub acc: f64,
    pub att: f64,
    pub act: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiencies {
    pub cc: f64,
    pub tt_s: f64,
    pub tt_conservative: f64,
    pub ct: f64,
    pub mv_cc: f64,
    pub mv_tt: f64,
    pub mv_ct: f64,
}

impl From<EfficiencyReportF64> for Efficiencies {
    fn from(e: EfficiencyReportF64) -> Self {
        Self {
            cc: e.cc,
            tt_s: e.tt_s,
            tt_conservative: e.tt_conservative,
            ct: e.ct,
            mv_cc: e.mv_cc,
            mv_tt: e.mv_tt,
            mv_ct: e.mv_ct,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub input: Option<String>,
    pub command: String,
    pub version: String,
}

impl Provenance {
    pub fn new(input: Option<&str>, argv: &[String]) -> Self {
        Self {
            input: input.map(str::to_owned),
            command: argv.join(" "),
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub params: Params,
    pub criteria: Criteria,
    pub bounds: Bounds,
    /// Bounds at `s = 1`, the numerators of the MV-efficiencies.
    pub bounds_unit: UnitBounds,
    pub eff: Efficiencies,
    pub class: String,
    pub provenance: Provenance,
}

impl ReportDocument {
    pub fn new(e: &EvaluationF64, s: &AugmentationSpec, provenance: Provenance) -> Self {
        Self {
            params: Params {
                b: e.b,
                v: e.v,
                k: e.k,
                s: s.into(),
            },
            criteria: e.criteria.into(),
            bounds: Bounds::new(&e.quantities, &e.bounds),
            bounds_unit: UnitBounds {
                acc: e.bounds_unit.acc,
                att: e.bounds_unit.att,
                act: e.bounds_unit.act,
            },
            eff: e.efficiency.into(),
            class: e.efficiency.classify().to_string(),
            provenance,
        }
    }

    pub fn to_table(&self) -> String {
        let p = &self.params;
        let (c, bd, u, e) = (&self.criteria, &self.bounds, &self.bounds_unit, &self.eff);
        let mut out = String::new();
        writeln!(out, "b = {}  v = {}  k = {}  s = {}", p.b, p.v, p.k, p.s).unwrap();
        writeln!(out, "{:<12}{:>9}{:>9}{:>9}", "", "cc", "tt", "ct").unwrap();
        let row = |out: &mut String, label: &str, x: [f64; 3]| {
            writeln!(
                out,
                "{label:<12}{:>9}{:>9}{:>9}",
                round3(x[0]),
                round3(x[1]),
                round3(x[2])
            )
            .unwrap();
        };
        row(&mut out, "A", [c.a_cc, c.a_tt, c.a_ct]);
        row(&mut out, "A bound", [bd.acc, bd.att, bd.act]);
        row(&mut out, "A eff", [e.cc, e.tt_s, e.ct]);
        row(&mut out, "MV", [c.mv_cc, c.mv_tt, c.mv_ct]);
        row(&mut out, "MV bound", [u.acc, u.att, u.act]);
        row(&mut out, "MV eff", [e.mv_cc, e.mv_tt, e.mv_ct]);
        writeln!(out, "A_tt eff at s = 1: {}", round3(e.tt_conservative)).unwrap();
        writeln!(
            out,
            "L = {}  Ltilde = {}  H = {}  f = {}  h = {}",
            round3(bd.l),
            round3(bd.l_tilde),
            round3(bd.h_sum),
            bd.f,
            bd.h
        )
        .unwrap();
        writeln!(out, "class: {}", self.class).unwrap();
        out
    }
}

/// Bounds alone, for `bounds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsDocument {
    pub params: Params,
    pub bounds: Bounds,
}

impl BoundsDocument {
    pub fn to_table(&self) -> String {
        let (p, bd) = (&self.params, &self.bounds);
        let mut out = format!("b = {}  v = {}  k = {}  s = {}\n", p.b, p.v, p.k, p.s);
        writeln!(
            out,
            "L = {}  Ltilde = {}  H = {}  f = {}  h = {}",
            round3(bd.l),
            round3(bd.l_tilde),
            round3(bd.h_sum),
            bd.f,
            bd.h
        )
        .unwrap();
        writeln!(
            out,
            "Acc bound = {}  Att bound = {}  Act bound = {}",
            round3(bd.acc),
            round3(bd.att),
            round3(bd.act)
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialCriteria {
    pub a_rr: f64,
    pub a_tt: f64,
    pub a_rt: f64,
    pub mv_rr: f64,
    pub mv_tt: f64,
    pub mv_rt: f64,
}

impl From<PartialReplicationReport<f64>> for PartialCriteria {
    fn from(c: PartialReplicationReport<f64>) -> Self {
        Self {
            a_rr: c.a_rr,
            a_tt: c.a_tt,
            a_rt: c.a_rt,
            mv_rr: c.mv_rr,
            mv_tt: c.mv_tt,
            mv_rt: c.mv_rt,
        }
    }
}

/// Report for a design without controls whose twice-planted tests form the
/// design file; `rr` are comparisons among those tests, `rt` between one of
/// them and a single-plot test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialReport {
    pub params: Params,
    pub criteria: PartialCriteria,
    pub provenance: Provenance,
}

impl PartialReport {
    pub fn to_table(&self) -> String {
        let (p, c) = (&self.params, &self.criteria);
        let mut out = format!("b = {}  v = {}  k = {}  s = {}\n", p.b, p.v, p.k, p.s);
        writeln!(out, "{:<12}{:>9}{:>9}{:>9}", "", "rr", "tt", "rt").unwrap();
        for (label, x) in [
            ("A", [c.a_rr, c.a_tt, c.a_rt]),
            ("MV", [c.mv_rr, c.mv_tt, c.mv_rt]),
        ] {
            writeln!(
                out,
                "{label:<12}{:>9}{:>9}{:>9}",
                round3(x[0]),
                round3(x[1]),
                round3(x[2])
            )
            .unwrap();
        }
        out
    }
}
