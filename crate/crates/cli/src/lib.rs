//! The `augdes` command line: evaluation, bounds, construction, verification,
//! enumeration and search over block designs in the `v` / `block` text
//! format.

pub mod report;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use augdes_core::oracle::{class_size, verify_design, DEFAULT_CLASS_CAP};
use augdes_core::{
    a_bounds, all_k_subsets, bound_quantities, class_minima, enumerate_class, exchange_search,
    lattice_bib, partial_replication_eval, AugmentationSpec, BlockDesign, EvaluationF64,
    SearchConfig,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use report::{
    Bounds, BoundsDocument, Efficiencies, Params, PartialReport, Provenance, ReportDocument,
    UnitBounds,
};

pub const ENUM_CAP_VAR: &str = "AUGDES_ENUM_CAP";
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 1,
            Self::Infeasible(_) => 2,
            Self::Verification(_) => 3,
        }
    }
}

impl From<augdes_core::Error> for CliError {
    fn from(e: augdes_core::Error) -> Self {
        use augdes_core::Error as E;
        match e {
            E::Parse { .. }
            | E::LabelOutOfRange { .. }
            | E::EmptyBlock(_)
            | E::EmptyDesign
            | E::IndexOutOfRange { .. }
            | E::SameIndex(_)
            | E::AugmentationLength { .. }
            | E::ZeroAugmentation => Self::Input(e.to_string()),
            _ => Self::Infeasible(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "augdes", version, about = "Evaluate augmented block designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SArgs {
    /// Test treatments per block.
    #[arg(long, conflicts_with = "s_list")]
    pub s: Option<usize>,
    /// Per-block test counts, one per block.
    #[arg(long, value_delimiter = ',')]
    pub s_list: Option<Vec<usize>>,
}

impl SArgs {
    fn spec(&self) -> AugmentationSpec {
        match (&self.s_list, self.s) {
            (Some(list), _) => AugmentationSpec::PerBlock(list.clone()),
            (None, s) => AugmentationSpec::Common(s.unwrap_or(1)),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Criteria, bounds, efficiencies and classification of a design.
    Eval {
        /// Design file, or `-` for stdin.
        design: PathBuf,
        #[command(flatten)]
        s: SArgs,
        /// Treat the file as the twice-planted subdesign of a design without controls.
        #[arg(long)]
        partial_rep: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Lower bounds for a class, no design needed.
    Bounds {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        s: SArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write the dual design.
    Dual {
        design: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Delete or repeat blocks (1-based indices).
    Modify {
        design: PathBuf,
        #[arg(long, value_delimiter = ',', group = "op")]
        delete: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', group = "op")]
        repeat: Option<Vec<usize>>,
        /// Delete n blocks chosen greedily for small mutual overlap.
        #[arg(long, group = "op")]
        auto_delete: Option<usize>,
        /// Repeat n blocks chosen greedily for small mutual overlap.
        #[arg(long, group = "op")]
        auto_repeat: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct a design.
    Make {
        /// All k-subsets of v treatments.
        #[arg(long, num_args = 2, value_names = ["V", "K"], group = "kind")]
        bib_all_subsets: Option<Vec<usize>>,
        /// Lines of the affine plane of prime order q.
        #[arg(long, group = "kind")]
        lattice: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare closed forms with the least-squares oracle.
    Verify {
        design: PathBuf,
        #[command(flatten)]
        s: SArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Count a class and optionally find the minimum of each criterion.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        minima: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Exchange search for a design with a small weighted A-criterion sum.
    Search {
        #[command(flatten)]
        class: ClassArgs,
        /// Weights on A_cc, A_tt and A_ct.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "1,1,1")]
        weights: Vec<f64>,
        #[command(flatten)]
        s: SArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 100)]
        max_passes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

/// Parses `argv` (program name first) and runs the command, writing
/// results to `out`.
pub fn run(argv: &[String], out: &mut dyn Write) -> CliResult {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(out, "{}", e.render()).map_err(io_err)?;
                return Ok(());
            }
            return Err(CliError::Input(
                e.render().to_string().trim_end().to_owned(),
            ));
        }
    };
    match cli.command {
        Command::Eval {
            design,
            s,
            partial_rep,
            format,
        } => eval(&design, &s.spec(), partial_rep, format, argv, out),
        Command::Bounds { class, s, format } => bounds(&class, &s.spec(), format, out),
        Command::Dual { design, output } => {
            let d = read_design(&design)?.dual()?;
            emit(output.as_deref(), &d.to_text(), out)
        }
        Command::Modify {
            design,
            delete,
            repeat,
            auto_delete,
            auto_repeat,
            output,
        } => {
            let d = read_design(&design)?;
            let m = match (delete, repeat, auto_delete, auto_repeat) {
                (Some(idx), ..) => d.delete_blocks(&zero_based(&idx, d.b())?)?,
                (_, Some(idx), ..) => d.repeat_blocks(&zero_based(&idx, d.b())?)?,
                (_, _, Some(n), _) => d.delete_blocks(&d.low_overlap_blocks(n)?)?,
                (_, _, _, Some(n)) => d.repeat_blocks(&d.low_overlap_blocks(n)?)?,
                _ => {
                    return Err(CliError::Input(
                        "one of --delete, --repeat, --auto-delete, --auto-repeat is required"
                            .into(),
                    ))
                }
            };
            emit(output.as_deref(), &m.to_text(), out)
        }
        Command::Make {
            bib_all_subsets,
            lattice,
            output,
        } => {
            let d = match (bib_all_subsets, lattice) {
                (Some(vk), _) => all_k_subsets(vk[0], vk[1])?,
                (None, Some(q)) => lattice_bib(q)?,
                (None, None) => {
                    return Err(CliError::Input(
                        "one of --bib-all-subsets, --lattice is required".into(),
                    ))
                }
            };
            emit(output.as_deref(), &d.to_text(), out)
        }
        Command::Verify { design, s, format } => verify(&design, &s.spec(), format, out),
        Command::Enumerate {
            class,
            s,
            minima,
            format,
        } => enumerate(&class, s, minima, format, out),
        Command::Search {
            class,
            weights,
            s,
            seed,
            restarts,
            max_passes,
            output,
            format,
        } => {
            let weights: [f64; 3] = weights
                .try_into()
                .map_err(|_| CliError::Input("--weights takes exactly three values".into()))?;
            let cfg = SearchConfig {
                weights,
                s: s.spec(),
                restarts,
                max_passes,
                seed,
            };
            search(&class, &cfg, output.as_deref(), format, out)
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn read_design(path: &Path) -> CliResult<BlockDesign> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    text.parse::<BlockDesign>()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn zero_based(idx: &[usize], b: usize) -> CliResult<Vec<usize>> {
    idx.iter()
        .map(|&i| {
            if i == 0 || i > b {
                Err(CliError::Input(format!("block index {i} outside 1..={b}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn print<T: Serialize>(
    doc: &T,
    table: impl FnOnce(&T) -> String,
    f: Format,
    out: &mut dyn Write,
) -> CliResult {
    let text = match f {
        Format::Json => serde_json::to_string_pretty(doc).expect("reports serialize") + "\n",
        Format::Table => table(doc),
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn eval(
    path: &Path,
    s: &AugmentationSpec,
    partial_rep: bool,
    format: Format,
    argv: &[String],
    out: &mut dyn Write,
) -> CliResult {
    let d = read_design(path)?;
    let provenance = Provenance::new(path.to_str(), argv);
    let k = d
        .block_size()
        .ok_or(augdes_core::Error::NonUniformBlockSize)?;
    if partial_rep {
        let doc = PartialReport {
            params: Params {
                b: d.b(),
                v: d.v(),
                k,
                s: s.into(),
            },
            criteria: partial_replication_eval::<f64>(&d, s)?.into(),
            provenance,
        };
        return print(&doc, PartialReport::to_table, format, out);
    }
    let e = EvaluationF64::of_design(&d, s)?;
    print(
        &ReportDocument::new(&e, s, provenance),
        ReportDocument::to_table,
        format,
        out,
    )
}

fn bounds(c: &ClassArgs, s: &AugmentationSpec, format: Format, out: &mut dyn Write) -> CliResult {
    let q = bound_quantities::<f64>(c.b, c.v, c.k)?;
    let a = a_bounds::<f64>(c.b, c.v, c.k, s)?;
    let doc = BoundsDocument {
        params: Params {
            b: c.b,
            v: c.v,
            k: c.k,
            s: s.into(),
        },
        bounds: Bounds::new(&q, &a),
    };
    print(&doc, BoundsDocument::to_table, format, out)
}

#[derive(Debug, Serialize)]
struct VerifyDocument {
    params: Params,
    cc: f64,
    tt_same_block: f64,
    tt_cross_block: f64,
    ct: f64,
    comparisons: usize,
    max_deviation: f64,
    pass: bool,
}

fn verify(path: &Path, s: &AugmentationSpec, format: Format, out: &mut dyn Write) -> CliResult {
    let d = read_design(path)?;
    let k = d
        .block_size()
        .ok_or(augdes_core::Error::NonUniformBlockSize)?;
    let rep = verify_design(&d, s)?;
    let max = rep.max_deviation();
    let doc = VerifyDocument {
        params: Params {
            b: d.b(),
            v: d.v(),
            k,
            s: s.into(),
        },
        cc: rep.cc,
        tt_same_block: rep.tt_same_block,
        tt_cross_block: rep.tt_cross_block,
        ct: rep.ct,
        comparisons: rep.comparisons,
        max_deviation: max,
        pass: max <= VERIFY_TOL,
    };
    print(
        &doc,
        |d| {
            format!(
                "comparisons: {}\nmax |closed form - oracle|\n  cc              {:.3e}\n  tt same block   {:.3e}\n  tt cross block  {:.3e}\n  ct              {:.3e}\n{}\n",
                d.comparisons,
                d.cc,
                d.tt_same_block,
                d.tt_cross_block,
                d.ct,
                if d.pass { "PASS" } else { "FAIL" }
            )
        },
        format,
        out,
    )?;
    if doc.pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "max deviation {max:.3e} exceeds {VERIFY_TOL:e}"
        )))
    }
}

fn enum_cap() -> CliResult<u128> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Input(format!(
                "{ENUM_CAP_VAR} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_CLASS_CAP),
    }
}

#[derive(Debug, Serialize)]
struct MinimumEntry {
    value: f64,
    design: String,
}

#[derive(Debug, Serialize)]
struct MinimaDocument {
    a_cc: MinimumEntry,
    a_tt: MinimumEntry,
    a_ct: MinimumEntry,
    mv_cc: MinimumEntry,
    mv_tt: MinimumEntry,
    mv_ct: MinimumEntry,
    bounds: UnitBounds,
    bounds_unit: UnitBounds,
    worst_margin: f64,
}

#[derive(Debug, Serialize)]
struct EnumerateDocument {
    params: Params,
    designs: u128,
    connected: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    minima: Option<MinimaDocument>,
}

fn enumerate(
    c: &ClassArgs,
    s: usize,
    minima: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let cap = enum_cap()?;
    let spec = AugmentationSpec::Common(s);
    let params = Params {
        b: c.b,
        v: c.v,
        k: c.k,
        s: (&spec).into(),
    };
    let doc = if minima {
        let check = class_minima(c.b, c.v, c.k, &spec, cap)?;
        let m = &check.minima;
        let entry = |x: &Option<augdes_core::oracle::Minimum>| -> CliResult<MinimumEntry> {
            let x = x
                .as_ref()
                .ok_or_else(|| CliError::Infeasible("class has no connected design".into()))?;
            Ok(MinimumEntry {
                value: x.value,
                design: x.design.to_text(),
            })
        };
        let unit = |a: &augdes_core::ABoundsF64| UnitBounds {
            acc: a.acc,
            att: a.att,
            act: a.act,
        };
        EnumerateDocument {
            params,
            designs: m.total as u128,
            connected: m.connected,
            minima: Some(MinimaDocument {
                a_cc: entry(&m.a_cc)?,
                a_tt: entry(&m.a_tt)?,
                a_ct: entry(&m.a_ct)?,
                mv_cc: entry(&m.mv_cc)?,
                mv_tt: entry(&m.mv_tt)?,
                mv_ct: entry(&m.mv_ct)?,
                bounds: unit(&check.bounds),
                bounds_unit: unit(&check.bounds_unit),
                worst_margin: check.worst_margin,
            }),
        }
    } else {
        let connected = enumerate_class(c.b, c.v, c.k, true, cap)?.count();
        EnumerateDocument {
            params,
            designs: class_size(c.b, c.v, c.k).1,
            connected,
            minima: None,
        }
    };
    print(&doc, enumerate_table, format, out)
}

fn enumerate_table(d: &EnumerateDocument) -> String {
    let p = &d.params;
    let mut t = format!(
        "b = {}  v = {}  k = {}  s = {}\ndesigns: {}  connected: {}\n",
        p.b, p.v, p.k, p.s, d.designs, d.connected
    );
    if let Some(m) = &d.minima {
        let rows = [
            ("A_cc", &m.a_cc, m.bounds.acc),
            ("A_tt", &m.a_tt, m.bounds.att),
            ("A_ct", &m.a_ct, m.bounds.act),
            ("MV_cc", &m.mv_cc, m.bounds_unit.acc),
            ("MV_tt", &m.mv_tt, m.bounds_unit.att),
            ("MV_ct", &m.mv_ct, m.bounds_unit.act),
        ];
        t.push_str(&format!("{:<8}{:>9}{:>9}\n", "", "minimum", "bound"));
        for (name, e, bound) in rows {
            t.push_str(&format!(
                "{name:<8}{:>9}{:>9}\n",
                report::round3(e.value),
                report::round3(bound)
            ));
        }
        t.push_str(&format!("worst margin: {:.3e}\n", m.worst_margin));
    }
    t
}

#[derive(Debug, Serialize)]
struct SearchDocument {
    params: Params,
    weights: [f64; 3],
    seed: u64,
    restarts: usize,
    objective: f64,
    best_seed: u64,
    passes: usize,
    eff: Efficiencies,
    class: String,
}

fn search(
    c: &ClassArgs,
    cfg: &SearchConfig,
    output: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let res = exchange_search(c.b, c.v, c.k, cfg)?;
    let e = EvaluationF64::of_design(&res.design, &cfg.s)?;
    let best = &res.restarts[res.best_restart];
    let doc = SearchDocument {
        params: Params {
            b: c.b,
            v: c.v,
            k: c.k,
            s: (&cfg.s).into(),
        },
        weights: cfg.weights,
        seed: cfg.seed,
        restarts: cfg.restarts,
        objective: res.objective,
        best_seed: best.seed,
        passes: best.passes,
        eff: e.efficiency.into(),
        class: e.efficiency.classify().to_string(),
    };
    let summary = |d: &SearchDocument| {
        format!(
            "objective: {:.9}\nbest restart seed: {}  passes: {}\nA eff: {} {} {}\nclass: {}\n",
            d.objective,
            d.best_seed,
            d.passes,
            report::round3(d.eff.cc),
            report::round3(d.eff.tt_s),
            report::round3(d.eff.ct),
            d.class
        )
    };
    match output {
        Some(p) => {
            emit(Some(p), &res.design.to_text(), out)?;
            print(&doc, summary, format, out)
        }
        None => {
            emit(None, &res.design.to_text(), out)?;
            let mut err = std::io::stderr();
            print(&doc, summary, format, &mut err)
        }
    }
}
