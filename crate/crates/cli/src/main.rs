//! Command-line surface for the divided cell toolkit.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 field mismatch or an
//! operation unsupported for the given data, 3 degenerate or terminated
//! computations (with a structured message on stderr and a partial JSON
//! result where one is defined).

use clap::{Args, Parser, Subcommand, ValueEnum};
use divcell_core::exactnum::{NumError, ParseSurdError};
use divcell_core::figures::{self, FigureError, PresetData, PresetKind};
use divcell_core::homogeneous::{lagrange_sequence, HomError};
use divcell_core::inhomogeneous::{
    anchors, chain, classify, compare_cells, initial_cell, inner_box, is_divided, locate,
    markoff_inhom_with_window, neighbors, Cell, ChainEnd, DividedCell, InhomError,
};
use divcell_core::oracle::{self, OracleError, Window};
use divcell_core::{OrderKind, Surd};
use divcell_cli::output::{self, extended_decimal, extended_literal, pretty, surd_json, Csv};
use serde_json::{json, Value};
use divcell_cli::spec::{self, ProblemSpec, SchemaError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "divcell",
    version,
    about = "Exact divided cell algorithm toolkit: continued fractions, divided cells, brute-force oracles and figures"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gauss-reduce a factored form
    Reduce {
        #[command(flatten)]
        input: FormInput,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Two-sided chain of reduced matrices
    Chain {
        #[command(flatten)]
        input: FormInput,
        /// Steps backward from the reduction
        #[arg(long, default_value_t = 4)]
        back: u32,
        /// Steps forward from the reduction
        #[arg(long, default_value_t = 12)]
        fwd: u32,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Homogeneous Markoff value M(F)
    Markoff {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, default_value_t = 64)]
        depth: u32,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Lagrange values along the convergents of an irrational in (0,1)
    Lagrange {
        /// Surd literal, e.g. "-1+sqrt(2)"
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 20)]
        n: u32,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Find a divided cell for an inhomogeneous problem
    InitCell {
        #[command(flatten)]
        input: ProblemInput,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Run the divided cell algorithm and record the chains
    Dca {
        #[command(flatten)]
        input: ProblemInput,
        #[arg(long, default_value_t = 0)]
        back: u32,
        #[arg(long, default_value_t = 10)]
        forward: u32,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Classify a cell basis (G / N, neighbor, superfluous)
    Classify {
        #[command(flatten)]
        input: CellInput,
        #[command(flatten)]
        out: OutOpts,
    },
    /// The two neighbor N-cells of a Gaussian cell
    Neighbors {
        #[command(flatten)]
        input: CellInput,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Backward and forward anchors of a superfluous divided cell
    Anchors {
        #[command(flatten)]
        input: CellInput,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Inhomogeneous Markoff value M_I(F_I)
    Imarkoff {
        #[command(flatten)]
        input: ProblemInput,
        #[arg(long, default_value_t = 64)]
        depth: u32,
        /// Brute-force window for problems without a chain
        #[arg(long, default_value_t = 50)]
        window: u32,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Chain position of divided cells without stepping between them
    Locate {
        #[command(flatten)]
        input: ProblemInput,
        /// Divided cell (JSON file)
        #[arg(long)]
        cell: PathBuf,
        /// Second cell: also report the ordering
        #[arg(long)]
        cell2: Option<PathBuf>,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Brute-force ground truth over a lattice window
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Render a figure preset to SVG
    Plot {
        /// hom | inhom | cell_box | successors | all_boxes | superfluous | three_box
        #[arg(long)]
        preset: String,
        #[command(flatten)]
        input: ProblemInput,
        /// Exact scale a, mapping (xi, eta) to (a xi, eta / a)
        #[arg(long)]
        scale: Option<String>,
        #[arg(long)]
        monochrome: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact minimum of |F_I| over the window
    BruteMin {
        #[command(flatten)]
        input: ProblemInput,
        #[arg(long, default_value_t = 50)]
        window: u32,
        /// Skip the lattice origin (homogeneous convention)
        #[arg(long)]
        exclude_origin: bool,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Certified minimal points of the basic or extended partial order
    MinimalPoints {
        #[command(flatten)]
        input: ProblemInput,
        #[arg(long, default_value_t = 15)]
        window: u32,
        #[arg(long, default_value_t = 5)]
        margin: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Extended)]
        kind: KindArg,
        #[command(flatten)]
        out: OutOpts,
    },
    /// Unique |F_I| maximum on a lattice line within a quadrant
    LineMax {
        #[command(flatten)]
        input: ProblemInput,
        /// Lattice point "x,y" on the line
        #[arg(long)]
        point: String,
        /// Integer direction "dx,dy"
        #[arg(long)]
        dir: String,
        /// q1 | q2 | q3 | q4
        #[arg(long)]
        quadrant: String,
        #[command(flatten)]
        out: OutOpts,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Basic,
    Extended,
}

#[derive(Args)]
struct OutOpts {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (atomic write); stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Input of a homogeneous form.
#[derive(Args)]
struct FormInput {
    /// Coefficients "A,B,C" of A x^2 + B xy + C y^2
    #[arg(long)]
    form: Option<String>,
    /// Factored matrix "a0,b0;a1,b1" with surd literals
    #[arg(long)]
    matrix: Option<String>,
    /// JSON file (form, matrix or problem shape)
    #[arg(long)]
    input: Option<PathBuf>,
}

/// Input of an inhomogeneous problem.
#[derive(Args)]
struct ProblemInput {
    /// JSON problem file
    #[arg(long)]
    problem: Option<PathBuf>,
    /// Inline 2x3 matrix "a0,b0,c0;a1,b1,c1" with surd literals
    #[arg(long)]
    entries: Option<String>,
    /// Coefficients "A,B,C" (homogeneous problem)
    #[arg(long)]
    form: Option<String>,
}

/// Input of a cell (same shapes as a problem).
#[derive(Args)]
struct CellInput {
    /// JSON cell file
    #[arg(long)]
    cell: Option<PathBuf>,
    /// Inline 2x3 matrix "a0,b0,c0;a1,b1,c1"
    #[arg(long)]
    entries: Option<String>,
}

struct CliError {
    code: u8,
    msg: String,
    partial: Option<Value>,
}

impl CliError {
    fn input(msg: impl Into<String>) -> CliError {
        CliError { code: 1, msg: msg.into(), partial: None }
    }

    fn unsupported(msg: impl Into<String>) -> CliError {
        CliError { code: 2, msg: msg.into(), partial: None }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> CliError {
        CliError::input(e.to_string())
    }
}

impl From<ParseSurdError> for CliError {
    fn from(e: ParseSurdError) -> CliError {
        CliError::input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::input(e.to_string())
    }
}

impl From<NumError> for CliError {
    fn from(e: NumError) -> CliError {
        CliError::unsupported(e.to_string())
    }
}

impl From<FigureError> for CliError {
    fn from(e: FigureError) -> CliError {
        CliError::unsupported(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> CliError {
        CliError::unsupported(e.to_string())
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> CliError {
        match &e {
            HomError::Degenerate(x, y) => CliError {
                code: 3,
                msg: e.to_string(),
                partial: Some(json!({
                    "error": "degenerate",
                    "vanishing_point": [x.to_string(), y.to_string()],
                })),
            },
            HomError::Terminated => CliError { code: 3, msg: e.to_string(), partial: None },
            HomError::AlphaOutOfRange => CliError::input(e.to_string()),
            HomError::Num(n) => CliError::from(n.clone()),
            _ => CliError::unsupported(e.to_string()),
        }
    }
}

impl From<InhomError> for CliError {
    fn from(e: InhomError) -> CliError {
        match e {
            InhomError::SingularBasis => CliError::input(e.to_string()),
            InhomError::Terminated | InhomError::Diverged => {
                CliError { code: 3, msg: e.to_string(), partial: None }
            }
            InhomError::Hom(h) => CliError::from(h),
            InhomError::Num(n) => CliError::from(n),
            _ => CliError::unsupported(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.msg }));
            if let Some(partial) = e.partial {
                println!("{}", pretty(&partial).trim_end());
            }
            ExitCode::from(e.code)
        }
    }
}

impl FormInput {
    fn spec(&self) -> Result<ProblemSpec, CliError> {
        match (&self.form, &self.matrix, &self.input) {
            (Some(f), None, None) => Ok(spec::parse_form_flag(f)?),
            (None, Some(m), None) => Ok(spec::parse_matrix_flag(m)?),
            (None, None, Some(p)) => Ok(spec::load_file(p)?),
            _ => Err(CliError::input("provide exactly one of --form, --matrix, --input")),
        }
    }
}

impl ProblemInput {
    fn spec(&self) -> Result<ProblemSpec, CliError> {
        match (&self.problem, &self.entries, &self.form) {
            (Some(p), None, None) => Ok(spec::load_file(p)?),
            (None, Some(e), None) => Ok(spec::parse_entries_flag(e)?),
            (None, None, Some(f)) => Ok(spec::parse_form_flag(f)?),
            _ => Err(CliError::input("provide exactly one of --problem, --entries, --form")),
        }
    }

    fn cell(&self) -> Result<Cell, CliError> {
        Ok(self.spec()?.problem()?)
    }
}

impl CellInput {
    fn cell(&self) -> Result<Cell, CliError> {
        match (&self.cell, &self.entries) {
            (Some(p), None) => Ok(spec::load_file(p)?.problem()?),
            (None, Some(e)) => Ok(spec::parse_entries_flag(e)?.problem()?),
            _ => Err(CliError::input("provide exactly one of --cell, --entries")),
        }
    }
}

fn load_divided(path: &PathBuf) -> Result<DividedCell, CliError> {
    let cell = spec::load_file(path)?.problem()?;
    is_divided(&cell)
        .ok_or_else(|| CliError::unsupported("cell does not satisfy the divided conditions"))
}

fn want_json(out: &OutOpts, cmd: &str) -> Result<(), CliError> {
    if out.format == Format::Csv {
        return Err(CliError::input(format!("{cmd} has no CSV form; use --format json")));
    }
    Ok(())
}

fn emit(out: &OutOpts, content: String) -> Result<(), CliError> {
    output::write_out(out.out.as_deref(), &content)?;
    Ok(())
}

fn cell_json(cell: &Cell) -> Value {
    serde_json::to_value(cell).expect("serializable")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Reduce { input, out } => {
            want_json(&out, "reduce")?;
            let form = input.spec()?.form()?;
            let (reduced, u) = form.reduce()?;
            let doc = json!({
                "reduced": serde_json::to_value(&reduced).unwrap(),
                "transform": serde_json::to_value(&u).unwrap(),
                "delta": surd_json(&form.delta()),
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Chain { input, back, fwd, out } => {
            let form = input.spec()?.form()?;
            let steps = form.chain(back, fwd)?;
            match out.format {
                Format::Json => {
                    let arr: Vec<Value> = steps
                        .iter()
                        .map(|st| {
                            json!({
                                "index": st.index,
                                "digit": st.digit.to_string(),
                                "point": [st.point.0.to_string(), st.point.1.to_string()],
                                "matrix": serde_json::to_value(&st.matrix).unwrap(),
                                "value": surd_json(&st.value),
                            })
                        })
                        .collect();
                    emit(&out, pretty(&json!({ "delta": surd_json(&form.delta()), "steps": arr })))
                }
                Format::Csv => {
                    let mut csv = Csv::new(&["index", "digit", "x", "y", "M_n_decimal_50"]);
                    for st in &steps {
                        csv.row(&[
                            st.index.to_string(),
                            st.digit.to_string(),
                            st.point.0.to_string(),
                            st.point.1.to_string(),
                            st.value.decimal(output::DECIMAL_DIGITS),
                        ]);
                    }
                    emit(&out, csv.finish())
                }
            }
        }
        Cmd::Markoff { input, depth, out } => {
            want_json(&out, "markoff")?;
            let form = input.spec()?.form()?;
            let r = form.markoff(depth);
            let doc = json!({
                "value": extended_literal(&r.value),
                "value_decimal_50": extended_decimal(&r.value),
                "point": [r.point.0.to_string(), r.point.1.to_string()],
                "exact": r.exact,
                "delta": surd_json(&form.delta()),
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Lagrange { alpha, n, out } => {
            let alpha: Surd = alpha.parse().map_err(CliError::from)?;
            let steps = lagrange_sequence(&alpha, n)?;
            match out.format {
                Format::Json => {
                    let arr: Vec<Value> = steps
                        .iter()
                        .map(|st| {
                            json!({
                                "n": st.n,
                                "p": st.p.to_string(),
                                "q": st.q.to_string(),
                                "value": surd_json(&st.value),
                            })
                        })
                        .collect();
                    emit(&out, pretty(&json!({ "alpha": alpha.to_string(), "steps": arr })))
                }
                Format::Csv => {
                    let mut csv = Csv::new(&["n", "p", "q", "M_n_decimal_50"]);
                    for st in &steps {
                        csv.row(&[
                            st.n.to_string(),
                            st.p.to_string(),
                            st.q.to_string(),
                            st.value.decimal(output::DECIMAL_DIGITS),
                        ]);
                    }
                    emit(&out, csv.finish())
                }
            }
        }
        Cmd::InitCell { input, out } => {
            want_json(&out, "init-cell")?;
            let problem = input.cell()?;
            let init = initial_cell(&problem)?;
            let verts: Vec<Value> = init
                .dc
                .quadrant_vertices()
                .iter()
                .zip(DividedCell::vertex_cell_coords())
                .map(|((q, (xi, eta)), (cx, cy))| {
                    let (x, y) = init.anchor.apply_i64(cx, cy);
                    json!({
                        "quadrant": format!("{q:?}"),
                        "lattice": [x.to_string(), y.to_string()],
                        "xi": surd_json(xi),
                        "eta": surd_json(eta),
                    })
                })
                .collect();
            let doc = json!({
                "cell": cell_json(init.dc.cell()),
                "origin_is_lattice_point": init.origin_is_lattice_point,
                "vertices": verts,
                "delta": surd_json(&problem.delta()),
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Dca { input, back, forward, out } => {
            let problem = input.cell()?;
            let record = chain(&problem, back, forward)?;
            let end = |e: &ChainEnd| match e {
                ChainEnd::Depth => "depth",
                ChainEnd::Terminated => "terminated",
            };
            match out.format {
                Format::Json => {
                    let steps: Vec<Value> = record
                        .steps
                        .iter()
                        .map(|st| {
                            let class = classify(st.dc.cell());
                            let b = inner_box(st.dc.cell()).expect("divided cells are I-reduced");
                            json!({
                                "index": st.index,
                                "cell": cell_json(st.dc.cell()),
                                "type": class.kind(),
                                "step": st.choice_to_next.as_ref().map(|c| json!({
                                    "h": c.h.to_string(),
                                    "k": c.k.to_string(),
                                    "branch": c.branch,
                                    "alternatives": c.alternatives,
                                })),
                                "box": {
                                    "width": surd_json(&b.width()),
                                    "height": surd_json(&b.height()),
                                },
                                "vertices": st.vertex_infos().iter().map(|v| json!({
                                    "quadrant": format!("{:?}", v.quadrant),
                                    "lattice": [v.lattice.0.to_string(), v.lattice.1.to_string()],
                                    "value": extended_literal(&v.value),
                                    "value_decimal_50": extended_decimal(&v.value),
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let doc = json!({
                        "delta": surd_json(&record.delta),
                        "origin_is_lattice_point": record.origin_is_lattice_point,
                        "back_end": end(&record.back_end),
                        "fwd_end": end(&record.fwd_end),
                        "steps": steps,
                    });
                    emit(&out, pretty(&doc))
                }
                Format::Csv => {
                    let mut csv = Csv::new(&[
                        "index", "h", "k", "type", "quadrant", "x", "y", "M_decimal_50", "M_exact",
                    ]);
                    for st in &record.steps {
                        let class = classify(st.dc.cell());
                        let (h, k) = st
                            .choice_to_next
                            .as_ref()
                            .map(|c| (c.h.to_string(), c.k.to_string()))
                            .unwrap_or_default();
                        for v in st.vertex_infos() {
                            csv.row(&[
                                st.index.to_string(),
                                h.clone(),
                                k.clone(),
                                class.kind().to_string(),
                                format!("{:?}", v.quadrant),
                                v.lattice.0.to_string(),
                                v.lattice.1.to_string(),
                                extended_decimal(&v.value),
                                extended_literal(&v.value),
                            ]);
                        }
                    }
                    emit(&out, csv.finish())
                }
            }
        }
        Cmd::Classify { input, out } => {
            want_json(&out, "classify")?;
            let cell = input.cell()?.normalize();
            let class = classify(&cell);
            let doc = json!({
                "kind": class.kind(),
                "i_reduced": class.i_reduced,
                "gaussian": class.gaussian,
                "non_gaussian": class.non_gaussian,
                "neighbor_of_g": class.neighbor_of_g,
                "superfluous": class.superfluous,
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Neighbors { input, out } => {
            want_json(&out, "neighbors")?;
            let g = input.cell()?.normalize();
            let (n1, n2) = neighbors(&g)?;
            let ag = inner_box(&g)?.area();
            let a1 = inner_box(&n1)?.area();
            let a2 = inner_box(&n2)?.area();
            let sum = &(&ag + &a1) + &a2;
            let doc = json!({
                "n1": cell_json(&n1),
                "n2": cell_json(&n2),
                "box_areas": {
                    "g": surd_json(&ag),
                    "n1": surd_json(&a1),
                    "n2": surd_json(&a2),
                    "sum": surd_json(&sum),
                },
                "delta": surd_json(&g.delta()),
                "tiling_exact": sum == g.delta(),
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Anchors { input, out } => {
            want_json(&out, "anchors")?;
            let cell = input.cell()?;
            let dc = is_divided(&cell).ok_or_else(|| {
                CliError::unsupported("cell does not satisfy the divided conditions")
            })?;
            let a = anchors(&dc)?;
            let doc = json!({
                "backward": cell_json(a.backward.cell()),
                "forward": cell_json(a.forward.cell()),
                "run_length": a.run.len(),
                "run": a.run.iter().map(|dc| cell_json(dc.cell())).collect::<Vec<_>>(),
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Imarkoff { input, depth, window, out } => {
            want_json(&out, "imarkoff")?;
            let problem = input.cell()?;
            let r = markoff_inhom_with_window(&problem, depth, window)?;
            let doc = json!({
                "value": extended_literal(&r.value),
                "value_decimal_50": extended_decimal(&r.value),
                "vertex": [r.vertex_lattice.0.to_string(), r.vertex_lattice.1.to_string()],
                "exact": r.exact,
                "delta": surd_json(&problem.delta()),
            });
            emit(&out, pretty(&doc))
        }
        Cmd::Locate { input, cell, cell2, out } => {
            want_json(&out, "locate")?;
            let problem = input.cell()?;
            let dc = load_divided(&cell)?;
            let pos = locate(&dc, &problem)?;
            let pos_json = |p: &divcell_core::inhomogeneous::CellPosition| {
                json!({
                    "cf_index": p.cf_index,
                    "slot": p.slot,
                    "superfluous_depth": p.superfluous_depth,
                })
            };
            let doc = match cell2 {
                None => json!({ "position": pos_json(&pos) }),
                Some(path) => {
                    let dc2 = load_divided(&path)?;
                    let pos2 = locate(&dc2, &problem)?;
                    let order = compare_cells(&dc, &dc2, &problem)?;
                    json!({
                        "a": pos_json(&pos),
                        "b": pos_json(&pos2),
                        "order": format!("{order:?}"),
                    })
                }
            };
            emit(&out, pretty(&doc))
        }
        Cmd::Oracle { what } => run_oracle(what),
        Cmd::Plot { preset, input, scale, monochrome, out } => {
            let kind = PresetKind::parse(&preset)
                .ok_or_else(|| CliError::input(format!("unknown preset '{preset}'")))?;
            let spec = input.spec()?;
            let data = match &spec {
                ProblemSpec::Coefficients(..) | ProblemSpec::Matrix(_) => {
                    PresetData::Form(spec.form()?)
                }
                ProblemSpec::Problem(cell) => PresetData::Cell(cell.clone()),
            };
            let mut scenes = figures::preset(kind, &data)?;
            for scene in &mut scenes {
                scene.monochrome = monochrome;
                if let Some(s) = &scale {
                    let a: Surd = s.parse().map_err(CliError::from)?;
                    if a.is_zero() {
                        return Err(CliError::input("scale must be nonzero"));
                    }
                    scene.scale = a;
                }
            }
            if scenes.len() == 1 || out.is_none() {
                let mut all = String::new();
                for scene in &scenes {
                    all.push_str(&figures::render(scene)?);
                }
                output::write_out(out.as_deref(), &all)?;
            } else {
                // One file per scene: insert _1, _2 before the extension.
                let base = out.unwrap();
                for (i, scene) in scenes.iter().enumerate() {
                    let svg = figures::render(scene)?;
                    let stem = base.file_stem().unwrap_or_default().to_string_lossy();
                    let name = match base.extension() {
                        Some(ext) => format!("{}_{}.{}", stem, i + 1, ext.to_string_lossy()),
                        None => format!("{}_{}", stem, i + 1),
                    };
                    output::write_out(Some(&base.with_file_name(name)), &svg)?;
                }
            }
            Ok(())
        }
    }
}

fn parse_point(text: &str) -> Result<(i64, i64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::input("expected \"x,y\""));
    }
    let x = parts[0].trim().parse().map_err(|e| CliError::input(format!("bad integer: {e}")))?;
    let y = parts[1].trim().parse().map_err(|e| CliError::input(format!("bad integer: {e}")))?;
    Ok((x, y))
}

fn run_oracle(what: OracleCmd) -> Result<(), CliError> {
    use divcell_core::inhomogeneous::Quadrant;
    match what {
        OracleCmd::BruteMin { input, window, exclude_origin, out } => {
            let problem = input.cell()?;
            let w = Window::new(window, 0).map_err(CliError::from)?;
            let (min, argmins) = if exclude_origin {
                oracle::brute_min_excluding_origin(&problem, &w)
            } else {
                oracle::brute_min(&problem, &w)
            };
            match out.format {
                Format::Json => {
                    let doc = json!({
                        "min": surd_json(&min),
                        "argmins": argmins
                            .iter()
                            .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                            .collect::<Vec<_>>(),
                    });
                    emit(&out, pretty(&doc))
                }
                Format::Csv => {
                    let mut csv = Csv::new(&["x", "y"]);
                    for (x, y) in &argmins {
                        csv.row(&[x.to_string(), y.to_string()]);
                    }
                    emit(&out, csv.finish())
                }
            }
        }
        OracleCmd::MinimalPoints { input, window, margin, kind, out } => {
            let problem = input.cell()?;
            let w = Window::new(window, margin).map_err(CliError::from)?;
            let kind = match kind {
                KindArg::Basic => OrderKind::Basic,
                KindArg::Extended => OrderKind::Extended,
            };
            let pts = oracle::minimal_points(&problem, &w, kind);
            match out.format {
                Format::Json => {
                    let doc = json!({
                        "kind": match kind { OrderKind::Basic => "basic", OrderKind::Extended => "extended" },
                        "window": window,
                        "margin": margin,
                        "points": pts.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
                    });
                    emit(&out, pretty(&doc))
                }
                Format::Csv => {
                    let mut csv = Csv::new(&["x", "y"]);
                    for (x, y) in &pts {
                        csv.row(&[x.to_string(), y.to_string()]);
                    }
                    emit(&out, csv.finish())
                }
            }
        }
        OracleCmd::LineMax { input, point, dir, quadrant, out } => {
            want_json(&out, "line-max")?;
            let problem = input.cell()?;
            let point = parse_point(&point)?;
            let dir = parse_point(&dir)?;
            let quadrant = match quadrant.to_lowercase().as_str() {
                "q1" => Quadrant::Q1,
                "q2" => Quadrant::Q2,
                "q3" => Quadrant::Q3,
                "q4" => Quadrant::Q4,
                other => return Err(CliError::input(format!("unknown quadrant '{other}'"))),
            };
            let lm = oracle::line_max(&problem, point, dir, quadrant)?;
            let doc = json!({
                "t": surd_json(&lm.t),
                "location": [surd_json(&lm.location.0), surd_json(&lm.location.1)],
                "value": surd_json(&lm.value),
            });
            emit(&out, pretty(&doc))
        }
    }
}
