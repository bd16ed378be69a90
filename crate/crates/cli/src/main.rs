//! `cobweb` — exact command-line tools for cobweb posets.
//!
//! Every number printed anywhere is exact: integers in decimal, rationals as
//! `p/q`, and in JSON output big values are carried as decimal strings.
//! Output is deterministic byte-for-byte for a given invocation, whatever
//! `--threads` says.
//!
//! Exit codes: 0 on success (including "property fails" verdicts, which are
//! successful computations), 1 on domain errors (bad sequence terms, budget
//! or ceiling violations, out-of-range requests), 2 on command-line usage
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cobweb_core::combinatorics::{fnomial, rational_string};
use cobweb_core::poset::{self, BuildOptions, ChainMode, PosetExportFormat};
use cobweb_core::properties::{
    check_admissible, check_gcd_morphic, search_admissible, search_gcd_morphic, PropertyVerdict,
    SearchReport, Witness,
};
use cobweb_core::tiling::{self, EnumerationBudget, SigmaPolicy, TriangleMode};
use cobweb_core::{Error, FSequence};

#[derive(Parser)]
#[command(
    name = "cobweb",
    version,
    about = "Exact tools for cobweb posets: F-nomial triangles, chain counts, \
             Möbius structure, admissibility and GCD-morphism checks, and layer tilings"
)]
struct Cli {
    /// Sequence spec: natural|even|odd|mult:k|fibonacci|gauss:q|const:c
    #[arg(long, global = true, conflicts_with = "seq_file")]
    seq: Option<String>,

    /// File with one positive integer per line (optional first line `root=0`)
    #[arg(long, global = true)]
    seq_file: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel enumeration (0 = library default)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Cell ceiling for explicit tiling work
    #[arg(long, global = true, env = "COBWEB_BUDGET_CELLS",
          default_value_t = tiling::DEFAULT_CELL_BUDGET)]
    budget_cells: usize,

    /// Vertex ceiling for poset materialization
    #[arg(long, global = true, env = "COBWEB_BUDGET_VERTICES",
          default_value_t = poset::DEFAULT_VERTEX_BUDGET)]
    budget_vertices: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle of F-nomial coefficients for rows 0..=ROWS
    Triangle {
        #[arg(long)]
        rows: u64,
    },
    /// Check that every F-nomial coefficient with n <= BOUND is an integer
    Admissible {
        #[arg(long)]
        bound: u64,
    },
    /// Check gcd(F_n, F_m) = F_gcd(n,m) for all pairs up to BOUND
    GcdMorphic {
        #[arg(long)]
        bound: u64,
    },
    /// List every finite sequence of a given length with a property
    Search {
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        max_term: u64,
        /// Fixed leading terms, comma-separated
        #[arg(long, value_delimiter = ',')]
        prefix: Vec<u64>,
        /// Stop after this many hits
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build the poset and print a summary or an export
    Poset {
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum)]
        export: Option<ExportArg>,
    },
    /// Count maximal chains from one vertex of level FROM up to level TO
    Chains {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Formula)]
        mode: ModeArg,
    },
    /// Print the Möbius matrix in canonical vertex order
    Mobius {
        #[arg(long)]
        levels: usize,
    },
    /// Print the characteristic polynomial of the root's Möbius row
    Charpoly {
        #[arg(long)]
        levels: usize,
    },
    /// Check whether every mod-MODULUS class of levels is a dominating set
    Domatic {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        modulus: usize,
    },
    /// Box-tiling tools for the layer between two levels
    Tile {
        #[command(subcommand)]
        cmd: TileCommand,
    },
}

#[derive(Subcommand)]
enum TileCommand {
    /// Is there at least one tiling?
    Exists(TileArgs),
    /// Count all tilings exactly
    Count(TileArgs),
    /// List tilings in canonical order
    Enumerate {
        #[command(flatten)]
        args: TileArgs,
        /// Stop after this many tilings
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Table of per-layer results over all 0 <= k <= n <= ROWS
    Triangle {
        #[arg(long)]
        rows: u64,
        #[arg(long, value_enum, default_value_t = TriangleModeArg::Bound)]
        mode: TriangleModeArg,
        #[arg(long, value_enum, default_value_t = PolicyArg::Any)]
        policy: PolicyArg,
    },
}

#[derive(Args)]
struct TileArgs {
    /// Lower level k
    #[arg(long)]
    from: u64,
    /// Upper level n
    #[arg(long)]
    to: u64,
    #[arg(long, value_enum, default_value_t = PolicyArg::Any)]
    policy: PolicyArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Admissible,
    GcdMorphic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportArg {
    Dot,
    Json,
    CsvMatrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Formula,
    Dp,
    Brute,
}

impl ModeArg {
    fn to_core(self) -> ChainMode {
        match self {
            ModeArg::Formula => ChainMode::Formula,
            ModeArg::Dp => ChainMode::Dp,
            ModeArg::Brute => ChainMode::Brute,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            ModeArg::Formula => "formula",
            ModeArg::Dp => "dp",
            ModeArg::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Identity,
    Any,
}

impl PolicyArg {
    fn to_core(self) -> SigmaPolicy {
        match self {
            PolicyArg::Identity => SigmaPolicy::Identity,
            PolicyArg::Any => SigmaPolicy::Any,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TriangleModeArg {
    Bound,
    Count,
    Exists,
}

impl TriangleModeArg {
    fn to_core(self) -> TriangleMode {
        match self {
            TriangleModeArg::Bound => TriangleMode::Bound,
            TriangleModeArg::Count => TriangleMode::Count,
            TriangleModeArg::Exists => TriangleMode::Exists,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            TriangleModeArg::Bound => "bound",
            TriangleModeArg::Count => "count",
            TriangleModeArg::Exists => "exists",
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type AppResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // a failure here means a pool already exists; the work is correct
        // either way, so keep going
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn sequence(cli: &Cli) -> AppResult<FSequence> {
    if let Some(path) = &cli.seq_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::SequenceFile(format!("{}: {e}", path.display())))?;
        Ok(FSequence::custom_from_lines(&text)?)
    } else if let Some(spec) = &cli.seq {
        Ok(spec.parse::<FSequence>()?)
    } else {
        Err(Failure::Usage(
            "this command needs a sequence: pass --seq SPEC or --seq-file PATH".into(),
        ))
    }
}

fn build_options(cli: &Cli) -> BuildOptions {
    BuildOptions {
        vertex_budget: cli.budget_vertices,
    }
}

fn cell_budget(cli: &Cli) -> EnumerationBudget {
    EnumerationBudget {
        max_cells: cli.budget_cells,
    }
}

/// Every command renders to a complete, newline-terminated string so output
/// happens exactly once, after all computation has succeeded.
fn run(cli: &Cli) -> AppResult<String> {
    match &cli.command {
        Command::Triangle { rows } => render_triangle(cli, *rows),
        Command::Admissible { bound } => {
            let f = sequence(cli)?;
            Ok(render_verdict(cli, &check_admissible(&f, *bound)?))
        }
        Command::GcdMorphic { bound } => {
            let f = sequence(cli)?;
            Ok(render_verdict(cli, &check_gcd_morphic(&f, *bound)?))
        }
        Command::Search {
            property,
            max_len,
            max_term,
            prefix,
            limit,
        } => {
            let report = match property {
                PropertyArg::Admissible => search_admissible(*max_len, *max_term, prefix, *limit)?,
                PropertyArg::GcdMorphic => search_gcd_morphic(*max_len, *max_term, prefix, *limit)?,
            };
            Ok(render_search(cli, &report))
        }
        Command::Poset { levels, export } => render_poset(cli, *levels, *export),
        Command::Chains { from, to, mode } => render_chains(cli, *from, *to, *mode),
        Command::Mobius { levels } => render_mobius(cli, *levels),
        Command::Charpoly { levels } => render_charpoly(cli, *levels),
        Command::Domatic { levels, modulus } => render_domatic(cli, *levels, *modulus),
        Command::Tile { cmd } => render_tile(cli, cmd),
    }
}

fn render_triangle(cli: &Cli, rows: u64) -> AppResult<String> {
    let f = sequence(cli)?;
    let mut table: Vec<Vec<String>> = Vec::with_capacity(rows as usize + 1);
    for n in 0..=rows {
        let mut row = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            row.push(rational_string(&fnomial(&f, n, k)?));
        }
        table.push(row);
    }
    Ok(match cli.format {
        Format::Text => {
            let mut out = String::new();
            for row in &table {
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::new();
            for row in &table {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut s = json!({ "sequence": f.name(), "rows": table }).to_string();
            s.push('\n');
            s
        }
    })
}

fn render_verdict(cli: &Cli, verdict: &PropertyVerdict) -> String {
    let name = verdict.property.as_str();
    match cli.format {
        Format::Text => match &verdict.witness {
            None => format!("{name} holds up to bound {}\n", verdict.bound),
            Some(Witness::NonIntegralFnomial { n, k, value }) => format!(
                "{name} fails: ({n} over {k})_F = {} is not an integer\n",
                rational_string(value)
            ),
            Some(Witness::GcdMismatch {
                n,
                m,
                gcd_value,
                expected,
            }) => format!(
                "{name} fails at (n,m) = ({n},{m}): gcd(F_{n}, F_{m}) = {gcd_value}, expected F_gcd = {expected}\n"
            ),
        },
        Format::Csv => match &verdict.witness {
            None => format!("{name},{},true\n", verdict.bound),
            Some(Witness::NonIntegralFnomial { n, k, value }) => format!(
                "{name},{},false,{n},{k},{}\n",
                verdict.bound,
                rational_string(value)
            ),
            Some(Witness::GcdMismatch {
                n,
                m,
                gcd_value,
                expected,
            }) => format!(
                "{name},{},false,{n},{m},{gcd_value},{expected}\n",
                verdict.bound
            ),
        },
        Format::Json => {
            let witness = match &verdict.witness {
                None => serde_json::Value::Null,
                Some(Witness::NonIntegralFnomial { n, k, value }) => json!({
                    "n": n, "k": k, "value": rational_string(value),
                }),
                Some(Witness::GcdMismatch {
                    n,
                    m,
                    gcd_value,
                    expected,
                }) => json!({
                    "n": n, "m": m,
                    "gcd": gcd_value.to_string(),
                    "expected": expected.to_string(),
                }),
            };
            let mut s = json!({
                "property": name,
                "bound": verdict.bound,
                "holds": verdict.holds,
                "witness": witness,
            })
            .to_string();
            s.push('\n');
            s
        }
    }
}

fn render_search(cli: &Cli, report: &SearchReport) -> String {
    match cli.format {
        Format::Text | Format::Csv => {
            let mut out = String::new();
            for terms in &report.found {
                let cells: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut s = json!({
                "property": report.property.as_str(),
                "max_len": report.max_len,
                "max_term": report.max_term,
                "prefix": report.prefix,
                "found": report.found,
                "exhausted": report.exhausted,
            })
            .to_string();
            s.push('\n');
            s
        }
    }
}

fn render_poset(cli: &Cli, levels: usize, export: Option<ExportArg>) -> AppResult<String> {
    let f = sequence(cli)?;
    let p = poset::build_with(&f, levels, &build_options(cli))?;
    if let Some(export) = export {
        let fmt = match export {
            ExportArg::Dot => PosetExportFormat::Dot,
            ExportArg::Json => PosetExportFormat::Json,
            ExportArg::CsvMatrix => PosetExportFormat::CsvMatrix,
        };
        return Ok(poset::export(&p, fmt));
    }
    Ok(match cli.format {
        Format::Text => format!(
            "{} poset with levels 0..={}: {} vertices, {} arcs\n",
            f.name(),
            p.top_level(),
            p.vertex_count(),
            p.arc_count()
        ),
        Format::Csv => format!(
            "{},{},{},{}\n",
            f.name(),
            p.top_level(),
            p.vertex_count(),
            p.arc_count()
        ),
        Format::Json => {
            let mut s = json!({
                "sequence": f.name(),
                "top_level": p.top_level(),
                "vertices": p.vertex_count(),
                "arcs": p.arc_count().to_string(),
            })
            .to_string();
            s.push('\n');
            s
        }
    })
}

fn render_chains(cli: &Cli, from: u64, to: u64, mode: ModeArg) -> AppResult<String> {
    let f = sequence(cli)?;
    let count = poset::count_chains_with(&f, from, to, mode.to_core(), &build_options(cli))?;
    Ok(match cli.format {
        Format::Text | Format::Csv => format!("{count}\n"),
        Format::Json => {
            let mut s = json!({
                "sequence": f.name(),
                "from": from,
                "to": to,
                "mode": mode.as_str(),
                "count": count.to_string(),
            })
            .to_string();
            s.push('\n');
            s
        }
    })
}

fn render_mobius(cli: &Cli, levels: usize) -> AppResult<String> {
    let f = sequence(cli)?;
    let p = poset::build_with(&f, levels, &build_options(cli))?;
    let m = poset::mobius_matrix(&p);
    Ok(match cli.format {
        Format::Text | Format::Csv => m.to_csv(),
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..m.order())
                .map(|r| m.row(r).iter().map(|v| v.to_string()).collect())
                .collect();
            let mut s = json!({
                "sequence": f.name(),
                "order": m.order(),
                "rows": rows,
            })
            .to_string();
            s.push('\n');
            s
        }
    })
}

fn render_charpoly(cli: &Cli, levels: usize) -> AppResult<String> {
    let f = sequence(cli)?;
    let p = poset::build_with(&f, levels, &build_options(cli))?;
    let rho = poset::characteristic_polynomial(&p);
    Ok(match cli.format {
        Format::Text => format!("{rho}\n"),
        Format::Csv => {
            let cells: Vec<String> = rho.coefficients().iter().map(|c| c.to_string()).collect();
            format!("{}\n", cells.join(","))
        }
        Format::Json => {
            let coeffs: Vec<String> = rho.coefficients().iter().map(|c| c.to_string()).collect();
            let mut s = json!({
                "sequence": f.name(),
                "degree": rho.degree(),
                "coefficients": coeffs,
                "rendered": rho.to_string(),
            })
            .to_string();
            s.push('\n');
            s
        }
    })
}

fn render_domatic(cli: &Cli, levels: usize, modulus: usize) -> AppResult<String> {
    let f = sequence(cli)?;
    let p = poset::build_with(&f, levels, &build_options(cli))?;
    let verdict = poset::domatic_mod_check(&p, modulus)?;
    Ok(match cli.format {
        Format::Text => match &verdict.witness {
            None => format!("yes: all level classes mod {} are dominating sets\n", verdict.modulus),
            Some(w) => format!(
                "no: class {} leaves vertex {} uncovered\n",
                w.class_index, w.vertex
            ),
        },
        Format::Csv => match &verdict.witness {
            None => format!("{},yes\n", verdict.modulus),
            Some(w) => format!(
                "{},no,{},{},{}\n",
                verdict.modulus, w.class_index, w.vertex.j, w.vertex.s
            ),
        },
        Format::Json => {
            let witness = match &verdict.witness {
                None => serde_json::Value::Null,
                Some(w) => json!({
                    "class": w.class_index,
                    "vertex": { "j": w.vertex.j, "s": w.vertex.s },
                }),
            };
            let mut s = json!({
                "sequence": f.name(),
                "modulus": verdict.modulus,
                "domatic": verdict.domatic,
                "witness": witness,
            })
            .to_string();
            s.push('\n');
            s
        }
    })
}

fn render_tile(cli: &Cli, cmd: &TileCommand) -> AppResult<String> {
    let f = sequence(cli)?;
    let budget = cell_budget(cli);
    match cmd {
        TileCommand::Exists(args) => {
            let grid = tiling::make_problem(&f, args.from, args.to)?;
            let exists = tiling::exists_tiling(&grid, args.policy.to_core(), &budget)?;
            Ok(match cli.format {
                Format::Text | Format::Csv => format!("{}\n", if exists { "yes" } else { "no" }),
                Format::Json => {
                    let mut s = json!({
                        "sequence": f.name(),
                        "from": args.from,
                        "to": args.to,
                        "policy": args.policy.to_core().as_str(),
                        "divisible": grid.is_divisible(),
                        "exists": exists,
                    })
                    .to_string();
                    s.push('\n');
                    s
                }
            })
        }
        TileCommand::Count(args) => {
            let grid = tiling::make_problem(&f, args.from, args.to)?;
            let count = tiling::count_tilings(&grid, args.policy.to_core(), &budget)?;
            Ok(match cli.format {
                Format::Text | Format::Csv => format!("{count}\n"),
                Format::Json => {
                    let mut s = json!({
                        "sequence": f.name(),
                        "from": args.from,
                        "to": args.to,
                        "policy": args.policy.to_core().as_str(),
                        "count": count.to_string(),
                    })
                    .to_string();
                    s.push('\n');
                    s
                }
            })
        }
        TileCommand::Enumerate { args, limit } => {
            let grid = tiling::make_problem(&f, args.from, args.to)?;
            let res = tiling::enumerate_tilings(&grid, args.policy.to_core(), *limit, &budget)?;
            Ok(match cli.format {
                Format::Text | Format::Csv => {
                    let mut out = String::new();
                    for t in &res.tilings {
                        let blocks: Vec<String> = t.blocks.iter().map(|b| b.to_string()).collect();
                        out.push_str(&blocks.join(" "));
                        out.push('\n');
                    }
                    out
                }
                Format::Json => {
                    let tilings: Vec<Vec<&Vec<Vec<usize>>>> =
                        res.tilings.iter().map(|t| t.blocks.iter().map(|b| &b.subsets).collect()).collect();
                    let mut s = json!({
                        "sequence": f.name(),
                        "from": args.from,
                        "to": args.to,
                        "policy": args.policy.to_core().as_str(),
                        "tilings": tilings,
                        "complete": res.complete,
                    })
                    .to_string();
                    s.push('\n');
                    s
                }
            })
        }
        TileCommand::Triangle { rows, mode, policy } => {
            let table =
                tiling::tiling_triangle(&f, *rows, mode.to_core(), policy.to_core(), &budget)?;
            Ok(match cli.format {
                Format::Text | Format::Csv => table.to_csv(),
                Format::Json => {
                    let rows: Vec<Vec<String>> = table
                        .cells
                        .iter()
                        .map(|row| row.iter().map(|c| c.render()).collect())
                        .collect();
                    let mut s = json!({
                        "sequence": f.name(),
                        "mode": mode.as_str(),
                        "policy": policy.to_core().as_str(),
                        "rows": rows,
                    })
                    .to_string();
                    s.push('\n');
                    s
                }
            })
        }
    }
}
